// ffhyper: exact finite-field hypergeometric evaluator and identity verifier.
//
// Subcommands: field, eval, verify, bench, export.
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 capacity/IO.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffhyper/field_cache.hpp"
#include "ffhyper/hypergeometric.hpp"
#include "ffhyper/report.hpp"
#include "ffhyper/sweep.hpp"

namespace {

using namespace ffhyper;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::vector<std::uint32_t> parse_u32_list(const std::string& s, const char* what) {
    std::vector<std::uint32_t> out;
    for (const auto& item : split_list(s)) {
        try {
            out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string("bad ") + what + " entry: " + item);
        }
    }
    if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
    return out;
}

std::string default_cache_dir() {
    if (const char* env = std::getenv("FFHYPER_CACHE_DIR")) return env;
    return ".";
}

struct FieldBundle {
    FieldCtx field;
    CycloCtx cyclo;
    explicit FieldBundle(std::uint32_t q)
        : field(make(q)), cyclo(field.order()) {}
    static FieldCtx make(std::uint32_t q) {
        auto [p, r] = factor_prime_power(q);
        return build_field(p, r);
    }
};

nlohmann::ordered_json value_json(const CycloCtx& cyclo, const CycloNum& v) {
    nlohmann::ordered_json j;
    j["exact"] = v.to_strings();
    auto e = cyclo.embed(v);
    j["embed"] = {e.real(), e.imag()};
    return j;
}

int cmd_field(std::uint32_t p, std::uint32_t r, const std::string& cache_dir) {
    namespace fs = std::filesystem;
    FieldCtx f = build_field(p, r);
    fs::create_directories(cache_dir);
    fs::path path = fs::path(cache_dir) / field_cache_filename(p, r);
    auto fresh = encode_field_cache(f);
    nlohmann::ordered_json out;
    out["p"] = p;
    out["r"] = r;
    out["q"] = f.q;
    out["generator"] = f.generator;
    out["path"] = path.string();
    out["checksum"] = field_cache_checksum(fresh);
    if (fs::exists(path)) {
        FieldCtx cached = read_field_cache(path.string()); // validates checksum
        if (encode_field_cache(cached) != fresh)
            throw io_error("cache file disagrees with a fresh deterministic build: " +
                           path.string());
        out["status"] = "cache valid, unchanged";
    } else {
        write_field_cache(f, path.string());
        out["status"] = "cache written";
    }
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_eval(std::uint32_t q, const std::string& a_str, const std::string& b_str,
             const std::string& c_str, const std::string& x_str, const std::string& route_in,
             std::uint64_t budget, const std::string& format) {
    FieldBundle fb(q);
    const FieldCtx& f = fb.field;
    SeriesParams p;
    p.A = parse_character(f, a_str);
    for (const auto& s : split_list(b_str)) p.Bs.push_back(parse_character(f, s));
    for (const auto& s : split_list(c_str)) p.Cs.push_back(parse_character(f, s));
    for (std::uint32_t x : parse_u32_list(x_str, "x")) {
        if (x >= f.q) throw std::invalid_argument("x entry out of field range");
        p.xs.push_back(x);
    }
    p.validate();

    std::string route = route_in;
    if (route == "auto") route = pick_route(p.n(), false) == Route::charsum ? "charsum" : "direct";

    nlohmann::ordered_json out;
    out["q"] = q;
    out["n"] = p.n();
    out["A"] = p.A.name();
    out["B"] = nlohmann::json::array();
    for (const auto& b : p.Bs) out["B"].push_back(b.name());
    out["C"] = nlohmann::json::array();
    for (const auto& c : p.Cs) out["C"].push_back(c.name());
    out["x"] = p.xs;
    if (route == "direct") {
        out["direct"] = value_json(fb.cyclo, lauricella_fa(fb.cyclo, p, Route::direct));
    } else if (route == "charsum") {
        BinomialTable table = build_binom_table(f, fb.cyclo, budget);
        out["charsum"] =
            value_json(fb.cyclo, lauricella_fa(fb.cyclo, p, Route::charsum, &table));
    } else if (route == "both") {
        BinomialTable table = build_binom_table(f, fb.cyclo, budget);
        CycloNum d = lauricella_fa(fb.cyclo, p, Route::direct);
        CycloNum cs = lauricella_fa(fb.cyclo, p, Route::charsum, &table);
        out["direct"] = value_json(fb.cyclo, d);
        out["charsum"] = value_json(fb.cyclo, cs);
        out["agree"] = (d == cs);
    } else {
        throw std::invalid_argument("route must be direct, charsum or both");
    }
    if (format == "human") {
        for (const char* key : {"direct", "charsum"}) {
            if (!out.contains(key)) continue;
            std::cout << key << ": [";
            bool first = true;
            for (const auto& s : out[key]["exact"]) {
                std::cout << (first ? "" : ", ") << s.get<std::string>();
                first = false;
            }
            std::cout << "] ~ " << out[key]["embed"][0].get<double>() << " + "
                      << out[key]["embed"][1].get<double>() << "i\n";
        }
        if (out.contains("agree"))
            std::cout << "agree: " << (out["agree"].get<bool>() ? "true" : "false") << "\n";
    } else {
        std::cout << out.dump() << "\n";
    }
    return 0;
}

struct VerifyConfig {
    std::string suites = "all";
    std::string qs;
    std::uint32_t n = 2;
    bool exhaustive = false;
    std::uint32_t sample = 500;
    std::uint64_t seed = 42;
    std::uint32_t jobs = 1;
    std::uint64_t budget = 5'000'000;
    bool fail_fast = false;
    bool timings = false;
    std::string format = "json";
};

nlohmann::ordered_json verify_config_json(const VerifyConfig& c) {
    nlohmann::ordered_json j;
    j["suite"] = c.suites;
    j["q"] = c.qs;
    j["n"] = c.n;
    j["exhaustive"] = c.exhaustive;
    j["sample"] = c.sample;
    j["seed"] = c.seed;
    j["jobs"] = c.jobs;
    j["budget"] = c.budget;
    j["fail_fast"] = c.fail_fast;
    j["timings"] = c.timings;
    j["format"] = c.format;
    return j;
}

VerifyConfig verify_config_from_json(const nlohmann::json& j) {
    VerifyConfig c;
    c.suites = j.at("suite").get<std::string>();
    c.qs = j.at("q").get<std::string>();
    c.n = j.at("n").get<std::uint32_t>();
    c.exhaustive = j.at("exhaustive").get<bool>();
    c.sample = j.at("sample").get<std::uint32_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.jobs = j.at("jobs").get<std::uint32_t>();
    c.budget = j.at("budget").get<std::uint64_t>();
    c.fail_fast = j.at("fail_fast").get<bool>();
    c.timings = j.at("timings").get<bool>();
    c.format = j.at("format").get<std::string>();
    return c;
}

int cmd_verify(const VerifyConfig& cfg, bool dump_config) {
    if (dump_config) {
        std::cout << verify_config_json(cfg).dump() << "\n";
        return 0;
    }
    SweepOptions opt;
    if (cfg.suites != "all") {
        for (const auto& s : split_list(cfg.suites)) {
            auto id = parse_identity(s);
            if (!id) throw std::invalid_argument("unknown suite: " + s);
            opt.suite.push_back(*id);
        }
    }
    opt.qs = parse_u32_list(cfg.qs, "q");
    for (std::uint32_t q : opt.qs) factor_prime_power(q); // validate early
    opt.n = cfg.n;
    opt.exhaustive = cfg.exhaustive;
    opt.sample_count = cfg.sample;
    opt.seed = cfg.seed;
    opt.jobs = cfg.jobs;
    opt.budget = cfg.budget;
    opt.fail_fast = cfg.fail_fast;
    const bool timings = cfg.timings;
    const std::string& format = cfg.format;

    const bool stream = (format == "json");
    SweepSummary sum = sweep(opt, [&](const VerificationReport& r) {
        if (stream) std::cout << report_line(r, timings) << "\n";
    });

    if (format == "human") {
        std::cout << "identity                 pass     fail\n";
        for (const auto& [name, counts] : sum.per_identity) {
            std::cout << name;
            for (std::size_t i = name.size(); i < 25; ++i) std::cout << ' ';
            std::string pass = std::to_string(counts.first);
            std::cout << pass;
            for (std::size_t i = pass.size(); i < 9; ++i) std::cout << ' ';
            std::cout << counts.second << "\n";
        }
        std::cout << "total " << sum.total << ", failures " << sum.failures
                  << ", max exact/float gap " << sum.max_exact_float_gap << "\n";
        if (sum.first_failure)
            std::cout << "first counterexample: " << report_line(*sum.first_failure, timings)
                      << "\n";
        return sum.failures == 0 ? 0 : 1;
    }
    nlohmann::ordered_json s;
    s["schema"] = kReportSchemaVersion;
    s["total"] = sum.total;
    s["failures"] = sum.failures;
    nlohmann::ordered_json per;
    for (const auto& [name, counts] : sum.per_identity)
        per[name] = {{"pass", counts.first}, {"fail", counts.second}};
    s["per_identity"] = per;
    s["max_mirror_gap"] = sum.max_mirror_gap;
    s["max_exact_float_gap"] = sum.max_exact_float_gap;
    if (sum.first_failure)
        s["first_counterexample"] = report_to_json(*sum.first_failure, timings);
    nlohmann::ordered_json top;
    top["summary"] = s;
    std::cout << top.dump() << "\n";
    return sum.failures == 0 ? 0 : 1;
}

int cmd_bench(std::uint32_t q, std::uint32_t n, std::uint32_t count, std::uint64_t seed,
              const std::string& out_path, std::uint64_t budget, std::uint32_t reps) {
    FieldBundle fb(q);
    const FieldCtx& f = fb.field;
    const std::uint32_t m = f.order();
    if (n == 0) throw std::invalid_argument("bench: n must be >= 1");
    if (reps == 0) reps = 1;

    auto t0 = std::chrono::steady_clock::now();
    BinomialTable table = build_binom_table(f, fb.cyclo, budget);
    auto table_us = std::chrono::duration_cast<std::chrono::microseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();

    SplitMix64 rng(seed);
    std::ostringstream csv;
    csv << "instance,direct_us,charsum_us,equal\n";
    std::int64_t total_direct = 0, total_charsum = 0;
    bool all_equal = true;
    for (std::uint32_t i = 0; i < count; ++i) {
        SeriesParams p;
        p.A = Character{&f, rng.below(m)};
        for (std::uint32_t j = 0; j < n; ++j) {
            p.Bs.push_back(Character{&f, rng.below(m)});
            p.Cs.push_back(Character{&f, rng.below(m)});
            p.xs.push_back(1 + rng.below(f.q - 1)); // nonzero arguments: non-trivial work
        }
        // interleaved min-of-reps per route to filter scheduler noise
        std::int64_t dbest = INT64_MAX, cbest = INT64_MAX;
        bool eq = true;
        for (std::uint32_t r = 0; r < reps; ++r) {
            auto td0 = std::chrono::steady_clock::now();
            CycloNum d = lauricella_fa(fb.cyclo, p, Route::direct);
            auto td1 = std::chrono::steady_clock::now();
            CycloNum cs = lauricella_fa(fb.cyclo, p, Route::charsum, &table);
            auto td2 = std::chrono::steady_clock::now();
            dbest = std::min<std::int64_t>(
                dbest, std::chrono::duration_cast<std::chrono::nanoseconds>(td1 - td0).count());
            cbest = std::min<std::int64_t>(
                cbest, std::chrono::duration_cast<std::chrono::nanoseconds>(td2 - td1).count());
            eq = eq && (d == cs);
        }
        auto dus = dbest / 1000, cus = cbest / 1000;
        total_direct += dus;
        total_charsum += cus;
        all_equal = all_equal && eq;
        csv << i << "," << dus << "," << cus << "," << (eq ? 1 : 0) << "\n";
    }
    csv << "# q=" << q << " n=" << n << " instances=" << count << " table_build_us=" << table_us
        << " direct_total_us=" << total_direct << " charsum_total_us=" << total_charsum
        << " speedup=" << (total_charsum > 0
                               ? static_cast<double>(total_direct) / total_charsum
                               : 0.0)
        << " all_equal=" << (all_equal ? "true" : "false") << "\n";
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw io_error("cannot open " + out_path);
        out << csv.str();
        std::cout << "bench written to " << out_path << "\n";
    }
    return all_equal ? 0 : 1;
}

int cmd_export_binom(std::uint32_t q, const std::string& out_path, std::uint64_t budget) {
    FieldBundle fb(q);
    BinomialTable table = build_binom_table(fb.field, fb.cyclo, budget);
    std::ostringstream csv;
    csv << "i,j,value,re,im\n";
    for (std::uint32_t i = 0; i < table.m; ++i) {
        for (std::uint32_t j = 0; j < table.m; ++j) {
            const CycloNum& v = table.at(i, j);
            csv << i << "," << j << ",";
            auto strs = v.to_strings();
            for (std::size_t s = 0; s < strs.size(); ++s)
                csv << strs[s] << (s + 1 < strs.size() ? ";" : "");
            auto e = fb.cyclo.embed(v);
            csv << "," << e.real() << "," << e.imag() << "\n";
        }
    }
    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw io_error("cannot open " + out_path);
        out << csv.str();
        std::cout << "binomial table written to " << out_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact finite-field hypergeometric series and identity verifier"};
    app.require_subcommand(1);

    // field
    auto* field_cmd = app.add_subcommand("field", "build and cache a field context");
    std::uint32_t fp = 0, fr = 1;
    std::string cache_dir = default_cache_dir();
    field_cmd->add_option("--p", fp, "odd prime characteristic")->required();
    field_cmd->add_option("--r", fr, "extension degree");
    field_cmd->add_option("--cache-dir", cache_dir, "cache directory");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate the n-variable series");
    std::uint32_t eq = 0, en = 0;
    std::string ea, eb, ec, ex, eroute = "direct", eformat = "json";
    std::uint64_t ebudget = 1ull << 28;
    eval_cmd->add_option("--q", eq, "odd prime power")->required();
    eval_cmd->add_option("--n", en, "variable count (checked against --B when given)");
    eval_cmd->add_option("--A", ea, "top character, chi<j>")->required();
    eval_cmd->add_option("--B", eb, "upper characters, comma separated")->required();
    eval_cmd->add_option("--C", ec, "lower characters, comma separated")->required();
    eval_cmd->add_option("--x", ex, "arguments (element indices), comma separated")->required();
    eval_cmd->add_option("--route", eroute, "direct | charsum | both | auto");
    eval_cmd->add_option("--budget", ebudget, "table memory budget in bytes");
    eval_cmd->add_option("--format", eformat, "json | human");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "sweep the identity suite");
    std::string vsuites = "all", vqs, vformat = "json";
    std::uint32_t vn = 2, vsample = 500, vjobs = 1;
    std::uint64_t vseed = 42, vbudget = 5'000'000;
    bool vexhaustive = false, vfail_fast = false, vtimings = false;
    verify_cmd->add_option("--suite", vsuites,
                           "all or comma list (reduction_split, reduction_cov1, reduction_cov2, "
                           "eps_reduction, equal_reduction, genfunc_forward, genfunc_reversed, "
                           "genfunc_local, route_equivalence)");
    verify_cmd->add_option("--q", vqs, "comma list of odd prime powers");
    verify_cmd->add_option("--n", vn, "variable count");
    verify_cmd->add_flag("--exhaustive", vexhaustive, "enumerate every admissible tuple");
    verify_cmd->add_option("--sample", vsample, "seeded sample size per identity and q");
    verify_cmd->add_option("--seed", vseed, "sampling seed");
    verify_cmd->add_option("--jobs", vjobs, "worker threads");
    verify_cmd->add_option("--budget", vbudget, "max instances per identity and q");
    verify_cmd->add_flag("--fail-fast", vfail_fast, "stop the report stream at first failure");
    verify_cmd->add_flag("--timings", vtimings, "include elapsed_us in the JSON lines");
    verify_cmd->add_option("--format", vformat, "json (stream + summary) | human (summary only)");
    std::string vconfig;
    bool vdump_config = false;
    verify_cmd->add_option("--config", vconfig,
                           "load the full run configuration from a JSON file (other sweep "
                           "flags are ignored)");
    verify_cmd->add_flag("--dump-config", vdump_config,
                         "print the resolved configuration as JSON and exit");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "direct vs charsum timing");
    std::uint32_t bq = 11, bn = 2, bcount = 100, breps = 3;
    std::uint64_t bseed = 42, bbudget = 1ull << 28;
    std::string bout;
    bench_cmd->add_option("--q", bq, "odd prime power");
    bench_cmd->add_option("--n", bn, "variable count");
    bench_cmd->add_option("--count", bcount, "instances");
    bench_cmd->add_option("--seed", bseed, "seed");
    bench_cmd->add_option("--reps", breps, "repetitions per instance (min is kept)");
    bench_cmd->add_option("--out", bout, "CSV output path (default stdout)");
    bench_cmd->add_option("--budget", bbudget, "table memory budget in bytes");

    // export
    auto* export_cmd = app.add_subcommand("export", "export precomputed tables");
    auto* export_binom = export_cmd->add_subcommand("binom", "binomial coefficient table CSV");
    std::uint32_t xq = 5;
    std::uint64_t xbudget = 1ull << 28;
    std::string xout;
    export_binom->add_option("--q", xq, "odd prime power")->required();
    export_binom->add_option("--out", xout, "CSV output path (default stdout)");
    export_binom->add_option("--budget", xbudget, "table memory budget in bytes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*field_cmd) return cmd_field(fp, fr, cache_dir);
        if (*eval_cmd) {
            if (en != 0 && en != split_list(eb).size())
                throw std::invalid_argument("--n disagrees with the --B list length");
            return cmd_eval(eq, ea, eb, ec, ex, eroute, ebudget, eformat);
        }
        if (*verify_cmd)
        {
            VerifyConfig cfg;
            if (!vconfig.empty()) {
                std::ifstream in(vconfig);
                if (!in) throw io_error("cannot open config file: " + vconfig);
                nlohmann::json j;
                in >> j;
                cfg = verify_config_from_json(j);
            } else {
                cfg.suites = vsuites;
                cfg.qs = vqs;
                cfg.n = vn;
                cfg.exhaustive = vexhaustive;
                cfg.sample = vsample;
                cfg.seed = vseed;
                cfg.jobs = vjobs;
                cfg.budget = vbudget;
                cfg.fail_fast = vfail_fast;
                cfg.timings = vtimings;
                cfg.format = vformat;
            }
            if (!vdump_config && cfg.qs.empty())
                throw std::invalid_argument("--q is required");
            return cmd_verify(cfg, vdump_config);
        }
        if (*bench_cmd) return cmd_bench(bq, bn, bcount, bseed, bout, bbudget, breps);
        if (*export_binom) return cmd_export_binom(xq, xout, xbudget);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const capacity_error& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "io: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
