#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "ffhyper/identities.hpp"

namespace ffhyper {

/// Deterministic seeded generator (splitmix64); identical draws on every
/// platform, independent of the thread count.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }
};

/// One parameter tuple queued for verification.
struct SweepInstance {
    IdentityId id{};
    std::uint32_t A = 0;
    std::vector<std::uint32_t> Bs, Cs;
    std::vector<Elem> xs;
    std::uint32_t k = 0, l = 0;
    Elem t = 0;
};

struct SweepOptions {
    std::vector<IdentityId> suite;
    std::vector<std::uint32_t> qs;
    std::uint32_t n = 2;
    bool exhaustive = false;
    std::uint32_t sample_count = 500;
    std::uint64_t seed = 42;
    std::uint32_t jobs = 1;
    std::uint64_t budget = 5'000'000; // max instances per (identity, q)
    bool fail_fast = false;
};

struct SweepSummary {
    std::uint64_t total = 0;
    std::uint64_t failures = 0;
    std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> per_identity; // pass/fail
    std::optional<VerificationReport> first_failure;
    double max_mirror_gap = 0.0;
    double max_exact_float_gap = 0.0;
};

inline std::vector<IdentityId> all_identities() {
    return {IdentityId::reduction_split,  IdentityId::reduction_cov1,
            IdentityId::reduction_cov2,   IdentityId::eps_reduction,
            IdentityId::equal_reduction,  IdentityId::genfunc_forward,
            IdentityId::genfunc_reversed, IdentityId::genfunc_local,
            IdentityId::route_equivalence};
}

/// Splits q into (p, r) and validates the odd-prime-power requirement.
inline std::pair<std::uint32_t, std::uint32_t> factor_prime_power(std::uint32_t q) {
    if (q < 3) throw std::domain_error("q must be an odd prime power >= 3");
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;
    std::uint32_t r = 0, v = q;
    while (v % p == 0) {
        v /= p;
        ++r;
    }
    if (v != 1) throw std::domain_error("q = " + std::to_string(q) + " is not a prime power");
    if (p == 2) throw std::domain_error("q = " + std::to_string(q) + " has p = 2; p must be odd");
    return {p, r};
}

namespace detail {

inline VerificationReport run_instance(const VerifyContext& v, const SweepInstance& in) {
    const FieldCtx& f = v.field;
    SeriesParams p;
    p.A = Character{&f, in.A};
    for (std::uint32_t b : in.Bs) p.Bs.push_back(Character{&f, b});
    for (std::uint32_t c : in.Cs) p.Cs.push_back(Character{&f, c});
    p.xs = in.xs;
    switch (in.id) {
        case IdentityId::reduction_split: return verify_reduction_split(v, p, in.k, in.l);
        case IdentityId::reduction_cov1: return verify_reduction_cov1(v, p, in.k, in.l);
        case IdentityId::reduction_cov2: return verify_reduction_cov2(v, p, in.k, in.l, in.t);
        case IdentityId::eps_reduction: return verify_eps_reduction(v, p, in.k);
        case IdentityId::equal_reduction: return verify_equal_reduction(v, p, in.k);
        case IdentityId::genfunc_forward: return verify_genfunc_forward(v, p, in.t);
        case IdentityId::genfunc_reversed: return verify_genfunc_reversed(v, p, in.t);
        case IdentityId::genfunc_local: return verify_genfunc_local(v, p, in.k, in.t);
        case IdentityId::route_equivalence: return verify_route_equivalence(v, p);
    }
    throw internal_error("run_instance: bad identity id");
}

/// Admissibility per identity; mirrors the verify_* preconditions.
inline bool admissible(IdentityId id, const FieldCtx& f, const SweepInstance& in,
                       std::uint32_t n) {
    switch (id) {
        case IdentityId::route_equivalence: return true;
        case IdentityId::reduction_split:
        case IdentityId::reduction_cov1:
            return n >= 2 && in.k != in.l && in.xs[in.l] != 0;
        case IdentityId::reduction_cov2:
            return n >= 2 && in.k != in.l && in.xs[in.l] != 0 && in.xs[in.k] != 0;
        case IdentityId::eps_reduction:
            return n >= 2 && in.Bs[in.k] == 0 && in.xs[in.k] != f.one();
        case IdentityId::equal_reduction:
            return n >= 2 && in.Cs[in.k] == in.Bs[in.k] && in.xs[in.k] != 0 &&
                   in.xs[in.k] != f.one();
        case IdentityId::genfunc_forward:
        case IdentityId::genfunc_reversed:
            return in.t != 0 && in.t != f.one();
        case IdentityId::genfunc_local:
            return in.t != 0 && in.t != f.one() && in.k < n;
    }
    return false;
}

inline bool uses_kl(IdentityId id) {
    return id == IdentityId::reduction_split || id == IdentityId::reduction_cov1 ||
           id == IdentityId::reduction_cov2;
}

inline bool uses_k(IdentityId id) {
    return uses_kl(id) || id == IdentityId::eps_reduction ||
           id == IdentityId::equal_reduction || id == IdentityId::genfunc_local;
}

inline bool uses_t(IdentityId id) {
    return id == IdentityId::reduction_cov2 || id == IdentityId::genfunc_forward ||
           id == IdentityId::genfunc_reversed || id == IdentityId::genfunc_local;
}

/// Exhaustive enumeration in canonical (odometer) order, precondition-filtered.
inline std::vector<SweepInstance> enumerate_exhaustive(IdentityId id, const FieldCtx& f,
                                                       std::uint32_t n, std::uint64_t budget) {
    const std::uint32_t m = f.order();
    const std::uint32_t q = f.q;
    // raw space: k (and l) slots, A, B^n (n-1 free slots for eps), C^n, x^n, t
    std::vector<std::uint32_t> radix;
    if (uses_k(id)) radix.push_back(n);
    if (uses_kl(id)) radix.push_back(n);
    radix.push_back(m); // A
    std::uint32_t free_b = (id == IdentityId::eps_reduction) ? n - 1 : n;
    for (std::uint32_t i = 0; i < free_b; ++i) radix.push_back(m);
    std::uint32_t free_c = (id == IdentityId::equal_reduction) ? n - 1 : n;
    for (std::uint32_t i = 0; i < free_c; ++i) radix.push_back(m);
    for (std::uint32_t i = 0; i < n; ++i) radix.push_back(q);
    if (uses_t(id)) radix.push_back(q);

    std::uint64_t raw = 1;
    for (std::uint32_t r : radix) {
        raw *= r;
        if (raw > budget)
            throw capacity_error("sweep: exhaustive space for " + std::string(to_string(id)) +
                                 " exceeds the instance budget");
    }

    std::vector<SweepInstance> out;
    std::vector<std::uint32_t> digit(radix.size(), 0);
    while (true) {
        std::size_t pos = 0;
        SweepInstance in;
        in.id = id;
        if (uses_k(id)) in.k = digit[pos++];
        if (uses_kl(id)) in.l = digit[pos++];
        in.A = digit[pos++];
        in.Bs.resize(n);
        if (id == IdentityId::eps_reduction) {
            for (std::uint32_t i = 0, o = 0; i < n; ++i)
                in.Bs[i] = (i == in.k) ? 0 : digit[pos + o++];
            pos += n - 1;
        } else {
            for (std::uint32_t i = 0; i < n; ++i) in.Bs[i] = digit[pos++];
        }
        in.Cs.resize(n);
        if (id == IdentityId::equal_reduction) {
            for (std::uint32_t i = 0, o = 0; i < n; ++i)
                in.Cs[i] = (i == in.k) ? in.Bs[in.k] : digit[pos + o++];
            pos += n - 1;
        } else {
            for (std::uint32_t i = 0; i < n; ++i) in.Cs[i] = digit[pos++];
        }
        in.xs.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) in.xs[i] = digit[pos++];
        if (uses_t(id)) in.t = digit[pos++];
        if (admissible(id, f, in, n)) out.push_back(std::move(in));

        std::size_t c = 0;
        while (c < digit.size() && ++digit[c] == radix[c]) digit[c++] = 0;
        if (c == digit.size()) break;
    }
    return out;
}

inline std::vector<SweepInstance> sample_instances(IdentityId id, const FieldCtx& f,
                                                   std::uint32_t n, std::uint32_t count,
                                                   SplitMix64& rng) {
    const std::uint32_t m = f.order();
    std::vector<SweepInstance> out;
    out.reserve(count);
    std::uint64_t attempts = 0;
    const std::uint64_t max_attempts = static_cast<std::uint64_t>(count) * 10000 + 10000;
    while (out.size() < count) {
        if (++attempts > max_attempts)
            throw capacity_error("sweep: rejection sampling failed to find admissible tuples");
        SweepInstance in;
        in.id = id;
        in.A = rng.below(m);
        in.Bs.resize(n);
        in.Cs.resize(n);
        in.xs.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) in.Bs[i] = rng.below(m);
        for (std::uint32_t i = 0; i < n; ++i) in.Cs[i] = rng.below(m);
        for (std::uint32_t i = 0; i < n; ++i) in.xs[i] = rng.below(f.q);
        if (uses_k(id)) in.k = rng.below(n);
        if (uses_kl(id)) in.l = rng.below(n);
        if (uses_t(id)) in.t = rng.below(f.q);
        if (id == IdentityId::eps_reduction) in.Bs[in.k] = 0;
        if (id == IdentityId::equal_reduction) in.Cs[in.k] = in.Bs[in.k];
        if (!admissible(id, f, in, n)) continue;
        out.push_back(std::move(in));
    }
    return out;
}

} // namespace detail

/// Runs the configured sweep; reports are delivered to the sink in canonical
/// instance order regardless of the worker count. Returns aggregate counts.
inline SweepSummary sweep(const SweepOptions& opt,
                          const std::function<void(const VerificationReport&)>& sink) {
    SweepSummary sum;
    if (opt.n < 1) throw std::domain_error("sweep: n must be >= 1");
    std::vector<IdentityId> suite = opt.suite.empty() ? all_identities() : opt.suite;
    bool stop_emitting = false;

    for (std::uint32_t q : opt.qs) {
        auto [p, r] = factor_prime_power(q);
        FieldCtx field = build_field(p, r);
        CycloCtx cyclo(field.order());
        BinomialTable table = build_binom_table(field, cyclo);
        VerifyContext vctx{field, cyclo, &table};

        for (IdentityId id : suite) {
            if ((detail::uses_k(id) || detail::uses_kl(id)) && opt.n < 2 &&
                id != IdentityId::genfunc_local)
                throw std::domain_error(std::string(to_string(id)) + " requires n >= 2");
            std::vector<SweepInstance> instances;
            if (opt.exhaustive) {
                instances = detail::enumerate_exhaustive(id, field, opt.n, opt.budget);
            } else {
                SplitMix64 rng(opt.seed ^ (static_cast<std::uint64_t>(q) << 32) ^
                               static_cast<std::uint64_t>(id));
                instances = detail::sample_instances(id, field, opt.n, opt.sample_count, rng);
            }

            std::vector<VerificationReport> results(instances.size());
            std::atomic<std::size_t> next{0};
            std::uint32_t workers = opt.jobs == 0 ? 1 : opt.jobs;
            if (workers > instances.size())
                workers = static_cast<std::uint32_t>(instances.size() ? instances.size() : 1);
            std::exception_ptr first_error = nullptr;
            std::mutex err_mutex;
            auto body = [&]() {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= instances.size()) break;
                    try {
                        results[i] = detail::run_instance(vctx, instances[i]);
                    } catch (...) {
                        std::lock_guard<std::mutex> g(err_mutex);
                        if (!first_error) first_error = std::current_exception();
                        break;
                    }
                }
            };
            if (workers <= 1) {
                body();
            } else {
                std::vector<std::thread> pool;
                for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(body);
                for (auto& th : pool) th.join();
            }
            if (first_error) std::rethrow_exception(first_error);

            auto& slot = sum.per_identity[to_string(id)];
            for (const auto& rep : results) {
                ++sum.total;
                if (rep.equal) {
                    ++slot.first;
                } else {
                    ++slot.second;
                    ++sum.failures;
                    if (!sum.first_failure) sum.first_failure = rep;
                }
                if (rep.mirror_gap > sum.max_mirror_gap) sum.max_mirror_gap = rep.mirror_gap;
                if (rep.exact_float_gap > sum.max_exact_float_gap)
                    sum.max_exact_float_gap = rep.exact_float_gap;
                if (!stop_emitting && sink) sink(rep);
                if (opt.fail_fast && !rep.equal) stop_emitting = true;
            }
        }
    }
    return sum;
}

} // namespace ffhyper
