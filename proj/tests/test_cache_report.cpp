#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "ffhyper/field_cache.hpp"
#include "ffhyper/report.hpp"

using namespace ffhyper;

TEST_SUITE_BEGIN("cache_report");

TEST_CASE("field cache round trip preserves every table") {
    for (auto [p, r] : {std::pair{5u, 1u}, {3u, 2u}, {7u, 1u}}) {
        FieldCtx f = build_field(p, r);
        auto bytes = encode_field_cache(f);
        FieldCtx g = decode_field_cache(bytes);
        CHECK(g.p == f.p);
        CHECK(g.r == f.r);
        CHECK(g.modulus == f.modulus);
        CHECK(g.generator == f.generator);
        CHECK(g.exp == f.exp);
        CHECK(g.dlog_t == f.dlog_t);
    }
}

TEST_CASE("cache rebuilds are byte-identical (checksum stable)") {
    FieldCtx a = build_field(5, 1), b = build_field(5, 1);
    CHECK(encode_field_cache(a) == encode_field_cache(b));
    CHECK(field_cache_checksum(encode_field_cache(a)) ==
          field_cache_checksum(encode_field_cache(b)));
}

TEST_CASE("corruption is detected") {
    FieldCtx f = build_field(5, 1);
    auto bytes = encode_field_cache(f);
    auto bad = bytes;
    bad[10] ^= 0xff;
    CHECK_THROWS_AS(decode_field_cache(bad), io_error);
    auto truncated = bytes;
    truncated.resize(truncated.size() - 3);
    CHECK_THROWS_AS(decode_field_cache(truncated), io_error);
    auto wrong_magic = bytes;
    wrong_magic[0] = 'X';
    CHECK_THROWS_AS(decode_field_cache(wrong_magic), io_error);
}

TEST_CASE("file write/read with JSON mirror") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ffhyper_cache_test";
    fs::create_directories(dir);
    FieldCtx f = build_field(3, 2);
    std::string path = (dir / field_cache_filename(3, 2)).string();
    write_field_cache(f, path);
    FieldCtx g = read_field_cache(path);
    CHECK(g.exp == f.exp);
    CHECK(fs::exists(path + ".json"));
    auto j = field_cache_json(f);
    CHECK(j["q"] == 9);
    CHECK(j["modulus"] == std::vector<std::uint32_t>{1, 0, 1});
    fs::remove_all(dir);
}

TEST_SUITE_END();
