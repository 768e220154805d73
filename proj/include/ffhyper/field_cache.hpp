#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffhyper/errors.hpp"
#include "ffhyper/finite_field.hpp"

namespace ffhyper {

/// Versioned binary field cache:
///   magic "FFHC" | u32 version | u32 p | u32 r | u32 q
///   | u32 modulus[r+1] | u32 generator
///   | u32 element_coeffs[q*r] | u32 dlog[q-1]   (dlog of elements 1..q-1)
///   | u64 fnv1a checksum of everything before it
/// All integers little-endian. A JSON mirror with the same payload sits next
/// to it for debugging.
inline constexpr std::uint32_t kFieldCacheVersion = 1;

namespace cache_detail {

inline std::uint64_t fnv1a(const std::uint8_t* data, std::size_t len) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t& pos) {
    if (pos + 4 > in.size()) throw io_error("field cache truncated");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[pos + i]) << (8 * i);
    pos += 4;
    return v;
}

inline std::uint64_t get_u64(const std::vector<std::uint8_t>& in, std::size_t& pos) {
    if (pos + 8 > in.size()) throw io_error("field cache truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
    pos += 8;
    return v;
}

} // namespace cache_detail

inline std::vector<std::uint8_t> encode_field_cache(const FieldCtx& f) {
    using namespace cache_detail;
    std::vector<std::uint8_t> out;
    out.push_back('F');
    out.push_back('F');
    out.push_back('H');
    out.push_back('C');
    put_u32(out, kFieldCacheVersion);
    put_u32(out, f.p);
    put_u32(out, f.r);
    put_u32(out, f.q);
    for (std::uint32_t c : f.modulus) put_u32(out, c);
    put_u32(out, f.generator);
    for (Elem e = 0; e < f.q; ++e)
        for (std::uint32_t c : f.coeffs(e)) put_u32(out, c);
    for (Elem e = 1; e < f.q; ++e) put_u32(out, f.dlog_t[e]);
    put_u64(out, fnv1a(out.data(), out.size()));
    return out;
}

inline std::uint64_t field_cache_checksum(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8) throw io_error("field cache truncated");
    std::size_t pos = bytes.size() - 8;
    return cache_detail::get_u64(bytes, pos);
}

/// Decodes and fully validates a cache image (magic, version, checksum,
/// element enumeration consistency); returns the reconstructed context.
inline FieldCtx decode_field_cache(const std::vector<std::uint8_t>& bytes) {
    using namespace cache_detail;
    if (bytes.size() < 24 || bytes[0] != 'F' || bytes[1] != 'F' || bytes[2] != 'H' ||
        bytes[3] != 'C')
        throw io_error("field cache: bad magic");
    std::uint64_t stored = field_cache_checksum(bytes);
    std::uint64_t actual = fnv1a(bytes.data(), bytes.size() - 8);
    if (stored != actual) throw io_error("field cache: checksum mismatch");
    std::size_t pos = 4;
    std::uint32_t version = get_u32(bytes, pos);
    if (version != kFieldCacheVersion)
        throw io_error("field cache: unsupported format version " + std::to_string(version));
    std::uint32_t p = get_u32(bytes, pos);
    std::uint32_t r = get_u32(bytes, pos);
    std::uint32_t q = get_u32(bytes, pos);
    FieldCtx f;
    f.p = p;
    f.r = r;
    f.q = q;
    f.modulus.resize(r + 1);
    for (auto& c : f.modulus) c = get_u32(bytes, pos);
    f.generator = get_u32(bytes, pos);
    for (Elem e = 0; e < q; ++e) {
        std::vector<std::uint32_t> c(r);
        for (auto& ci : c) ci = get_u32(bytes, pos);
        if (f.from_coeffs(c) != e) throw io_error("field cache: element enumeration corrupt");
    }
    f.dlog_t.assign(q, 0);
    f.exp.assign(q - 1, 0);
    for (Elem e = 1; e < q; ++e) {
        std::uint32_t k = get_u32(bytes, pos);
        if (k >= q - 1) throw io_error("field cache: dlog entry out of range");
        f.dlog_t[e] = k;
        f.exp[k] = e;
    }
    if (f.exp[0] != f.one()) throw io_error("field cache: dlog(1) != 0");
    return f;
}

inline nlohmann::ordered_json field_cache_json(const FieldCtx& f) {
    nlohmann::ordered_json j;
    j["format_version"] = kFieldCacheVersion;
    j["p"] = f.p;
    j["r"] = f.r;
    j["q"] = f.q;
    j["modulus"] = f.modulus;
    j["generator"] = f.generator;
    nlohmann::ordered_json elems = nlohmann::ordered_json::array();
    for (Elem e = 0; e < f.q; ++e) elems.push_back(f.coeffs(e));
    j["elements"] = elems;
    std::vector<std::uint32_t> dl(f.dlog_t.begin() + 1, f.dlog_t.end());
    j["dlog"] = dl;
    auto bytes = encode_field_cache(f);
    j["checksum"] = field_cache_checksum(bytes);
    return j;
}

inline std::string field_cache_filename(std::uint32_t p, std::uint32_t r) {
    return "field_p" + std::to_string(p) + "_r" + std::to_string(r) + "_v" +
           std::to_string(kFieldCacheVersion) + ".ffc";
}

inline void write_field_cache(const FieldCtx& f, const std::string& path) {
    auto bytes = encode_field_cache(f);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open cache file for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw io_error("short write to cache file: " + path);
    std::ofstream mirror(path + ".json", std::ios::trunc);
    if (!mirror) throw io_error("cannot open cache mirror for writing: " + path + ".json");
    mirror << field_cache_json(f).dump(2) << "\n";
}

inline FieldCtx read_field_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open cache file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode_field_cache(bytes);
}

} // namespace ffhyper
