// cache.hpp
// OrderSet cache file, binary, little-endian:
//
//   offset  size  field
//        0     4  magic "HORD"
//        4     2  version (u16, currently 1)
//        6     8  limit (u64)
//       14     1  rules byte (bit0 kronecker, bit1 r2, bit2 r4)
//       15     8  generator-config hash (u64)
//       23     .  body: ceil(limit/8) bytes of bitmap, bit i = member i+1
//     tail     8  FNV-1a 64 checksum of the body
//
// Loading validates magic, version, and checksum.

#pragma once

#include <array>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "hadord/closure.hpp"
#include "hadord/common.hpp"
#include "hadord/order_set.hpp"

namespace hadord {

inline constexpr u16 kCacheVersion = 1;

inline u64 fnv1a64(const u8* data, std::size_t size) {
    u64 hash = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= data[i];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

inline u64 fnv1a64(const std::string& s) {
    return fnv1a64(reinterpret_cast<const u8*>(s.data()), s.size());
}

namespace detail {

template <class T>
void put_le(std::vector<u8>& out, T value) {
    for (std::size_t i = 0; i < sizeof(T); ++i)
        out.push_back(u8((value >> (8 * i)) & 0xff));
}

template <class T>
T get_le(const u8* p) {
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        value |= T(p[i]) << (8 * i);
    return value;
}

} // namespace detail

// Serialize to the cache byte layout. Word bytes are emitted in
// little-endian order, so body byte k holds members 8k+1 .. 8k+8.
inline std::vector<u8> encode_order_set(const OrderSet& set, ClosureRules rules,
                                        u64 config_hash) {
    std::vector<u8> out;
    u64 body_bytes = (set.limit() + 7) / 8;
    out.reserve(23 + body_bytes + 8);
    out.insert(out.end(), {u8('H'), u8('O'), u8('R'), u8('D')});
    detail::put_le<u16>(out, kCacheVersion);
    detail::put_le<u64>(out, set.limit());
    out.push_back(rules.byte());
    detail::put_le<u64>(out, config_hash);
    std::size_t body_start = out.size();
    auto words = set.words();
    for (u64 i = 0; i < body_bytes; ++i)
        out.push_back(u8((words[i / 8] >> (8 * (i % 8))) & 0xff));
    detail::put_le<u64>(out, fnv1a64(out.data() + body_start, body_bytes));
    return out;
}

inline void save_order_set(const OrderSet& set, const std::string& path,
                           ClosureRules rules, u64 config_hash) {
    std::vector<u8> bytes = encode_order_set(set, rules, config_hash);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw cache_error("cannot open cache file for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              std::streamsize(bytes.size()));
    if (!out) throw cache_error("short write to cache file: " + path);
}

struct LoadedOrderSet {
    OrderSet set;
    u8 rules_byte = 0;
    u64 config_hash = 0;
};

inline LoadedOrderSet load_order_set(const std::string& path,
                                     u64 memory_budget = kDefaultMemoryBudget) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cache_error("cannot open cache file: " + path);
    std::vector<u8> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
    if (bytes.size() < 31) throw cache_error("cache file truncated: " + path);
    if (std::memcmp(bytes.data(), "HORD", 4) != 0)
        throw cache_error("bad cache magic (expected HORD): " + path);
    u16 version = detail::get_le<u16>(bytes.data() + 4);
    if (version != kCacheVersion)
        throw cache_error("unsupported cache version " + std::to_string(version) +
                          ": " + path);
    u64 limit = detail::get_le<u64>(bytes.data() + 6);
    u8 rules_byte = bytes[14];
    u64 config_hash = detail::get_le<u64>(bytes.data() + 15);
    u64 body_bytes = (limit + 7) / 8;
    if (bytes.size() != 23 + body_bytes + 8)
        throw cache_error("cache file size mismatch: " + path);
    const u8* body = bytes.data() + 23;
    u64 checksum = detail::get_le<u64>(bytes.data() + 23 + body_bytes);
    if (fnv1a64(body, body_bytes) != checksum)
        throw cache_error("cache body checksum mismatch: " + path);
    LoadedOrderSet loaded{OrderSet(limit, memory_budget), rules_byte, config_hash};
    auto words = loaded.set.words();
    for (u64 i = 0; i < body_bytes; ++i)
        words[i / 8] |= u64(body[i]) << (8 * (i % 8));
    return loaded;
}

} // namespace hadord
