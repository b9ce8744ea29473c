// common.hpp
// Shared integer typedefs and error types.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hadord {

using u8   = std::uint8_t;
using u16  = std::uint16_t;
using u32  = std::uint32_t;
using u64  = std::uint64_t;
using i64  = std::int64_t;
using u128 = unsigned __int128;

// Allocation requests above this default are rejected with resource_error
// unless the caller passes a larger budget. 2 GiB covers limits up to 2^33
// (1 GiB bitmap) plus working storage.
inline constexpr u64 kDefaultMemoryBudget = u64(2) << 30;

// Thrown when a requested computation would exceed the memory budget.
// Carries the exact byte counts so callers can report them.
class resource_error : public std::runtime_error {
public:
    resource_error(std::string what, u64 required_bytes, u64 budget_bytes)
        : std::runtime_error(std::move(what)),
          required_bytes(required_bytes),
          budget_bytes(budget_bytes) {}

    u64 required_bytes;
    u64 budget_bytes;
};

// Thrown on cache file corruption or header mismatch.
class cache_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hadord
