// arith.hpp
// Number-theoretic kernels: segmented prime sieve, deterministic 64-bit
// primality, prime-power decomposition, squareful test, binary digit
// count, and the Sophie Germain overlap count.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <optional>
#include <utility>
#include <vector>

#include "hadord/common.hpp"

namespace hadord {

// -------------------------------------------------------------------------
// Modular arithmetic, 64-bit safe via 128-bit intermediates
// -------------------------------------------------------------------------

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
    return u64((u128(a) * b) % m);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// -------------------------------------------------------------------------
// Deterministic Miller-Rabin for all 64-bit inputs.
// The fixed witness set {2,3,5,...,37} is exact below 3.3 * 10^24.
// -------------------------------------------------------------------------

namespace detail {

constexpr bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace detail

constexpr bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {u64(2), u64(3), u64(5), u64(7), u64(11), u64(13)}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) { d >>= 1; ++r; }
    for (u64 a : {u64(2), u64(3), u64(5), u64(7), u64(11), u64(13),
                  u64(17), u64(19), u64(23), u64(29), u64(31), u64(37)}) {
        if (a % n == 0) continue; // witness collapses to zero
        if (!detail::miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

// -------------------------------------------------------------------------
// Integer roots and perfect powers
// -------------------------------------------------------------------------

inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square(u64 n) {
    u64 r = isqrt(n);
    return r * r == n;
}

namespace detail {

// base^exp, saturating at cap+1 so overflow can never wrap.
constexpr u64 pow_saturating(u64 base, unsigned exp, u64 cap) {
    u128 result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        result *= base;
        if (result > cap) return cap + 1;
    }
    return u64(result);
}

// floor(n^(1/k)) by float estimate plus exact fixup.
inline u64 iroot(u64 n, unsigned k) {
    if (k == 0 || n == 0) return 0;
    if (k == 1) return n;
    u64 r = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / k));
    while (r > 1 && pow_saturating(r, k, n) > n) --r;
    while (pow_saturating(r + 1, k, n) <= n) ++r;
    return r;
}

} // namespace detail

// Decompose n = p^k with p prime, k maximal; nullopt when n is not a
// prime power. No floating point in the accept/reject decision.
inline std::optional<std::pair<u64, unsigned>> prime_power(u64 n) {
    if (n < 2) throw std::domain_error("prime_power: n must be >= 2");
    for (unsigned k = std::bit_width(n) - 1; k >= 1; --k) {
        u64 r = detail::iroot(n, k);
        if (r < 2) continue;
        if (detail::pow_saturating(r, k, n) == n && is_prime_u64(r))
            return std::make_pair(r, k);
    }
    return std::nullopt;
}

// True when every prime divisor of n divides it at least twice.
// 1 is squareful (vacuous condition).
inline bool is_squareful(u64 n) {
    if (n == 0) throw std::domain_error("is_squareful: n must be >= 1");
    if (n == 1) return true;
    auto strip = [&](u64 p) {
        unsigned count = 0;
        while (n % p == 0) { n /= p; ++count; }
        return count;
    };
    if (u64 c = strip(2); c == 1) return false;
    for (u64 p = 3; p * p * p <= n; p += 2) {
        if (u64 c = strip(p); c == 1) return false;
    }
    // Remaining cofactor has all prime factors above its cube root:
    // it is 1, a prime, a prime squared, or a product of two primes.
    if (n == 1) return true;
    return is_perfect_square(n);
}

// Number of 1-bits of odd g (the construction applies to odd g only).
inline unsigned binary_digit_count(u64 g) {
    if (g == 0 || g % 2 == 0)
        throw std::domain_error("binary_digit_count: g must be odd");
    return static_cast<unsigned>(std::popcount(g));
}

// -------------------------------------------------------------------------
// PrimeTable: bit-per-odd-number primality table, built by a segmented
// sieve of Eratosthenes. Output is identical for every segment size.
//
//   bit index i  <->  odd number 2i + 3
//
// Memory: ~limit/16 bytes. The table supports membership queries,
// ascending iteration, and prefix counts.
// -------------------------------------------------------------------------

class PrimeTable {
public:
    static PrimeTable build(u64 limit,
                            std::size_t segment_bytes = std::size_t(1) << 20,
                            u64 memory_budget = kDefaultMemoryBudget) {
        if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
        u64 bits = limit >= 3 ? (limit - 3) / 2 + 1 : 0;
        u64 words = (bits + 63) / 64;
        u64 required = words * 8;
        if (required > memory_budget)
            throw resource_error(
                "sieve_primes: table of " + std::to_string(required) +
                    " bytes exceeds memory budget of " +
                    std::to_string(memory_budget) + " bytes",
                required, memory_budget);
        PrimeTable table;
        table.limit_ = limit;
        table.bits_.assign(words, 0);
        if (bits > 0) table.fill(segment_bytes);
        table.count_ = table.count_words(words);
        return table;
    }

    u64 limit() const { return limit_; }

    // pi(limit)
    u64 count() const { return count_; }

    bool is_prime(u64 n) const {
        if (n < 2) return false;
        if (n == 2) return true;
        if (n % 2 == 0) return false;
        if (n > limit_) throw std::domain_error("PrimeTable: query above limit");
        u64 i = (n - 3) / 2;
        return (bits_[i >> 6] >> (i & 63)) & 1;
    }

    // pi(x) for x <= limit
    u64 count_leq(u64 x) const {
        if (x > limit_) throw std::domain_error("PrimeTable: query above limit");
        if (x < 2) return 0;
        if (x == 2) return 1;
        u64 bits = (x - 3) / 2 + 1;
        u64 full = bits / 64;
        u64 total = 1; // the prime 2
        for (u64 w = 0; w < full; ++w) total += std::popcount(bits_[w]);
        if (u64 rem = bits % 64; rem > 0)
            total += std::popcount(bits_[full] & ((u64(1) << rem) - 1));
        return total;
    }

    // Ascending iteration over all primes <= limit.
    template <class Fn>
    void for_each_prime(Fn&& fn) const {
        fn(u64(2));
        for (u64 w = 0; w < bits_.size(); ++w) {
            u64 word = bits_[w];
            while (word) {
                unsigned b = std::countr_zero(word);
                word &= word - 1;
                fn(2 * (64 * w + b) + 3);
            }
        }
    }

    // Ascending iteration that stops when fn returns false.
    template <class Fn>
    void for_each_prime_while(Fn&& fn) const {
        if (!fn(u64(2))) return;
        for (u64 w = 0; w < bits_.size(); ++w) {
            u64 word = bits_[w];
            while (word) {
                unsigned b = std::countr_zero(word);
                word &= word - 1;
                if (!fn(2 * (64 * w + b) + 3)) return;
            }
        }
    }

private:
    PrimeTable() = default;

    void set(u64 n) { // odd n >= 3
        u64 i = (n - 3) / 2;
        bits_[i >> 6] |= u64(1) << (i & 63);
    }

    void fill(std::size_t segment_bytes) {
        // Base primes to sqrt(limit) by a plain byte sieve.
        u64 root = isqrt(limit_);
        std::vector<u8> small(root + 1, 1);
        std::vector<u64> base;
        for (u64 i = 2; i <= root; ++i) {
            if (!small[i]) continue;
            if (i >= 3) base.push_back(i);
            for (u64 j = i * i; j <= root; j += i) small[j] = 0;
        }
        // Segments cover odd values only; segment_bytes bytes of scratch
        // track 8*segment_bytes odd numbers per pass.
        u64 span = std::max<u64>(u64(segment_bytes) * 8, 64);
        std::vector<u8> seg;
        for (u64 lo_idx = 0, nbits = (limit_ - 3) / 2 + 1; lo_idx < nbits;
             lo_idx += span) {
            u64 hi_idx = std::min(lo_idx + span, nbits) - 1;
            u64 lo = 2 * lo_idx + 3;
            u64 hi = 2 * hi_idx + 3;
            seg.assign(hi_idx - lo_idx + 1, 1);
            for (u64 p : base) {
                u64 start = std::max(p * p, ((lo + p - 1) / p) * p);
                if (start % 2 == 0) start += p;
                for (u64 m = start; m <= hi; m += 2 * p)
                    seg[(m - lo) / 2] = 0;
            }
            for (u64 i = 0; i < seg.size(); ++i)
                if (seg[i]) set(lo + 2 * i);
        }
        // sqrt(limit)-range odd primes were sieved as part of the segments;
        // nothing else to patch up.
    }

    u64 count_words(u64 words) const {
        u64 total = limit_ >= 2 ? 1 : 0;
        for (u64 w = 0; w < words; ++w) total += std::popcount(bits_[w]);
        return total;
    }

    u64 limit_ = 0;
    u64 count_ = 0;
    std::vector<u64> bits_;
};

inline PrimeTable sieve_primes(u64 limit,
                               std::size_t segment_bytes = std::size_t(1) << 20,
                               u64 memory_budget = kDefaultMemoryBudget) {
    return PrimeTable::build(limit, segment_bytes, memory_budget);
}

// -------------------------------------------------------------------------
// Sophie Germain overlap: even m <= x reachable from both Paley residue
// classes, i.e. m-1 and m/2-1 both prime. Count is O(x/log^2 x).
// -------------------------------------------------------------------------

inline u64 sophie_germain_overlap(u64 x, const PrimeTable& primes) {
    if (x < 4) throw std::domain_error("sophie_germain_overlap: x must be >= 4");
    if (primes.limit() + 1 < x)
        throw std::domain_error("sophie_germain_overlap: prime table too small");
    u64 count = 0;
    for (u64 m = 4; m <= x; m += 2) {
        if (primes.is_prime(m - 1) && m / 2 >= 2 && primes.is_prime(m / 2 - 1))
            ++count;
    }
    return count;
}

inline u64 sophie_germain_overlap(u64 x) {
    return sophie_germain_overlap(x, sieve_primes(std::max<u64>(x, 4)));
}

} // namespace hadord
