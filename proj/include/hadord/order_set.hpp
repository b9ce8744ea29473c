// order_set.hpp
// OrderSet: a dense bit-indexed subset of [1, limit] holding achieved
// Hadamard orders, plus its counting, window, density, and coefficient
// operations, and the exact product set of two OrderSets.

#pragma once

#include <bit>
#include <span>
#include <stdexcept>
#include <vector>

#include "hadord/common.hpp"

namespace hadord {

class OrderSet {
public:
    explicit OrderSet(u64 limit, u64 memory_budget = kDefaultMemoryBudget)
        : limit_(limit) {
        if (limit < 1 || limit > (u64(1) << 40))
            throw std::domain_error("OrderSet: limit must be in [1, 2^40]");
        u64 words = (limit + 63) / 64;
        u64 required = words * 8;
        if (required > memory_budget)
            throw resource_error(
                "OrderSet: bitmap of " + std::to_string(required) +
                    " bytes exceeds memory budget of " +
                    std::to_string(memory_budget) + " bytes",
                required, memory_budget);
        words_.assign(words, 0);
    }

    u64 limit() const { return limit_; }

    bool contains(u64 n) const {
        if (n < 1 || n > limit_) return false;
        u64 i = n - 1;
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    void insert(u64 n) {
        if (n < 1 || n > limit_)
            throw std::domain_error("OrderSet::insert: value outside [1, limit]");
        insert_unchecked(n);
    }

    // Caller guarantees 1 <= n <= limit.
    void insert_unchecked(u64 n) {
        u64 i = n - 1;
        words_[i >> 6] |= u64(1) << (i & 63);
    }

    // A(limit)
    u64 popcount() const {
        u64 total = 0;
        for (u64 w : words_) total += std::popcount(w);
        return total;
    }

    // Ascending iteration over members.
    template <class Fn>
    void for_each_member(Fn&& fn) const {
        for (u64 w = 0; w < words_.size(); ++w) {
            u64 word = words_[w];
            while (word) {
                unsigned b = std::countr_zero(word);
                word &= word - 1;
                fn(64 * w + b + 1);
            }
        }
    }

    std::vector<u64> members() const {
        std::vector<u64> out;
        out.reserve(popcount());
        for_each_member([&](u64 n) { out.push_back(n); });
        return out;
    }

    std::span<const u64> words() const { return words_; }
    std::span<u64> words() { return words_; }

    bool operator==(const OrderSet& other) const {
        return limit_ == other.limit_ && words_ == other.words_;
    }

private:
    u64 limit_ = 0;
    std::vector<u64> words_;
};

// -------------------------------------------------------------------------
// Counting and density
// -------------------------------------------------------------------------

// A(x) = #{n <= x | n in set}; exact, monotone in x.
inline u64 counting_function(const OrderSet& set, u64 x) {
    if (x > set.limit())
        throw std::domain_error("counting_function: x above set limit");
    if (x == 0) return 0;
    auto words = set.words();
    u64 full = x / 64;
    u64 total = 0;
    for (u64 w = 0; w < full; ++w) total += std::popcount(words[w]);
    if (u64 rem = x % 64; rem > 0)
        total += std::popcount(words[full] & ((u64(1) << rem) - 1));
    return total;
}

// Members in [lo, hi] (inclusive); lo >= 1.
inline u64 count_in_range(const OrderSet& set, u64 lo, u64 hi) {
    if (hi > set.limit() || lo < 1 || lo > hi + 1)
        throw std::domain_error("count_in_range: bad range");
    if (lo > hi) return 0;
    return counting_function(set, hi) - counting_function(set, lo - 1);
}

struct WindowCounts {
    u64 half_open; // |set ∩ (x/2, x]|
    u64 closed;    // |set ∩ [x/2, x]|
};

// Dyadic window counts a(x) and ā(x). The closed window additionally
// counts x/2 when x is even and x/2 is a member.
inline WindowCounts window_counts(const OrderSet& set, u64 x) {
    if (x < 1 || x > set.limit())
        throw std::domain_error("window_counts: x outside [1, limit]");
    u64 half_open = count_in_range(set, x / 2 + 1, x);
    u64 closed = half_open;
    if (x % 2 == 0 && set.contains(x / 2)) ++closed;
    return {half_open, closed};
}

enum class DensityMode { from4, all };

// from4 counts members in [4, x] only (the density-plot convention,
// which excludes the trivial orders 1 and 2); all uses A(x).
inline double density(const OrderSet& set, u64 x, DensityMode mode) {
    if (x < 1 || x > set.limit())
        throw std::domain_error("density: x outside [1, limit]");
    u64 count = (mode == DensityMode::all)
                    ? counting_function(set, x)
                    : (x >= 4 ? count_in_range(set, 4, x) : 0);
    return static_cast<double>(count) / static_cast<double>(x);
}

// -------------------------------------------------------------------------
// Coefficient series: a_k = A(2^k) - A(2^(k-1)), the number of k-bit
// members; a_0 = A(1). Partial sums reproduce A(2^k).
// -------------------------------------------------------------------------

struct CoefficientSeries {
    std::vector<u64> coeffs; // a_0 .. a_k_max

    unsigned k_max() const { return static_cast<unsigned>(coeffs.size()) - 1; }
};

inline CoefficientSeries coefficient_series(const OrderSet& set, unsigned k_max) {
    if (k_max >= 64 || (u64(1) << k_max) > set.limit())
        throw std::domain_error("coefficient_series: 2^k_max above set limit");
    CoefficientSeries series;
    series.coeffs.resize(k_max + 1);
    u64 prev = counting_function(set, 1);
    series.coeffs[0] = prev;
    for (unsigned k = 1; k <= k_max; ++k) {
        u64 cur = counting_function(set, u64(1) << k);
        series.coeffs[k] = cur - prev;
        prev = cur;
    }
    return series;
}

// -------------------------------------------------------------------------
// Product set {a*b <= limit}
// -------------------------------------------------------------------------

inline OrderSet product_set(const OrderSet& a, const OrderSet& b, u64 limit,
                            u64 memory_budget = kDefaultMemoryBudget) {
    OrderSet out(limit, memory_budget);
    std::vector<u64> b_members = b.members();
    a.for_each_member([&](u64 x) {
        if (x > limit) return;
        u64 cap = limit / x;
        for (u64 y : b_members) {
            if (y > cap) break;
            out.insert(x * y);
        }
    });
    return out;
}

} // namespace hadord
