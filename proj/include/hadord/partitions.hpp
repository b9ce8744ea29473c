// partitions.hpp
// Exact partition numbers p(n) via the pentagonal-number recurrence,
// plus the Hardy-Ramanujan closed-form estimate.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "hadord/common.hpp"

namespace hadord {

// p(0..n_max) as exact big integers. p(1000) has 32 digits, so 64-bit
// arithmetic is not an option here.
class PartitionCache {
public:
    explicit PartitionCache(std::size_t n_max) : values_(n_max + 1) {
        values_[0] = 1;
        for (std::size_t n = 1; n <= n_max; ++n) {
            mpz_class total = 0;
            for (std::size_t k = 1;; ++k) {
                // generalized pentagonal numbers k(3k-1)/2 and k(3k+1)/2
                std::size_t g1 = k * (3 * k - 1) / 2;
                std::size_t g2 = k * (3 * k + 1) / 2;
                if (g1 > n) break;
                bool plus = (k % 2 == 1);
                if (plus) total += values_[n - g1];
                else      total -= values_[n - g1];
                if (g2 <= n) {
                    if (plus) total += values_[n - g2];
                    else      total -= values_[n - g2];
                }
            }
            values_[n] = total;
        }
    }

    std::size_t n_max() const { return values_.size() - 1; }

    const mpz_class& value(std::size_t n) const {
        if (n >= values_.size())
            throw std::domain_error("PartitionCache: n above n_max");
        return values_[n];
    }

private:
    std::vector<mpz_class> values_;
};

inline mpz_class partition_count(std::size_t n) {
    return PartitionCache(n).value(n);
}

// exp(pi * sqrt(2n/3)) / (4 n sqrt(3)); p(n) is asymptotic to this.
inline double hardy_ramanujan_estimate(u64 n) {
    if (n == 0) throw std::domain_error("hardy_ramanujan_estimate: n must be >= 1");
    double pi = 3.14159265358979323846;
    double x = static_cast<double>(n);
    return std::exp(pi * std::sqrt(2.0 * x / 3.0)) / (4.0 * x * std::sqrt(3.0));
}

} // namespace hadord
