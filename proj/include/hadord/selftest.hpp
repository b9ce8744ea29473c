// selftest.hpp
// Randomized property suites: closure engine vs brute-force oracle, the
// dyadic product-density inequality, the coefficient convolution bound,
// Exp-transform domination of closure counts, and partition cross-checks.
// All suites are seeded and deterministic.

#pragma once

#include <bit>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hadord/analysis.hpp"
#include "hadord/closure.hpp"
#include "hadord/common.hpp"
#include "hadord/order_set.hpp"
#include "hadord/partitions.hpp"

namespace hadord {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::vector<std::string> messages;

    bool passed() const { return failures == 0; }

    void fail(std::string message) {
        ++failures;
        if (messages.size() < 20) messages.push_back(std::move(message));
    }
};

namespace detail {

inline u64 rand_in(std::mt19937_64& rng, u64 lo, u64 hi) {
    return lo + rng() % (hi - lo + 1);
}

inline std::vector<u64> random_generators(std::mt19937_64& rng, int lo_count,
                                          int hi_count, u64 lo, u64 hi) {
    int n = int(rand_in(rng, lo_count, hi_count));
    std::vector<u64> gens(n);
    for (auto& g : gens) g = rand_in(rng, lo, hi);
    return gens;
}

inline std::string join_u64(const std::vector<u64>& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? "," : "") << v[i];
    return out.str();
}

// Greedily drop generators while the engine/oracle mismatch persists.
inline std::vector<u64> minimize_closure_failure(std::vector<u64> gens,
                                                 u64 limit, ClosureRules rules) {
    auto mismatches = [&](const std::vector<u64>& g) {
        return !(rule_closure(g, limit, rules) ==
                 brute_force_closure(g, limit, rules));
    };
    bool shrunk = true;
    while (shrunk && gens.size() > 1) {
        shrunk = false;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            std::vector<u64> smaller = gens;
            smaller.erase(smaller.begin() + i);
            if (mismatches(smaller)) {
                gens = std::move(smaller);
                shrunk = true;
                break;
            }
        }
    }
    return gens;
}

// Prefix counts pc[i] = A(i) for O(1) window counts in the scan suites.
inline std::vector<u32> prefix_counts(const OrderSet& set) {
    std::vector<u32> pc(set.limit() + 1, 0);
    set.for_each_member([&](u64 n) { pc[n] = 1; });
    for (u64 i = 1; i < pc.size(); ++i) pc[i] += pc[i - 1];
    return pc;
}

} // namespace detail

// -------------------------------------------------------------------------
// Suite 1: rule_closure equals brute_force_closure bit-for-bit, for every
// rule combination, on seeded random generator sets.
// -------------------------------------------------------------------------

inline SuiteResult run_closure_oracle_suite(u64 seed, int n_sets = 100,
                                            bool inject_fault = false) {
    SuiteResult result{"closure_oracle"};
    std::mt19937_64 rng(seed);
    std::vector<ClosureRules> combos;
    for (int mask = 1; mask < 8; ++mask)
        combos.push_back({(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0});
    for (int i = 0; i < n_sets; ++i) {
        std::vector<u64> gens = detail::random_generators(rng, 3, 8, 4, 200);
        u64 limit = detail::rand_in(rng, 1000, 20000);
        for (const ClosureRules& rules : combos) {
            ++result.cases;
            OrderSet fast = rule_closure(gens, limit, rules);
            OrderSet slow = brute_force_closure(gens, limit, rules);
            if (inject_fault && result.cases == 1) {
                u64 victim = limit / 2; // negative control: one flipped bit
                while (victim <= limit && fast.contains(victim)) ++victim;
                if (victim > limit) victim = limit;
                fast.insert(victim);
            }
            if (!(fast == slow)) {
                std::vector<u64> minimal =
                    inject_fault
                        ? gens
                        : detail::minimize_closure_failure(gens, limit, rules);
                std::ostringstream msg;
                msg << "rule_closure != brute_force_closure (bitmap mismatch)"
                    << (inject_fault ? " [injected fault]" : "")
                    << ": generators {" << detail::join_u64(minimal)
                    << "} limit " << limit << " rules kron=" << rules.kronecker
                    << " r2=" << rules.r2 << " r4=" << rules.r4;
                result.fail(msg.str());
            }
        }
    }
    return result;
}

// -------------------------------------------------------------------------
// Suite 2: the window inequality
//   c(x) <= sum_k (b(x/2^(k-1)) + b(x/2^k)) * abar(2^k)
// at every x in [2, limit/2] with b(x) > 0, for C = AB over seeded
// monoid pairs, in exact integer arithmetic; the floating-point
// lemmaA_rhs entry point is spot-checked against the same sum.
// -------------------------------------------------------------------------

inline SuiteResult run_eq9_suite(u64 seed, int n_pairs = 20, u64 limit = 1 << 16) {
    SuiteResult result{"eq9"};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < n_pairs; ++i) {
        OrderSet a = multiplicative_closure(
            detail::random_generators(rng, 2, 5, 2, 300), limit);
        OrderSet b = multiplicative_closure(
            detail::random_generators(rng, 2, 5, 2, 300), limit);
        OrderSet c = product_set(a, b, limit);
        std::vector<u32> pa = detail::prefix_counts(a);
        std::vector<u32> pb = detail::prefix_counts(b);
        std::vector<u32> pc = detail::prefix_counts(c);
        auto half_open = [](const std::vector<u32>& p, u64 x) {
            return u64(p[x] - p[x / 2]);
        };
        auto closed = [](const std::vector<u32>& p, u64 x) {
            u64 lo = (x + 1) / 2;
            return u64(p[x] - p[lo - 1]);
        };
        ++result.cases;
        u64 violations = 0;
        u64 first_bad_x = 0;
        for (u64 x = 2; x <= limit / 2; ++x) {
            u64 bx = half_open(pb, x);
            if (bx == 0) continue;
            u64 cx = half_open(pc, x);
            u64 rhs = 0;
            for (u32 k = 1; k <= ceil_log2(x); ++k)
                rhs += (half_open(pb, x >> (k - 1)) + half_open(pb, x >> k)) *
                       closed(pa, u64(1) << k);
            if (cx > rhs) {
                ++violations;
                if (first_bad_x == 0) first_bad_x = x;
            }
        }
        if (violations > 0) {
            std::ostringstream msg;
            msg << "window inequality violated (pair " << i << "): " << violations
                << " x values, first at x=" << first_bad_x;
            result.fail(msg.str());
        }
        // spot-check the public entry point against the integer sum
        for (u64 x = 2; x <= limit / 2; x = x * 2 + 1) {
            u64 bx = half_open(pb, x);
            if (bx == 0) continue;
            u64 rhs = 0;
            for (u32 k = 1; k <= ceil_log2(x); ++k)
                rhs += (half_open(pb, x >> (k - 1)) + half_open(pb, x >> k)) *
                       closed(pa, u64(1) << k);
            double got = lemmaA_rhs(a, b, x);
            double want = double(rhs) / double(bx);
            ++result.cases;
            if (std::abs(got - want) > 1e-9 * std::max(1.0, want))
                result.fail("lemmaA_rhs disagrees with integer sum at x=" +
                            std::to_string(x));
        }
    }
    return result;
}

// -------------------------------------------------------------------------
// Suite 3: coefficient convolution bound c_n <= sum_k a_k B(2^(n-k))
// for C = AB, coefficientwise.
// -------------------------------------------------------------------------

inline SuiteResult run_lemma9_suite(u64 seed, int n_pairs = 20,
                                    u64 limit = 1 << 16) {
    SuiteResult result{"lemma9"};
    std::mt19937_64 rng(seed);
    unsigned k_max = ceil_log2(limit);
    for (int i = 0; i < n_pairs; ++i) {
        OrderSet a = multiplicative_closure(
            detail::random_generators(rng, 2, 5, 2, 300), limit);
        OrderSet b = multiplicative_closure(
            detail::random_generators(rng, 2, 5, 2, 300), limit);
        OrderSet c = product_set(a, b, limit);
        CoefficientSeries sa = coefficient_series(a, k_max);
        CoefficientSeries sc = coefficient_series(c, k_max);
        ++result.cases;
        for (unsigned n = 0; n <= k_max; ++n) {
            u64 bound = 0;
            for (unsigned k = 0; k <= n; ++k)
                bound += sa.coeffs[k] * counting_function(b, u64(1) << (n - k));
            if (sc.coeffs[n] > bound) {
                result.fail("convolution bound violated (pair " +
                            std::to_string(i) + ") at n=" + std::to_string(n));
                break;
            }
        }
    }
    return result;
}

// -------------------------------------------------------------------------
// Suite 4: partial sums of Exp(a(z)) dominate closure counts. The input
// series buckets each generator at floor(log2 g) (the z^floor(log2 n)
// series): floor degrees are superadditive under multiplication, so
// every monoid element m <= 2^n maps to a distinct multiset of degree
// <= n. The right-closed window bucketing does not have this property
// (two generators just above a power of two overshoot by one).
// -------------------------------------------------------------------------

inline CoefficientSeries floor_bucketed_series(const std::vector<u64>& values,
                                               unsigned k_max) {
    CoefficientSeries series;
    series.coeffs.assign(k_max + 1, 0);
    for (u64 v : values) {
        unsigned k = unsigned(std::bit_width(v)) - 1; // floor(log2 v)
        if (k <= k_max) ++series.coeffs[k];
    }
    return series;
}

inline SuiteResult run_exp_domination_suite(u64 seed, int n_sets = 20,
                                            u64 limit = 1 << 16) {
    SuiteResult result{"exp_dom"};
    std::mt19937_64 rng(seed);
    unsigned k_max = ceil_log2(limit);
    for (int i = 0; i < n_sets; ++i) {
        std::vector<u64> gens = detail::random_generators(rng, 3, 8, 2, 200);
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        CoefficientSeries series = floor_bucketed_series(gens, k_max);
        ExpSeries exp = exp_transform(series, k_max);
        OrderSet monoid = multiplicative_closure(gens, limit);
        ++result.cases;
        mpq_class partial = 0;
        for (unsigned n = 0; n <= k_max; ++n) {
            partial += exp.coeffs[n];
            mpq_class count(
                static_cast<unsigned long>(counting_function(monoid, u64(1) << n)));
            if (partial < count) {
                result.fail("Exp partial sum below closure count (set " +
                            std::to_string(i) + ") at n=" + std::to_string(n));
                break;
            }
        }
    }
    return result;
}

// -------------------------------------------------------------------------
// Suite 5: partition cross-checks. The pentagonal recurrence must match
// (a) one-by-one enumeration for n <= 60 and (b) an independent
// largest-part DP at n = 1000; the Hardy-Ramanujan ratio must sit in
// (0.9, 1.1) at n in {500, 1000} and tighten with n.
// -------------------------------------------------------------------------

namespace detail {

// Counts partitions by enumerating each one (test oracle; exponential).
inline u64 count_partitions_enum(u64 n, u64 max_part) {
    if (n == 0) return 1;
    u64 total = 0;
    for (u64 part = std::min(n, max_part); part >= 1; --part)
        total += count_partitions_enum(n - part, part);
    return total;
}

// Independent DP: coin-style accumulation over part sizes.
inline std::vector<mpz_class> partition_dp(std::size_t n_max) {
    std::vector<mpz_class> ways(n_max + 1, mpz_class(0));
    ways[0] = 1;
    for (std::size_t part = 1; part <= n_max; ++part)
        for (std::size_t m = part; m <= n_max; ++m)
            ways[m] += ways[m - part];
    return ways;
}

} // namespace detail

inline SuiteResult run_partition_suite() {
    SuiteResult result{"partition"};
    PartitionCache cache(1000);
    ++result.cases;
    for (u64 n = 0; n <= 60; ++n) {
        if (cache.value(n) != detail::count_partitions_enum(n, n)) {
            result.fail("pentagonal recurrence disagrees with enumeration at n=" +
                        std::to_string(n));
            break;
        }
    }
    ++result.cases;
    std::vector<mpz_class> dp = detail::partition_dp(1000);
    for (std::size_t n = 0; n <= 1000; ++n) {
        if (cache.value(n) != dp[n]) {
            result.fail("pentagonal recurrence disagrees with largest-part DP at n=" +
                        std::to_string(n));
            break;
        }
    }
    auto ratio = [&](u64 n) {
        return cache.value(n).get_d() / hardy_ramanujan_estimate(n);
    };
    double r100 = ratio(100), r500 = ratio(500), r1000 = ratio(1000);
    ++result.cases;
    if (!(r500 > 0.9 && r500 < 1.1 && r1000 > 0.9 && r1000 < 1.1))
        result.fail("Hardy-Ramanujan ratio outside (0.9, 1.1)");
    ++result.cases;
    if (!(std::abs(r1000 - 1.0) < std::abs(r100 - 1.0)))
        result.fail("Hardy-Ramanujan ratio does not tighten from n=100 to n=1000");
    return result;
}

} // namespace hadord
