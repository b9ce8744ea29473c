// analysis.hpp
// Asymptotic bound evaluators, the binomial bound for the binary-digit
// construction, the dyadic product-density inequality, generating
// function transforms, and empirical growth/ratio checks.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hadord/common.hpp"
#include "hadord/order_set.hpp"

namespace hadord {

// Constants from the totient-value-set density theorem; o(1)/O(1) terms
// are surfaced as explicit user parameters and default to zero.
struct BoundParams {
    double C = 0.8178;
    double D = 2.1769;
    double epsilon = 0.0;
    double o1 = 0.0;
};

enum class PaleyBoundVariant { simple, doubled };

// (3/4) x/log x, or (3/2) x/log x for the doubling-closed stream.
// The o(1) term is dropped.
inline double paley_bound(double x, PaleyBoundVariant variant) {
    if (!(x > 1.0))
        throw std::domain_error("paley_bound: x must exceed 1 (log nonpositive)");
    double base = x / std::log(x);
    return (variant == PaleyBoundVariant::simple ? 0.75 : 1.5) * base;
}

// Two-term prime counting approximation x/log x + x/log^2 x.
inline double pnt_two_term(double x) {
    if (!(x > 1.0))
        throw std::domain_error("pnt_two_term: x must exceed 1");
    double l = std::log(x);
    return x / l + x / (l * l);
}

// x/log x * exp((C+epsilon) * T(x)^2) where T is the iterated logarithm
// that vanishes at the domain threshold x = e^(e^e) ~ 3.8142e6: at that
// boundary the result collapses to x/log x exactly; below it the bound
// is undefined and a domain error names the threshold.
inline double main_bound(double x, const BoundParams& params) {
    double l1 = std::log(x);
    if (!(l1 > 0.0))
        throw std::domain_error("main_bound: log x nonpositive");
    double l2 = std::log(l1);
    if (!(l2 > 0.0))
        throw std::domain_error("main_bound: log log x nonpositive");
    double l3 = std::log(l2);
    if (!(l3 > 0.0))
        throw std::domain_error("main_bound: log log log x nonpositive");
    double inner = std::log(l3);
    if (inner < 0.0) {
        if (inner < -1e-12)
            throw std::domain_error(
                "main_bound: x below the threshold e^(e^e) ~ 3.8142e6");
        inner = 0.0; // x == e^(e^e) up to rounding
    }
    return x / l1 * std::exp((params.C + params.epsilon) * inner * inner);
}

// Exponent of the totient-value-set density formula, exposed separately
// so the L3 == L4 algebraic simplification can be exercised directly.
inline double ford_v_exponent(double l3, double l4, const BoundParams& params) {
    double diff = l3 - l4;
    return params.C * diff * diff + params.D * l3 -
           (params.D + 0.5 - 2.0 * params.C) * l4 + params.o1;
}

// x/log x * exp(C (L3-L4)^2 + D L3 - (D + 1/2 - 2C) L4 + O1) with
// L3 = log log log x, L4 = log log log log x. L4 itself may be negative;
// every level above it must be strictly positive.
inline double ford_v_estimate(double x, const BoundParams& params) {
    double l1 = std::log(x);
    if (!(l1 > 0.0))
        throw std::domain_error("ford_v_estimate: log x nonpositive (level 1)");
    double l2 = std::log(l1);
    if (!(l2 > 0.0))
        throw std::domain_error("ford_v_estimate: log log x nonpositive (level 2)");
    double l3 = std::log(l2);
    if (!(l3 > 0.0))
        throw std::domain_error(
            "ford_v_estimate: log log log x nonpositive (level 3)");
    double l4 = std::log(l3);
    return x / l1 * std::exp(ford_v_exponent(l3, l4, params));
}

// -------------------------------------------------------------------------
// Binomial bound: sum over k >= 1 of C(n-2k+1, k) + C(n-2k, k), exact.
// Counts length-n bit patterns whose k one-bits sit above 2k-1 (resp. 2k)
// trailing zeros.
// -------------------------------------------------------------------------

inline mpz_class g3_binomial_bound(u64 n) {
    if (n < 1) throw std::domain_error("g3_binomial_bound: n must be >= 1");
    mpz_class total = 0;
    mpz_class term;
    for (u64 k = 1; 2 * k <= n + 1; ++k) {
        u64 top1 = n - 2 * k + 1;
        mpz_bin_uiui(term.get_mpz_t(), top1, k);
        total += term;
        if (2 * k <= n) {
            mpz_bin_uiui(term.get_mpz_t(), n - 2 * k, k);
            total += term;
        }
    }
    return total;
}

// -------------------------------------------------------------------------
// Dyadic product-density inequality:
//
//   c(x)/b(x) <= sum_{k=1..ceil(log2 x)} (b(x/2^(k-1)) + b(x/2^k)) a-bar(2^k) / b(x)
//
// where lowercase letters are half-open dyadic window counts and a-bar is
// the closed window count. Non-integer division points anchor at
// floor(x/2^j), which counts the same integers as the real window.
// The k-sum is vacuous at x = 1, so x >= 2 is required.
// -------------------------------------------------------------------------

inline u32 ceil_log2(u64 x) {
    if (x == 0) throw std::domain_error("ceil_log2: x must be >= 1");
    return x == 1 ? 0 : u32(std::bit_width(x - 1));
}

inline double lemmaA_rhs(const OrderSet& a_set, const OrderSet& b_set, u64 x) {
    if (x < 2) throw std::domain_error("lemmaA_rhs: x must be >= 2");
    if (x > b_set.limit())
        throw std::domain_error("lemmaA_rhs: x above b set limit");
    u32 kmax = ceil_log2(x);
    if (kmax >= 64 || (u64(1) << kmax) > a_set.limit())
        throw std::domain_error(
            "lemmaA_rhs: a set limit below 2^ceil(log2 x); window would be cut");
    u64 bx = window_counts(b_set, x).half_open;
    if (bx == 0)
        throw std::domain_error("lemmaA_rhs: undefined, b(x) = 0");
    double sum = 0.0;
    for (u32 k = 1; k <= kmax; ++k) {
        u64 b_hi = window_counts(b_set, x >> (k - 1)).half_open;
        u64 b_lo = (x >> k) >= 1 ? window_counts(b_set, x >> k).half_open : 0;
        u64 abar = window_counts(a_set, u64(1) << k).closed;
        sum += double(b_hi + b_lo) * double(abar);
    }
    return sum / double(bx);
}

// -------------------------------------------------------------------------
// Exp transform: Exp(a(z)) = exp(a(z) + a(z^2)/2 + a(z^3)/3 + ...),
// the multiset generating function of the set behind a. Computed with
// exact rationals via n e_n = sum_m (sum_{k|m} k a_k) e_{n-m}. The
// constant coefficient of the input counts the identity element and is
// excluded (its contribution sum_j a_0/j diverges and adds nothing
// multiplicatively).
// -------------------------------------------------------------------------

struct ExpSeries {
    std::vector<mpq_class> coeffs; // degree 0 .. k_max

    // Nearest integers, for reporting.
    std::vector<mpz_class> rounded() const {
        std::vector<mpz_class> out;
        out.reserve(coeffs.size());
        for (const mpq_class& q : coeffs) {
            mpz_class num = 2 * q.get_num() + q.get_den();
            mpz_class den = 2 * q.get_den();
            mpz_class r;
            mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            out.push_back(r);
        }
        return out;
    }
};

inline ExpSeries exp_transform(const CoefficientSeries& series, unsigned k_max) {
    // w_m = sum over divisors k of m (k >= 1) of k * a_k
    std::vector<mpz_class> w(k_max + 1, mpz_class(0));
    for (unsigned m = 1; m <= k_max; ++m)
        for (unsigned k = 1; k <= std::min<unsigned>(m, series.k_max()); ++k)
            if (m % k == 0) w[m] += mpz_class(series.coeffs[k]) * k;
    ExpSeries out;
    out.coeffs.assign(k_max + 1, mpq_class(0));
    out.coeffs[0] = 1;
    for (unsigned n = 1; n <= k_max; ++n) {
        mpq_class acc = 0;
        for (unsigned m = 1; m <= n; ++m)
            acc += mpq_class(w[m]) * out.coeffs[n - m];
        out.coeffs[n] = acc / n;
    }
    return out;
}

// -------------------------------------------------------------------------
// Growth-rate estimate: finite-sample proxy for the reciprocal radius of
// convergence lim sup a_k^(1/k), measured over the top half of available
// indices. Consecutive-coefficient ratios converge much faster than the
// k-th roots at these window sizes, so the estimate is the largest ratio
// a_k / a_(k-1) in the window; k-th roots are the fallback when the
// support is too sparse for ratios.
// -------------------------------------------------------------------------

inline double growth_rate_estimate(const CoefficientSeries& series) {
    unsigned k_max = series.k_max();
    unsigned window = (k_max + 2) / 2; // top ceil(half) of indices 0..k_max
    unsigned k0 = k_max + 1 - window;
    unsigned nonzero = 0;
    for (unsigned k = k0; k <= k_max; ++k)
        if (series.coeffs[k] > 0) ++nonzero;
    if (nonzero < 8)
        throw std::domain_error(
            "growth_rate_estimate: needs >= 8 nonzero coefficients in the tail window");
    double best = 0.0;
    bool have_ratio = false;
    for (unsigned k = std::max(k0, 1u); k <= k_max; ++k) {
        if (series.coeffs[k] > 0 && series.coeffs[k - 1] > 0) {
            best = std::max(best, double(series.coeffs[k]) / double(series.coeffs[k - 1]));
            have_ratio = true;
        }
    }
    if (!have_ratio) {
        for (unsigned k = std::max(k0, 1u); k <= k_max; ++k)
            if (series.coeffs[k] > 0)
                best = std::max(best,
                                std::pow(double(series.coeffs[k]), 1.0 / double(k)));
    }
    return best;
}

// -------------------------------------------------------------------------
// Product-size ratio report: C(x)/B(x) for C = AB over a grid, with a
// stability flag (bounded-ratio proxy): the maximum over the top decade
// of x must stay below twice the median over the whole grid.
// -------------------------------------------------------------------------

struct RatioReport {
    struct Row {
        u64 x;
        u64 count_c;
        u64 count_b;
        double ratio;
    };
    std::vector<Row> rows;
    double median_ratio = 0.0;
    double max_top_decade = 0.0;
    bool consistent = false;
};

inline void write_ratio_report_csv(std::ostream& out, const RatioReport& report) {
    out << "x,count_C,count_B,ratio\n";
    char buf[64];
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof(buf), "%.6f", row.ratio);
        out << row.x << ',' << row.count_c << ',' << row.count_b << ',' << buf
            << '\n';
    }
}

inline RatioReport theorem7_ratio_check(const OrderSet& a_set,
                                        const OrderSet& b_set,
                                        const std::vector<u64>& x_grid) {
    if (x_grid.empty())
        throw std::domain_error("theorem7_ratio_check: empty grid");
    u64 limit = std::min(a_set.limit(), b_set.limit());
    OrderSet c_set = product_set(a_set, b_set, limit);
    RatioReport report;
    u64 x_max = 0;
    for (u64 x : x_grid) {
        if (x < 1 || x > limit)
            throw std::domain_error("theorem7_ratio_check: grid point outside [1, limit]");
        u64 cb = counting_function(b_set, x);
        if (cb == 0)
            throw std::domain_error("theorem7_ratio_check: B(x) = 0 on the grid");
        u64 cc = counting_function(c_set, x);
        report.rows.push_back({x, cc, cb, double(cc) / double(cb)});
        x_max = std::max(x_max, x);
    }
    std::vector<double> ratios;
    ratios.reserve(report.rows.size());
    for (const auto& r : report.rows) ratios.push_back(r.ratio);
    std::sort(ratios.begin(), ratios.end());
    report.median_ratio = ratios[ratios.size() / 2];
    for (const auto& r : report.rows)
        if (r.x >= x_max / 10)
            report.max_top_decade = std::max(report.max_top_decade, r.ratio);
    report.consistent = report.max_top_decade < 2.0 * report.median_ratio;
    return report;
}

} // namespace hadord
