// curves.hpp
// Density-curve sampling and the three-curve reproduction pipeline
// (Paley / products / products with other constructions), shared by the
// CLI and the acceptance suite.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hadord/arith.hpp"
#include "hadord/closure.hpp"
#include "hadord/common.hpp"
#include "hadord/figure_data.hpp"
#include "hadord/generators.hpp"
#include "hadord/order_set.hpp"

namespace hadord {

struct CurveSample {
    u64 x = 0;
    u64 count = 0;      // members in [4, x]
    double density = 0; // count / x
};

using DensityCurve = std::vector<CurveSample>;

// A(x) at each ascending sample point, one bitmap pass.
inline std::vector<u64> counts_at_samples(const OrderSet& set,
                                          const std::vector<u64>& xs) {
    std::vector<u64> out(xs.size(), 0);
    auto words = set.words();
    u64 running = 0; // popcount of words [0, w)
    u64 w = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        u64 x = xs[i]; // ascending, 1 <= x <= limit
        while (w < x / 64) running += std::popcount(words[w++]);
        u64 total = running;
        if (u64 rem = x % 64; rem > 0)
            total += std::popcount(words[w] & ((u64(1) << rem) - 1));
        out[i] = total;
    }
    return out;
}

inline DensityCurve curve_from_set(const OrderSet& set, std::vector<u64> xs) {
    std::sort(xs.begin(), xs.end());
    std::vector<u64> counts = counts_at_samples(set, xs);
    u64 below4 = counting_function(set, std::min<u64>(3, set.limit()));
    DensityCurve curve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        u64 c = xs[i] >= 4 ? counts[i] - below4 : 0;
        curve[i] = {xs[i], c, double(c) / double(xs[i])};
    }
    return curve;
}

// Curve from a sorted deduplicated order vector (no closure involved).
inline DensityCurve curve_from_sorted_orders(const std::vector<u64>& orders,
                                             std::vector<u64> xs) {
    std::sort(xs.begin(), xs.end());
    DensityCurve curve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        u64 x = xs[i];
        auto hi = std::upper_bound(orders.begin(), orders.end(), x);
        auto lo = std::lower_bound(orders.begin(), orders.end(), u64(4));
        u64 c = hi > lo ? u64(hi - lo) : 0;
        curve[i] = {x, c, double(c) / double(x)};
    }
    return curve;
}

// -------------------------------------------------------------------------
// Figure pipeline
// -------------------------------------------------------------------------

struct FigureConfig {
    u64 limit = u64(1) << 26;
    std::vector<double> samples_log2; // empty: unit grid 2..floor(log2 limit)
    const KnownOrdersTable* table = nullptr;
    u64 memory_budget = kDefaultMemoryBudget;
};

struct FigureRow {
    double log2x = 0;
    u64 x = 0;
    CurveSample red, blue, black;
    std::optional<double> red_ref, blue_ref, black_ref;
};

struct FigureResult {
    std::vector<FigureRow> rows;
};

inline std::vector<double> default_sample_grid(u64 limit) {
    std::vector<double> samples;
    for (u32 k = 2; (u64(1) << k) <= limit && k <= 63; ++k)
        samples.push_back(double(k));
    return samples;
}

inline FigureResult build_figure(const FigureConfig& config) {
    if (config.limit < 64)
        throw std::domain_error("figure: limit must be at least 2^6");
    std::vector<double> samples = config.samples_log2.empty()
                                      ? default_sample_grid(config.limit)
                                      : config.samples_log2;
    std::sort(samples.begin(), samples.end());
    std::vector<u64> xs;
    xs.reserve(samples.size());
    for (double s : samples) {
        if (s > std::log2(double(config.limit)) + 1e-9)
            throw std::domain_error("figure: sample point above log2(limit)");
        u64 x = u64(std::llround(std::exp2(s)));
        if (x < 4) throw std::domain_error("figure: sample below x = 4");
        xs.push_back(std::min(x, config.limit));
    }

    ClosureRules all_rules{true, true, true};
    FigureResult result;
    result.rows.resize(xs.size());

    PrimeTable primes = sieve_primes(config.limit, std::size_t(1) << 20,
                                     config.memory_budget);
    std::vector<u64> paley =
        paley_orders(config.limit, PaleyPolicy::pure, primes);
    DensityCurve red = curve_from_sorted_orders(paley, xs);
    DensityCurve blue;
    {
        OrderSet blue_set =
            rule_closure(paley, config.limit, all_rules, config.memory_budget);
        blue = curve_from_set(blue_set, xs);
    }
    DensityCurve black;
    {
        std::vector<GeneratorFamily> families = {
            {FamilyId::c1_small_orders, config.table},
            {FamilyId::c2_exponent},
            {FamilyId::c3_binary_digits},
            {FamilyId::c4_four_q_squared},
            {FamilyId::c5_four_q_fourth},
            {FamilyId::c6_twin_prime_power_square},
            {FamilyId::c7_cocyclic},
        };
        std::vector<u64> gens =
            merged_family_orders(families, config.limit, primes);
        gens.insert(gens.end(), paley.begin(), paley.end());
        detail::sort_unique(gens);
        paley.clear();
        paley.shrink_to_fit();
        OrderSet black_set =
            rule_closure(gens, config.limit, all_rules, config.memory_budget);
        black = curve_from_set(black_set, xs);
    }

    for (std::size_t i = 0; i < xs.size(); ++i) {
        FigureRow& row = result.rows[i];
        row.log2x = samples[i];
        row.x = xs[i];
        row.red = red[i];
        row.blue = blue[i];
        row.black = black[i];
        row.red_ref = ref_density_at(RefCurve::paley, samples[i]);
        row.blue_ref = ref_density_at(RefCurve::products, samples[i]);
        row.black_ref = ref_density_at(RefCurve::products_plus_others, samples[i]);
    }
    return result;
}

// -------------------------------------------------------------------------
// CSV output. Fixed 6-decimal floats, LF line endings, byte-stable for a
// given configuration.
// -------------------------------------------------------------------------

inline std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

inline void write_figure_csv(std::ostream& out, const FigureResult& figure) {
    out << "# density of achieved orders, three construction pools\n"
           "# red: Paley orders; blue: products of Paley orders; black: "
           "products of all construction families\n"
           "# counts use the [4, x] window (orders 1 and 2 excluded)\n"
           "# reference decoding: plot coordinate (u, v) means x = 2^(6u), "
           "density = v/20\n";
    out << "log2x,x,red_count,red_density,blue_count,blue_density,"
           "black_count,black_density,red_ref,red_delta,blue_ref,blue_delta,"
           "black_ref,black_delta\n";
    for (const FigureRow& row : figure.rows) {
        out << format_fixed6(row.log2x) << ',' << row.x << ','
            << row.red.count << ',' << format_fixed6(row.red.density) << ','
            << row.blue.count << ',' << format_fixed6(row.blue.density) << ','
            << row.black.count << ',' << format_fixed6(row.black.density);
        auto emit_ref = [&](std::optional<double> ref, double density) {
            if (ref) {
                out << ',' << format_fixed6(*ref) << ','
                    << format_fixed6(density - *ref);
            } else {
                out << ",,";
            }
        };
        emit_ref(row.red_ref, row.red.density);
        emit_ref(row.blue_ref, row.blue.density);
        emit_ref(row.black_ref, row.black.density);
        out << '\n';
    }
}

} // namespace hadord
