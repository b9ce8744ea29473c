// figure_data.hpp
// Reference density-curve path data for the three published curves
// (Paley, products, products with other existence results), in raw plot
// coordinates. Decoding rule, fixed by the axis tick anchors
// (u = 0.833333 <-> "5" on the log2 x axis, v = 5.0 <-> density 0.25):
//
//   x = 2^(6u),  density = v / 20
//
// The red-curve decoding was cross-validated against independently
// recomputed Paley densities at x = 20, 24, 48, 64 before freezing.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <span>

#include "hadord/common.hpp"

namespace hadord {

enum class RefCurve { paley, products, products_plus_others };

struct RefPoint {
    double u; // plot x coordinate; log2 x = 6u
    double v; // plot y coordinate; density = v/20
};

inline double ref_log2x(const RefPoint& p) { return 6.0 * p.u; }
inline double ref_density(const RefPoint& p) { return p.v / 20.0; }

inline constexpr std::array<RefPoint, 82> kPaleyRefPath = {{
    {0.333333, 5.000000}, {0.500000, 5.000000}, {0.597494, 5.000000},
    {0.666667, 3.750000}, {0.720321, 4.000000}, {0.764161, 4.166000},
    {0.801226, 4.286000}, {0.833333, 4.376000}, {0.861654, 4.444000},
    {0.886988, 4.000000}, {0.909905, 4.090000}, {0.930827, 4.166000},
    {0.967893, 3.572000}, {0.984482, 3.666000}, {1.000000, 3.438000},
    {1.014577, 3.530000}, {1.028321, 3.612000}, {1.041321, 3.684000},
    {1.053655, 3.750000}, {1.065386, 3.810000}, {1.076572, 3.636000},
    {1.097494, 3.334000}, {1.107309, 3.200000}, {1.166667, 3.124000},
    {1.174066, 3.182000}, {1.181244, 3.088000}, {1.188214, 3.142000},
    {1.194988, 3.056000}, {1.201575, 3.108000}, {1.207988, 3.158000},
    {1.220321, 3.000000}, {1.226254, 3.048000}, {1.232053, 3.096000},
    {1.243239, 2.954000}, {1.248642, 3.000000}, {1.264161, 2.916000},
    {1.269118, 2.960000}, {1.273976, 2.900000}, {1.278737, 3.040000},
    {1.283407, 2.980000}, {1.287987, 3.018000}, {1.292481, 2.962000},
    {1.296893, 3.000000}, {1.301226, 3.036000}, {1.305482, 3.070000},
    {1.317815, 3.000000}, {1.325699, 2.904000}, {1.329547, 2.936000},
    {1.333333, 2.890000}, {1.340732, 2.878000}, {1.347911, 2.868000},
    {1.351421, 2.898000}, {1.354880, 2.858000}, {1.358291, 2.888000},
    {1.361654, 2.848000}, {1.368242, 2.770000}, {1.371470, 2.734000},
    {1.500000, 2.618000}, {1.666667, 2.382000}, {1.833333, 2.188000},
    {2.000000, 1.992000}, {2.166667, 1.826000}, {2.333333, 1.696000},
    {2.500000, 1.566000}, {2.666667, 1.462000}, {2.833333, 1.372000},
    {3.000000, 1.290000}, {3.166667, 1.218000}, {3.333333, 1.154000},
    {3.500000, 1.094000}, {3.666667, 1.042000}, {3.833333, 0.994000},
    {4.000000, 0.950000}, {4.166667, 0.910000}, {4.333333, 0.874000},
    {4.500000, 0.840000}, {4.666667, 0.808000}, {4.833333, 0.778000},
    {5.000000, 0.752000}, {5.166667, 0.726000}, {5.333333, 0.702000},
    {5.500000, 0.680000},
}};

inline constexpr std::array<RefPoint, 32> kProductsRefPath = {{
    {0.333333, 5.000000}, {0.500000, 5.000000}, {0.666667, 5.000000},
    {0.833333, 5.000000}, {1.000000, 4.688000}, {1.166667, 4.376000},
    {1.333333, 4.140000}, {1.500000, 3.906000}, {1.666667, 3.730000},
    {1.833333, 3.536000}, {2.000000, 3.360000}, {2.166667, 3.220000},
    {2.333333, 3.080000}, {2.500000, 2.966000}, {2.666667, 2.860000},
    {2.833333, 2.764000}, {3.000000, 2.674000}, {3.166667, 2.592000},
    {3.333333, 2.516000}, {3.500000, 2.448000}, {3.666667, 2.386000},
    {3.833333, 2.328000}, {4.000000, 2.272000}, {4.166667, 2.222000},
    {4.333333, 2.174000}, {4.500000, 2.130000}, {4.666667, 2.088000},
    {4.833333, 2.048000}, {5.000000, 2.010000}, {5.166667, 1.976000},
    {5.333333, 1.942000}, {5.500000, 1.910000},
}};

inline constexpr std::array<RefPoint, 32> kProductsPlusOthersRefPath = {{
    {0.333333, 5.000000}, {0.500000, 5.000000}, {0.666667, 5.000000},
    {0.833333, 5.000000}, {1.000000, 5.000000}, {1.166667, 5.000000},
    {1.333333, 5.000000}, {1.500000, 5.000000}, {1.666667, 4.902000},
    {1.833333, 4.854000}, {2.000000, 4.268000}, {2.166667, 3.836000},
    {2.333333, 3.526000}, {2.500000, 3.296000}, {2.666667, 3.132000},
    {2.833333, 3.008000}, {3.000000, 2.894000}, {3.166667, 2.792000},
    {3.333333, 2.698000}, {3.500000, 2.614000}, {3.666667, 2.536000},
    {3.833333, 2.468000}, {4.000000, 2.406000}, {4.166667, 2.350000},
    {4.333333, 2.296000}, {4.500000, 2.268000}, {4.666667, 2.202000},
    {4.833333, 2.158000}, {5.000000, 2.118000}, {5.166667, 2.080000},
    {5.333333, 2.044000}, {5.500000, 2.010000},
}};

inline std::span<const RefPoint> ref_path(RefCurve curve) {
    switch (curve) {
        case RefCurve::paley: return kPaleyRefPath;
        case RefCurve::products: return kProductsRefPath;
        case RefCurve::products_plus_others: return kProductsPlusOthersRefPath;
    }
    return {};
}

// Reference density at a given log2 x, if the path has a point there.
inline std::optional<double> ref_density_at(RefCurve curve, double log2x,
                                            double tolerance = 5e-3) {
    for (const RefPoint& p : ref_path(curve))
        if (std::abs(ref_log2x(p) - log2x) <= tolerance)
            return ref_density(p);
    return std::nullopt;
}

} // namespace hadord
