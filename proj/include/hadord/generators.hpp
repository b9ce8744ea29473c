// generators.hpp
// Sorted streams of Hadamard orders for the Paley family, the seven
// construction families, and an optional external known-orders table.

#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "hadord/arith.hpp"
#include "hadord/common.hpp"

namespace hadord {

enum class FamilyId {
    paley_pure,
    paley_doubled,
    c1_small_orders,
    c2_exponent,
    c3_binary_digits,
    c4_four_q_squared,
    c5_four_q_fourth,
    c6_twin_prime_power_square,
    c7_cocyclic,
    external_table,
};

// Each entry means: an order 2^t * g exists for every t >= t_min.
struct KnownOrdersTable {
    struct Entry {
        u64 g;     // odd
        u32 t_min;
    };
    std::vector<Entry> entries; // sorted by g, unique

    bool empty() const { return entries.empty(); }
};

// Table file format: one "g t_min" pair of base-10 integers per line,
// '#' starts a comment line, g must be odd. Duplicate g keeps the
// smallest t_min.
inline KnownOrdersTable parse_known_orders(std::istream& in,
                                           const std::string& source_name) {
    KnownOrdersTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        u64 g = 0;
        u32 t_min = 0;
        std::string trailing;
        if (!(fields >> g >> t_min) || (fields >> trailing))
            throw std::runtime_error(source_name + ":" + std::to_string(line_no) +
                                     ": expected two integers \"g t_min\"");
        if (g % 2 == 0)
            throw std::runtime_error(source_name + ":" + std::to_string(line_no) +
                                     ": g must be odd, got " + std::to_string(g));
        table.entries.push_back({g, t_min});
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const auto& a, const auto& b) {
                  return a.g != b.g ? a.g < b.g : a.t_min < b.t_min;
              });
    table.entries.erase(
        std::unique(table.entries.begin(), table.entries.end(),
                    [](const auto& a, const auto& b) { return a.g == b.g; }),
        table.entries.end());
    return table;
}

inline KnownOrdersTable ingest_known_orders(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open known-orders table: " + path);
    return parse_known_orders(in, path);
}

struct GeneratorFamily {
    FamilyId id;
    const KnownOrdersTable* table = nullptr; // c1 (optional) / external_table
};

enum class PaleyPolicy { pure, all_two_powers };

// -------------------------------------------------------------------------
// Helpers
// -------------------------------------------------------------------------

namespace detail {

inline void sort_unique(std::vector<u64>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline void require_prime_limit(const PrimeTable& primes, u64 needed,
                                const char* who) {
    if (primes.limit() < needed)
        throw std::domain_error(std::string(who) +
                                ": prime table limit too small");
}

// Expand one table entry into orders 2^t * g <= limit, t >= t_min.
inline void expand_table_entry(const KnownOrdersTable::Entry& e, u64 limit,
                               std::vector<u64>& out) {
    if (e.t_min >= 64 || (u128(e.g) << e.t_min) > limit) return;
    for (u64 v = e.g << e.t_min; v <= limit; v <<= 1) {
        out.push_back(v);
        if (v > limit / 2) break;
    }
}

// Smallest t with t >= (6/16)*log2((g-1)/2) + 2, decided in exact
// integer arithmetic: t works iff ((g-1)/2)^3 <= 2^(8(t-2)).
inline u32 c2_min_exponent(u64 g) {
    if (g == 1) return 2; // log2 undefined; orders 2^t exist for t >= 2
    u128 cube = u128((g - 1) / 2);
    cube = cube * cube * cube;
    u32 t = 2;
    while ((u128(1) << (8 * (t - 2))) < cube) ++t;
    return t;
}

// Visit all prime powers p = r^k <= max_value (k >= 1), any order.
template <class Fn>
void for_each_prime_power(const PrimeTable& primes, u64 max_value, Fn&& fn) {
    primes.for_each_prime_while([&](u64 r) {
        if (r > max_value) return false;
        fn(r);
        return true;
    });
    u64 root = isqrt(max_value);
    primes.for_each_prime_while([&](u64 r) {
        if (r > root) return false;
        for (u64 v = r * r; v <= max_value; v *= r) {
            fn(v);
            if (v > max_value / r) break;
        }
        return true;
    });
}

inline bool is_odd_prime_power(u64 n) {
    if (n < 3 || n % 2 == 0) return false;
    return prime_power(n).has_value();
}

} // namespace detail

// Prime-table size a family needs at a given order limit.
inline u64 required_prime_limit(FamilyId id, u64 limit) {
    switch (id) {
        case FamilyId::paley_pure:
        case FamilyId::paley_doubled:
        case FamilyId::c7_cocyclic:
            return limit;
        case FamilyId::c4_four_q_squared:
            return std::max<u64>(isqrt(limit / 4) + 1, 2);
        case FamilyId::c6_twin_prime_power_square:
            return std::max<u64>(isqrt(limit) + 1, 2);
        default:
            return 0;
    }
}

// -------------------------------------------------------------------------
// Paley orders: q+1 for primes q = 3 (mod 4), 2(q+1) for q = 1 (mod 4).
// all_two_powers additionally closes the stream under doubling.
// -------------------------------------------------------------------------

inline std::vector<u64> paley_orders(u64 limit, PaleyPolicy policy,
                                     const PrimeTable& primes) {
    std::vector<u64> out;
    if (limit < 4) return out;
    detail::require_prime_limit(primes, limit, "paley_orders");
    primes.for_each_prime([&](u64 q) {
        if (q % 4 == 3) {
            if (q + 1 <= limit) out.push_back(q + 1);
        } else if (q % 4 == 1) {
            if (q + 1 <= limit / 2) out.push_back(2 * (q + 1));
        }
    });
    if (policy == PaleyPolicy::all_two_powers) {
        std::size_t base_count = out.size();
        for (std::size_t i = 0; i < base_count; ++i)
            for (u64 v = out[i]; v <= limit / 2;) {
                v *= 2;
                out.push_back(v);
            }
    }
    detail::sort_unique(out);
    return out;
}

inline std::vector<u64> paley_orders(u64 limit, PaleyPolicy policy) {
    if (limit < 4) return {};
    return paley_orders(limit, policy, sieve_primes(limit));
}

// -------------------------------------------------------------------------
// Cocyclic generating set: 2 p^a (p+1) for prime powers p = 1 (mod 4)
// and q^b (q+1) for prime powers q = 3 (mod 4), a, b >= 0. The full
// cocyclic monoid is the closure of this stream.
// -------------------------------------------------------------------------

inline std::vector<u64> cocyclic_generators(u64 limit, const PrimeTable& primes) {
    std::vector<u64> out;
    if (limit < 4) return out;
    detail::require_prime_limit(primes, limit, "cocyclic_generators");
    detail::for_each_prime_power(primes, limit - 1, [&](u64 p) {
        if (p % 4 == 1) {
            if (p + 1 > limit / 2) return;
            for (u64 v = 2 * (p + 1); v <= limit; v *= p) {
                out.push_back(v);
                if (v > limit / p) break;
            }
        } else if (p % 4 == 3) {
            for (u64 v = p + 1; v <= limit; v *= p) {
                out.push_back(v);
                if (v > limit / p) break;
            }
        }
    });
    detail::sort_unique(out);
    return out;
}

inline std::vector<u64> cocyclic_generators(u64 limit) {
    if (limit < 4) return {};
    return cocyclic_generators(limit, sieve_primes(limit));
}

// -------------------------------------------------------------------------
// family_orders: one sorted deduplicated stream per family
// -------------------------------------------------------------------------

inline std::vector<u64> family_orders(const GeneratorFamily& family, u64 limit,
                                      const PrimeTable& primes) {
    std::vector<u64> out;
    if (limit < 1) return out;
    switch (family.id) {
        case FamilyId::paley_pure:
            return paley_orders(limit, PaleyPolicy::pure, primes);
        case FamilyId::paley_doubled:
            return paley_orders(limit, PaleyPolicy::all_two_powers, primes);

        case FamilyId::c1_small_orders: {
            // Orders <= 662 all exist: 1, 2, and every multiple of four.
            if (limit >= 1) out.push_back(1);
            if (limit >= 2) out.push_back(2);
            for (u64 v = 4; v <= std::min<u64>(limit, 662); v += 4)
                out.push_back(v);
            if (family.table)
                for (const auto& e : family.table->entries)
                    detail::expand_table_entry(e, limit, out);
            detail::sort_unique(out);
            return out;
        }

        case FamilyId::c2_exponent: {
            for (u64 g = 1;; g += 2) {
                u32 t0 = detail::c2_min_exponent(g);
                if (t0 >= 64 || (u128(g) << t0) > limit) break; // min value is monotone in g
                for (u64 v = g << t0; v <= limit; v <<= 1) {
                    out.push_back(v);
                    if (v > limit / 2) break;
                }
            }
            detail::sort_unique(out);
            return out;
        }

        case FamilyId::c3_binary_digits: {
            // 2^t * g for odd g with k one-bits: t >= 2k if g = 1 (mod 4),
            // t >= 2k-1 if g = 3 (mod 4). Minimal values are not monotone
            // in g, so scan all odd g with g * 2^t_min possibly <= limit.
            for (u64 g = 1; g <= limit; g += 2) {
                unsigned k = binary_digit_count(g);
                u32 t0 = (g % 4 == 1) ? 2 * k : 2 * k - 1;
                if (t0 >= 64 || (u128(g) << t0) > limit) {
                    if (g == 1) continue;
                    if (g >= 3 && (u128(g) << 3) > limit) break; // t_min >= 3 for g >= 3
                    continue;
                }
                for (u64 v = g << t0; v <= limit; v <<= 1) {
                    out.push_back(v);
                    if (v > limit / 2) break;
                }
            }
            detail::sort_unique(out);
            return out;
        }

        case FamilyId::c4_four_q_squared: {
            // 4q^2 for prime powers q with q != 7 (mod 8).
            u64 qmax = isqrt(limit / 4);
            if (qmax >= 2) {
                detail::require_prime_limit(primes, qmax, "family_orders(c4)");
                detail::for_each_prime_power(primes, qmax, [&](u64 q) {
                    if (q % 8 != 7) out.push_back(4 * q * q);
                });
            }
            detail::sort_unique(out);
            return out;
        }

        case FamilyId::c5_four_q_fourth: {
            // 4q^4 for odd q >= 1 (no primality condition).
            for (u64 q = 1;; q += 2) {
                u128 v = u128(4) * q * q * q * q;
                if (v > limit) break;
                out.push_back(u64(v));
            }
            return out; // already ascending
        }

        case FamilyId::c6_twin_prime_power_square: {
            // n^2 where n-1 and n+1 are both odd prime powers.
            for (u64 n = 2; n <= isqrt(limit); ++n) {
                if (detail::is_odd_prime_power(n - 1) &&
                    detail::is_odd_prime_power(n + 1))
                    out.push_back(n * n);
            }
            return out; // ascending by construction
        }

        case FamilyId::c7_cocyclic:
            return cocyclic_generators(limit, primes);

        case FamilyId::external_table: {
            if (!family.table)
                throw std::domain_error(
                    "family_orders: external_table family needs a table");
            for (const auto& e : family.table->entries)
                detail::expand_table_entry(e, limit, out);
            detail::sort_unique(out);
            return out;
        }
    }
    throw std::domain_error("family_orders: unknown family id");
}

// Union of several family streams, sorted and deduplicated.
inline std::vector<u64> merged_family_orders(
    const std::vector<GeneratorFamily>& families, u64 limit,
    const PrimeTable& primes) {
    std::vector<u64> out;
    for (const auto& f : families) {
        std::vector<u64> part = family_orders(f, limit, primes);
        out.insert(out.end(), part.begin(), part.end());
    }
    detail::sort_unique(out);
    return out;
}

} // namespace hadord
