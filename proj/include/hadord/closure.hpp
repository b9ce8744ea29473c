// closure.hpp
// The monoid engine: orders reachable from a generator stream under the
// Kronecker product (a,b -> ab) and the two product rules
//
//   R2: 4a, 4b         -> 8ab    (one factor of two saved)
//   R4: 4a, 4b, 4c, 4d -> 16abcd (four factors of two saved)
//
// computed exactly as a bitmap over [1, limit], plus a brute-force
// fixpoint oracle for cross-checking.
//
// Exact enumeration strategy (rule combinations beyond plain Kronecker):
// every element of the closure is a product of a finite multiset of
// generators divided by some power of two that a tree of rule
// applications can remove. For a multiset whose items split into n2
// values with 2-adic valuation >= 2 and n1 values with valuation 1, the
// rules can act on L = n2 + floor(n1/2) four-divisible units (valuation-1
// items pair up via Kronecker first; odd items never help). With both R2
// and R4 enabled the removable exponents are exactly 0..e(L), where
//
//   e(L) = 4*floor((L-1)/3) + ((L-1) mod 3)  =  (L-1) + floor((L-1)/3),
//
// reached by greedily nesting R4 triples of combining steps; dropping one
// rule application at a time reaches every smaller exponent. Other rule
// subsets give the ranges tabulated in detail::savings_range. The engine
// therefore enumerates generator multisets depth-first in non-decreasing
// order, tracking (odd part, total valuation, L), and marks
// odd * 2^(t - e) for every removable e. Branches are cut once even the
// fully reduced product of all extensions must exceed the limit; a small
// per-rule-set slack factor accounts for extensions that temporarily
// lower the reachable minimum (a pending unpaired valuation-1 item, or
// an imminent R4 step). All products use 128-bit intermediates.
// Exactness versus the rule fixpoint is validated against
// brute_force_closure in the test suites.

#pragma once

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

#include "hadord/common.hpp"
#include "hadord/order_set.hpp"

namespace hadord {

struct ClosureRules {
    bool kronecker = false;
    bool r2 = false;
    bool r4 = false;

    void validate() const {
        if (!kronecker && !r2 && !r4)
            throw std::domain_error("ClosureRules: at least one rule must be enabled");
    }

    u8 byte() const {
        return u8((kronecker ? 1 : 0) | (r2 ? 2 : 0) | (r4 ? 4 : 0));
    }

    bool operator==(const ClosureRules&) const = default;
};

// Largest power-of-two exponent removable when combining `count`
// four-divisible orders with both product rules enabled.
inline u32 max_two_power_savings(u32 count) {
    if (count == 0) return 0;
    u32 m = count - 1;
    return 4 * (m / 3) + (m % 3);
}

namespace detail {

inline std::vector<u64> normalize_generators(const std::vector<u64>& generators,
                                             u64 limit) {
    std::vector<u64> gens;
    gens.reserve(generators.size());
    for (u64 g : generators) {
        if (g == 0)
            throw std::domain_error("closure: generator values must be >= 1");
        if (g >= 2 && g <= limit) gens.push_back(g); // 1 is the implicit identity
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    return gens;
}

class RuleClosureEngine {
    // Deep chains of the smallest generator advance the reduced product
    // by at least two bits every three levels, so depth stays far below
    // this for any limit <= 2^40.
    static constexpr u32 kMaxDepth = 192;

public:
    RuleClosureEngine(std::vector<u64> gens, u64 limit, ClosureRules rules,
                      u64 memory_budget)
        : limit_(limit),
          rules_(rules),
          out_(limit, memory_budget),
          gens_(std::move(gens)) {
        // Removable-exponent ceiling by unit (or item) count.
        hi_.resize(kMaxDepth + 2);
        for (u32 n = 0; n < hi_.size(); ++n) {
            if (n == 0) hi_[n] = 0;
            else if (rules_.r2 && rules_.r4) hi_[n] = max_two_power_savings(n);
            else if (rules_.r2)              hi_[n] = n - 1;
            else                             hi_[n] = 4 * ((n - 1) / 3);
        }
        step_ = (rules_.r4 && !rules_.r2) ? 4 : 1;
        // Slack: how far below the current node's reduced minimum a
        // descendant's reduced minimum can dip. Four-divisible items
        // never dip (value >= 4 vs jump <= 2 when R2 is on); an unpaired
        // valuation-1 item can cost one halving; an imminent R4-only
        // jump can cost two.
        bool low_v2 = false;
        for (u64 g : gens_)
            if (g % 4 != 0) low_v2 = true;
        u64 slack = 1;
        if (rules_.r4 && !rules_.r2) slack = (rules_.kronecker && low_v2) ? 8 : 4;
        else if (rules_.kronecker && rules_.r2 && rules_.r4 && low_v2) slack = 2;
        slack_limit_ = slack * limit_;
    }

    OrderSet run() && {
        out_.insert_unchecked(1);
        if (!gens_.empty())
            descend(0, /*odd=*/1, /*t=*/0, /*units=*/0, /*pending_half=*/false,
                    /*count=*/0, /*all_div4=*/true);
        return std::move(out_);
    }

private:
    void descend(std::size_t from, u64 odd, u32 t, u32 units, bool pending_half,
                 u32 count, bool all_div4) {
        u32 idx = rules_.kronecker ? units : count;
        u64 node_scale = odd << (t - hi_[idx]); // <= slack_limit_ by entry check
        u64 gcap = (slack_limit_ << (hi_[idx + 1] - hi_[idx])) / node_scale;
        for (std::size_t i = from; i < gens_.size(); ++i) {
            u64 g = gens_[i];
            if (g > gcap) break;
            u32 tz = u32(std::countr_zero(g));
            u64 g_odd = g >> tz;
            if (u128(odd) * g_odd > limit_)
                continue; // a later g may carry a smaller odd part
            u64 next_odd = odd * g_odd;
            u32 next_t = t + tz;
            u32 next_units = units;
            bool next_pending = pending_half;
            bool next_all_div4 = all_div4 && tz >= 2;
            if (tz >= 2) {
                ++next_units;
            } else if (tz == 1) {
                if (pending_half) { ++next_units; next_pending = false; }
                else              { next_pending = true; }
            }
            u32 next_count = count + 1;
            u32 next_idx = rules_.kronecker ? next_units : next_count;
            u32 hi = hi_[next_idx];
            // Removable exponents are [lo, hi] in steps of step_ (see the
            // header comment); without Kronecker the multiset must be all
            // four-divisible and, for R4 alone, of size 1 (mod 3).
            bool can_mark = true;
            u32 lo = 0;
            if (!rules_.kronecker) {
                can_mark = next_count == 1 || next_all_div4;
                if (can_mark && !rules_.r2 && (next_count - 1) % 3 != 0)
                    can_mark = false;
                lo = rules_.r2 && next_count > 0 ? next_count - 1 : hi;
                if (next_count == 1) lo = 0;
            }
            if (can_mark) {
                for (u32 j = next_t - hi; j <= next_t - lo; j += step_) {
                    if (j >= 64 || next_odd > (limit_ >> j)) break;
                    out_.insert_unchecked(next_odd << j);
                }
            }
            if (!rules_.kronecker && !next_all_div4)
                continue; // supersets keep the non-four-divisible item
            u32 next_shift = next_t - hi;
            if (next_shift < 64 && next_odd <= (slack_limit_ >> next_shift) &&
                next_idx < kMaxDepth)
                descend(i, next_odd, next_t, next_units, next_pending, next_count,
                        next_all_div4);
        }
    }

    u64 limit_;
    ClosureRules rules_;
    OrderSet out_;
    std::vector<u64> gens_;
    std::vector<u32> hi_;
    u32 step_ = 1;
    u64 slack_limit_ = 0;
};

} // namespace detail

// Smallest superset of {1} ∪ generators closed under multiplication
// within [1, limit]. Classic ascending in-place pass per generator.
inline OrderSet multiplicative_closure(const std::vector<u64>& generators,
                                       u64 limit,
                                       u64 memory_budget = kDefaultMemoryBudget) {
    std::vector<u64> gens = detail::normalize_generators(generators, limit);
    OrderSet set(limit, memory_budget);
    set.insert_unchecked(1);
    for (u64 g : gens) set.insert_unchecked(g);
    for (u64 g : gens) {
        u64 cap = limit / g;
        for (u64 m = 2; m <= cap; ++m)
            if (set.contains(m)) set.insert_unchecked(m * g);
    }
    return set;
}

// Smallest superset of {1} ∪ generators closed under every enabled rule
// within [1, limit]; equals brute_force_closure wherever both complete.
inline OrderSet rule_closure(const std::vector<u64>& generators, u64 limit,
                             ClosureRules rules,
                             u64 memory_budget = kDefaultMemoryBudget) {
    rules.validate();
    if (rules.kronecker && !rules.r2 && !rules.r4)
        return multiplicative_closure(generators, limit, memory_budget);
    std::vector<u64> gens = detail::normalize_generators(generators, limit);
    // When 2 is the only generator not divisible by four and 4 is also a
    // generator, a pair of 2s is interchangeable with a 4 in every rule
    // tree, and an unpaired 2 contributes exactly one doubling at the
    // top. Running the engine without the 2 keeps the no-dip pruning
    // window, and one ascending doubling pass restores its orders
    // (ascending is safe: redoubled values coincide with multiples of 4
    // already present).
    if (rules.kronecker) {
        bool only_low_is_two = true;
        bool has_two = false;
        bool has_four = false;
        for (u64 g : gens) {
            if (g == 2) has_two = true;
            else if (g == 4) has_four = true;
            else if (g % 4 != 0) only_low_is_two = false;
        }
        if (has_two && has_four && only_low_is_two) {
            gens.erase(std::find(gens.begin(), gens.end(), u64(2)));
            OrderSet set = detail::RuleClosureEngine(std::move(gens), limit,
                                                     rules, memory_budget)
                               .run();
            for (u64 m = 1; m <= limit / 2; ++m)
                if (set.contains(m)) set.insert_unchecked(2 * m);
            return set;
        }
    }
    return detail::RuleClosureEngine(std::move(gens), limit, rules,
                                     memory_budget)
        .run();
}

// Testing oracle: literal fixpoint iteration over explicit element lists,
// applying every enabled rule to every tuple until nothing changes.
inline OrderSet brute_force_closure(const std::vector<u64>& generators,
                                    u64 limit, ClosureRules rules) {
    rules.validate();
    if (limit < 1 || limit > 1000000)
        throw std::domain_error(
            "brute_force_closure: limit above the documented oracle bound 10^6");
    std::vector<u64> gens = detail::normalize_generators(generators, limit);
    OrderSet set(limit);
    set.insert(1);
    for (u64 g : gens) set.insert(g);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<u64> members = set.members();
        std::vector<u64> div4;
        for (u64 m : members)
            if (m % 4 == 0) div4.push_back(m);
        auto add = [&](u64 v) {
            if (v <= limit && !set.contains(v)) {
                set.insert(v);
                changed = true;
            }
        };
        if (rules.kronecker) {
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i; j < members.size(); ++j) {
                    if (members[i] > limit / members[j]) break;
                    add(members[i] * members[j]);
                }
        }
        if (rules.r2) {
            for (std::size_t i = 0; i < div4.size(); ++i)
                for (std::size_t j = i; j < div4.size(); ++j) {
                    u64 p = div4[i] * div4[j] / 2;
                    if (p > limit) break;
                    add(p);
                }
        }
        if (rules.r4) {
            u128 bound = u128(limit) * 16;
            for (std::size_t a = 0; a < div4.size(); ++a) {
                if (u128(div4[a]) * div4[a] * div4[a] * div4[a] > bound) break;
                for (std::size_t b = a; b < div4.size(); ++b) {
                    u128 pab = u128(div4[a]) * div4[b];
                    if (pab * div4[b] * div4[b] > bound) break;
                    for (std::size_t c = b; c < div4.size(); ++c) {
                        u128 pabc = pab * div4[c];
                        if (pabc * div4[c] > bound) break;
                        for (std::size_t d = c; d < div4.size(); ++d) {
                            u128 p = pabc * div4[d];
                            if (p > bound) break;
                            add(u64(p / 16));
                        }
                    }
                }
            }
        }
    }
    return set;
}

} // namespace hadord
