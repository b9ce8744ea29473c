#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hadord/closure.hpp"
#include "hadord/generators.hpp"
#include "hadord/selftest.hpp"

using namespace hadord;

TEST_CASE("multiplicative_closure examples") {
    // brute-force fixpoint re-derives the expected set
    OrderSet oracle = brute_force_closure({4, 12}, 200, ClosureRules{true, false, false});
    REQUIRE(oracle.members() == std::vector<u64>{1, 4, 12, 16, 48, 64, 144, 192});
    OrderSet fast = multiplicative_closure({4, 12}, 200);
    REQUIRE(fast == oracle);
    REQUIRE(fast.popcount() == 8);

    REQUIRE(multiplicative_closure({}, 50).members() == std::vector<u64>{1});
    REQUIRE(multiplicative_closure({2}, 33).members() ==
            std::vector<u64>{1, 2, 4, 8, 16, 32});
}

TEST_CASE("rule_closure with kron only reduces to multiplicative_closure") {
    OrderSet a = rule_closure({4, 12}, 200, ClosureRules{true, false, false});
    OrderSet b = multiplicative_closure({4, 12}, 200);
    REQUIRE(a == b);
    REQUIRE(a.popcount() == 8);
}

TEST_CASE("brute force closure hand examples") {
    // R2(4,4)=8, then kron/R2 chains of powers of two
    OrderSet a = brute_force_closure({4}, 100, ClosureRules{true, true, false});
    REQUIRE(a.members() == std::vector<u64>{1, 4, 8, 16, 32, 64});

    // R2 alone: R2(12,12)=72; R2(12,72)=432 > 400
    OrderSet b = brute_force_closure({12}, 400, ClosureRules{false, true, false});
    REQUIRE(b.members() == std::vector<u64>{1, 12, 72});

    // all rules on {4,8}: {1,4,8,16,32}, four members >= 4
    OrderSet c = brute_force_closure({4, 8}, 40, ClosureRules{true, true, true});
    REQUIRE(c.members() == std::vector<u64>{1, 4, 8, 16, 32});
    REQUIRE(count_in_range(c, 4, 40) == 4);
}

TEST_CASE("rule_closure matches brute force on the hand examples") {
    ClosureRules combos[] = {{true, true, false}, {false, true, false},
                             {true, true, true},  {true, false, true},
                             {false, false, true}, {false, true, true}};
    std::vector<std::vector<u64>> gen_sets = {
        {4}, {12}, {4, 8}, {4, 12}, {2, 6}, {3, 5, 7}, {2, 4, 36}, {20}};
    for (const auto& gens : gen_sets)
        for (const auto& rules : combos)
            REQUIRE(rule_closure(gens, 500, rules) ==
                    brute_force_closure(gens, 500, rules));
}

TEST_CASE("brute force rejects limits above the oracle bound") {
    REQUIRE_THROWS_AS(brute_force_closure({4}, 2000000, ClosureRules{true, false, false}),
                      std::domain_error);
}

TEST_CASE("closure rules validation") {
    REQUIRE_THROWS_AS(rule_closure({4}, 100, ClosureRules{}), std::domain_error);
    REQUIRE_THROWS_AS(rule_closure({0}, 100, ClosureRules{true, false, false}),
                      std::domain_error);
}

TEST_CASE("products closure of Paley orders reaches 15 members below 64") {
    std::vector<u64> paley = paley_orders(64, PaleyPolicy::pure);
    OrderSet blue = rule_closure(paley, 64, ClosureRules{true, true, true});
    REQUIRE(count_in_range(blue, 4, 64) == 15);
    // 52 = 4*13 is the only multiple of 4 in range with no derivation
    REQUIRE_FALSE(blue.contains(52));
    REQUIRE(blue.contains(40)); // R2(4, 20)
    REQUIRE(blue.contains(56)); // R2(4, 28)
}

TEST_CASE("closure oracle equivalence on seeded random sets") {
    SuiteResult r = run_closure_oracle_suite(/*seed=*/1234, /*n_sets=*/25);
    for (const auto& m : r.messages) UNSCOPED_INFO(m);
    REQUIRE(r.failures == 0);
}

TEST_CASE("negative control: an injected bit flip is detected") {
    SuiteResult r = run_closure_oracle_suite(/*seed=*/1234, /*n_sets=*/1,
                                             /*inject_fault=*/true);
    REQUIRE(r.failures >= 1);
    REQUIRE(r.messages.at(0).find("rule_closure != brute_force_closure") !=
            std::string::npos);
}

TEST_CASE("closure idempotence") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        std::vector<u64> gens = detail::random_generators(rng, 3, 6, 4, 100);
        u64 limit = detail::rand_in(rng, 500, 5000);
        ClosureRules rules{true, true, true};
        OrderSet once = rule_closure(gens, limit, rules);
        std::vector<u64> members = once.members();
        members.erase(members.begin()); // drop the identity
        OrderSet twice = rule_closure(members, limit, rules);
        REQUIRE(once == twice);
    }
}

TEST_CASE("closure monotonicity in generators and limit") {
    std::mt19937_64 rng(11);
    ClosureRules rules{true, true, true};
    for (int i = 0; i < 10; ++i) {
        std::vector<u64> gens = detail::random_generators(rng, 3, 6, 4, 150);
        std::vector<u64> more = gens;
        more.push_back(detail::rand_in(rng, 4, 150));
        u64 lo_limit = detail::rand_in(rng, 500, 2000);
        u64 hi_limit = lo_limit * 2;
        OrderSet small = rule_closure(gens, lo_limit, rules);
        OrderSet grown = rule_closure(more, lo_limit, rules);
        small.for_each_member([&](u64 n) { REQUIRE(grown.contains(n)); });
        // restriction of the larger-limit closure equals the smaller one
        OrderSet wide = rule_closure(gens, hi_limit, rules);
        for (u64 n = 1; n <= lo_limit; ++n)
            REQUIRE(small.contains(n) == wide.contains(n));
    }
}

TEST_CASE("monoid law on sampled pairs") {
    std::vector<u64> paley = paley_orders(1 << 14, PaleyPolicy::pure);
    OrderSet set = rule_closure(paley, 1 << 14, ClosureRules{true, true, true});
    std::vector<u64> members = set.members();
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100000; ++i) {
        u64 a = members[rng() % members.size()];
        u64 b = members[rng() % members.size()];
        if (a <= set.limit() / b) REQUIRE(set.contains(a * b));
    }
}

TEST_CASE("R2 subsumes doubling of four-divisible members") {
    std::vector<u64> paley = paley_orders(1 << 12, PaleyPolicy::pure);
    OrderSet set = rule_closure(paley, 1 << 12, ClosureRules{true, true, true});
    REQUIRE(set.contains(4));
    set.for_each_member([&](u64 n) {
        if (n % 4 == 0 && 2 * n <= set.limit()) REQUIRE(set.contains(2 * n));
    });
}

TEST_CASE("reduction exponent formula") {
    // 4 floor((A-1)/3) + ((A-1) mod 3)
    u32 expected[] = {0, 1, 2, 4, 5, 6, 8, 9, 10, 12};
    for (u32 a = 1; a <= 10; ++a)
        REQUIRE(max_two_power_savings(a) == expected[a - 1]);
}

TEST_CASE("no overflow near the 64-bit product range") {
    // generators close to the limit: products prune immediately
    u64 limit = u64(1) << 20;
    std::vector<u64> gens = {limit - 4, limit - 16, limit / 2};
    OrderSet set = rule_closure(gens, limit, ClosureRules{true, true, true});
    REQUIRE(set.contains(limit - 4));
    REQUIRE(set.contains(1));
}
