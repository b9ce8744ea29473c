#include <catch2/catch_amalgamated.hpp>

#include "hadord/order_set.hpp"

using namespace hadord;

namespace {

OrderSet make_set(u64 limit, std::initializer_list<u64> values) {
    OrderSet set(limit);
    for (u64 v : values) set.insert(v);
    return set;
}

} // namespace

TEST_CASE("OrderSet membership and popcount") {
    OrderSet set = make_set(100, {1, 4, 12, 100});
    REQUIRE(set.contains(1));
    REQUIRE(set.contains(100));
    REQUIRE_FALSE(set.contains(2));
    REQUIRE_FALSE(set.contains(0));
    REQUIRE_FALSE(set.contains(101));
    REQUIRE(set.popcount() == 4);
    REQUIRE(set.members() == std::vector<u64>{1, 4, 12, 100});
    REQUIRE_THROWS_AS(set.insert(101), std::domain_error);
}

TEST_CASE("OrderSet enforces the memory budget") {
    REQUIRE_THROWS_AS(OrderSet(u64(1) << 30, /*budget=*/1024), resource_error);
}

TEST_CASE("counting_function") {
    OrderSet set = make_set(100, {1, 4, 12});
    REQUIRE(counting_function(set, 5) == 2);
    REQUIRE(counting_function(set, 0) == 0);
    REQUIRE(counting_function(set, 100) == 3);
    REQUIRE(counting_function(set, 3) == 1);
    REQUIRE(counting_function(set, 4) == 2);
    REQUIRE_THROWS_AS(counting_function(set, 101), std::domain_error);
    // monotone
    u64 prev = 0;
    for (u64 x = 1; x <= 100; ++x) {
        u64 cur = counting_function(set, x);
        REQUIRE(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("window_counts") {
    OrderSet a = make_set(100, {1, 4, 8, 12});
    WindowCounts w = window_counts(a, 12); // (6,12] and [6,12]
    REQUIRE(w.half_open == 2);
    REQUIRE(w.closed == 2);

    OrderSet b = make_set(100, {1, 2, 4});
    w = window_counts(b, 4); // (2,4] = {4}; [2,4] = {2,4}
    REQUIRE(w.half_open == 1);
    REQUIRE(w.closed == 2);

    OrderSet c = make_set(100, {1});
    w = window_counts(c, 1); // (0.5,1] = {1}
    REQUIRE(w.half_open == 1);
    REQUIRE(w.closed == 1);

    // odd x: (x/2, x] starts at floor(x/2)+1, [x/2, x] at ceil(x/2)
    OrderSet d = make_set(100, {3, 4, 7});
    w = window_counts(d, 7); // (3.5, 7] = {4, 7}; [3.5, 7] = {4, 7}
    REQUIRE(w.half_open == 2);
    REQUIRE(w.closed == 2);
}

TEST_CASE("density modes") {
    OrderSet set = make_set(100, {1, 2, 4});
    REQUIRE(density(set, 4, DensityMode::all) == Catch::Approx(0.75));
    REQUIRE(density(set, 4, DensityMode::from4) == Catch::Approx(0.25));
    REQUIRE(density(set, 2, DensityMode::from4) == 0.0);
}

TEST_CASE("coefficient_series buckets by bit size") {
    OrderSet set = make_set(100, {1, 2, 4, 12});
    CoefficientSeries s = coefficient_series(set, 4);
    REQUIRE(s.coeffs == std::vector<u64>{1, 1, 1, 0, 1});

    OrderSet one = make_set(100, {1});
    REQUIRE(coefficient_series(one, 6).coeffs ==
            std::vector<u64>{1, 0, 0, 0, 0, 0, 0});
    REQUIRE_THROWS_AS(coefficient_series(set, 7), std::domain_error);
}

TEST_CASE("coefficient series partial sums reproduce counts at powers of two") {
    OrderSet set = make_set(1 << 10, {1, 2, 3, 9, 17, 100, 512, 1000});
    CoefficientSeries s = coefficient_series(set, 10);
    u64 partial = 0;
    for (unsigned k = 0; k <= 10; ++k) {
        partial += s.coeffs[k];
        REQUIRE(partial == counting_function(set, u64(1) << k));
    }
}

TEST_CASE("product_set") {
    OrderSet a = make_set(10, {1, 2});
    OrderSet b = make_set(10, {1, 3});
    REQUIRE(product_set(a, b, 10).members() == std::vector<u64>{1, 2, 3, 6});

    OrderSet identity = make_set(10, {1});
    OrderSet any = make_set(10, {1, 4, 7});
    REQUIRE(product_set(identity, any, 10) == any);

    OrderSet pow4 = make_set(200, {1, 4, 16, 64});
    OrderSet twelve = make_set(200, {1, 12});
    REQUIRE(product_set(pow4, twelve, 200).members() ==
            std::vector<u64>{1, 4, 12, 16, 48, 64, 192});
}
