#include <catch2/catch_amalgamated.hpp>

#include "hadord/partitions.hpp"
#include "hadord/selftest.hpp"

using namespace hadord;

TEST_CASE("partition_count base cases") {
    REQUIRE(partition_count(0) == 1);
    REQUIRE(partition_count(1) == 1);
    REQUIRE(partition_count(5) == 7); // enumeration oracle below re-derives this
    REQUIRE(detail::count_partitions_enum(5, 5) == 7);
}

TEST_CASE("pentagonal recurrence matches enumeration up to 60") {
    PartitionCache cache(60);
    for (u64 n = 0; n <= 60; ++n)
        REQUIRE(cache.value(n) == detail::count_partitions_enum(n, n));
}

TEST_CASE("pentagonal recurrence matches largest-part DP at 1000") {
    PartitionCache cache(1000);
    std::vector<mpz_class> dp = detail::partition_dp(1000);
    for (std::size_t n = 0; n <= 1000; ++n) REQUIRE(cache.value(n) == dp[n]);
    // p(1000) is a 32-digit number
    REQUIRE(cache.value(1000).get_str().size() == 32);
}

TEST_CASE("partition numbers are nondecreasing") {
    PartitionCache cache(300);
    for (u64 n = 1; n <= 300; ++n)
        REQUIRE(cache.value(n) >= cache.value(n - 1));
}

TEST_CASE("hardy_ramanujan_estimate closed form") {
    // exp(2 pi) / (24 sqrt 3) = 12.8819...
    REQUIRE(hardy_ramanujan_estimate(6) == Catch::Approx(12.8819).margin(5e-4));
    REQUIRE_THROWS_AS(hardy_ramanujan_estimate(0), std::domain_error);
}

TEST_CASE("hardy_ramanujan ratio tightens toward 1") {
    PartitionCache cache(1000);
    auto ratio = [&](u64 n) {
        return cache.value(n).get_d() / hardy_ramanujan_estimate(n);
    };
    double r100 = ratio(100);
    double r500 = ratio(500);
    double r1000 = ratio(1000);
    REQUIRE(r100 > 0.9);
    REQUIRE(r100 < 1.1);
    REQUIRE(r500 > 0.9);
    REQUIRE(r500 < 1.1);
    REQUIRE(r1000 > 0.9);
    REQUIRE(r1000 < 1.1);
    REQUIRE(std::abs(r1000 - 1.0) < std::abs(r100 - 1.0));
}

TEST_CASE("partition suite passes") {
    SuiteResult r = run_partition_suite();
    for (const auto& m : r.messages) UNSCOPED_INFO(m);
    REQUIRE(r.failures == 0);
}
