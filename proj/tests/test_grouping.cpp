#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "srq/grouping.hpp"

using namespace srq;

namespace {

std::vector<std::uint32_t> sorted(std::vector<std::uint32_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::uint64_t weight_sum(const ComponentArray& a) {
    return std::accumulate(a.nominal.begin(), a.nominal.end(), std::uint64_t{0});
}

// Coin-problem completeness: after ascending sort, every prefix reaches all
// integers up to its sum iff each weight is <= 1 + sum of all smaller ones.
bool covers_all_subset_sums(const ComponentArray& a) {
    std::vector<std::uint32_t> w = sorted(a.nominal);
    std::uint64_t reach = 0;
    for (std::uint32_t c : w) {
        if (c > reach + 1) return false;
        reach += c;
    }
    return reach == a.spec.unit_count;
}

}  // namespace

TEST_CASE("binary-weighted arrays") {
    CHECK(build_binary_weighted(10).nominal ==
          std::vector<std::uint32_t>{1, 2, 4, 8, 16, 32, 64, 128, 256, 512});
    CHECK(build_binary_weighted(1).nominal == std::vector<std::uint32_t>{1});
    CHECK(build_binary_weighted(3).nominal == std::vector<std::uint32_t>{1, 2, 4});
    CHECK(weight_sum(build_binary_weighted(3)) == 7);
    CHECK_THROWS_AS(build_binary_weighted(0), std::invalid_argument);
}

TEST_CASE("half-split arrays") {
    ComponentArray hs10 = build_half_split(10);
    CHECK(hs10.n() == 19);
    CHECK(sorted(hs10.nominal) ==
          std::vector<std::uint32_t>{1, 1, 1, 2, 2, 4, 4, 8, 8, 16, 16, 32, 32, 64, 64, 128, 128,
                                     256, 256});
    // Canonical order: first sub-array ascending (duplicate 1 first), then second.
    CHECK(hs10.nominal ==
          std::vector<std::uint32_t>{1, 1, 2, 4, 8, 16, 32, 64, 128, 256,
                                     1, 2, 4, 8, 16, 32, 64, 128, 256});

    CHECK(sorted(build_half_split(3).nominal) == std::vector<std::uint32_t>{1, 1, 1, 2, 2});
    CHECK(weight_sum(build_half_split(3)) == 7);

    ComponentArray hs2 = build_half_split(2);
    CHECK(hs2.n() == 3);
    CHECK(weight_sum(hs2) == 3);
    CHECK(sorted(hs2.nominal) == std::vector<std::uint32_t>{1, 1, 1});

    CHECK_THROWS_AS(build_half_split(1), std::invalid_argument);
}

TEST_CASE("uniform arrays") {
    ComponentArray un10 = build_uniform(10);
    CHECK(un10.n() == 20);
    CHECK(sorted(un10.nominal) ==
          std::vector<std::uint32_t>{1, 1, 1, 1, 2, 2, 2, 2, 4, 4, 4, 8, 8, 16, 16, 31, 62, 123,
                                     245, 490});
    // Sub-structure: resolutions 5, 3, 2; base then sub-arrays in order.
    CHECK(un10.nominal ==
          std::vector<std::uint32_t>{1, 2, 4, 8, 16, 31, 62, 123, 245, 490,
                                     1, 2, 4, 8, 16, 1, 2, 4, 1, 2});

    ComponentArray un3 = build_uniform(3);
    CHECK(un3.nominal == std::vector<std::uint32_t>{1, 1, 2, 1, 2});
    CHECK(weight_sum(un3) == 7);

    ComponentArray un2 = build_uniform(2);
    CHECK(sorted(un2.nominal) == std::vector<std::uint32_t>{1, 1, 1});

    CHECK_THROWS_AS(build_uniform(1), std::invalid_argument);
}

TEST_CASE("general redundant family") {
    SUBCASE("s=1, n0prime=n0-1 is the half-split multiset") {
        for (int n0 = 2; n0 <= 14; ++n0)
            CHECK(sorted(build_rs_family(n0, 1, n0 - 1).nominal) ==
                  sorted(build_half_split(n0).nominal));
    }
    SUBCASE("n0=4, s=1, n0prime=2") {
        ComponentArray a = build_rs_family(4, 1, 2);
        CHECK(a.nominal == std::vector<std::uint32_t>{1, 2, 2, 4, 2, 4});  // base then sub
        CHECK(weight_sum(a) == 15);
    }
    SUBCASE("n0=2, s=1, n0prime=1") {
        ComponentArray a = build_rs_family(2, 1, 1);
        CHECK(a.nominal == std::vector<std::uint32_t>{1, 1, 1});
        CHECK(weight_sum(a) == 3);
    }
    SUBCASE("parameter domain") {
        CHECK_THROWS_AS(build_rs_family(4, 0, 2), std::invalid_argument);   // s < 1
        CHECK_THROWS_AS(build_rs_family(4, 3, 2), std::invalid_argument);   // s > n0 - n0prime
        CHECK_THROWS_AS(build_rs_family(4, 1, 0), std::invalid_argument);   // n0prime < 1
        CHECK_THROWS_AS(build_rs_family(4, 1, 4), std::invalid_argument);   // n0prime >= n0
        CHECK_NOTHROW(build_rs_family(10, 2, 7));
    }
}

TEST_CASE("every constructor partitions 2^n0 - 1 unit cells") {
    for (int n0 = 2; n0 <= 14; ++n0) {
        const std::uint64_t cells = (1u << n0) - 1u;
        CHECK(weight_sum(build_binary_weighted(n0)) == cells);
        CHECK(weight_sum(build_half_split(n0)) == cells);
        CHECK(weight_sum(build_uniform(n0)) == cells);
        for (int p = 1; p < n0; ++p)
            for (int s = 1; s <= n0 - p; ++s)
                CHECK(weight_sum(build_rs_family(n0, s, p)) == cells);
    }
}

TEST_CASE("all weights are positive") {
    for (int n0 = 2; n0 <= 14; ++n0) {
        for (std::uint32_t w : build_half_split(n0).nominal) CHECK(w > 0);
        for (std::uint32_t w : build_uniform(n0).nominal) CHECK(w > 0);
    }
}

TEST_CASE("bw/hs/un reach every integer below full scale at zero mismatch") {
    for (int n0 = 2; n0 <= 14; ++n0) {
        CHECK(covers_all_subset_sums(build_binary_weighted(n0)));
        CHECK(covers_all_subset_sums(build_half_split(n0)));
        CHECK(covers_all_subset_sums(build_uniform(n0)));
    }
}

TEST_CASE("raw weight lists are validated") {
    ComponentArray a = build_raw(3, {3, 3, 1});
    CHECK(a.grouping == Grouping::raw());
    CHECK(a.n() == 3);
    CHECK_THROWS_AS(build_raw(3, {3, 3}), std::invalid_argument);      // sum != 7
    CHECK_THROWS_AS(build_raw(3, {7, 0}), std::invalid_argument);      // zero weight
    CHECK_THROWS_AS(build_raw(3, {}), std::invalid_argument);          // empty
}
