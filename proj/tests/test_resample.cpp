#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "vbpbb/resample.hpp"
#include "vbpbb/rng.hpp"
#include "vbpbb/series.hpp"

using namespace vbpbb;

namespace {

std::vector<double> iota_values(std::int64_t n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = static_cast<double>(i + 1);
    return v;
}

}  // namespace

TEST_CASE("rng streams are deterministic and distinct") {
    auto a1 = replicate_stream(42, 0);
    auto a2 = replicate_stream(42, 0);
    auto b = replicate_stream(42, 1);
    auto c = replicate_stream(43, 0);
    bool differs_b = false, differs_c = false;
    for (int i = 0; i < 64; ++i) {
        auto v = a1.next_u64();
        CHECK(v == a2.next_u64());
        if (v != b.next_u64()) differs_b = true;
        if (v != c.next_u64()) differs_c = true;
    }
    CHECK(differs_b);
    CHECK(differs_c);
    CHECK(component_seed(1234, 0) == 1234);
    CHECK(component_seed(1234, 1) != 1234);
}

TEST_CASE("uniform_below stays in range and rejects zero") {
    auto rng = RngStream::from_seed(7);
    for (std::uint64_t bound : {1ull, 2ull, 3ull, 10ull, 12345ull}) {
        for (int i = 0; i < 200; ++i) CHECK(rng.uniform_below(bound) < bound);
    }
    CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
    for (int i = 0; i < 1000; ++i) {
        double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("period-aligned resampling with n == d is the identity") {
    auto rng = RngStream::from_seed(1);
    auto values = iota_values(12);
    auto plan = plan_pbb(12, 12, rng);
    auto out = apply_plan(values, plan);
    CHECK(out == values);
}

TEST_CASE("with two admissible starts both are drawn roughly equally") {
    const std::int64_t n = 20;
    const int d = 10;
    std::map<std::int64_t, int> first_block, second_block;
    for (int rep = 0; rep < 1000; ++rep) {
        auto rng = replicate_stream(99, static_cast<std::uint64_t>(rep));
        auto plan = plan_pbb(n, d, rng);
        REQUIRE(plan.block_starts.size() == 2);
        ++first_block[plan.block_starts[0]];
        ++second_block[plan.block_starts[1]];
    }
    for (auto* counts : {&first_block, &second_block}) {
        REQUIRE(counts->size() == 2);  // starts 1 and 11 only
        CHECK(counts->count(1) == 1);
        CHECK(counts->count(11) == 1);
        for (auto& [start, count] : *counts) {
            CHECK(count >= 440);
            CHECK(count <= 560);
        }
    }
}

TEST_CASE("provenance indices are congruent to their targets mod d") {
    RngStream meta = RngStream::from_seed(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const std::int64_t n = 20 + static_cast<std::int64_t>(meta.uniform_below(500));
        const int d = static_cast<int>(1 + meta.uniform_below(19));
        if (d > n) continue;
        auto rng = replicate_stream(7, static_cast<std::uint64_t>(trial));
        auto plan = plan_pbb(n, d, rng);
        auto prov = plan_provenance(plan);
        REQUIRE(static_cast<std::int64_t>(prov.size()) == n);
        for (std::int64_t t = 1; t <= n; ++t) {
            CHECK((prov[static_cast<std::size_t>(t - 1)] - t) % d == 0);
            CHECK(prov[static_cast<std::size_t>(t - 1)] >= 1);
            CHECK(prov[static_cast<std::size_t>(t - 1)] <= n);
        }

        // same property for the generalized variant with b = 2d (when it fits)
        if (2 * d <= n) {
            auto rng2 = replicate_stream(8, static_cast<std::uint64_t>(trial));
            auto gplan = plan_gsbb(n, 2 * d, d, rng2);
            auto gprov = plan_provenance(gplan);
            for (std::int64_t t = 1; t <= n; ++t)
                CHECK((gprov[static_cast<std::size_t>(t - 1)] - t) % d == 0);
        }
    }
}

TEST_CASE("resampling preserves length and the per-phase value multisets") {
    const std::int64_t n = 137;
    const int d = 12;
    auto values = iota_values(n);
    for (int rep = 0; rep < 50; ++rep) {
        auto rng = replicate_stream(5, static_cast<std::uint64_t>(rep));
        auto plan = plan_pbb(n, d, rng);
        auto out = apply_plan(values, plan);
        REQUIRE(static_cast<std::int64_t>(out.size()) == n);
        // every output value must be an input value from the same phase class
        for (std::int64_t t = 1; t <= n; ++t) {
            auto v = static_cast<std::int64_t>(out[static_cast<std::size_t>(t - 1)]);
            CHECK((v - t) % d == 0);
        }
    }
}

TEST_CASE("the generalized variant with b = d reproduces period-aligned plans") {
    const std::int64_t n = 1000;
    const int d = 30;
    for (int rep = 0; rep < 200; ++rep) {
        auto r1 = replicate_stream(12, static_cast<std::uint64_t>(rep));
        auto r2 = replicate_stream(12, static_cast<std::uint64_t>(rep));
        auto p = plan_pbb(n, d, r1);
        auto g = plan_gsbb(n, d, d, r2);
        CHECK(p.block_starts == g.block_starts);
    }
}

TEST_CASE("a full-length block is the identity resample") {
    auto rng = RngStream::from_seed(3);
    auto values = iota_values(48);
    auto plan = plan_gsbb(48, 48, 12, rng);
    CHECK(apply_plan(values, plan) == values);
}

TEST_CASE("the final block truncates to the series length") {
    // n = 25, d = 10: targets 1, 11, 21; the last block holds 5 values
    auto rng = RngStream::from_seed(9);
    auto plan = plan_pbb(25, 10, rng);
    REQUIRE(plan.block_starts.size() == 3);
    auto prov = plan_provenance(plan);
    CHECK(prov.size() == 25);
    // the last target only copies 5 positions from its source start
    for (std::int64_t i = 0; i < 5; ++i)
        CHECK(prov[static_cast<std::size_t>(20 + i)] == plan.block_starts[2] + i);
}

TEST_CASE("bootstrap spec validation catches inconsistent settings") {
    CHECK_THROWS_AS((BootstrapSpec{BootstrapMethod::PBB, 5, 7, 10, 0}.validate(100)), Error);
    CHECK_THROWS_AS((BootstrapSpec{BootstrapMethod::GSBB, 15, 7, 10, 0}.validate(100)), Error);
    CHECK_THROWS_AS((BootstrapSpec{BootstrapMethod::PBB, 7, 7, 10, 0}.validate(5)), Error);
    CHECK_THROWS_AS((BootstrapSpec{BootstrapMethod::PBB, 0, 0, 10, 0}.validate(100)), Error);
    CHECK_THROWS_AS((BootstrapSpec{BootstrapMethod::PBB, 7, 7, 0, 0}.validate(100)), Error);
    CHECK_NOTHROW((BootstrapSpec{BootstrapMethod::GSBB, 14, 7, 10, 0}.validate(100)));
    CHECK_NOTHROW((BootstrapSpec{BootstrapMethod::PBB, 7, 7, 10, 0}.validate(100)));
}

TEST_CASE("series-level resample helpers keep the anchor date") {
    RegularSeries s({2001, 1, 1}, iota_values(60));
    auto r1 = RngStream::from_seed(11);
    auto out = pbb_resample(s, 15, r1);
    CHECK(out.size() == 60);
    CHECK(out.start() == s.start());
    auto r2 = RngStream::from_seed(11);
    auto gout = gsbb_resample(s, 15, 15, r2);
    for (std::int64_t t = 1; t <= 60; ++t) CHECK(gout.value(t) == out.value(t));
}
