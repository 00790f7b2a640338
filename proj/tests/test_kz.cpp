#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "vbpbb/kz.hpp"
#include "vbpbb/rng.hpp"

using namespace vbpbb;

namespace {

constexpr double kPi = std::numbers::pi;

RegularSeries tone(std::int64_t n, double amplitude, double v, double phase) {
    std::vector<double> values(static_cast<std::size_t>(n));
    for (std::int64_t t = 1; t <= n; ++t)
        values[static_cast<std::size_t>(t - 1)] =
            amplitude * std::cos(2.0 * kPi * v * static_cast<double>(t) + phase);
    return RegularSeries({2001, 1, 1}, std::move(values));
}

RegularSeries noise_series(std::int64_t n, std::uint64_t seed) {
    RngStream rng = RngStream::from_seed(seed);
    std::vector<double> values(static_cast<std::size_t>(n));
    for (auto& v : values) v = rng.normal();
    return RegularSeries({2001, 1, 1}, std::move(values));
}

// Dirichlet kernel of the length-m uniform window at frequency u.
double dirichlet(double u, int m) {
    double s = std::sin(kPi * u);
    if (s == 0.0) return 1.0;
    return std::sin(kPi * u * m) / (m * s);
}

// direct re-summation with edge renormalization, no precomputed kernel
std::complex<double> brute_kzft_at(const std::vector<double>& x, std::int64_t t0,
                                   int m, int k, double v) {
    auto a = kz_coefficients(m, k);
    std::int64_t h = static_cast<std::int64_t>(k) * (m - 1) / 2;
    std::int64_t n = static_cast<std::int64_t>(x.size());
    std::complex<double> acc = 0.0;
    double wsum = 0.0;
    for (std::int64_t s = -h; s <= h; ++s) {
        std::int64_t t = t0 + s;  // 0-based receiver position
        if (t < 0 || t >= n) continue;
        double w = a[static_cast<std::size_t>(s + h)];
        wsum += w;
        acc += w * x[static_cast<std::size_t>(t)] *
               std::exp(std::complex<double>(0.0, -2.0 * kPi * v * static_cast<double>(s)));
    }
    return acc / wsum;
}

}  // namespace

TEST_CASE("kz_coefficients match hand-expanded cases") {
    auto flat = kz_coefficients(5, 1);
    REQUIRE(flat.size() == 5);
    for (double w : flat) CHECK(w == doctest::Approx(0.2).epsilon(1e-14));

    auto triangle = kz_coefficients(3, 2);
    REQUIRE(triangle.size() == 5);
    const double expect[] = {1.0 / 9, 2.0 / 9, 3.0 / 9, 2.0 / 9, 1.0 / 9};
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(triangle[i] == doctest::Approx(expect[i]).epsilon(1e-14));
}

TEST_CASE("kz_coefficients equal an exact integer convolution oracle") {
    // coefficients of (1+z+...+z^6)^3 computed in exact integer arithmetic
    const int m = 7, k = 3;
    std::vector<std::uint64_t> c{1, 1, 1, 1, 1, 1, 1};
    for (int iter = 1; iter < k; ++iter) {
        std::vector<std::uint64_t> next(c.size() + m - 1, 0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (int j = 0; j < m; ++j) next[i + static_cast<std::size_t>(j)] += c[i];
        c = std::move(next);
    }
    const double denom = std::pow(7.0, 3);
    auto got = kz_coefficients(m, k);
    REQUIRE(got.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK(std::fabs(got[i] - static_cast<double>(c[i]) / denom) <= 1e-12);
}

TEST_CASE("kz_coefficients structural invariants") {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{1, 1}, {3, 1}, {9, 2}, {15, 4}, {731, 1}}) {
        auto a = kz_coefficients(m, k);
        REQUIRE(static_cast<int>(a.size()) == k * (m - 1) + 1);
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] >= 0.0);
            CHECK(a[i] == a[a.size() - 1 - i]);  // symmetry
            sum += a[i];
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-12);
        if (k == 1)
            for (double w : a) CHECK(w == doctest::Approx(1.0 / m).epsilon(1e-14));
    }
    CHECK_THROWS_AS(kz_coefficients(4, 1), std::invalid_argument);   // even window
    CHECK_THROWS_AS(kz_coefficients(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(kz_coefficients(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(kz_coefficients(1048577, 1000000), std::invalid_argument);  // kernel cap
}

TEST_CASE("kz_filter reproduces a constant and flattens an in-window cosine") {
    RegularSeries constant({2001, 1, 1}, std::vector<double>(120, 3.25));
    for (auto edge : {EdgePolicy::Renormalize, EdgePolicy::Trim}) {
        auto r = kz_filter(constant, 11, 2, edge);
        for (std::int64_t t = 1; t <= r.series.size(); ++t)
            CHECK(r.series.value(t) == doctest::Approx(3.25).epsilon(1e-14));
        CHECK(r.valid.first_t == 11);
        CHECK(r.valid.last_t == 110);
    }

    // cosine with period equal to the window vanishes on the interior
    auto wave = tone(300, 2.0, 1.0 / 25, 0.3);
    auto filtered = kz_filter(wave, 25, 1);
    for (std::int64_t t = filtered.valid.first_t; t <= filtered.valid.last_t; ++t)
        CHECK(std::fabs(filtered.series.value(t)) <= 1e-9);
}

TEST_CASE("kz_filter preserves a linear ramp on the interior") {
    std::vector<double> ramp(200);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = 0.5 * static_cast<double>(i + 1);
    auto r = kz_filter(RegularSeries({2001, 1, 1}, ramp), 21, 2);
    for (std::int64_t t = r.valid.first_t; t <= r.valid.last_t; ++t)
        CHECK(r.series.value(t) == doctest::Approx(0.5 * static_cast<double>(t)).epsilon(1e-12));
}

TEST_CASE("kzft_filter agrees with a direct-summation oracle everywhere") {
    auto x = noise_series(160, 9001);
    struct Combo {
        int m, k;
        double v;
    };
    for (auto [m, k, v] : {Combo{15, 1, 1.0 / 15}, Combo{21, 2, 0.1}, Combo{9, 3, 0.25}}) {
        auto z = kzft_filter(x, FilterSpec{m, k, v});
        for (std::int64_t t = 0; t < x.size(); ++t) {
            auto want = brute_kzft_at(x.values(), t, m, k, v);
            auto got = z.values[static_cast<std::size_t>(t)];
            CHECK(std::abs(got - want) <= 1e-12 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("kzft_filter at v=0 equals kz_filter") {
    auto x = noise_series(140, 31337);
    auto real_path = kz_filter(x, 13, 2);
    auto complex_path = kzft_filter(x, FilterSpec{13, 2, 0.0});
    for (std::int64_t t = 1; t <= x.size(); ++t) {
        CHECK(complex_path.values[static_cast<std::size_t>(t - 1)].real() ==
              real_path.series.value(t));
        CHECK(std::fabs(complex_path.values[static_cast<std::size_t>(t - 1)].imag()) <= 1e-12);
    }
}

TEST_CASE("kzft_filter pins a planted tone to (A/2)e^{i theta}") {
    // m*v = 3 exactly, so the uniform window holds whole cycles
    const double A = 2.5, v = 1.0 / 25, phase = 0.7;
    const int m = 75;
    auto x = tone(600, A, v, phase);
    auto z = kzft_filter(x, FilterSpec{m, 1, v});
    for (std::int64_t t = z.valid.first_t; t <= z.valid.last_t; ++t) {
        double theta = 2.0 * kPi * v * static_cast<double>(t) + phase;
        std::complex<double> want = 0.5 * A * std::exp(std::complex<double>(0.0, theta));
        CHECK(std::abs(z.values[static_cast<std::size_t>(t - 1)] - want) <= 0.01 * (A / 2));
    }
}

TEST_CASE("kzft_filter attenuates the adjacent harmonic per the Dirichlet oracle") {
    // interferer at 2v seen by a filter centered at v
    const double A = 4.0, v = 1.0 / 365;
    const int m = 731;
    auto x = tone(5844, A, 2 * v, 0.0);
    auto z = kzft_filter(x, FilterSpec{m, 1, v});
    double worst = 0.0;
    for (std::int64_t t = z.valid.first_t; t <= z.valid.last_t; ++t)
        worst = std::max(worst, std::abs(z.values[static_cast<std::size_t>(t - 1)]));
    CHECK(worst <= 0.02 * (A / 2));
    // the residual is governed by the window's Dirichlet response at 2v -/+ v
    double predicted = (A / 2) * (std::fabs(dirichlet(v, m)) + std::fabs(dirichlet(3 * v, m)));
    CHECK(worst <= predicted * 1.05);
}

TEST_CASE("filters are linear") {
    auto x = noise_series(180, 21);
    auto y = noise_series(180, 22);
    const double alpha = 1.7, beta = -0.6;
    std::vector<double> mix(180);
    for (std::size_t i = 0; i < mix.size(); ++i)
        mix[i] = alpha * x.values()[i] + beta * y.values()[i];
    RegularSeries combined({2001, 1, 1}, mix);

    for (auto edge : {EdgePolicy::Renormalize, EdgePolicy::Trim}) {
        auto fx = kz_filter(x, 15, 2, edge), fy = kz_filter(y, 15, 2, edge);
        auto fmix = kz_filter(combined, 15, 2, edge);
        for (std::int64_t t = 1; t <= 180; ++t) {
            double want = alpha * fx.series.value(t) + beta * fy.series.value(t);
            CHECK(std::fabs(fmix.series.value(t) - want) <= 1e-10 * (1.0 + std::fabs(want)));
        }
        FilterSpec spec{15, 2, 0.08};
        auto zx = kzft_filter(x, spec, edge), zy = kzft_filter(y, spec, edge);
        auto zmix = kzft_filter(combined, spec, edge);
        for (std::size_t i = 0; i < zmix.values.size(); ++i) {
            auto want = alpha * zx.values[i] + beta * zy.values[i];
            CHECK(std::abs(zmix.values[i] - want) <= 1e-10 * (1.0 + std::abs(want)));
        }
    }
}

TEST_CASE("whole-cycle windows reject a constant exactly") {
    RegularSeries constant({2001, 1, 1}, std::vector<double>(500, 4.2));
    auto z = kzft_filter(constant, FilterSpec{75, 1, 1.0 / 25});
    auto c = reconstruct_component(z, 1.0 / 25, 25);
    for (std::int64_t t = c.valid.first_t; t <= c.valid.last_t; ++t)
        CHECK(std::fabs(c.values[static_cast<std::size_t>(t - 1)]) <= 1e-9 * 4.2);
}

TEST_CASE("trim-policy filtering commutes with time shifts on the interior") {
    auto x = noise_series(220, 808);
    const std::int64_t shift = 5;
    std::vector<double> shifted(x.values().begin() + shift, x.values().end());
    RegularSeries xs({2001, 1, 6}, shifted);

    FilterSpec spec{17, 2, 0.12};
    auto z = kzft_filter(x, spec, EdgePolicy::Trim);
    auto zs = kzft_filter(xs, spec, EdgePolicy::Trim);
    for (std::int64_t t = zs.valid.first_t; t <= zs.valid.last_t; ++t) {
        // position t of the shifted series is position t+shift of the original
        auto a = zs.values[static_cast<std::size_t>(t - 1)];
        auto b = z.values[static_cast<std::size_t>(t + shift - 1)];
        CHECK(a.real() == b.real());
        CHECK(a.imag() == b.imag());
    }
}

TEST_CASE("reconstruct_component applies the documented identities") {
    // Z(t) = (A/2) e^{i 2 pi v t}  ->  A cos(2 pi v t)
    const double A = 3.0, v = 0.05;
    ComplexSeries z;
    z.start = {2001, 1, 1};
    z.filter = FilterSpec{5, 1, v};
    z.valid = {1, 40};
    for (std::int64_t t = 1; t <= 40; ++t)
        z.values.push_back(0.5 * A *
                           std::exp(std::complex<double>(0.0, 2.0 * kPi * v * t)));
    auto c = reconstruct_component(z, v, 20);
    REQUIRE(c.size() == 40);
    CHECK(c.period == 20);
    CHECK(c.frequency == v);
    for (std::int64_t t = 1; t <= 40; ++t)
        CHECK(c.values[static_cast<std::size_t>(t - 1)] ==
              doctest::Approx(A * std::cos(2.0 * kPi * v * t)).epsilon(1e-12));

    // v = 0 keeps the real part as-is
    ComplexSeries z0;
    z0.start = {2001, 1, 1};
    z0.filter = FilterSpec{5, 1, 0.0};
    z0.valid = {1, 3};
    z0.values = {{1.5, 0.0}, {-2.0, 0.0}, {0.25, 0.0}};
    auto c0 = reconstruct_component(z0, 0.0, 1);
    CHECK(c0.values[0] == 1.5);
    CHECK(c0.values[1] == -2.0);
    CHECK(c0.values[2] == 0.25);

    CHECK_THROWS_AS(reconstruct_component(z, v + 1e-6, 20), std::invalid_argument);
    CHECK_THROWS_AS(reconstruct_component(z, v, 0), std::invalid_argument);
}

TEST_CASE("planted tone round-trips through filter and reconstruction") {
    const double A = 5.0, v = 1.0 / 365;
    auto x = tone(5844, A, v, 0.0);
    auto z = kzft_filter(x, FilterSpec{731, 1, v});
    auto c = reconstruct_component(z, v, 365);
    // least-squares amplitude against the planted carrier over the interior
    double num = 0.0, den = 0.0;
    for (std::int64_t t = c.valid.first_t; t <= c.valid.last_t; ++t) {
        double carrier = std::cos(2.0 * kPi * v * static_cast<double>(t));
        num += c.values[static_cast<std::size_t>(t - 1)] * carrier;
        den += carrier * carrier;
    }
    CHECK(num / den == doctest::Approx(A).epsilon(0.02));
    // and pointwise agreement to the same 2% of amplitude
    for (std::int64_t t = c.valid.first_t; t <= c.valid.last_t; ++t) {
        double want = A * std::cos(2.0 * kPi * v * static_cast<double>(t));
        CHECK(std::fabs(c.values[static_cast<std::size_t>(t - 1)] - want) <= 0.02 * A);
    }
}

TEST_CASE("default_window picks the next odd multiple") {
    CHECK(default_window(365, 2) == 731);
    CHECK(default_window(20, 37) == 741);
    CHECK(default_window(7, 104) == 729);
    CHECK(default_window(52, 14) == 729);
    CHECK(default_window(13, 56) == 729);
    CHECK(default_window(1, 1) == 1);
    CHECK(default_window(6, 3) == 19);  // even product bumps up
    CHECK_THROWS_AS(default_window(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(default_window(5, 0), std::invalid_argument);

    CHECK(default_window_for_period(365) == 731);
    CHECK(default_window_for_period(52) == 729);
    CHECK(default_window_for_period(20) == 741);
    CHECK(default_window_for_period(13) == 729);
    CHECK(default_window_for_period(7) == 729);
}

TEST_CASE("window_frequency_deviation flags fractional cycle counts") {
    CHECK(window_frequency_deviation(75, 1.0 / 25) <= 1e-12);
    CHECK(window_frequency_deviation(731, 1.0 / 365) == doctest::Approx(731.0 / 365 - 2).epsilon(1e-9));
}

TEST_CASE("parse_frequency accepts decimals and fractions") {
    CHECK(parse_frequency("0.25") == 0.25);
    CHECK(parse_frequency("2/365") == doctest::Approx(2.0 / 365).epsilon(1e-15));
    CHECK_THROWS_AS(parse_frequency("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_frequency("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_frequency("1/"), std::invalid_argument);
}

TEST_CASE("filter spec validation") {
    CHECK_THROWS_AS(kzft_filter(noise_series(10, 1), FilterSpec{4, 1, 0.1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(kzft_filter(noise_series(10, 1), FilterSpec{5, 1, 0.6}),
                    std::invalid_argument);
    CHECK_THROWS_AS(kzft_filter(noise_series(10, 1), FilterSpec{5, 1, -0.1}),
                    std::invalid_argument);
    // valid range goes empty when the window outgrows the series
    auto z = kzft_filter(noise_series(10, 1), FilterSpec{21, 1, 0.1});
    CHECK(z.valid.empty());
    CHECK(z.values.size() == 10);
}
