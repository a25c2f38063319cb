#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "srq/grouping.hpp"
#include "srq/model.hpp"
#include "srq/rng.hpp"

using namespace srq;

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

// E[max(0, X)] for X ~ Normal(mu, s^2): mu*Phi(mu/s) + s*phi(mu/s).
double clamped_normal_mean(double mu, double s) {
    return mu * normal_cdf(mu / s) + s * normal_pdf(mu / s);
}

}  // namespace

TEST_CASE("quantizer spec derives unit count") {
    CHECK(QuantizerSpec::make(1).unit_count == 1);
    CHECK(QuantizerSpec::make(3).unit_count == 7);
    CHECK(QuantizerSpec::make(10).unit_count == 1023);
    CHECK(QuantizerSpec::make(14).unit_count == 16383);
    CHECK_THROWS_AS(QuantizerSpec::make(0), std::invalid_argument);
    CHECK_THROWS_AS(QuantizerSpec::make(-2), std::invalid_argument);
}

TEST_CASE("grouping tags round-trip through text") {
    CHECK(to_string(Grouping::bw()) == "bw");
    CHECK(to_string(Grouping::rs(1, 9)) == "rs:1:9");
    CHECK(grouping_from_string("un") == Grouping::un());
    CHECK(grouping_from_string("rs:2:5") == Grouping::rs(2, 5));
    CHECK_THROWS_AS(grouping_from_string("xx"), std::invalid_argument);
}

TEST_CASE("zero mismatch reproduces nominal weights exactly") {
    ComponentArray array = build_half_split(6);
    ComponentArray sampled = sample_actual_weights(array, {0.0, 12345}, 7);
    REQUIRE(sampled.actual.size() == array.nominal.size());
    for (std::size_t i = 0; i < sampled.actual.size(); ++i)
        CHECK(sampled.actual[i] == static_cast<double>(array.nominal[i]));
    CHECK(sampled.trial == 7);
}

TEST_CASE("sampling is a pure function of (seed, trial, component)") {
    ComponentArray array = build_uniform(8);
    MismatchModel model{0.2, 99};

    ComponentArray a = sample_actual_weights(array, model, 3);
    ComponentArray b = sample_actual_weights(array, model, 5);
    ComponentArray a_again = sample_actual_weights(array, model, 3);

    CHECK(a.actual == a_again.actual);  // call order cannot matter
    CHECK(a.actual != b.actual);

    ComponentArray other_seed = sample_actual_weights(array, {0.2, 100}, 3);
    CHECK(a.actual != other_seed.actual);
}

TEST_CASE("component weight variance scales with nominal weight") {
    // A weight-w component is the sum of w unit cells ~ Normal(1, sigma^2),
    // so its std is sqrt(w) * sigma.
    const double sigma = 0.1;
    const int draws = 100000;

    for (std::uint32_t w : {1u, 4u, 32u}) {
        ComponentArray array;
        array.spec = QuantizerSpec::make(1);  // spec irrelevant to the draw stream
        array.grouping = Grouping::raw();
        array.nominal = {w};
        array.actual = {0.0};

        double sum = 0.0, sq = 0.0;
        for (int t = 0; t < draws; ++t) {
            double v = sample_actual_weights(array, {sigma, 2024}, t).actual[0];
            sum += v;
            sq += v * v;
        }
        const double mean = sum / draws;
        const double var = sq / draws - mean * mean;
        const double expect_std = std::sqrt(static_cast<double>(w)) * sigma;

        CHECK(mean == doctest::Approx(static_cast<double>(w)).epsilon(0.01));
        CHECK(std::sqrt(var) == doctest::Approx(expect_std).epsilon(0.05));
    }
}

TEST_CASE("clamping at zero shifts the small-weight mean up") {
    // w=1, sigma=0.5: clamping removes ~2.3% of mass below zero.
    ComponentArray array;
    array.spec = QuantizerSpec::make(1);
    array.grouping = Grouping::raw();
    array.nominal = {1};
    array.actual = {0.0};

    const int draws = 100000;
    double sum = 0.0;
    double min_v = 1e300;
    for (int t = 0; t < draws; ++t) {
        double v = sample_actual_weights(array, {0.5, 777}, t).actual[0];
        sum += v;
        min_v = std::min(min_v, v);
    }
    const double mean = sum / draws;
    const double oracle = clamped_normal_mean(1.0, 0.5);  // = 1.0042453513084...

    CHECK(oracle == doctest::Approx(1.00424535).epsilon(1e-6));
    CHECK(mean == doctest::Approx(oracle).epsilon(0.005));
    CHECK(mean > 0.99);
    CHECK(mean < 1.03);
    CHECK(min_v >= 0.0);
}

TEST_CASE("no draw goes negative at extreme mismatch") {
    ComponentArray array = build_binary_weighted(4);
    for (int t = 0; t < 2000; ++t) {
        ComponentArray sampled = sample_actual_weights(array, {0.9, 5}, t);
        for (double v : sampled.actual) CHECK(v >= 0.0);
    }
}

TEST_CASE("distinct components use non-overlapping draw streams") {
    // Correlation between two equal-weight components should be ~0.
    ComponentArray array;
    array.spec = QuantizerSpec::make(2);
    array.grouping = Grouping::raw();
    array.nominal = {1, 1, 1};
    array.actual = {0.0, 0.0, 0.0};

    const int draws = 50000;
    double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (int t = 0; t < draws; ++t) {
        ComponentArray s = sample_actual_weights(array, {0.3, 31}, t);
        sx += s.actual[0];
        sy += s.actual[1];
        sxy += s.actual[0] * s.actual[1];
        sxx += s.actual[0] * s.actual[0];
        syy += s.actual[1] * s.actual[1];
    }
    const double n = draws;
    const double cov = sxy / n - (sx / n) * (sy / n);
    const double corr = cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) * (syy / n - (sy / n) * (sy / n)));
    CHECK(std::abs(corr) < 0.02);
}

TEST_CASE("negative sigma is rejected") {
    ComponentArray array = build_binary_weighted(3);
    CHECK_THROWS_AS(sample_actual_weights(array, {-0.1, 0}, 0), std::invalid_argument);
}
