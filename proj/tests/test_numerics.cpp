#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "priorq/detection.hpp"
#include "priorq/numerics.hpp"
#include "priorq/prior.hpp"

using namespace priorq;

TEST_CASE("gaussian_tail: reference points") {
    CHECK(gaussian_tail(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gaussian_tail(std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(gaussian_tail(-std::numeric_limits<double>::infinity()) == 1.0);
    // frozen from high-precision quadrature of the normal density over [1, 40]
    CHECK(gaussian_tail(1.0) == doctest::Approx(0.15865525393145705).epsilon(1e-14));
    CHECK_THROWS_AS(gaussian_tail(std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
}

TEST_CASE("gaussian_tail: quadrature oracle and symmetry") {
    // independent oracle: integrate the density itself on [x, 40]
    const auto normal_pdf = [](double t) {
        return std::exp(-0.5 * t * t) * 0.39894228040143267794;
    };
    for (double x : {-2.0, -0.5, 0.7, 1.0, 2.5}) {
        const double oracle = integrate(normal_pdf, x, 40.0, Tolerance{1e-14, 1e-14, 400}).value;
        CHECK(gaussian_tail(x) == doctest::Approx(oracle).epsilon(1e-12));
    }
    for (int i = 0; i <= 64; ++i) {
        const double x = -8.0 + 16.0 * i / 64.0;
        CHECK(std::abs(gaussian_tail(x) + gaussian_tail(-x) - 1.0) < 1e-12);
    }
}

TEST_CASE("integrate: basic integrands") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0).value ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate([](double p) { return p; }, 0.0, 1.0).value ==
          doctest::Approx(0.5).epsilon(1e-14));
    const Prior b52 = Prior::make_beta(5.0, 2.0);
    CHECK(integrate([&](double p) { return density(b52, p); }, 0.0, 1.0).value ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("integrate: exact on a degree-29 polynomial") {
    const IntegrationResult r = integrate([](double x) { return std::pow(x, 29); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 30.0).epsilon(1e-14));
    CHECK(r.converged);
}

TEST_CASE("integrate: additivity over adjacent panels") {
    const auto f = [](double x) { return std::exp(-x) * std::sin(5.0 * x); };
    const double whole = integrate(f, 0.0, 2.0).value;
    const double split = integrate(f, 0.0, 0.7).value + integrate(f, 0.7, 2.0).value;
    CHECK(whole == doctest::Approx(split).epsilon(1e-11));
}

TEST_CASE("integrate: refinement budget exhaustion flags the result") {
    const auto kink = [](double x) { return std::sqrt(std::abs(x - 0.3)); };
    const IntegrationResult r = integrate(kink, 0.0, 1.0, Tolerance{1e-15, 1e-15, 1});
    CHECK_FALSE(r.converged);
    CHECK(r.value == doctest::Approx(integrate(kink, 0.0, 1.0).value).epsilon(1e-3));
    CHECK_THROWS_AS(integrate(kink, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("minimize_unimodal: quadratic vertex") {
    const MinimizeResult r =
        minimize_unimodal([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0, 1.0);
    CHECK(std::abs(r.argmin - 0.3) < 1e-9);
    CHECK(r.min_value == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.converged);
}

TEST_CASE("minimize_unimodal: kink minimum") {
    const MinimizeResult r = minimize_unimodal([](double x) { return std::abs(x - 0.6); }, 0.0,
                                               1.0, Tolerance{1e-10, 1e-12, 500});
    CHECK(std::abs(r.argmin - 0.6) < 1e-9);
}

TEST_CASE("minimize_unimodal: Bayes risk error in the assumed prior") {
    const GaussianMeasurementModel model(1.0, 1.0);
    const CostPair costs(1.0, 1.0);
    const MinimizeResult r = minimize_unimodal(
        [&](double a) { return bayes_risk_error(model, costs, 0.4, a); }, 1e-6, 1.0 - 1e-6);
    CHECK(std::abs(r.argmin - 0.4) < 1e-6);  // flat quadratic bottom limits the locator
    CHECK(r.min_value >= 0.0);
}

TEST_CASE("find_root: brackets and failures") {
    const double root =
        find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, Tolerance{1e-12, 1e-12, 200});
    CHECK(root == doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("Tolerance validation") {
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, Tolerance{0.0, 1e-10, 10}),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, Tolerance{1e-10, 1e-10, 0}),
                    std::invalid_argument);
}
