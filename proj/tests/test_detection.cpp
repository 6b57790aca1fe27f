#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "priorq/detection.hpp"
#include "priorq/numerics.hpp"
#include "priorq/rng.hpp"

using namespace priorq;

namespace {
const GaussianMeasurementModel kModel(1.0, 1.0);
const CostPair kEqual(1.0, 1.0);
}  // namespace

TEST_CASE("error_probabilities: endpoint limits") {
    const ErrorProbabilities at_one = error_probabilities(kModel, kEqual, 1.0);
    CHECK(at_one.false_alarm == 0.0);
    CHECK(at_one.miss == 1.0);
    const ErrorProbabilities at_zero = error_probabilities(kModel, kEqual, 0.0);
    CHECK(at_zero.false_alarm == 1.0);
    CHECK(at_zero.miss == 0.0);
    // approaching the endpoint matches the limit
    const ErrorProbabilities near_one = error_probabilities(kModel, kEqual, 1.0 - 1e-13);
    CHECK(near_one.false_alarm < 1e-10);
    CHECK(near_one.miss > 1.0 - 1e-10);
}

TEST_CASE("error_probabilities: equal-cost symmetry and midpoint value") {
    for (int i = 1; i <= 9; ++i) {
        const double a = i / 10.0;
        const ErrorProbabilities e = error_probabilities(kModel, kEqual, a);
        const ErrorProbabilities mirrored = error_probabilities(kModel, kEqual, 1.0 - a);
        CHECK(e.false_alarm == doctest::Approx(mirrored.miss).epsilon(1e-14));
        CHECK(e.false_alarm >= 0.0);
        CHECK(e.miss <= 1.0);
    }
    // frozen: Q(1/2), cross-validated by the likelihood-ratio-test simulation suite
    const ErrorProbabilities mid = error_probabilities(kModel, kEqual, 0.5);
    CHECK(mid.false_alarm == doctest::Approx(0.30853753872598690).epsilon(1e-14));
    CHECK(mid.miss == doctest::Approx(0.30853753872598690).epsilon(1e-14));
}

TEST_CASE("error_probabilities: validation") {
    CHECK_THROWS_AS(error_probabilities(kModel, kEqual, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(GaussianMeasurementModel(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GaussianMeasurementModel(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(CostPair(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(error_probabilities(kModel, kEqual, 0.5, ClampPolicy{1e-3}),
                    std::invalid_argument);
}

TEST_CASE("derivatives: sign pattern on a grid") {
    const CostPair skew(1.0, 4.0);
    for (int i = 1; i <= 99; ++i) {
        const double a = i / 100.0;
        const ErrorProbabilityDerivatives d = error_probability_derivatives(kModel, skew, a);
        CHECK(d.d_false_alarm < 0.0);
        CHECK(d.d_miss > 0.0);
    }
}

TEST_CASE("derivatives: symmetry at the fixed point and boundary errors") {
    const ErrorProbabilityDerivatives d = error_probability_derivatives(kModel, kEqual, 0.5);
    CHECK(d.d_false_alarm == doctest::Approx(-d.d_miss).epsilon(1e-14));
    CHECK_THROWS_AS(error_probability_derivatives(kModel, kEqual, 0.0), std::domain_error);
    CHECK_THROWS_AS(error_probability_derivatives(kModel, kEqual, 1.0), std::domain_error);
}

TEST_CASE("derivatives: central finite differences") {
    const CostPair skew(2.0, 3.0);
    const GaussianMeasurementModel model(1.5, 0.8);
    const double h = 1e-6;
    for (double a : {0.2, 0.5, 0.8}) {
        const ErrorProbabilities up = error_probabilities(model, skew, a + h);
        const ErrorProbabilities dn = error_probabilities(model, skew, a - h);
        const ErrorProbabilityDerivatives d = error_probability_derivatives(model, skew, a);
        CHECK(d.d_false_alarm ==
              doctest::Approx((up.false_alarm - dn.false_alarm) / (2.0 * h)).epsilon(1e-5));
        CHECK(d.d_miss == doctest::Approx((up.miss - dn.miss) / (2.0 * h)).epsilon(1e-5));
    }
}

TEST_CASE("second derivatives: finite differences and mirrored symmetry") {
    const double h = 1e-4;
    for (double a : {0.3, 0.5, 0.7}) {
        const ErrorProbabilities up = error_probabilities(kModel, kEqual, a + h);
        const ErrorProbabilities mid = error_probabilities(kModel, kEqual, a);
        const ErrorProbabilities dn = error_probabilities(kModel, kEqual, a - h);
        const ErrorProbabilitySecondDerivatives d2 =
            error_probability_second_derivatives(kModel, kEqual, a);
        const double fd_fa = (up.false_alarm - 2.0 * mid.false_alarm + dn.false_alarm) / (h * h);
        const double fd_miss = (up.miss - 2.0 * mid.miss + dn.miss) / (h * h);
        CHECK(d2.d2_false_alarm == doctest::Approx(fd_fa).epsilon(1e-4));
        CHECK(d2.d2_miss == doctest::Approx(fd_miss).epsilon(1e-4));
    }
    for (double a : {0.2, 0.4, 0.6}) {
        const ErrorProbabilitySecondDerivatives d2 =
            error_probability_second_derivatives(kModel, kEqual, a);
        const ErrorProbabilitySecondDerivatives mirrored =
            error_probability_second_derivatives(kModel, kEqual, 1.0 - a);
        CHECK(d2.d2_false_alarm == doctest::Approx(mirrored.d2_miss).epsilon(1e-12));
    }
}

TEST_CASE("second derivatives: continuity scan") {
    // adjacent values at 1e-4 spacing may differ by O(slope * h); flag only
    // jumps far beyond a Lipschitz bound for this configuration
    const double h = 1e-4;
    double prev_fa = error_probability_second_derivatives(kModel, kEqual, h).d2_false_alarm;
    double prev_miss = error_probability_second_derivatives(kModel, kEqual, h).d2_miss;
    for (int i = 2; i < 10000; ++i) {
        const ErrorProbabilitySecondDerivatives d2 =
            error_probability_second_derivatives(kModel, kEqual, i * h);
        CHECK(std::abs(d2.d2_false_alarm - prev_fa) <= 1e-6 + 600.0 * h);
        CHECK(std::abs(d2.d2_miss - prev_miss) <= 1e-6 + 600.0 * h);
        prev_fa = d2.d2_false_alarm;
        prev_miss = d2.d2_miss;
    }
}

TEST_CASE("bayes_risk: endpoints, midpoint, concavity") {
    CHECK(bayes_risk(kModel, kEqual, 0.0) == 0.0);
    CHECK(bayes_risk(kModel, kEqual, 1.0) == 0.0);
    // frozen: equals Q(1/2) at the symmetric point
    CHECK(bayes_risk(kModel, kEqual, 0.5) ==
          doctest::Approx(0.30853753872598690).epsilon(1e-14));
    for (int i = 0; i < 200; ++i) {
        const double x = 0.01 + 0.98 * uniform01(11, 2 * i);
        const double y = 0.01 + 0.98 * uniform01(11, 2 * i + 1);
        const double lhs = bayes_risk(kModel, kEqual, 0.5 * (x + y));
        const double rhs = 0.5 * (bayes_risk(kModel, kEqual, x) + bayes_risk(kModel, kEqual, y));
        CHECK(lhs >= rhs - 1e-12);
    }
}

TEST_CASE("mismatched_bayes_risk: matched diagonal, linearity, tangency") {
    const CostPair skew(1.0, 2.5);
    for (int i = 1; i <= 9; ++i) {
        const double p = i / 10.0;
        CHECK(mismatched_bayes_risk(kModel, skew, p, p) ==
              doctest::Approx(bayes_risk(kModel, skew, p)).epsilon(1e-14));
    }
    const double x = 0.15, y = 0.85, a = 0.4;
    const double lhs = mismatched_bayes_risk(kModel, skew, 0.5 * (x + y), a);
    const double rhs = 0.5 * (mismatched_bayes_risk(kModel, skew, x, a) +
                              mismatched_bayes_risk(kModel, skew, y, a));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-15));
    for (int i = 1; i <= 99; i += 7) {
        for (int j = 1; j <= 99; j += 7) {
            CHECK(mismatched_bayes_risk(kModel, skew, i / 100.0, j / 100.0) >=
                  bayes_risk(kModel, skew, i / 100.0) - 1e-12);
        }
    }
}

TEST_CASE("bayes_risk_error: zero diagonal and a frozen off-diagonal value") {
    for (int i = 1; i <= 19; ++i) {
        const double a = 0.05 * i;
        CHECK(std::abs(bayes_risk_error(kModel, kEqual, a, a)) <= 1e-12);
    }
    CHECK(bayes_risk_error(kModel, kEqual, 0.3, 0.7) > 0.0);
    // frozen from direct evaluation of the tangent-line gap via gaussian_tail
    CHECK(bayes_risk_error(kModel, kEqual, 0.3, 0.7) ==
          doctest::Approx(0.21874962420455209).epsilon(1e-13));
}

TEST_CASE("distortion geometry: convexity in p0, single minimum in a") {
    for (int j = 1; j <= 9; ++j) {
        const double a = j / 10.0;
        for (int i = 1; i < 98; ++i) {
            const double p = i / 99.0, h = 1.0 / 99.0;
            const double second = bayes_risk_error(kModel, kEqual, p + h, a) -
                                  2.0 * bayes_risk_error(kModel, kEqual, p, a) +
                                  bayes_risk_error(kModel, kEqual, p - h, a);
            CHECK(second >= -1e-9);
        }
    }
    for (int j = 1; j <= 9; ++j) {
        const double p0 = j / 10.0;
        int sign_changes = 0;
        double prev_diff = 0.0;
        for (int i = 1; i < 999; ++i) {
            const double diff = bayes_risk_error(kModel, kEqual, p0, (i + 1) / 1000.0) -
                                bayes_risk_error(kModel, kEqual, p0, i / 1000.0);
            if (prev_diff < 0.0 && diff > 0.0) ++sign_changes;
            if (diff != 0.0) prev_diff = diff;
        }
        CHECK(sign_changes == 1);
    }
}

TEST_CASE("curvature: positivity, finite differences, analytic reassembly") {
    const CostPair skew(1.0, 4.0);
    for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0;
        CHECK(curvature(kModel, skew, p) > 0.0);
    }
    const double h = 1e-4;
    for (double p : {0.25, 0.5, 0.75}) {
        const double second_fd = (bayes_risk(kModel, skew, p + h) -
                                  2.0 * bayes_risk(kModel, skew, p) +
                                  bayes_risk(kModel, skew, p - h)) /
                                 (h * h);
        CHECK(curvature(kModel, skew, p) == doctest::Approx(-0.5 * second_fd).epsilon(1e-3));
    }
    // independent assembly of J'' from the error-probability derivative formulas
    for (double p : {0.1, 0.37, 0.5, 0.81}) {
        const ErrorProbabilityDerivatives d1 = error_probability_derivatives(kModel, skew, p);
        const ErrorProbabilitySecondDerivatives d2 =
            error_probability_second_derivatives(kModel, skew, p);
        const double j2 = 2.0 * skew.c10 * d1.d_false_alarm + skew.c10 * p * d2.d2_false_alarm -
                          2.0 * skew.c01 * d1.d_miss + skew.c01 * (1.0 - p) * d2.d2_miss;
        CHECK(curvature(kModel, skew, p) == doctest::Approx(-0.5 * j2).epsilon(1e-10));
    }
    CHECK_THROWS_AS(curvature(kModel, skew, 0.0), std::domain_error);
}

TEST_CASE("curvature: local quadratic approximation of the distortion") {
    const double a = 0.4;
    const double b = curvature(kModel, kEqual, a);
    double prev_ratio_err = 1e9;
    for (double h : {1e-2, 1e-3, 1e-4}) {
        const double ratio = bayes_risk_error(kModel, kEqual, a + h, a) / (b * h * h);
        CHECK(std::abs(ratio - 1.0) < prev_ratio_err);
        prev_ratio_err = std::abs(ratio - 1.0);
    }
    CHECK(prev_ratio_err < 1e-3);
}

TEST_CASE("joint cost rescaling scales risks linearly") {
    const CostPair base(1.0, 3.0);
    const CostPair scaled(2.5, 7.5);
    for (double p0 : {0.2, 0.55, 0.9}) {
        for (double a : {0.3, 0.6}) {
            CHECK(bayes_risk_error(kModel, scaled, p0, a) ==
                  doctest::Approx(2.5 * bayes_risk_error(kModel, base, p0, a)).epsilon(1e-13));
            CHECK(bayes_risk(kModel, scaled, p0) ==
                  doctest::Approx(2.5 * bayes_risk(kModel, base, p0)).epsilon(1e-13));
        }
    }
}
