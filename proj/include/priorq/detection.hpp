#pragma once

namespace priorq {

/// Decision costs for the two error types; correct decisions cost nothing.
struct CostPair {
    double c10;  // cost of deciding h1 when h0 is true (false alarm)
    double c01;  // cost of deciding h0 when h1 is true (miss)
    CostPair(double c10_, double c01_);
};

/// Scalar measurement Y = s + W with s0 = 0, s1 = mu, and W ~ N(0, sigma^2).
struct GaussianMeasurementModel {
    double mu;
    double sigma;
    GaussianMeasurementModel(double mu_, double sigma_);
};

/// Assumed priors are clamped to [epsilon, 1-epsilon] before the log-ratio
/// threshold is formed; the exact endpoints keep their limit values.
struct ClampPolicy {
    double epsilon = 1e-12;
};

struct ErrorProbabilities {
    double false_alarm;  // Pr[decide h1 | h0], type I
    double miss;         // Pr[decide h0 | h1], type II
};

struct ErrorProbabilityDerivatives {
    double d_false_alarm;
    double d_miss;
};

struct ErrorProbabilitySecondDerivatives {
    double d2_false_alarm;
    double d2_miss;
};

/// Error probabilities of the likelihood ratio test whose threshold assumes
/// prior `a`. false_alarm is strictly decreasing in a, miss strictly increasing.
ErrorProbabilities error_probabilities(const GaussianMeasurementModel& model,
                                       const CostPair& costs, double a,
                                       const ClampPolicy& clamp = {});

/// First derivatives with respect to the assumed prior; a must be interior.
ErrorProbabilityDerivatives error_probability_derivatives(const GaussianMeasurementModel& model,
                                                          const CostPair& costs, double a);

ErrorProbabilitySecondDerivatives error_probability_second_derivatives(
    const GaussianMeasurementModel& model, const CostPair& costs, double a);

/// Expected cost of the matched test at true prior p0; zero at both endpoints,
/// strictly concave between them.
double bayes_risk(const GaussianMeasurementModel& model, const CostPair& costs, double p0);

/// Expected cost when the threshold assumes prior `a` but the truth is p0;
/// linear in p0 and tangent to bayes_risk at p0 = a.
double mismatched_bayes_risk(const GaussianMeasurementModel& model, const CostPair& costs,
                             double p0, double a);

/// Distortion of representing p0 by a: mismatched risk minus matched risk.
/// Nonnegative, zero only at p0 = a.
double bayes_risk_error(const GaussianMeasurementModel& model, const CostPair& costs, double p0,
                        double a);

/// Local quadratic coefficient of the distortion, -J''(p0)/2. Positive on (0,1).
double curvature(const GaussianMeasurementModel& model, const CostPair& costs, double p0);

}  // namespace priorq
