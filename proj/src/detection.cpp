#include "priorq/detection.hpp"

#include <cmath>
#include <stdexcept>

#include "priorq/numerics.hpp"

namespace priorq {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

void check_model(const GaussianMeasurementModel& m) {
    if (!(m.sigma > 0.0)) throw std::invalid_argument("invalid parameter: sigma must be > 0");
    if (!(m.mu != 0.0) || std::isnan(m.mu))
        throw std::invalid_argument("invalid parameter: mu must be nonzero");
}

void check_costs(const CostPair& c) {
    if (!(c.c10 > 0.0) || !(c.c01 > 0.0))
        throw std::invalid_argument("invalid parameter: costs must be > 0");
}

void check_clamp(const ClampPolicy& p) {
    if (!(p.epsilon > 0.0) || !(p.epsilon <= 1e-6))
        throw std::invalid_argument("invalid parameter: clamp epsilon must be in (0, 1e-6]");
}

// ln(c10 a / (c01 (1-a)))
double threshold_log(const CostPair& costs, double a) {
    return std::log(costs.c10) - std::log(costs.c01) + std::log(a) - std::log1p(-a);
}

}  // namespace

CostPair::CostPair(double c10_, double c01_) : c10(c10_), c01(c01_) { check_costs(*this); }

GaussianMeasurementModel::GaussianMeasurementModel(double mu_, double sigma_)
    : mu(mu_), sigma(sigma_) {
    check_model(*this);
}

ErrorProbabilities error_probabilities(const GaussianMeasurementModel& model,
                                       const CostPair& costs, double a,
                                       const ClampPolicy& clamp) {
    check_model(model);
    check_costs(costs);
    check_clamp(clamp);
    if (std::isnan(a) || a < 0.0 || a > 1.0)
        throw std::invalid_argument("invalid parameter: assumed prior must be in [0,1]");
    if (a == 0.0) return {1.0, 0.0};
    if (a == 1.0) return {0.0, 1.0};
    const double ac = std::min(std::max(a, clamp.epsilon), 1.0 - clamp.epsilon);
    // a negative separation only mirrors the measurement axis, so the error
    // probabilities depend on |mu|
    const double mu = std::abs(model.mu);
    const double half_snr = mu / (2.0 * model.sigma);
    const double t = (model.sigma / mu) * threshold_log(costs, ac);
    return {gaussian_tail(half_snr + t), gaussian_tail(half_snr - t)};
}

ErrorProbabilityDerivatives error_probability_derivatives(const GaussianMeasurementModel& model,
                                                          const CostPair& costs, double a) {
    check_model(model);
    check_costs(costs);
    if (!(a > 0.0 && a < 1.0))
        throw std::domain_error("boundary not differentiable: assumed prior must be in (0,1)");
    const double mu = std::abs(model.mu);
    const double half_snr = mu / (2.0 * model.sigma);
    const double ratio = model.sigma / mu;
    const double t = ratio * threshold_log(costs, a);
    const double common = kInvSqrt2Pi * ratio / (a * (1.0 - a));
    return {-common * std::exp(-0.5 * (half_snr + t) * (half_snr + t)),
            common * std::exp(-0.5 * (half_snr - t) * (half_snr - t))};
}

ErrorProbabilitySecondDerivatives error_probability_second_derivatives(
    const GaussianMeasurementModel& model, const CostPair& costs, double a) {
    check_model(model);
    check_costs(costs);
    if (!(a > 0.0 && a < 1.0))
        throw std::domain_error("boundary not differentiable: assumed prior must be in (0,1)");
    const double mu = std::abs(model.mu);
    const double half_snr = mu / (2.0 * model.sigma);
    const double ratio = model.sigma / mu;
    const double ratio2 = ratio * ratio;
    const double lr = threshold_log(costs, a);
    const double t = ratio * lr;
    const double cell = a * (1.0 - a);
    const double common = kInvSqrt2Pi * ratio / (cell * cell);
    return {common * std::exp(-0.5 * (half_snr + t) * (half_snr + t)) *
                (1.5 - 2.0 * a + ratio2 * lr),
            common * std::exp(-0.5 * (half_snr - t) * (half_snr - t)) *
                (2.0 * a - 0.5 - ratio2 * lr)};
}

double bayes_risk(const GaussianMeasurementModel& model, const CostPair& costs, double p0) {
    const ErrorProbabilities e = error_probabilities(model, costs, p0);
    return costs.c10 * p0 * e.false_alarm + costs.c01 * (1.0 - p0) * e.miss;
}

double mismatched_bayes_risk(const GaussianMeasurementModel& model, const CostPair& costs,
                             double p0, double a) {
    if (std::isnan(p0) || p0 < 0.0 || p0 > 1.0)
        throw std::invalid_argument("invalid parameter: true prior must be in [0,1]");
    const ErrorProbabilities e = error_probabilities(model, costs, a);
    return costs.c10 * p0 * e.false_alarm + costs.c01 * (1.0 - p0) * e.miss;
}

double bayes_risk_error(const GaussianMeasurementModel& model, const CostPair& costs, double p0,
                        double a) {
    return mismatched_bayes_risk(model, costs, p0, a) - bayes_risk(model, costs, p0);
}

double curvature(const GaussianMeasurementModel& model, const CostPair& costs, double p0) {
    if (!(p0 > 0.0 && p0 < 1.0))
        throw std::domain_error("boundary: curvature requires p0 in (0,1)");
    const ErrorProbabilityDerivatives d1 = error_probability_derivatives(model, costs, p0);
    const ErrorProbabilitySecondDerivatives d2 =
        error_probability_second_derivatives(model, costs, p0);
    return -0.5 * costs.c10 * p0 * d2.d2_false_alarm - costs.c10 * d1.d_false_alarm -
           0.5 * costs.c01 * (1.0 - p0) * d2.d2_miss + costs.c01 * d1.d_miss;
}

}  // namespace priorq
