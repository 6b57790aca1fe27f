#include "priorq/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "priorq/rng.hpp"

namespace priorq {

namespace {

// log-likelihood-ratio test: decide h1 when (mu y - mu^2/2)/sigma^2 exceeds
// the log threshold formed from the assumed prior
struct LrTest {
    double scale;      // mu / sigma^2
    double offset;     // mu^2 / (2 sigma^2)
    double threshold;  // ln(c10 a / (c01 (1-a)))

    LrTest(const GaussianMeasurementModel& model, const CostPair& costs, double a) {
        const double ac = std::clamp(a, 1e-12, 1.0 - 1e-12);
        scale = model.mu / (model.sigma * model.sigma);
        offset = model.mu * model.mu / (2.0 * model.sigma * model.sigma);
        threshold = std::log(costs.c10) - std::log(costs.c01) + std::log(ac) - std::log1p(-ac);
    }

    bool decides_h1(double y) const { return scale * y - offset > threshold; }
};

SimulationResult from_indicator(std::size_t hits, std::size_t n, std::uint64_t seed) {
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n, seed};
}

void check_n(std::size_t n) {
    if (n < 1) throw std::invalid_argument("invalid parameter: n must be >= 1");
}

}  // namespace

std::pair<SimulationResult, SimulationResult> simulate_error_probabilities(
    const GaussianMeasurementModel& model, const CostPair& costs, double a, std::size_t n,
    std::uint64_t seed) {
    check_n(n);
    const LrTest test(model, costs, a);
    std::size_t false_alarms = 0, misses = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // measurement indices: [0, n) under h0, [n, 2n) under h1
        const double y0 = model.sigma * standard_normal(seed, i);
        const double y1 = model.mu + model.sigma * standard_normal(seed, n + i);
        if (test.decides_h1(y0)) ++false_alarms;
        if (!test.decides_h1(y1)) ++misses;
    }
    return {from_indicator(false_alarms, n, seed), from_indicator(misses, n, seed)};
}

SimulationResult simulate_mbre(const GaussianMeasurementModel& model, const CostPair& costs,
                               const Prior& prior, const Quantizer& q, std::size_t n,
                               std::uint64_t seed) {
    check_n(n);
    q.validate();
    const std::vector<double> priors = sample(prior, seed, n);
    double sum = 0.0, sum_sq = 0.0;
    for (double p0 : priors) {
        const double d = bayes_risk_error(model, costs, p0, quantize(q, p0));
        sum += d;
        sum_sq += d * d;
    }
    const double nd = static_cast<double>(n);
    const double mean = sum / nd;
    const double var = std::max(0.0, sum_sq / nd - mean * mean);
    return {mean, std::sqrt(var / nd), n, seed};
}

SimulationResult simulate_decision_rate(const GaussianMeasurementModel& model,
                                        const CostPair& costs, const Prior& prior,
                                        const Quantizer& q, std::size_t n, std::uint64_t seed) {
    check_n(n);
    q.validate();
    const std::vector<double> priors = sample(prior, seed, n);  // uniform indices [0, n)
    std::size_t h1_decisions = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p0 = priors[i];
        const bool truth_h0 = uniform01(seed, n + i) < p0;  // hypothesis indices [n, 2n)
        const double y = (truth_h0 ? 0.0 : model.mu) +
                         model.sigma * standard_normal(seed, n + i);  // uniforms [2n, 4n)
        if (LrTest(model, costs, quantize(q, p0)).decides_h1(y)) ++h1_decisions;
    }
    return from_indicator(h1_decisions, n, seed);
}

}  // namespace priorq
