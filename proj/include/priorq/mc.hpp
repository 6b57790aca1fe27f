#pragma once

#include <cstdint>
#include <utility>

#include "priorq/design.hpp"
#include "priorq/detection.hpp"
#include "priorq/prior.hpp"

namespace priorq {

struct SimulationResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
};

/// Empirical (false alarm, miss) rates of the likelihood ratio test with the
/// threshold set for assumed prior `a`; n measurement draws per hypothesis.
std::pair<SimulationResult, SimulationResult> simulate_error_probabilities(
    const GaussianMeasurementModel& model, const CostPair& costs, double a, std::size_t n,
    std::uint64_t seed);

/// Monte Carlo MBRE: mean Bayes risk error along n prior draws run through
/// the quantizer.
SimulationResult simulate_mbre(const GaussianMeasurementModel& model, const CostPair& costs,
                               const Prior& prior, const Quantizer& q, std::size_t n,
                               std::uint64_t seed);

/// Empirical h1-decision rate of the full generative chain: prior draw,
/// hypothesis draw, Gaussian measurement, quantized-prior test.
SimulationResult simulate_decision_rate(const GaussianMeasurementModel& model,
                                        const CostPair& costs, const Prior& prior,
                                        const Quantizer& q, std::size_t n, std::uint64_t seed);

}  // namespace priorq
