#pragma once

#include <vector>

#include "priorq/design.hpp"
#include "priorq/detection.hpp"
#include "priorq/prior.hpp"

namespace priorq {

/// Interaction counts for the two populations and the shared rep-point quota.
struct PopulationScenario {
    double w;     // majority interaction count
    double b;     // minority interaction count
    int k_total;  // total representation points to split, >= 2
    PopulationScenario(double w_, double b_, int k_total_);
};

struct AllocationResult {
    int k_w = 0;
    int k_b = 0;
    double d2 = 0.0;
    std::vector<double> per_allocation_d2;  // indexed by k_w = 1 .. k_total-1
};

/// Interaction-weighted MBRE across two populations sharing one prior.
double two_population_mbre(const GaussianMeasurementModel& model, const CostPair& costs,
                           const Prior& prior, const Quantizer& q_w, const Quantizer& q_b,
                           double w, double b);

/// Exhaustive scan of the k_total-1 splits, both sides designed optimally.
/// Ties go to the majority population.
AllocationResult allocate(const GaussianMeasurementModel& model, const CostPair& costs,
                          const Prior& prior, const PopulationScenario& scenario,
                          const DesignOptions& opts = {});

/// Prior-averaged probability of an h1 decision under the quantized test.
double decision_rate(const GaussianMeasurementModel& model, const CostPair& costs,
                     const Prior& prior, const Quantizer& q);

/// Difference in expected h1-decision rates: the k_b-point population minus
/// the k_w-point one. Positive means the smaller-budget population receives
/// more h1 decisions.
double discrimination_delta(const GaussianMeasurementModel& model, const CostPair& costs,
                            const Prior& prior, int k_w, int k_b,
                            const DesignOptions& opts = {});

/// Zero crossing of the discrimination difference along the cost ray
/// c10 = 1, c01 = r: scans the grid for a sign change and bisects it.
double dividing_line_scan(const GaussianMeasurementModel& model, const Prior& prior, int k_w,
                          int k_b, const std::vector<double>& ratio_grid,
                          const DesignOptions& opts = {});

}  // namespace priorq
