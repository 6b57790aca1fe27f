#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "priorq/detection.hpp"
#include "priorq/prior.hpp"

namespace priorq {

/// K-level scalar quantizer of [0,1]: boundaries b_0 <= ... <= b_K with
/// b_0 = 0 and b_K = 1, and one representation point per cell. Cells are
/// half-open (b_{k-1}, b_k] with p0 = 0 assigned to the first cell.
struct Quantizer {
    std::vector<double> boundaries;  // size K+1
    std::vector<double> reps;        // size K

    int levels() const { return static_cast<int>(reps.size()); }
    void validate() const;
};

/// Representation point of the cell containing p0. Assumes a valid quantizer.
double quantize(const Quantizer& q, double p0);

/// Plain-text record "K; b_0 .. b_K; a_1 .. a_K" with 17 significant digits.
std::string serialize(const Quantizer& q);
Quantizer parse_quantizer(const std::string& text);

/// Boundaries between strictly increasing representation points: each interior
/// boundary is the abscissa where the tangent lines of adjacent reps intersect.
std::vector<double> nearest_neighbor_boundaries(const GaussianMeasurementModel& model,
                                                const CostPair& costs,
                                                const std::vector<double>& reps);

/// Cell representative minimizing the cell-conditional mismatched risk by
/// derivative-free search plus Newton polish on the stationarity condition.
double centroid_general(const GaussianMeasurementModel& model, const CostPair& costs,
                        const Prior& prior, double lo, double hi);

/// Closed-form cell representative for the Gaussian model: the conditional
/// mean of P0 on the cell. Independent of costs and of the measurement model.
double centroid_gaussian(const Prior& prior, double lo, double hi);

/// Mean Bayes risk error of a quantizer under the prior: the expected
/// distortion E[d(P0, v(P0))], accumulated cell by cell.
double mbre(const GaussianMeasurementModel& model, const CostPair& costs, const Prior& prior,
            const Quantizer& q);

struct DesignOptions {
    double tol = 1e-10;    // relative MBRE change declaring convergence
    int max_iter = 500;    // iteration cap per start
    int restarts = 10;     // jittered starts beyond the quantile initialization
    std::uint64_t seed = 1;
    std::optional<std::vector<double>> init_reps;  // overrides the quantile start
};

struct DesignReport {
    double mbre = 0.0;
    int iterations = 0;
    bool converged = false;
    int restarts_used = 0;
    std::vector<double> per_iteration_mbre;
};

struct DesignResult {
    Quantizer quantizer;
    DesignReport report;
};

/// Lloyd-Max fixed-point iteration alternating boundary and centroid updates,
/// keeping the best fixed point across multi-start initializations.
DesignResult design_lloyd_max(const GaussianMeasurementModel& model, const CostPair& costs,
                              const Prior& prior, int k, const DesignOptions& opts = {});

/// Baseline quantizer minimizing mean absolute error |p0 - a|: boundaries at
/// rep midpoints, reps at cell conditional medians.
Quantizer design_mae(const Prior& prior, int k);

/// Exhaustive search over representation tuples on a grid (K <= 3), the
/// verification oracle for the iterative designer.
Quantizer brute_force_design(const GaussianMeasurementModel& model, const CostPair& costs,
                             const Prior& prior, int k, double grid_step);

}  // namespace priorq
