#pragma once

#include <functional>

#include "priorq/design.hpp"
#include "priorq/detection.hpp"
#include "priorq/prior.hpp"

namespace priorq {

struct HighRateSummary {
    int k = 0;
    double d_l = 0.0;            // distortion-rate approximation at K = k
    double rate_bits = 0.0;      // log2(k)
    double norm_one_third = 0.0; // ||B f||_{1/3}
};

/// Caches the normalizer of the curvature-weighted optimal point density so a
/// batch of evaluations costs one normalization integral.
class PointDensity {
public:
    PointDensity(const GaussianMeasurementModel& model, const CostPair& costs,
                 const Prior& prior);

    double operator()(double p0) const;
    double normalizer() const { return normalizer_; }

private:
    GaussianMeasurementModel model_;
    CostPair costs_;
    Prior prior_;
    double normalizer_;
};

/// Optimal point density (B f)^{1/3} / integral of the same; integrates to 1.
double point_density(const GaussianMeasurementModel& model, const CostPair& costs,
                     const Prior& prior, double p0);

/// Distortion-rate approximation D_L = ||B f||_{1/3} / (12 K^2).
HighRateSummary distortion_bound(const GaussianMeasurementModel& model, const CostPair& costs,
                                 const Prior& prior, int k);

/// Distortion approximation for an arbitrary point density lambda on (0,1);
/// matches distortion_bound when lambda is the optimal density.
double dl_for_density(const GaussianMeasurementModel& model, const CostPair& costs,
                      const Prior& prior, int k, const std::function<double(double)>& lambda_fn);

/// Point density of the mean-absolute-error quantizer: sqrt(f) normalized.
double mae_point_density(const Prior& prior, double p0);

/// Rate penalty (in bits, <= 0) of using the MAE point density instead of the
/// optimal one, constant across distortion levels.
double rate_gap(const GaussianMeasurementModel& model, const CostPair& costs, const Prior& prior);

/// Quantizer whose reps sit at the odd 1/(2K) quantiles of the optimal point
/// density, with nearest-neighbor boundaries.
Quantizer companion_quantizer(const GaussianMeasurementModel& model, const CostPair& costs,
                              const Prior& prior, int k);

}  // namespace priorq
