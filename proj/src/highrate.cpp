#include "priorq/highrate.hpp"

#include <cmath>
#include <stdexcept>

#include "priorq/numerics.hpp"

namespace priorq {

namespace {

// B may misbehave at the exact endpoints; the integrands vanish there for the
// shipped priors, so integrals run on the trimmed interval.
constexpr double kEdge = 1e-9;
const Tolerance kNormTol{1e-12, 1e-12, 2000};

double curvature_density(const GaussianMeasurementModel& model, const CostPair& costs,
                         const Prior& prior, double p0) {
    return curvature(model, costs, p0) * density(prior, p0);
}

}  // namespace

PointDensity::PointDensity(const GaussianMeasurementModel& model, const CostPair& costs,
                           const Prior& prior)
    : model_(model), costs_(costs), prior_(prior) {
    normalizer_ = integrate(
                      [&](double p) { return std::cbrt(curvature_density(model_, costs_, prior_, p)); },
                      kEdge, 1.0 - kEdge, kNormTol)
                      .value;
    if (!(normalizer_ > 0.0)) throw std::runtime_error("point density: degenerate normalizer");
}

double PointDensity::operator()(double p0) const {
    if (!(p0 > 0.0 && p0 < 1.0))
        throw std::domain_error("boundary: point density requires p0 in (0,1)");
    return std::cbrt(curvature_density(model_, costs_, prior_, p0)) / normalizer_;
}

double point_density(const GaussianMeasurementModel& model, const CostPair& costs,
                     const Prior& prior, double p0) {
    return PointDensity(model, costs, prior)(p0);
}

HighRateSummary distortion_bound(const GaussianMeasurementModel& model, const CostPair& costs,
                                 const Prior& prior, int k) {
    if (k < 1) throw std::invalid_argument("invalid K: need K >= 1");
    const PointDensity lambda(model, costs, prior);
    const double norm = lambda.normalizer();
    HighRateSummary out;
    out.k = k;
    out.norm_one_third = norm * norm * norm;
    out.d_l = out.norm_one_third / (12.0 * k * k);
    out.rate_bits = std::log2(static_cast<double>(k));
    return out;
}

double dl_for_density(const GaussianMeasurementModel& model, const CostPair& costs,
                      const Prior& prior, int k, const std::function<double(double)>& lambda_fn) {
    if (k < 1) throw std::invalid_argument("invalid K: need K >= 1");
    const auto integrand = [&](double p) {
        const double lam = lambda_fn(p);
        if (!(lam > 0.0)) throw std::domain_error("ill-conditioned density: lambda must be > 0");
        return curvature_density(model, costs, prior, p) / (lam * lam);
    };
    return integrate(integrand, kEdge, 1.0 - kEdge, kNormTol).value / (12.0 * k * k);
}

double mae_point_density(const Prior& prior, double p0) {
    if (!(p0 >= 0.0 && p0 <= 1.0))
        throw std::invalid_argument("invalid parameter: p0 must be in [0,1]");
    const double norm =
        integrate([&](double p) { return std::sqrt(density(prior, p)); }, 0.0, 1.0, kNormTol)
            .value;
    return std::sqrt(density(prior, p0)) / norm;
}

double rate_gap(const GaussianMeasurementModel& model, const CostPair& costs,
                const Prior& prior) {
    const double norm_third = distortion_bound(model, costs, prior, 1).norm_one_third;
    const double root_mass =
        integrate([&](double p) { return std::sqrt(density(prior, p)); }, 0.0, 1.0, kNormTol)
            .value;
    const double norm_half = root_mass * root_mass;
    const double total_curvature =
        integrate([&](double p) { return curvature(model, costs, p); }, kEdge, 1.0 - kEdge,
                  kNormTol)
            .value;
    return 0.5 * std::log2(norm_third / (norm_half * total_curvature));
}

Quantizer companion_quantizer(const GaussianMeasurementModel& model, const CostPair& costs,
                              const Prior& prior, int k) {
    if (k < 1) throw std::invalid_argument("invalid K: need K >= 1");
    const PointDensity lambda(model, costs, prior);

    // reps at the odd quantiles of the point density, found by walking the
    // cumulative density left to right
    std::vector<double> reps(k);
    double left = kEdge, acc = 0.0;
    for (int j = 0; j < k; ++j) {
        const double target = (2.0 * j + 1.0) / (2.0 * k);
        const double root = find_root(
            [&](double x) {
                return acc + integrate([&](double p) { return lambda(p); }, left, x, kNormTol)
                                 .value -
                       target;
            },
            left, 1.0 - kEdge, Tolerance{1e-12, 1e-12, 200});
        acc += integrate([&](double p) { return lambda(p); }, left, root, kNormTol).value;
        left = root;
        reps[j] = root;
    }
    return Quantizer{nearest_neighbor_boundaries(model, costs, reps), reps};
}

}  // namespace priorq
