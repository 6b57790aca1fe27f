#include "priorq/populations.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

#include "priorq/numerics.hpp"

namespace priorq {

namespace {

const Tolerance kCellTol{1e-13, 1e-13, 300};
constexpr double kDeltaZeroTol = 1e-9;
constexpr double kRatioBracketTol = 1e-4;

}  // namespace

PopulationScenario::PopulationScenario(double w_, double b_, int k_total_)
    : w(w_), b(b_), k_total(k_total_) {
    if (!(w > 0.0) || !(b > 0.0))
        throw std::invalid_argument("invalid parameter: interaction counts must be > 0");
    if (k_total < 2) throw std::invalid_argument("invalid parameter: k_total must be >= 2");
}

double two_population_mbre(const GaussianMeasurementModel& model, const CostPair& costs,
                           const Prior& prior, const Quantizer& q_w, const Quantizer& q_b,
                           double w, double b) {
    if (!(w > 0.0) || !(b > 0.0))
        throw std::invalid_argument("invalid parameter: interaction counts must be > 0");
    const double total = w + b;
    // weighted mismatched risk minus the matched risk is the weighted MBRE
    return (w / total) * mbre(model, costs, prior, q_w) +
           (b / total) * mbre(model, costs, prior, q_b);
}

AllocationResult allocate(const GaussianMeasurementModel& model, const CostPair& costs,
                          const Prior& prior, const PopulationScenario& scenario,
                          const DesignOptions& opts) {
    std::map<int, double> mbre_by_k;
    const auto optimal_mbre = [&](int k) {
        auto it = mbre_by_k.find(k);
        if (it == mbre_by_k.end())
            it = mbre_by_k.emplace(k, design_lloyd_max(model, costs, prior, k, opts).report.mbre)
                     .first;
        return it->second;
    };

    AllocationResult out;
    out.per_allocation_d2.resize(scenario.k_total - 1);
    const double total = scenario.w + scenario.b;
    for (int k_w = 1; k_w < scenario.k_total; ++k_w) {
        out.per_allocation_d2[k_w - 1] = (scenario.w / total) * optimal_mbre(k_w) +
                                         (scenario.b / total) * optimal_mbre(scenario.k_total - k_w);
    }

    // the split objective is expected to be unimodal; report if a scan ever
    // disagrees rather than assuming it
    int local_minima = 0;
    for (int i = 0; i < scenario.k_total - 1; ++i) {
        const double here = out.per_allocation_d2[i];
        const bool left_ok = (i == 0) || out.per_allocation_d2[i - 1] >= here;
        const bool right_ok =
            (i == scenario.k_total - 2) || out.per_allocation_d2[i + 1] > here;
        if (left_ok && right_ok) ++local_minima;
    }
    if (local_minima > 1)
        std::fprintf(stderr, "note: allocation objective has %d local minima\n", local_minima);

    // scan so majority-favoring splits win exact ties
    const bool majority_is_w = scenario.w >= scenario.b;
    double best = std::numeric_limits<double>::infinity();
    int best_kw = majority_is_w ? scenario.k_total - 1 : 1;
    for (int i = 0; i < scenario.k_total - 1; ++i) {
        const int k_w = majority_is_w ? scenario.k_total - 1 - i : i + 1;
        const double d2 = out.per_allocation_d2[k_w - 1];
        if (d2 < best) {
            best = d2;
            best_kw = k_w;
        }
    }
    out.k_w = best_kw;
    out.k_b = scenario.k_total - best_kw;
    out.d2 = best;
    return out;
}

double decision_rate(const GaussianMeasurementModel& model, const CostPair& costs,
                     const Prior& prior, const Quantizer& q) {
    q.validate();
    double rate = 0.0;
    for (int k = 0; k < q.levels(); ++k) {
        const double lo = q.boundaries[k], hi = q.boundaries[k + 1];
        if (!(hi > lo)) continue;
        const ErrorProbabilities e = error_probabilities(model, costs, q.reps[k]);
        rate += integrate(
                    [&](double p) {
                        return (1.0 - p + p * e.false_alarm - (1.0 - p) * e.miss) *
                               density(prior, p);
                    },
                    lo, hi, kCellTol)
                    .value;
    }
    return rate;
}

double discrimination_delta(const GaussianMeasurementModel& model, const CostPair& costs,
                            const Prior& prior, int k_w, int k_b, const DesignOptions& opts) {
    if (k_w < 1 || k_b < 1) throw std::invalid_argument("invalid K: need K >= 1");
    const Quantizer q_w = design_lloyd_max(model, costs, prior, k_w, opts).quantizer;
    const Quantizer q_b =
        (k_b == k_w) ? q_w : design_lloyd_max(model, costs, prior, k_b, opts).quantizer;
    return decision_rate(model, costs, prior, q_b) - decision_rate(model, costs, prior, q_w);
}

double dividing_line_scan(const GaussianMeasurementModel& model, const Prior& prior, int k_w,
                          int k_b, const std::vector<double>& ratio_grid,
                          const DesignOptions& opts) {
    if (ratio_grid.size() < 2)
        throw std::invalid_argument("invalid parameter: ratio_grid needs >= 2 points");
    for (std::size_t i = 0; i < ratio_grid.size(); ++i) {
        if (!(ratio_grid[i] > 0.0) || (i > 0 && !(ratio_grid[i] > ratio_grid[i - 1])))
            throw std::invalid_argument(
                "invalid parameter: ratio_grid must be positive and increasing");
    }
    const auto delta_at = [&](double ratio) {
        return discrimination_delta(model, CostPair(1.0, ratio), prior, k_w, k_b, opts);
    };

    double lo = 0.0, hi = 0.0, delta_lo = 0.0;
    bool bracketed = false;
    double prev_r = ratio_grid[0], prev_d = delta_at(prev_r);
    if (std::abs(prev_d) < kDeltaZeroTol) return prev_r;
    for (std::size_t i = 1; i < ratio_grid.size(); ++i) {
        const double r = ratio_grid[i], d = delta_at(r);
        if (std::abs(d) < kDeltaZeroTol) return r;
        if ((d > 0.0) != (prev_d > 0.0)) {
            lo = prev_r;
            hi = r;
            delta_lo = prev_d;
            bracketed = true;
            break;
        }
        prev_r = r;
        prev_d = d;
    }
    if (!bracketed) throw std::runtime_error("no crossing in range");

    while (hi - lo > kRatioBracketTol) {
        const double mid = 0.5 * (lo + hi);
        const double d = delta_at(mid);
        if (std::abs(d) < kDeltaZeroTol) return mid;
        if ((d > 0.0) == (delta_lo > 0.0)) {
            lo = mid;
            delta_lo = d;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace priorq
