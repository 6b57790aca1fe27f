#include "priorq/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "priorq/numerics.hpp"
#include "priorq/rng.hpp"

namespace priorq {

namespace {

const Tolerance kCellTol{1e-13, 1e-13, 300};
constexpr double kEmptyCellMass = 1e-14;
constexpr double kMovementTol = 1e-10;

double relative_change(double prev, double cur) {
    const double scale = std::max({std::abs(prev), std::abs(cur), 1e-300});
    return std::abs(prev - cur) / scale;
}

}  // namespace

void Quantizer::validate() const {
    const int k = levels();
    if (k < 1 || boundaries.size() != reps.size() + 1)
        throw std::invalid_argument("invalid quantizer: needs K reps and K+1 boundaries");
    if (boundaries.front() != 0.0 || boundaries.back() != 1.0)
        throw std::invalid_argument("invalid quantizer: boundaries must start at 0 and end at 1");
    for (int i = 1; i <= k; ++i) {
        if (!(boundaries[i - 1] <= boundaries[i]))
            throw std::invalid_argument("invalid quantizer: boundaries must be nondecreasing");
        if (!(boundaries[i - 1] <= reps[i - 1] && reps[i - 1] <= boundaries[i]))
            throw std::invalid_argument("invalid quantizer: rep outside its cell");
    }
}

double quantize(const Quantizer& q, double p0) {
    if (p0 <= q.boundaries.front()) return q.reps.front();
    // half-open cells (b_{k-1}, b_k]: first boundary >= p0 identifies the cell
    const auto it = std::lower_bound(q.boundaries.begin() + 1, q.boundaries.end(), p0);
    const auto cell = std::min<std::size_t>(it - q.boundaries.begin() - 1, q.reps.size() - 1);
    return q.reps[cell];
}

std::string serialize(const Quantizer& q) {
    q.validate();
    char buf[32];
    std::string out = std::to_string(q.levels());
    out += ";";
    for (double b : q.boundaries) {
        std::snprintf(buf, sizeof(buf), " %.17g", b);
        out += buf;
    }
    out += ";";
    for (double a : q.reps) {
        std::snprintf(buf, sizeof(buf), " %.17g", a);
        out += buf;
    }
    out += "\n";
    return out;
}

Quantizer parse_quantizer(const std::string& text) {
    const auto first = text.find(';');
    const auto second = text.find(';', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw std::invalid_argument("invalid quantizer record: expected 'K; b...; a...'");
    Quantizer q;
    int k = 0;
    try {
        k = std::stoi(text.substr(0, first));
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid quantizer record: bad level count");
    }
    auto parse_list = [](const std::string& chunk) {
        std::istringstream in(chunk);
        std::vector<double> vals;
        double v;
        while (in >> v) vals.push_back(v);
        return vals;
    };
    q.boundaries = parse_list(text.substr(first + 1, second - first - 1));
    q.reps = parse_list(text.substr(second + 1));
    if (k < 1 || static_cast<int>(q.reps.size()) != k)
        throw std::invalid_argument("invalid quantizer record: level count mismatch");
    q.validate();
    return q;
}

std::vector<double> nearest_neighbor_boundaries(const GaussianMeasurementModel& model,
                                                const CostPair& costs,
                                                const std::vector<double>& reps) {
    const int k = static_cast<int>(reps.size());
    if (k < 1) throw std::invalid_argument("invalid reps: need at least one");
    for (int i = 0; i < k; ++i) {
        if (!(reps[i] > 0.0 && reps[i] < 1.0))
            throw std::invalid_argument("invalid reps: each must be in (0,1)");
        if (i > 0 && !(reps[i] > reps[i - 1]))
            throw std::invalid_argument("invalid reps: must be strictly increasing");
    }
    std::vector<double> b(k + 1);
    b[0] = 0.0;
    b[k] = 1.0;
    for (int i = 1; i < k; ++i) {
        const ErrorProbabilities lo = error_probabilities(model, costs, reps[i - 1]);
        const ErrorProbabilities hi = error_probabilities(model, costs, reps[i]);
        const double num = costs.c01 * (hi.miss - lo.miss);
        const double den = num - costs.c10 * (hi.false_alarm - lo.false_alarm);
        if (!(std::abs(den) >= 1e-300))
            throw std::invalid_argument("degenerate pair: tangent lines are parallel");
        b[i] = std::clamp(num / den, reps[i - 1], reps[i]);
    }
    return b;
}

double centroid_gaussian(const Prior& prior, double lo, double hi) {
    const PartialMoments m = partial_moments(prior, lo, hi);
    const double mass = m.i1 + m.i2;
    if (!(mass > kEmptyCellMass)) throw std::invalid_argument("empty cell");
    return m.i1 / mass;
}

double centroid_general(const GaussianMeasurementModel& model, const CostPair& costs,
                        const Prior& prior, double lo, double hi) {
    if (!(0.0 <= lo && lo < hi && hi <= 1.0))
        throw std::invalid_argument("invalid parameter: need 0 <= lo < hi <= 1");
    const PartialMoments m = partial_moments(prior, lo, hi);
    if (!(m.i1 + m.i2 > kEmptyCellMass)) throw std::invalid_argument("empty cell");

    const auto objective = [&](double a) {
        const ErrorProbabilities e = error_probabilities(model, costs, a);
        return costs.c10 * m.i1 * e.false_alarm + costs.c01 * m.i2 * e.miss;
    };
    constexpr double edge = 1e-9;
    MinimizeResult res =
        minimize_unimodal(objective, edge, 1.0 - edge, Tolerance{1e-10, 1e-12, 300});

    // polish the stationarity condition with a few Newton steps
    double a = res.argmin;
    for (int it = 0; it < 4; ++it) {
        const ErrorProbabilityDerivatives d1 = error_probability_derivatives(model, costs, a);
        const ErrorProbabilitySecondDerivatives d2 =
            error_probability_second_derivatives(model, costs, a);
        const double g = costs.c10 * m.i1 * d1.d_false_alarm + costs.c01 * m.i2 * d1.d_miss;
        const double gp = costs.c10 * m.i1 * d2.d2_false_alarm + costs.c01 * m.i2 * d2.d2_miss;
        if (!(std::abs(gp) > 0.0)) break;
        const double next = a - g / gp;
        if (!(next > edge && next < 1.0 - edge)) break;
        if (std::abs(next - a) < 1e-16) {
            a = next;
            break;
        }
        a = next;
    }
    return a;
}

double mbre(const GaussianMeasurementModel& model, const CostPair& costs, const Prior& prior,
            const Quantizer& q) {
    q.validate();
    double total = 0.0;
    for (int k = 0; k < q.levels(); ++k) {
        const double lo = q.boundaries[k], hi = q.boundaries[k + 1];
        if (!(hi > lo)) continue;  // zero-width cells carry no mass
        const ErrorProbabilities e = error_probabilities(model, costs, q.reps[k]);
        const auto integrand = [&](double p) {
            const double mismatched = costs.c10 * p * e.false_alarm +
                                      costs.c01 * (1.0 - p) * e.miss;
            return (mismatched - bayes_risk(model, costs, p)) * density(prior, p);
        };
        total += integrate(integrand, lo, hi, kCellTol).value;
    }
    return total;
}

namespace {

std::vector<double> quantile_start(const Prior& prior, int k) {
    std::vector<double> reps(k);
    for (int i = 0; i < k; ++i) reps[i] = quantile(prior, (2.0 * i + 1.0) / (2.0 * k));
    return reps;
}

void enforce_strictly_increasing(std::vector<double>& reps) {
    std::sort(reps.begin(), reps.end());
    constexpr double edge = 1e-9, gap = 1e-9;
    const int k = static_cast<int>(reps.size());
    reps[0] = std::clamp(reps[0], edge, 1.0 - edge);
    for (int i = 1; i < k; ++i)
        reps[i] = std::clamp(std::max(reps[i], reps[i - 1] + gap), edge, 1.0 - edge);
    for (int i = k - 2; i >= 0; --i) reps[i] = std::min(reps[i], reps[i + 1] - gap);
}

std::vector<double> jittered_start(const Prior& prior, int k, std::uint64_t seed, int start) {
    std::vector<double> reps = quantile_start(prior, k);
    for (int i = 0; i < k; ++i) {
        const double cell_lo = quantile(prior, static_cast<double>(i) / k);
        const double cell_hi = quantile(prior, static_cast<double>(i + 1) / k);
        const double u = uniform01(seed, static_cast<std::uint64_t>(start) * k + i);
        reps[i] += (u - 0.5) * 0.4 * (cell_hi - cell_lo);  // +/-20% of the cell width
    }
    enforce_strictly_increasing(reps);
    return reps;
}

struct LloydOutcome {
    Quantizer q;
    DesignReport report;
};

LloydOutcome lloyd_from(const GaussianMeasurementModel& model, const CostPair& costs,
                        const Prior& prior, std::vector<double> reps,
                        const DesignOptions& opts) {
    const int k = static_cast<int>(reps.size());
    LloydOutcome out;
    std::vector<double> bounds;
    double prev_d = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;

    while (iterations < opts.max_iter) {
        bounds = nearest_neighbor_boundaries(model, costs, reps);

        // centroid update; a cell that lost its probability mass is collapsed
        // and its rep re-seeded inside the heaviest cell
        std::vector<PartialMoments> moments(k);
        for (int attempts = 0; attempts <= k; ++attempts) {
            int empty = -1, heaviest = 0;
            double heaviest_mass = -1.0;
            for (int i = 0; i < k; ++i) {
                moments[i] = partial_moments(prior, bounds[i], bounds[i + 1]);
                const double mass = moments[i].i1 + moments[i].i2;
                if (mass < kEmptyCellMass && empty < 0) empty = i;
                if (mass > heaviest_mass) {
                    heaviest_mass = mass;
                    heaviest = i;
                }
            }
            if (empty < 0) break;
            reps[empty] = 0.5 * (reps[heaviest] + bounds[heaviest + 1]);
            enforce_strictly_increasing(reps);
            bounds = nearest_neighbor_boundaries(model, costs, reps);
        }

        double movement = 0.0;
        for (int i = 0; i < k; ++i) {
            const double mass = moments[i].i1 + moments[i].i2;
            const double next = (mass > kEmptyCellMass) ? moments[i].i1 / mass : reps[i];
            movement = std::max(movement, std::abs(next - reps[i]));
            reps[i] = next;
        }

        const double d = mbre(model, costs, prior, Quantizer{bounds, reps});
        out.report.per_iteration_mbre.push_back(d);
        ++iterations;
        if (relative_change(prev_d, d) < opts.tol && movement < kMovementTol) {
            converged = true;
            prev_d = d;
            break;
        }
        prev_d = d;
    }

    out.q = Quantizer{bounds, reps};
    out.report.mbre = out.report.per_iteration_mbre.empty()
                          ? mbre(model, costs, prior, out.q)
                          : out.report.per_iteration_mbre.back();
    out.report.iterations = iterations;
    out.report.converged = converged;
    return out;
}

}  // namespace

DesignResult design_lloyd_max(const GaussianMeasurementModel& model, const CostPair& costs,
                              const Prior& prior, int k, const DesignOptions& opts) {
    if (k < 1) throw std::invalid_argument("invalid K: need K >= 1");
    if (opts.max_iter < 1 || opts.restarts < 0)
        throw std::invalid_argument("invalid options: need max_iter >= 1 and restarts >= 0");
    if (opts.init_reps && static_cast<int>(opts.init_reps->size()) != k)
        throw std::invalid_argument("invalid K: init_reps size mismatch");

    LloydOutcome best;
    bool have_best = false;
    int restarts_used = 0;
    for (int start = 0; start <= opts.restarts; ++start) {
        std::vector<double> reps;
        if (start == 0) {
            reps = opts.init_reps ? *opts.init_reps : quantile_start(prior, k);
            enforce_strictly_increasing(reps);
        } else {
            reps = jittered_start(prior, k, opts.seed, start);
            ++restarts_used;
        }
        LloydOutcome candidate = lloyd_from(model, costs, prior, std::move(reps), opts);
        if (!have_best || candidate.report.mbre < best.report.mbre) {
            best = std::move(candidate);
            have_best = true;
        }
    }
    best.report.restarts_used = restarts_used;
    return {std::move(best.q), std::move(best.report)};
}

Quantizer design_mae(const Prior& prior, int k) {
    if (k < 1) throw std::invalid_argument("invalid K: need K >= 1");
    std::vector<double> reps = quantile_start(prior, k);
    std::vector<double> bounds(k + 1);
    bounds[0] = 0.0;
    bounds[k] = 1.0;
    for (int it = 0; it < 500; ++it) {
        for (int i = 1; i < k; ++i) bounds[i] = 0.5 * (reps[i - 1] + reps[i]);
        double movement = 0.0;
        for (int i = 0; i < k; ++i) {
            // cell conditional median
            const double target = 0.5 * (cdf(prior, bounds[i]) + cdf(prior, bounds[i + 1]));
            const double next = quantile(prior, target);
            movement = std::max(movement, std::abs(next - reps[i]));
            reps[i] = next;
        }
        if (movement < 1e-10) break;
    }
    for (int i = 1; i < k; ++i) bounds[i] = 0.5 * (reps[i - 1] + reps[i]);
    return Quantizer{std::move(bounds), std::move(reps)};
}

namespace {

// Cumulative prior mass and first moment on a uniform grid with panel-local
// Gauss-Legendre completion; lets the exhaustive search price a candidate
// boundary in O(1) integrand passes instead of adaptive quadrature.
class CumulativeMoments {
public:
    explicit CumulativeMoments(const Prior& prior, int cells = 2048)
        : prior_(prior), cells_(cells), cum0_(cells + 1, 0.0), cum1_(cells + 1, 0.0) {
        double acc0 = 0.0, acc1 = 0.0;
        for (int i = 0; i < cells_; ++i) {
            const auto piece = gl_pair(node(i), node(i + 1));
            acc0 += piece.first;
            acc1 += piece.second;
            cum0_[i + 1] = acc0;
            cum1_[i + 1] = acc1;
        }
    }

    // mass = integral of f on [0,x]; moment = integral of p f on [0,x]
    void eval(double x, double& mass, double& moment) const {
        const int i = std::clamp(static_cast<int>(x * cells_), 0, cells_ - 1);
        const auto tail = gl_pair(node(i), x);
        mass = cum0_[i] + tail.first;
        moment = cum1_[i] + tail.second;
    }

    double total_mass() const { return cum0_[cells_]; }
    double total_moment() const { return cum1_[cells_]; }

private:
    double node(int i) const { return static_cast<double>(i) / cells_; }

    std::pair<double, double> gl_pair(double lo, double hi) const {
        static constexpr double nodes[8] = {
            0.0,
            0.20119409399743452230062830339459620781,
            0.39415134707756336989720737098104546836,
            0.57097217260853884753722673725391064124,
            0.72441773136017004741618605461393800963,
            0.84820658341042721620064832077421685137,
            0.93727339240070590430775894771020947124,
            0.98799251802048542848956571858661258114,
        };
        static constexpr double weights[8] = {
            0.20257824192556127288062019996751931484,
            0.19843148532711157645611832644383932482,
            0.18616100001556221102680056186642282450,
            0.16626920581699393355320086048120881113,
            0.13957067792615431444780479451102832252,
            0.10715922046717193501186954668586696441,
            0.070366047488108124709267416450667338467,
            0.030753241996117268354628393577204417722,
        };
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double s0 = weights[0] * density(prior_, mid);
        double s1 = weights[0] * density(prior_, mid) * mid;
        for (int j = 1; j < 8; ++j) {
            const double dx = half * nodes[j];
            const double xa = mid + dx, xb = mid - dx;
            const double fa = density(prior_, xa), fb = density(prior_, xb);
            s0 += weights[j] * (fa + fb);
            s1 += weights[j] * (fa * xa + fb * xb);
        }
        return {s0 * half, s1 * half};
    }

    const Prior& prior_;
    int cells_;
    std::vector<double> cum0_;
    std::vector<double> cum1_;
};

}  // namespace

Quantizer brute_force_design(const GaussianMeasurementModel& model, const CostPair& costs,
                             const Prior& prior, int k, double grid_step) {
    if (k < 1 || k > 3) throw std::invalid_argument("oracle scale exceeded: K must be in {1,2,3}");
    if (!(grid_step >= 1e-3))
        throw std::invalid_argument("oracle scale exceeded: grid_step must be >= 1e-3");

    std::vector<double> grid;
    for (int i = 1; i * grid_step < 1.0 - 0.5 * grid_step; ++i) grid.push_back(i * grid_step);
    const int n = static_cast<int>(grid.size());
    if (n < k) throw std::invalid_argument("oracle scale exceeded: grid too coarse for K");

    std::vector<double> fa(n), miss(n);
    for (int i = 0; i < n; ++i) {
        const ErrorProbabilities e = error_probabilities(model, costs, grid[i]);
        fa[i] = e.false_alarm;
        miss[i] = e.miss;
    }
    const CumulativeMoments table(prior);
    const double total0 = table.total_mass(), total1 = table.total_moment();

    const auto boundary = [&](int i, int j) {
        const double num = costs.c01 * (miss[j] - miss[i]);
        const double den = num - costs.c10 * (fa[j] - fa[i]);
        return std::clamp(num / den, grid[i], grid[j]);
    };
    // tangent-line form of the cell cost: c10 pI(a) I1 + c01 pII(a) I2
    const auto cell_cost = [&](int rep, double m0_lo, double m1_lo, double m0_hi, double m1_hi) {
        const double i1 = m1_hi - m1_lo;
        const double i2 = (m0_hi - m0_lo) - i1;
        return costs.c10 * fa[rep] * i1 + costs.c01 * miss[rep] * i2;
    };

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_reps(k);
    if (k == 1) {
        for (int i = 0; i < n; ++i) {
            const double cost = cell_cost(i, 0.0, 0.0, total0, total1);
            if (cost < best) {
                best = cost;
                best_reps = {i};
            }
        }
    } else if (k == 2) {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double m0, m1;
                table.eval(boundary(i, j), m0, m1);
                const double cost = cell_cost(i, 0.0, 0.0, m0, m1) +
                                    cell_cost(j, m0, m1, total0, total1);
                if (cost < best) {
                    best = cost;
                    best_reps = {i, j};
                }
            }
        }
    } else {
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double m0a, m1a;
                table.eval(boundary(i, j), m0a, m1a);
                const double first = cell_cost(i, 0.0, 0.0, m0a, m1a);
                if (first >= best) continue;
                for (int l = j + 1; l < n; ++l) {
                    double m0b, m1b;
                    table.eval(boundary(j, l), m0b, m1b);
                    const double cost = first + cell_cost(j, m0a, m1a, m0b, m1b) +
                                        cell_cost(l, m0b, m1b, total0, total1);
                    if (cost < best) {
                        best = cost;
                        best_reps = {i, j, l};
                    }
                }
            }
        }
    }

    std::vector<double> reps(k);
    for (int i = 0; i < k; ++i) reps[i] = grid[best_reps[i]];
    return Quantizer{nearest_neighbor_boundaries(model, costs, reps), reps};
}

}  // namespace priorq
