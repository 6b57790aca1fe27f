#include "priorq/prior.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "priorq/numerics.hpp"
#include "priorq/rng.hpp"

namespace priorq {

namespace {

const Tolerance kTightTol{1e-13, 1e-13, 400};

void check_shape(const Prior& prior) {
    if (prior.kind == PriorKind::beta && (!(prior.alpha > 0.0) || !(prior.beta > 0.0)))
        throw std::invalid_argument("invalid parameter: beta shape parameters must be > 0");
}

void check_unit_interval(double x, const char* what) {
    if (std::isnan(x) || x < 0.0 || x > 1.0)
        throw std::invalid_argument(std::string("invalid parameter: ") + what +
                                    " must be in [0,1]");
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double parse_positive(std::string_view s, const char* what) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !(v > 0.0))
        throw std::invalid_argument(std::string("invalid prior: ") + what +
                                    " must be a positive number");
    return v;
}

}  // namespace

Prior Prior::make_beta(double alpha, double beta) {
    Prior p{PriorKind::beta, alpha, beta};
    check_shape(p);
    return p;
}

Prior parse_prior(std::string_view text) {
    if (text == "uniform") return Prior::uniform();
    constexpr std::string_view prefix = "beta:";
    if (text.substr(0, prefix.size()) == prefix) {
        const std::string_view args = text.substr(prefix.size());
        const std::size_t comma = args.find(',');
        if (comma == std::string_view::npos)
            throw std::invalid_argument("invalid prior: expected beta:ALPHA,BETA");
        return Prior::make_beta(parse_positive(args.substr(0, comma), "alpha"),
                                parse_positive(args.substr(comma + 1), "beta"));
    }
    throw std::invalid_argument("invalid prior: expected 'uniform' or 'beta:ALPHA,BETA'");
}

std::string to_string(const Prior& prior) {
    if (prior.kind == PriorKind::uniform) return "uniform";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "beta:%.17g,%.17g", prior.alpha, prior.beta);
    return buf;
}

double density(const Prior& prior, double p0) {
    check_shape(prior);
    check_unit_interval(p0, "p0");
    if (prior.kind == PriorKind::uniform) return 1.0;
    const double a = prior.alpha, b = prior.beta;
    if (p0 == 0.0) {
        if (a > 1.0) return 0.0;
        if (a == 1.0) return std::exp(-log_beta(a, b));
        return std::numeric_limits<double>::infinity();
    }
    if (p0 == 1.0) {
        if (b > 1.0) return 0.0;
        if (b == 1.0) return std::exp(-log_beta(a, b));
        return std::numeric_limits<double>::infinity();
    }
    return std::exp((a - 1.0) * std::log(p0) + (b - 1.0) * std::log1p(-p0) - log_beta(a, b));
}

double cdf(const Prior& prior, double p0) {
    check_shape(prior);
    check_unit_interval(p0, "p0");
    if (prior.kind == PriorKind::uniform) return p0;
    if (p0 == 0.0) return 0.0;
    if (p0 == 1.0) return 1.0;
    const double mass =
        integrate([&](double p) { return density(prior, p); }, 0.0, p0, kTightTol).value;
    return std::clamp(mass, 0.0, 1.0);
}

double quantile(const Prior& prior, double q) {
    check_shape(prior);
    check_unit_interval(q, "q");
    if (prior.kind == PriorKind::uniform) return q;
    if (q == 0.0) return 0.0;
    if (q == 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(prior, mid) < q)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

PartialMoments partial_moments(const Prior& prior, double lo, double hi) {
    check_shape(prior);
    check_unit_interval(lo, "lo");
    check_unit_interval(hi, "hi");
    if (!(lo <= hi)) throw std::invalid_argument("invalid parameter: requires lo <= hi");
    if (prior.kind == PriorKind::uniform) {
        const double i1 = 0.5 * (hi * hi - lo * lo);
        return {i1, (hi - lo) - i1};
    }
    const double i1 =
        integrate([&](double p) { return p * density(prior, p); }, lo, hi, kTightTol).value;
    const double i2 =
        integrate([&](double p) { return (1.0 - p) * density(prior, p); }, lo, hi, kTightTol)
            .value;
    return {i1, i2};
}

namespace {

// Cumulative density table on a uniform grid; a draw is located by binary
// search and refined with safeguarded Newton steps against a panel-local
// Gauss-Legendre tail, keeping every quantile accurate to ~1e-13.
class InverseCdfTable {
public:
    explicit InverseCdfTable(const Prior& prior, int cells = 4096)
        : prior_(prior), cells_(cells), cum_(cells + 1, 0.0) {
        double acc = 0.0, comp = 0.0;  // Kahan accumulation across panels
        for (int i = 0; i < cells_; ++i) {
            const double piece =
                integrate([&](double p) { return density(prior_, p); }, node(i), node(i + 1),
                          Tolerance{1e-14, 1e-14, 40})
                    .value;
            const double y = piece - comp;
            const double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            cum_[i + 1] = acc;
        }
        const double total = cum_[cells_];
        for (double& c : cum_) c /= total;
    }

    double invert(double u) const {
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
        int i = static_cast<int>(it - cum_.begin()) - 1;
        i = std::clamp(i, 0, cells_ - 1);
        double a = node(i), b = node(i + 1);
        double x = a + (b - a) * 0.5;
        for (int iter = 0; iter < 60 && b - a > 1e-14; ++iter) {
            const double g = local_cdf(i, x) - u;
            if (std::abs(g) < 1e-15) break;
            if (g > 0.0)
                b = x;
            else
                a = x;
            const double fx = density(prior_, x);
            double next = (fx > 0.0) ? x - g / fx : 0.5 * (a + b);
            if (!(next > a && next < b)) next = 0.5 * (a + b);
            x = next;
        }
        return x;
    }

private:
    double node(int i) const { return static_cast<double>(i) / cells_; }

    double local_cdf(int i, double x) const {
        IntegrationResult tail = integrate([&](double p) { return density(prior_, p); }, node(i),
                                           x, Tolerance{1e-15, 1e-15, 8});
        return cum_[i] + tail.value;
    }

    const Prior& prior_;
    int cells_;
    std::vector<double> cum_;
};

}  // namespace

std::vector<double> sample(const Prior& prior, std::uint64_t seed, std::size_t n) {
    check_shape(prior);
    if (n < 1) throw std::invalid_argument("invalid parameter: n must be >= 1");
    std::vector<double> draws(n);
    if (prior.kind == PriorKind::uniform) {
        for (std::size_t i = 0; i < n; ++i) draws[i] = uniform01(seed, i);
        return draws;
    }
    const InverseCdfTable table(prior);
    for (std::size_t i = 0; i < n; ++i) draws[i] = table.invert(uniform01(seed, i));
    return draws;
}

}  // namespace priorq
