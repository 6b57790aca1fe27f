#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace priorq {

enum class PriorKind { uniform, beta };

/// Distribution of the prior probability P0 on [0,1]. Both shipped families
/// have densities that are positive and continuous on (0,1).
struct Prior {
    PriorKind kind = PriorKind::uniform;
    double alpha = 0.0;  // beta only
    double beta = 0.0;   // beta only

    static Prior uniform() { return {}; }
    static Prior make_beta(double alpha, double beta);
};

/// Parses the CLI prior grammar: "uniform" or "beta:ALPHA,BETA" (e.g. "beta:5,2").
Prior parse_prior(std::string_view text);
std::string to_string(const Prior& prior);

double density(const Prior& prior, double p0);
double cdf(const Prior& prior, double p0);
double quantile(const Prior& prior, double q);

/// Cell mass split by the prior value: i1 = integral of p*f(p), i2 = integral
/// of (1-p)*f(p) over [lo,hi]. Their sum is the cell probability.
struct PartialMoments {
    double i1;
    double i2;
};

PartialMoments partial_moments(const Prior& prior, double lo, double hi);

/// n inverse-CDF draws using the counter RNG; identical output for a fixed seed.
std::vector<double> sample(const Prior& prior, std::uint64_t seed, std::size_t n);

}  // namespace priorq
