#pragma once

#include <functional>

namespace priorq {

/// Accuracy budget shared by the quadrature, minimization, and root routines.
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_iter = 200;
};

void validate(const Tolerance& tol);

/// Pr[standard normal > x]. Accepts +/-infinity; throws on NaN.
double gaussian_tail(double x);

struct IntegrationResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;  // false when the panel budget ran out before the tolerance was met
};

/// Definite integral of f over [lo, hi] by adaptive bisection of 15-point
/// Gauss-Legendre panels. Endpoints are never evaluated (all nodes interior),
/// which keeps integrable endpoint singularities usable.
IntegrationResult integrate(const std::function<double(double)>& f, double lo, double hi,
                            const Tolerance& tol = {});

struct MinimizeResult {
    double argmin = 0.0;
    double min_value = 0.0;
    int iterations = 0;
    bool converged = true;
};

/// Minimum of a continuous unimodal f on [lo, hi]: golden-section search
/// refined by parabolic interpolation steps (Brent). Derivative-free.
MinimizeResult minimize_unimodal(const std::function<double(double)>& f, double lo, double hi,
                                 const Tolerance& tol = {});

/// Root of f in [lo, hi] by bisection; requires a sign change over the bracket.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol = {});

}  // namespace priorq
