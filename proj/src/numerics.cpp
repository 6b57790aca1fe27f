#include "priorq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace priorq {

void validate(const Tolerance& tol) {
    if (!(tol.abs_tol > 0.0)) throw std::invalid_argument("Tolerance: abs_tol must be > 0");
    if (!(tol.rel_tol > 0.0)) throw std::invalid_argument("Tolerance: rel_tol must be > 0");
    if (tol.max_iter < 1) throw std::invalid_argument("Tolerance: max_iter must be >= 1");
}

double gaussian_tail(double x) {
    if (std::isnan(x)) throw std::invalid_argument("gaussian_tail: invalid argument (NaN)");
    // Q(x) = erfc(x/sqrt(2))/2; erfc handles +/-infinity.
    return 0.5 * std::erfc(x * 0.70710678118654752440);
}

namespace {

// 15-point Gauss-Legendre rule on [-1,1]; nodes listed as {0, +/-x1, ..., +/-x7}.
constexpr int kGlHalf = 8;
constexpr double kGlNode[kGlHalf] = {
    0.0,
    0.20119409399743452230062830339459620781,
    0.39415134707756336989720737098104546836,
    0.57097217260853884753722673725391064124,
    0.72441773136017004741618605461393800963,
    0.84820658341042721620064832077421685137,
    0.93727339240070590430775894771020947124,
    0.98799251802048542848956571858661258114,
};
constexpr double kGlWeight[kGlHalf] = {
    0.20257824192556127288062019996751931484,
    0.19843148532711157645611832644383932482,
    0.18616100001556221102680056186642282450,
    0.16626920581699393355320086048120881113,
    0.13957067792615431444780479451102832252,
    0.10715922046717193501186954668586696441,
    0.070366047488108124709267416450667338467,
    0.030753241996117268354628393577204417722,
};

double gl15(const std::function<double(double)>& f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = kGlWeight[0] * f(mid);
    for (int i = 1; i < kGlHalf; ++i) {
        const double dx = half * kGlNode[i];
        sum += kGlWeight[i] * (f(mid + dx) + f(mid - dx));
    }
    return sum * half;
}

struct Panel {
    double lo, hi, estimate;
};

}  // namespace

IntegrationResult integrate(const std::function<double(double)>& f, double lo, double hi,
                            const Tolerance& tol) {
    validate(tol);
    if (!(lo <= hi)) throw std::invalid_argument("integrate: requires lo <= hi");
    IntegrationResult out;
    if (lo == hi) return out;

    const double total_len = hi - lo;
    const double whole = gl15(f, lo, hi);
    const double scale = std::max(tol.abs_tol, tol.rel_tol * std::abs(whole));

    std::vector<Panel> stack{{lo, hi, whole}};
    int splits = 0;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (p.lo + p.hi);
        const double left = gl15(f, p.lo, mid);
        const double right = gl15(f, mid, p.hi);
        const double refined = left + right;
        const double err = std::abs(refined - p.estimate);
        const double len = p.hi - p.lo;
        const bool tiny_panel = len <= 1e-15 * total_len || mid <= p.lo || mid >= p.hi;
        if (err <= scale * (len / total_len) || tiny_panel) {
            out.value += refined;
            out.error_estimate += err;
        } else if (splits >= tol.max_iter) {
            out.value += refined;
            out.error_estimate += err;
            out.converged = false;  // tolerance not reached within the refinement budget
        } else {
            ++splits;
            stack.push_back({p.lo, mid, left});
            stack.push_back({mid, p.hi, right});
        }
    }
    return out;
}

MinimizeResult minimize_unimodal(const std::function<double(double)>& f, double lo, double hi,
                                 const Tolerance& tol) {
    validate(tol);
    if (!(lo <= hi)) throw std::invalid_argument("minimize_unimodal: requires lo <= hi");

    // Brent's bounded minimization: golden sections with parabolic shortcuts.
    constexpr double golden = 0.3819660112501051518;
    double a = lo, b = hi;
    double x = a + golden * (b - a), w = x, v = x;
    double fx = f(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;

    MinimizeResult out;
    int it = 0;
    for (; it < tol.max_iter; ++it) {
        const double m = 0.5 * (a + b);
        const double xtol = tol.abs_tol + tol.rel_tol * std::abs(x);
        if (std::abs(x - m) <= 2.0 * xtol - 0.5 * (b - a)) {
            out.converged = true;
            break;
        }
        double step;
        bool parabolic_ok = false;
        if (std::abs(e) > xtol) {
            // fit a parabola through (v,fv), (w,fw), (x,fx)
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_prev = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u_try = x + d;
                if (u_try - a < 2.0 * xtol || b - u_try < 2.0 * xtol) d = (x < m) ? xtol : -xtol;
                parabolic_ok = true;
            }
        }
        if (!parabolic_ok) {
            e = (x < m) ? b - x : a - x;
            d = golden * e;
        }
        step = (std::abs(d) >= xtol) ? d : (d > 0.0 ? xtol : -xtol);
        const double u = x + step;
        const double fu = f(u);
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    out.converged = it < tol.max_iter;
    out.argmin = x;
    out.min_value = fx;
    out.iterations = it;
    return out;
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol) {
    validate(tol);
    if (!(lo <= hi)) throw std::invalid_argument("find_root: requires lo <= hi");
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("find_root: not bracketed");
    for (int it = 0; it < 200 && hi - lo > tol.abs_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace priorq
