#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace gausscrit {

using cplx = std::complex<double>;
using Integrand = std::function<cplx(double)>;

/// Tolerances and the caller's decay certificate.
///
/// `decay_exponent` is a bound |f(t)| <= C |t|^{-s} for large |t|. For the
/// half-line engine it refers to the full integrand y^gamma g(y). Use a large
/// value (e.g. 50) for exponentially decaying integrands.
struct QuadSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    long max_evaluations = 2'000'000;
    double decay_exponent = 2.0;

    QuadSpec with_decay(double s) const {
        QuadSpec out = *this;
        out.decay_exponent = s;
        return out;
    }
};

struct IntegralResult {
    cplx value{0.0, 0.0};
    double err_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;

    /// max(abs_tol, rel_tol |value|), the bound a converged result satisfies.
    static double target(const QuadSpec& spec, cplx value);
};

/// Globally adaptive 21-point Gauss-Kronrod on [lo, hi] with optional interior
/// breakpoints. Refinement order is fixed, so results are bit-reproducible.
IntegralResult integrate_interval(const Integrand& f, double lo, double hi, const QuadSpec& spec,
                                  const std::vector<double>& breakpoints = {});

/// Smallest integer m >= 1 with m * excess >= 2. Used to choose power
/// substitutions that turn u^{excess-1} endpoint behaviour into something
/// vanishing at least linearly.
int regularizing_power(double excess);

/// Integral of f over the real line. Both half-lines are folded onto [0, inf)
/// and compactified by t = cot(pi/2 * w^m), w in (0, 1], with m chosen from
/// the decay certificate so that the mapped integrand vanishes at w = 0.
/// Requires spec.decay_exponent > 1.
IntegralResult integrate_real_line(const Integrand& f, const QuadSpec& spec);

/// Integral of y^gamma g(y) over (0, inf), gamma > -1. The piece on (0, 1] is
/// regularised by y = u^m with m >= 2/(1+gamma); the piece on [1, inf) by
/// y = w^{-n} with n chosen from the decay certificate.
IntegralResult integrate_half_line(const Integrand& g, double gamma, const QuadSpec& spec);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

}  // namespace gausscrit
