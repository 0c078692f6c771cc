#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gausscrit/exponents.hpp"
#include "gausscrit/quadrature.hpp"

namespace gausscrit {

/// The analytic factor H(t) of an integrand (1+it)^gamma H(t):
///
///   H(t) = (1-it)^{exp_minus} (q-1-it)^{exp_q} (poly_const + poly_it_coeff it)^{poly_k}
///          * exp(gauss_a (it - (1+t^2)/(q-1-it)))
///
/// On the shifted ray t = i + iy every factor is real:
///   (1-it) -> 2+y, (q-1-it) -> q+y, affine -> poly_const - poly_it_coeff (1+y),
///   exponential -> exp(-gauss_a (q + (q-1) y) / (q + y)).
struct HSpec {
    double exp_minus = 0.0;
    double exp_q = 0.0;
    double q = 3.0;
    double gauss_a = 0.0;
    int poly_k = 0;
    double poly_const = 0.0;
    double poly_it_coeff = 0.0;

    /// Algebraic growth exponent of H at infinity.
    double growth() const { return exp_minus + exp_q + poly_k; }
    void validate() const;
};

cplx h_on_line(const HSpec& h, double t);
double h_on_ray(const HSpec& h, double y);
inline double h_at_i(const HSpec& h) { return h_on_ray(h, 0.0); }

/// Decay exponent s of |(1+it)^gamma H(t)| ~ |t|^{-s}.
double decay_exponent(double gamma, const HSpec& h);

/// Contour evaluation of  int_R (1+it)^gamma H(t) dt:
///   gamma > -1:  -2 sin(gamma pi) int_0^inf y^gamma H(i+iy) dy
///   gamma = -1:  2 pi H(i)
/// Throws DomainError if gamma < -1 or the decay hypothesis fails. With
/// `require_positive_on_ray`, every sampled H(i+iy) must be > 0 or a
/// ConsistencyError is thrown.
IntegralResult lemma_integration(double gamma, const HSpec& h, const QuadSpec& spec,
                                 bool require_positive_on_ray = false);

/// The same integral by direct real-line quadrature (the independent route).
IntegralResult lemma_real_line(double gamma, const HSpec& h, const QuadSpec& spec);

enum class IMethod { RealLine, Series, Contour };

/// I(a) = int (1+it)^{-beta} (1-it)^{-beta+(d-1)/2} (q-1-it)^{-(d-1)/2}
///        exp(a(it - (1+t^2)/(q-1-it))) dt.
/// Contour requires beta <= 1 (critical or supercritical exponents).
IntegralResult I_of_a(double a, const ExponentConfig& cfg, IMethod method, const QuadSpec& spec);

/// J(a) for an admissible pair. The unreduced integral is evaluated on the
/// real line, the reduced one (exponent of (1+it) equal to -1) by the contour
/// formula; a ConsistencyError is thrown if they disagree. Returns the
/// reduced-form value; its error estimate includes the discrepancy.
IntegralResult J_of_a(double a, const AdmissiblePair& pair, const QuadSpec& spec);

/// I_k for subcritical exponents (the coefficients of e^a I(a)).
IntegralResult series_I_k(int k, const ExponentConfig& cfg, const QuadSpec& spec);

/// I'_k for supercritical exponents (the coefficients of e^{(p-1)a} I(a)).
IntegralResult series_I_prime_k(int k, const ExponentConfig& cfg, const QuadSpec& spec);

HSpec I_integrand(const ExponentConfig& cfg, double a);
HSpec I_k_integrand(const ExponentConfig& cfg, int k);
HSpec I_prime_k_integrand(const ExponentConfig& cfg, int k);

/// 2 pi 2^{(d-3)/2} q^{-(d-1)/2} e^{-a} with q = 2(d+1)/(d-1): I(a) at p = 2.
double residue_value_p2(double a, int d);

inline constexpr int kSeriesCap = 60;

/// A test integral for the contour formula, with its exact value when known.
struct LemmaCase {
    std::string label;
    double gamma = 0.0;
    HSpec h;
    std::optional<double> exact;
};

/// 25 cases: gamma in {-1, -0.75, -0.5, 0.25, 1.6} times affine power k in
/// {0..4}. Includes 2 pi / 3 (gamma = -1, H = (2 - it)^{-1}) and
/// pi (gamma = -1/2, H = (3 - it)^{-1}).
std::vector<LemmaCase> lemma_suite();

}  // namespace gausscrit
