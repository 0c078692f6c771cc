#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "gausscrit/exponents.hpp"
#include "gausscrit/quadrature.hpp"

namespace gausscrit {

using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// y -> c exp(-z |y - y0|^2 + y.v) on R^{d-1}, the base of the paraboloid.
/// The product y.v is bilinear (no conjugation).
struct GaussianParams {
    cplx c{1.0, 0.0};
    cplx z{0.5, 0.0};
    RealVector y0;
    ComplexVector v;

    /// e^{-|y|^2/2} on R^{d-1}.
    static GaussianParams standard(int d);

    int base_dim() const { return static_cast<int>(y0.size()); }
    int ambient_dim() const { return base_dim() + 1; }
    void validate() const;
    cplx operator()(const RealVector& y) const;
};

/// A finite linear combination of Gaussians, e.g. f + eps g.
using GaussianSum = std::vector<GaussianParams>;

cplx evaluate(const GaussianSum& sum, const RealVector& y);

/// y -> rho f(r A y + v) e^{i y.w}.
struct SymmetryElement {
    cplx rho{1.0, 0.0};
    double r = 1.0;
    Eigen::MatrixXd A;
    RealVector v;
    RealVector w;

    static SymmetryElement identity(int base_dim);
    void validate() const;
};

/// Element acting as `inner` first, then `outer`.
SymmetryElement compose(const SymmetryElement& outer, const SymmetryElement& inner);

GaussianParams apply_symmetry(const GaussianParams& g, const SymmetryElement& s);

/// A symmetry s with apply_symmetry(standard, s) == g. Exists exactly when
/// z is real and positive; otherwise throws DomainError.
SymmetryElement symmetry_from_standard(const GaussianParams& g);

/// Random group element with |rho|, r in [1/2, 2], Haar-ish orthogonal A and
/// v, w uniform in [-1, 1]^{d-1}.
SymmetryElement random_symmetry(int base_dim, std::mt19937_64& rng);

/// Extension of the standard Gaussian:
/// (2 pi)^{(d-1)/2} (1+it)^{-(d-1)/2} exp(-|x|^2 / (2(1+it))).
cplx extension_closed(const RealVector& x, double t, int d);

/// g = e^{-i tau |y|^2 / 2} real_width, where real_width has real z. The
/// extension of g is that of real_width shifted in time by tau.
struct ChirpSplit {
    GaussianParams real_width;
    double time_shift = 0.0;
};
ChirpSplit split_chirp(const GaussianParams& g);

/// Extension of any Gaussian, obtained by transporting extension_closed
/// through the symmetry group and, for complex z, a time translation.
cplx extension(const GaussianParams& g, const RealVector& x, double t);
cplx extension(const GaussianSum& sum, const RealVector& x, double t);

/// Precomputed transport data for repeated evaluation of the extension of a
/// Gaussian sum at many space-time points.
class ExtensionEvaluator {
public:
    explicit ExtensionEvaluator(const GaussianSum& sum);
    cplx operator()(const RealVector& x, double t) const;
    int base_dim() const { return base_dim_; }

private:
    std::vector<SymmetryElement> transports_;
    std::vector<double> time_shifts_;
    int base_dim_ = 0;
};

/// Direct quadrature of  int e^{-i x.y} e^{-i t |y|^2/2} g(y) dy. The integrand
/// factorises over coordinates, so the tensor-product rule is evaluated as a
/// product of one-dimensional adaptive integrals.
IntegralResult extension_direct(const RealVector& x, double t, int d, const QuadSpec& spec);
IntegralResult extension_direct(const GaussianParams& g, const RealVector& x, double t,
                                const QuadSpec& spec);

/// |u|^{q-2} u for u = extension of the standard Gaussian.
cplx kernel_power(const RealVector& x, double t, const ExponentConfig& cfg);

/// ||u(., t)||_{L^q_x}^{r-q} for the standard Gaussian extension.
double slice_norm_power(double t, double q, double r, int d);

/// ||g||_p^p in closed form.
double lp_norm_power(const GaussianParams& g, double p);

/// Centre and Gaussian width of |extension(g)(., t)|, i.e.
/// |E g(x,t)| is proportional to exp(-|x - centre|^2 / (2 width^2)).
struct PacketTrack {
    RealVector centre;
    double width = 1.0;
};
PacketTrack packet_track(const GaussianParams& g, double t);

}  // namespace gausscrit
