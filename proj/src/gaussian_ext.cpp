#include "gausscrit/gaussian_ext.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "gausscrit/complex_branch.hpp"
#include "gausscrit/error.hpp"

namespace gausscrit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

cplx bilinear(const RealVector& a, const ComplexVector& b) {
    cplx s{0.0, 0.0};
    for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

GaussianParams GaussianParams::standard(int d) {
    if (d < 2) throw DomainError("dimension d must satisfy d >= 2");
    GaussianParams g;
    g.c = 1.0;
    g.z = 0.5;
    g.y0 = RealVector::Zero(d - 1);
    g.v = ComplexVector::Zero(d - 1);
    return g;
}

void GaussianParams::validate() const {
    if (c == cplx(0.0, 0.0)) throw DomainError("Gaussian amplitude c must be nonzero");
    if (!(z.real() > 0.0)) throw DomainError("Gaussian width z must have positive real part");
    if (y0.size() < 1 || v.size() != y0.size()) {
        throw DomainError("Gaussian centre and modulation must have length d-1 >= 1");
    }
}

cplx GaussianParams::operator()(const RealVector& y) const {
    const double r2 = (y - y0).squaredNorm();
    return c * std::exp(-z * r2 + bilinear(y, v));
}

cplx evaluate(const GaussianSum& sum, const RealVector& y) {
    cplx s{0.0, 0.0};
    for (const auto& g : sum) s += g(y);
    return s;
}

SymmetryElement SymmetryElement::identity(int base_dim) {
    SymmetryElement s;
    s.A = Eigen::MatrixXd::Identity(base_dim, base_dim);
    s.v = RealVector::Zero(base_dim);
    s.w = RealVector::Zero(base_dim);
    return s;
}

void SymmetryElement::validate() const {
    if (rho == cplx(0.0, 0.0)) throw DomainError("symmetry scalar rho must be nonzero");
    if (!(r > 0.0)) throw DomainError("symmetry dilation r must be positive");
    const auto n = A.rows();
    if (A.cols() != n || v.size() != n || w.size() != n) {
        throw DomainError("symmetry element components have inconsistent dimensions");
    }
    const double defect = (A.transpose() * A - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > 1e-12) throw DomainError("symmetry matrix A is not orthogonal");
}

SymmetryElement compose(const SymmetryElement& outer, const SymmetryElement& inner) {
    // outer(inner f)(y) = rho2 rho1 e^{i v2.w1} f(r1 r2 A1 A2 y + r1 A1 v2 + v1) e^{i y.(r2 A2^T w1 + w2)}
    SymmetryElement s;
    s.rho = outer.rho * inner.rho * std::exp(kI * outer.v.dot(inner.w));
    s.r = inner.r * outer.r;
    s.A = inner.A * outer.A;
    s.v = inner.r * (inner.A * outer.v) + inner.v;
    s.w = outer.r * (outer.A.transpose() * inner.w) + outer.w;
    return s;
}

GaussianParams apply_symmetry(const GaussianParams& g, const SymmetryElement& s) {
    g.validate();
    s.validate();
    if (s.A.rows() != g.base_dim()) throw DomainError("symmetry and Gaussian dimensions differ");
    GaussianParams out;
    out.z = g.z * (s.r * s.r);
    out.y0 = s.A.transpose() * (g.y0 - s.v) / s.r;
    out.v = s.r * (s.A.transpose().cast<cplx>() * g.v) + kI * s.w.cast<cplx>();
    out.c = s.rho * g.c * std::exp(bilinear(s.v, g.v));
    return out;
}

SymmetryElement symmetry_from_standard(const GaussianParams& g) {
    g.validate();
    if (g.z.imag() != 0.0) {
        throw DomainError("only Gaussians with real width z are in the symmetry orbit of the standard one");
    }
    const double z = g.z.real();
    const RealVector shift = g.y0 + g.v.real() / (2.0 * z);
    const double r = std::sqrt(2.0 * z);

    SymmetryElement s = SymmetryElement::identity(g.base_dim());
    s.rho = g.c * std::exp(z * (shift.squaredNorm() - g.y0.squaredNorm()));
    s.r = r;
    s.v = -r * shift;
    s.w = g.v.imag();
    return s;
}

SymmetryElement random_symmetry(int base_dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> log_scale(std::log(0.5), std::log(2.0));
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    std::normal_distribution<double> normal;

    SymmetryElement s = SymmetryElement::identity(base_dim);
    s.rho = std::polar(std::exp(log_scale(rng)), phase(rng));
    s.r = std::exp(log_scale(rng));
    Eigen::MatrixXd m(base_dim, base_dim);
    for (int i = 0; i < base_dim; ++i)
        for (int j = 0; j < base_dim; ++j) m(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ();
    // fix column signs so the distribution does not depend on QR conventions
    const Eigen::MatrixXd r_mat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < base_dim; ++j) {
        if (r_mat(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    s.A = q;
    for (int i = 0; i < base_dim; ++i) s.v[i] = unit(rng);
    for (int i = 0; i < base_dim; ++i) s.w[i] = unit(rng);
    return s;
}

cplx extension_closed(const RealVector& x, double t, int d) {
    if (d < 2) throw DomainError("dimension d must satisfy d >= 2");
    const double half_dim = (d - 1.0) / 2.0;
    const cplx prefactor = std::pow(kTwoPi, half_dim) *
                           branch_power(BranchFactor::one_plus_it(), t, -half_dim);
    return prefactor * std::exp(-x.squaredNorm() / (2.0 * cplx(1.0, t)));
}

namespace {

cplx transported_extension(const SymmetryElement& s, const RealVector& x, double t) {
    const auto n = static_cast<int>(s.v.size());
    // E[rho f(rA.+v) e^{i.w}](x,t) = rho r^{-n} e^{i A(x-w).v/r - i t'|v|^2/2} E[f](A(x-w)/r - t' v, t'),
    // with t' = t / r^2.
    const double t_scaled = t / (s.r * s.r);
    const RealVector rotated = s.A * (x - s.w);
    const RealVector x_scaled = rotated / s.r - t_scaled * s.v;
    const double phase = rotated.dot(s.v) / s.r - 0.5 * t_scaled * s.v.squaredNorm();
    return s.rho * std::pow(s.r, -n) * std::polar(1.0, phase) * extension_closed(x_scaled, t_scaled, n + 1);
}

}  // namespace

ChirpSplit split_chirp(const GaussianParams& g) {
    g.validate();
    // exp(-i eta |y - y0|^2) = e^{-i tau |y|^2 / 2} e^{2 i eta y.y0} e^{-i eta |y0|^2} with tau = 2 eta
    const double eta = g.z.imag();
    ChirpSplit out{g, 2.0 * eta};
    out.real_width.z = g.z.real();
    out.real_width.v = g.v + (2.0 * eta * kI) * g.y0.cast<cplx>();
    out.real_width.c = g.c * std::exp(-kI * (eta * g.y0.squaredNorm()));
    return out;
}

cplx extension(const GaussianParams& g, const RealVector& x, double t) {
    if (x.size() != g.base_dim()) throw DomainError("evaluation point has wrong dimension");
    const ChirpSplit split = split_chirp(g);
    return transported_extension(symmetry_from_standard(split.real_width), x, t + split.time_shift);
}

ExtensionEvaluator::ExtensionEvaluator(const GaussianSum& sum) {
    if (sum.empty()) throw DomainError("extension of an empty Gaussian sum");
    base_dim_ = sum.front().base_dim();
    for (const auto& g : sum) {
        if (g.base_dim() != base_dim_) throw DomainError("Gaussian sum mixes dimensions");
        const ChirpSplit split = split_chirp(g);
        transports_.push_back(symmetry_from_standard(split.real_width));
        time_shifts_.push_back(split.time_shift);
    }
}

cplx ExtensionEvaluator::operator()(const RealVector& x, double t) const {
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < transports_.size(); ++i) {
        s += transported_extension(transports_[i], x, t + time_shifts_[i]);
    }
    return s;
}

cplx extension(const GaussianSum& sum, const RealVector& x, double t) {
    cplx s{0.0, 0.0};
    for (const auto& g : sum) s += extension(g, x, t);
    return s;
}

IntegralResult extension_direct(const GaussianParams& g, const RealVector& x, double t,
                                const QuadSpec& spec) {
    g.validate();
    const int n = g.base_dim();
    if (x.size() != n) throw DomainError("evaluation point has wrong dimension");

    QuadSpec one_d = spec.with_decay(50.0);
    IntegralResult out;
    out.value = g.c;
    out.converged = true;
    double rel_err = 0.0;
    for (int j = 0; j < n; ++j) {
        const double xj = x[j];
        const double cj = g.y0[j];
        const cplx vj = g.v[j];
        const cplx z = g.z;
        auto integrand = [xj, cj, vj, z, t](double y) -> cplx {
            const double dy = y - cj;
            return std::exp(cplx(0.0, -xj * y - 0.5 * t * y * y) - z * dy * dy + y * vj);
        };
        const IntegralResult axis = integrate_real_line(integrand, one_d);
        out.value *= axis.value;
        out.evaluations += axis.evaluations;
        out.converged = out.converged && axis.converged;
        const double mag = std::abs(axis.value);
        rel_err += mag > 0.0 ? axis.err_estimate / mag : std::numeric_limits<double>::infinity();
    }
    out.err_estimate = std::abs(out.value) * rel_err;
    if (!std::isfinite(out.err_estimate)) out.err_estimate = 0.0;
    return out;
}

IntegralResult extension_direct(const RealVector& x, double t, int d, const QuadSpec& spec) {
    if (d < 2 || d > 4) throw DomainError("direct extension oracle is limited to 2 <= d <= 4");
    return extension_direct(GaussianParams::standard(d), x, t, spec);
}

cplx kernel_power(const RealVector& x, double t, const ExponentConfig& cfg) {
    const int d = cfg.d;
    const double q = cfg.q;
    const double dm1 = d - 1.0;
    const double one_t2 = 1.0 + t * t;
    const double modulus_part =
        std::pow(kTwoPi, (q - 1.0) * dm1 / 2.0) * std::pow(one_t2, -dm1 * (q - 2.0) / 4.0);
    const cplx phase_part = branch_power(BranchFactor::one_plus_it(), t, -dm1 / 2.0);
    const cplx gauss = std::exp(-x.squaredNorm() * cplx(q - 1.0, -t) / (2.0 * one_t2));
    return modulus_part * phase_part * gauss;
}

double slice_norm_power(double t, double q, double r, int d) {
    const double dm1 = d - 1.0;
    return std::pow(kTwoPi, (r - q) * dm1 * (1.0 + 1.0 / q) / 2.0) *
           std::pow(q, -dm1 * (r - q) / (2.0 * q)) *
           std::pow(1.0 + t * t, -dm1 * (r - q) * (q - 2.0) / (4.0 * q));
}

double lp_norm_power(const GaussianParams& g, double p) {
    g.validate();
    if (!(p > 0.0)) throw DomainError("L^p exponent must be positive");
    const double zr = g.z.real();
    const RealVector shifted = g.y0 + g.v.real() / (2.0 * zr);
    const double n = g.base_dim();
    return std::pow(std::abs(g.c), p) * std::exp(p * zr * (shifted.squaredNorm() - g.y0.squaredNorm())) *
           std::pow(std::numbers::pi / (p * zr), n / 2.0);
}

PacketTrack packet_track(const GaussianParams& g, double t) {
    const ChirpSplit split = split_chirp(g);
    const SymmetryElement s = symmetry_from_standard(split.real_width);
    t += split.time_shift;
    PacketTrack out;
    out.centre = s.w + s.A.transpose() * (s.v * (t / s.r));
    const double t_scaled = t / (s.r * s.r);
    out.width = s.r * std::sqrt(1.0 + t_scaled * t_scaled);
    return out;
}

}  // namespace gausscrit
