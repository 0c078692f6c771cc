#include "gausscrit/mixed_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "gausscrit/contour.hpp"
#include "gausscrit/error.hpp"
#include "gausscrit/parallel.hpp"

namespace gausscrit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_norm_exponents(double q, double r) {
    if (!(q > 1.0 && std::isfinite(q)) || !(r > 1.0 && std::isfinite(r))) {
        throw DomainError("mixed norm exponents must lie in (1, inf)");
    }
}

void check_same_grid(const SampledField& F, const SampledField& G) {
    if (F.grid != G.grid) throw DomainError("fields live on different grids");
}

/// Power m for t = cot(pi/2 u^m): the smallest m >= 4/(s-1) with m(s-1)
/// integral, so the mapped integrand is a polynomial-like u^{m(s-1)-1}.
int time_map_power(double s) {
    const double excess = s - 1.0;
    const int start = std::max(1, static_cast<int>(std::ceil(4.0 / excess - 1e-9)));
    for (int m = start; m <= 64; ++m) {
        const double prod = m * excess;
        if (std::abs(prod - std::round(prod)) < 1e-9) return m;
    }
    return std::min(start, 64);
}

double natural_decay(const GridOptions& options) {
    return options.decay_exponent == 0.0 ? 2.0 : options.decay_exponent;
}

std::vector<double> slice_sums(const SampledField& F, double q) {
    const SpaceTimeGrid& grid = *F.grid;
    const std::size_t n = grid.slice_size();
    std::vector<double> out(grid.t_nodes.size());
    for (std::size_t s = 0; s < out.size(); ++s) {
        long double acc = 0.0L;
        for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::abs(F.values[s * n + i]), q);
        out[s] = static_cast<double>(acc) * grid.x_weight(s);
    }
    return out;
}

/// Neville extrapolation of the values at abscissae h to h = 0.
double extrapolate_to_zero(std::vector<double> h, std::vector<double> values) {
    const std::size_t n = values.size();
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const double hi = h[i];
            const double hj = h[i + level];
            values[i] = (hj * values[i] - hi * values[i + 1]) / (hj - hi);
        }
    }
    return values.front();
}

}  // namespace

std::string to_string(GridProvenance p) {
    return p == GridProvenance::TanMap ? "tan-map" : "uniform";
}

int default_x_points(int d) {
    switch (d) {
        case 2: return 128;
        case 3: return 64;
        case 4: return 32;
        default: return 24;
    }
}

std::size_t SpaceTimeGrid::slice_size() const {
    std::size_t n = 1;
    for (int i = 0; i < base_dim; ++i) n *= static_cast<std::size_t>(x_points);
    return n;
}

RealVector SpaceTimeGrid::x_node(std::size_t slice, std::size_t index) const {
    const SliceBox& box = boxes[slice];
    RealVector x(base_dim);
    for (int k = 0; k < base_dim; ++k) {
        const std::size_t j = index % static_cast<std::size_t>(x_points);
        index /= static_cast<std::size_t>(x_points);
        const double h = (box.hi[k] - box.lo[k]) / x_points;
        x[k] = box.lo[k] + (static_cast<double>(j) + 0.5) * h;
    }
    return x;
}

double SpaceTimeGrid::x_weight(std::size_t slice) const {
    const SliceBox& box = boxes[slice];
    double w = 1.0;
    for (int k = 0; k < base_dim; ++k) w *= (box.hi[k] - box.lo[k]) / x_points;
    return w;
}

void SpaceTimeGrid::validate() const {
    if (base_dim < 1 || x_points < 1) throw DomainError("grid needs at least one spatial node per axis");
    if (t_nodes.empty() || t_nodes.size() != t_weights.size() || boxes.size() != t_nodes.size()) {
        throw DomainError("grid arrays have inconsistent lengths");
    }
    for (std::size_t i = 0; i < t_nodes.size(); ++i) {
        if (!(t_weights[i] > 0.0) || !std::isfinite(t_nodes[i])) throw DomainError("invalid time node");
        if (i > 0 && !(t_nodes[i] > t_nodes[i - 1])) throw DomainError("time nodes must increase");
        const SliceBox& b = boxes[i];
        if (b.lo.size() != base_dim || b.hi.size() != base_dim) throw DomainError("slice box has wrong dimension");
        for (int k = 0; k < base_dim; ++k) {
            if (!(b.hi[k] > b.lo[k])) throw DomainError("slice box is empty");
        }
    }
}

SpaceTimeGrid make_grid(const GaussianSum& packets, const GridOptions& options) {
    if (packets.empty()) throw DomainError("grid needs at least one packet");
    if (options.t_panels < 2 || options.t_panels % 2 != 0 || options.t_order < 1) {
        throw DomainError("time axis needs an even number of panels and a positive order");
    }
    if (!(options.box_widths > 0.0)) throw DomainError("box half-width must be positive");
    const double s = natural_decay(options);
    if (!(s > 1.0)) throw DomainError("time decay exponent must exceed 1");

    SpaceTimeGrid grid;
    grid.base_dim = packets.front().base_dim();
    grid.provenance = GridProvenance::TanMap;
    grid.x_points = options.x_points > 0 ? options.x_points : default_x_points(grid.base_dim + 1);

    double tau = options.t_scale;
    if (tau == 0.0) {
        for (const auto& g : packets) tau += 2.0 * g.z.real();
        tau /= static_cast<double>(packets.size());
    }
    if (!(tau > 0.0)) throw DomainError("time scale must be positive");

    const int m = time_map_power(s);
    const GaussLegendreRule rule = gauss_legendre(options.t_order);
    const double panel = 2.0 / options.t_panels;
    for (int p = 0; p < options.t_panels; ++p) {
        const double left = -1.0 + p * panel;
        for (int j = 0; j < options.t_order; ++j) {
            const double w = left + 0.5 * panel * (rule.nodes[j] + 1.0);
            const double u = 1.0 - std::abs(w);
            const double theta = 0.5 * kPi * std::pow(u, m);
            const double sn = std::sin(theta);
            const double t = std::copysign(tau * std::cos(theta) / sn, w);
            const double jac = tau * 0.5 * kPi * m * std::pow(u, m - 1) / (sn * sn);
            const double weight = 0.5 * panel * rule.weights[j] * jac;
            if (!std::isfinite(t) || !std::isfinite(weight) || !(weight > 0.0)) continue;
            grid.t_nodes.push_back(t);
            grid.t_weights.push_back(weight);
        }
    }

    for (double t : grid.t_nodes) {
        SliceBox box{RealVector::Constant(grid.base_dim, std::numeric_limits<double>::infinity()),
                     RealVector::Constant(grid.base_dim, -std::numeric_limits<double>::infinity())};
        for (const auto& g : packets) {
            const PacketTrack track = packet_track(g, t);
            const double half = options.box_widths * track.width;
            box.lo = box.lo.cwiseMin((track.centre.array() - half).matrix());
            box.hi = box.hi.cwiseMax((track.centre.array() + half).matrix());
        }
        grid.boxes.push_back(std::move(box));
    }
    grid.validate();
    return grid;
}

SpaceTimeGrid make_uniform_grid(int base_dim, double t_lo, double t_hi, int t_points, double x_lo,
                                double x_hi, int x_points) {
    if (base_dim < 1 || t_points < 1 || x_points < 1 || !(t_hi > t_lo) || !(x_hi > x_lo)) {
        throw DomainError("invalid uniform grid");
    }
    SpaceTimeGrid grid;
    grid.base_dim = base_dim;
    grid.provenance = GridProvenance::Uniform;
    grid.x_points = x_points;
    const double h = (t_hi - t_lo) / t_points;
    for (int i = 0; i < t_points; ++i) {
        grid.t_nodes.push_back(t_lo + (i + 0.5) * h);
        grid.t_weights.push_back(h);
        grid.boxes.push_back({RealVector::Constant(base_dim, x_lo), RealVector::Constant(base_dim, x_hi)});
    }
    grid.validate();
    return grid;
}

void SampledField::validate() const {
    if (!grid) throw DomainError("field has no grid");
    if (values.size() != grid->size()) throw DomainError("field size does not match its grid");
    for (const cplx& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("field has non-finite values");
    }
}

SampledField sample(std::shared_ptr<const SpaceTimeGrid> grid, const SpaceTimeFunction& f, int threads) {
    if (!grid) throw DomainError("sampling needs a grid");
    SampledField out{grid, std::vector<cplx>(grid->size())};
    const std::size_t n = grid->slice_size();
    parallel_for(grid->t_nodes.size(), threads, [&](std::size_t s) {
        const double t = grid->t_nodes[s];
        for (std::size_t i = 0; i < n; ++i) out.values[s * n + i] = f(grid->x_node(s, i), t);
    });
    out.validate();
    return out;
}

SampledField sample_extension(std::shared_ptr<const SpaceTimeGrid> grid, const GaussianSum& sum, int threads) {
    const ExtensionEvaluator eval(sum);
    if (grid && eval.base_dim() != grid->base_dim) throw DomainError("Gaussian and grid dimensions differ");
    return sample(std::move(grid), [&eval](const RealVector& x, double t) { return eval(x, t); }, threads);
}

SampledField combine(const SampledField& F, const SampledField& G, cplx z) {
    check_same_grid(F, G);
    SampledField out{F.grid, F.values};
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += z * G.values[i];
    return out;
}

SampledField scale(const SampledField& F, cplx c) {
    SampledField out{F.grid, F.values};
    for (cplx& v : out.values) v *= c;
    return out;
}

void write_csv(const SampledField& F, std::ostream& out) {
    const SpaceTimeGrid& grid = *F.grid;
    for (int k = 0; k < grid.base_dim; ++k) out << "x" << k + 1 << ',';
    out << "t,re,im\n";
    const auto old_precision = out.precision(17);
    const std::size_t n = grid.slice_size();
    for (std::size_t s = 0; s < grid.t_nodes.size(); ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const RealVector x = grid.x_node(s, i);
            for (int k = 0; k < grid.base_dim; ++k) out << x[k] << ',';
            const cplx v = F.at(s, i);
            out << grid.t_nodes[s] << ',' << v.real() << ',' << v.imag() << '\n';
        }
    }
    out.precision(old_precision);
}

double mixed_norm_power(const SampledField& F, double q, double r) {
    check_norm_exponents(q, r);
    const std::vector<double> slices = slice_sums(F, q);
    long double acc = 0.0L;
    for (std::size_t s = 0; s < slices.size(); ++s) acc += F.grid->t_weights[s] * std::pow(slices[s], r / q);
    return static_cast<double>(acc);
}

double mixed_norm_value(const SampledField& F, double q, double r) {
    return std::pow(mixed_norm_power(F, q, r), 1.0 / r);
}

double first_variation(const SampledField& F, const SampledField& G, double q, double r, cplx z) {
    check_norm_exponents(q, r);
    check_same_grid(F, G);
    const SpaceTimeGrid& grid = *F.grid;
    const std::vector<double> slices = slice_sums(F, q);
    const std::size_t n = grid.slice_size();
    long double total = 0.0L;
    for (std::size_t s = 0; s < slices.size(); ++s) {
        if (slices[s] == 0.0) continue;
        long double inner = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx f = F.values[s * n + i];
            const double mag = std::abs(f);
            if (mag == 0.0) continue;
            inner += std::pow(mag, q - 2.0) * (z * G.values[s * n + i] * std::conj(f)).real();
        }
        total += grid.t_weights[s] * std::pow(slices[s], (r - q) / q) * inner * grid.x_weight(s);
    }
    return r * static_cast<double>(total);
}

VariationReport remainder_slope(const SampledField& F, const SampledField& G, double q, double r,
                                const std::vector<double>& z_magnitudes, cplx phase) {
    if (z_magnitudes.size() < 4) throw DomainError("remainder fit needs at least four |z| values");
    for (double m : z_magnitudes) {
        if (!(m >= 1e-5 && m <= 1e-1)) throw DomainError("|z| values must lie in [1e-5, 1e-1]");
    }
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) throw DomainError("phase must have unit modulus");

    VariationReport rep;
    rep.base_norm_r = mixed_norm_power(F, q, r);
    rep.first_order_coeff = first_variation(F, G, q, r, phase);
    rep.z_magnitudes = z_magnitudes;
    rep.noise_floor = 1e3 * std::numeric_limits<double>::epsilon() * rep.base_norm_r;
    for (double m : z_magnitudes) {
        const cplx z = m * phase;
        const double perturbed = mixed_norm_power(combine(F, G, z), q, r);
        const double rem = std::abs(perturbed - rep.base_norm_r - m * rep.first_order_coeff);
        rep.remainders.push_back(rem);
        if (!(rem > rep.noise_floor)) rep.degenerate = true;
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(z_magnitudes.size());
    for (std::size_t i = 0; i < z_magnitudes.size(); ++i) {
        const double lx = std::log(z_magnitudes[i]);
        const double ly = std::log(std::max(rep.remainders[i], std::numeric_limits<double>::min()));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) {
        rep.degenerate = true;
        rep.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    } else {
        rep.fitted_slope = (n * sxy - sx * sy) / denom;
    }
    return rep;
}

GridOptions phi_grid_options(const ExponentConfig& cfg, GridOptions options) {
    if (options.decay_exponent == 0.0) options.decay_exponent = 2.0 * cfg.beta;
    return options;
}

double phi_value(const GaussianParams& g, const ExponentConfig& cfg, GridOptions options) {
    g.validate();
    if (g.ambient_dim() != cfg.d) throw DomainError("Gaussian dimension does not match the configuration");
    options = phi_grid_options(cfg, options);
    auto grid = std::make_shared<const SpaceTimeGrid>(make_grid({g}, options));
    const SampledField F = sample_extension(grid, {g}, options.threads);
    const double numerator = mixed_norm_power(F, cfg.q, cfg.q);
    return numerator / std::pow(lp_norm_power(g, cfg.p), cfg.q / cfg.p);
}

double psi_value(const GaussianParams& g, const AdmissiblePair& pair, GridOptions options) {
    g.validate();
    const Admissibility check = check_admissible(pair.r, pair.q, pair.d);
    if (!check) throw DomainError("not an admissible pair: " + check.reason);
    if (g.ambient_dim() != pair.d) throw DomainError("Gaussian dimension does not match the pair");
    if (options.decay_exponent == 0.0) options.decay_exponent = 2.0;
    auto grid = std::make_shared<const SpaceTimeGrid>(make_grid({g}, options));
    const SampledField F = sample_extension(grid, {g}, options.threads);
    const double numerator = mixed_norm_power(F, pair.q, pair.r);
    return numerator / std::pow(lp_norm_power(g, 2.0), pair.r / 2.0);
}

IntegralResult lp_norm_power(const GaussianSum& sum, double p, const QuadSpec& spec) {
    if (sum.empty()) throw DomainError("empty Gaussian sum");
    if (!(p > 0.0)) throw DomainError("L^p exponent must be positive");
    for (const auto& g : sum) {
        g.validate();
        if (g.base_dim() != 1) throw DomainError("numeric L^p norm supports base dimension 1 only");
    }
    RealVector y(1);
    auto integrand = [&sum, p, y](double s) mutable -> cplx {
        y[0] = s;
        return std::pow(std::abs(evaluate(sum, y)), p);
    };
    return integrate_real_line(integrand, spec.with_decay(50.0));
}

double DerivativeReport::magnitude() const { return std::hypot(real_direction, imag_direction); }

DerivativeReport directional_derivative_phi(const GaussianParams& g, const GaussianParams& dir,
                                            const ExponentConfig& cfg, const std::vector<double>& eps_list,
                                            GridOptions options) {
    g.validate();
    dir.validate();
    if (cfg.d != 2 || g.base_dim() != 1 || dir.base_dim() != 1) {
        throw DomainError("directional derivatives are implemented for d = 2");
    }
    if (eps_list.empty()) throw DomainError("need at least one step size");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw DomainError("step sizes must be positive");
        for (std::size_t j = 0; j < i; ++j) {
            if (eps_list[i] == eps_list[j]) throw DomainError("step sizes must be distinct");
        }
    }

    options = phi_grid_options(cfg, options);
    auto grid = std::make_shared<const SpaceTimeGrid>(make_grid({g, dir}, options));
    const SampledField F = sample_extension(grid, {g}, options.threads);
    const SampledField G = sample_extension(grid, {dir}, options.threads);
    QuadSpec norm_spec;
    norm_spec.abs_tol = 1e-15;
    norm_spec.rel_tol = 1e-13;

    auto phi_at = [&](cplx eps) {
        const double num = mixed_norm_power(combine(F, G, eps), cfg.q, cfg.q);
        GaussianParams scaled = dir;
        scaled.c *= eps;
        const IntegralResult m = eps == cplx(0.0) ? IntegralResult{cplx(lp_norm_power(g, cfg.p)), 0.0, 0, true}
                                                  : lp_norm_power(GaussianSum{g, scaled}, cfg.p, norm_spec);
        if (!m.converged) throw ConvergenceError("L^p norm of the perturbed Gaussian did not converge");
        return num / std::pow(m.value.real(), cfg.q / cfg.p);
    };

    DerivativeReport rep;
    rep.phi = phi_at(0.0);
    rep.eps = eps_list;
    std::vector<double> h;
    bool all_small = true;
    for (double e : eps_list) {
        const double dr = phi_at(e) - phi_at(-e);
        const double di = phi_at(cplx(0.0, e)) - phi_at(cplx(0.0, -e));
        if (std::abs(dr) >= 1e-9 * rep.phi || std::abs(di) >= 1e-9 * rep.phi) all_small = false;
        rep.real_differences.push_back(dr / (2.0 * e));
        rep.imag_differences.push_back(di / (2.0 * e));
        h.push_back(e * e);
    }
    rep.noise_limited = all_small;
    rep.real_direction = extrapolate_to_zero(h, rep.real_differences);
    rep.imag_direction = extrapolate_to_zero(h, rep.imag_differences);
    return rep;
}

double standard_mixed_norm_power(double q, double r, int d) {
    check_norm_exponents(q, r);
    if (d < 2) throw DomainError("dimension d must satisfy d >= 2");
    const double dm1 = d - 1.0;
    // ||E g(., t)||_q^q = C (1+t^2)^{-(d-1)(q-2)/4} and int (1+t^2)^{-s} dt = sqrt(pi) G(s-1/2) / G(s)
    const double slice_const = std::pow(kTwoPi, q * dm1 / 2.0) * std::pow(kTwoPi / q, dm1 / 2.0);
    const double s = dm1 * (q - 2.0) * r / (4.0 * q);
    if (!(s > 0.5)) throw DomainError("time integral of the standard Gaussian extension diverges");
    return std::pow(slice_const, r / q) * std::sqrt(kPi) * std::exp(std::lgamma(s - 0.5) - std::lgamma(s));
}

double standard_extension_norm_power(const ExponentConfig& cfg) {
    return standard_mixed_norm_power(cfg.q, cfg.q, cfg.d);
}

std::vector<NamedDirection> direction_dictionary() {
    const GaussianParams f = GaussianParams::standard(2);
    std::vector<NamedDirection> out;
    GaussianParams g = f;
    g.z = 1.0;
    out.push_back({"width", g});
    g = f;
    g.y0[0] = 0.5;
    out.push_back({"frequency-shift", g});
    g = f;
    g.v[0] = cplx(0.0, 0.7);
    out.push_back({"translation", g});
    g = f;
    g.z = cplx(0.5, 0.4);
    out.push_back({"chirp", g});
    g = f;
    g.z = 0.3;
    g.y0[0] = -0.3;
    g.c = cplx(0.8, 0.6);
    out.push_back({"mixed", g});
    return out;
}

PairingReport el_pairing_derivative(const GaussianParams& dir, const ExponentConfig& cfg, const QuadSpec& spec) {
    dir.validate();
    if (cfg.d != 2 || dir.base_dim() != 1) throw DomainError("the pairing harness is implemented for d = 2");
    const double q = cfg.q;
    const double p = cfg.p;
    const double lift = std::pow(kTwoPi, q / 2.0);
    QuadSpec inner = spec;
    RealVector y(1);

    bool converged = true;
    auto paired = [&](double s) -> cplx {
        y[0] = s;
        const IntegralResult I = I_of_a(0.5 * s * s, cfg, IMethod::RealLine, inner);
        converged = converged && I.converged;
        return dir(y) * std::conj(lift * I.value);
    };
    const IntegralResult P = integrate_real_line(paired, spec.with_decay(50.0));
    auto against_f = [&](double s) -> cplx {
        y[0] = s;
        return std::exp(-0.5 * (p - 1.0) * s * s) * dir(y);
    };
    const IntegralResult Q = integrate_real_line(against_f, spec.with_decay(50.0));
    if (!P.converged || !Q.converged || !converged) throw ConvergenceError("pairing integral did not converge");

    const GaussianParams f = GaussianParams::standard(2);
    const double N = standard_extension_norm_power(cfg);
    const double M = lp_norm_power(f, p);
    const double D = std::pow(M, q / p);
    const double dD_per_dM = (q / p) * std::pow(M, q / p - 1.0);

    PairingReport rep;
    rep.phi = N / D;
    const double dN_real = q * P.value.real();
    const double dN_imag = -q * P.value.imag();
    const double dM_real = p * Q.value.real();
    const double dM_imag = -p * Q.value.imag();
    rep.real_direction = dN_real / D - N * dD_per_dM * dM_real / (D * D);
    rep.imag_direction = dN_imag / D - N * dD_per_dM * dM_imag / (D * D);
    return rep;
}

}  // namespace gausscrit
