#include "gausscrit/contour.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gausscrit/complex_branch.hpp"
#include "gausscrit/error.hpp"

namespace gausscrit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGammaSnap = 1e-12;

cplx int_power(cplx base, int k) {
    cplx out{1.0, 0.0};
    for (int i = 0; i < k; ++i) out *= base;
    return out;
}

double int_power(double base, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= base;
    return out;
}

/// Throws unless two evaluations of the same integral agree within their
/// combined error estimates (with a small absolute and relative floor).
void cross_check(const IntegralResult& a, const IntegralResult& b, const QuadSpec& spec,
                 const char* what) {
    const double diff = std::abs(a.value - b.value);
    const double scale = std::max(std::abs(a.value), std::abs(b.value));
    const double allowed = 20.0 * (a.err_estimate + b.err_estimate) + 10.0 * spec.abs_tol + 1e-9 * scale;
    if (!(diff <= allowed)) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": contour and real-line values disagree (" << a.value << " vs " << b.value
           << ", |diff| = " << diff << ", allowed " << allowed << ")";
        throw ConsistencyError(os.str());
    }
}

void require_case(const ExponentConfig& cfg, ExponentCase wanted, const char* what) {
    if (cfg.kind != wanted) {
        throw DomainError(std::string(what) + " requires " + to_string(wanted) + " exponents (got " +
                          to_string(cfg.kind) + ")");
    }
}

}  // namespace

void HSpec::validate() const {
    if (!(q > 2.0)) throw DomainError("HSpec requires q > 2");
    if (gauss_a < 0.0) throw DomainError("HSpec Gaussian coefficient must be >= 0");
    if (poly_k < 0) throw DomainError("HSpec polynomial power must be >= 0");
}

cplx h_on_line(const HSpec& h, double t) {
    cplx out = branch_power(BranchFactor::one_minus_it(), t, h.exp_minus) *
               branch_power(BranchFactor::q_minus_1_minus_it(h.q), t, h.exp_q);
    if (h.poly_k > 0) out *= int_power(cplx(h.poly_const, h.poly_it_coeff * t), h.poly_k);
    if (h.gauss_a != 0.0) {
        const cplx denom(h.q - 1.0, -t);
        const cplx numer(-1.0, (h.q - 1.0) * t);  // it(q-1-it) - (1+t^2)
        out *= std::exp(h.gauss_a * numer / denom);
    }
    return out;
}

double h_on_ray(const HSpec& h, double y) {
    const BranchFactor minus = BranchFactor::one_minus_it();
    const BranchFactor qfac = BranchFactor::q_minus_1_minus_it(h.q);
    double out = std::pow(shifted_base(minus, y), h.exp_minus) * std::pow(shifted_base(qfac, y), h.exp_q);
    if (h.poly_k > 0) out *= int_power(h.poly_const - h.poly_it_coeff * (1.0 + y), h.poly_k);
    if (h.gauss_a != 0.0) out *= std::exp(-h.gauss_a * (h.q + (h.q - 1.0) * y) / (h.q + y));
    return out;
}

double decay_exponent(double gamma, const HSpec& h) { return -(gamma + h.growth()); }

IntegralResult lemma_integration(double gamma, const HSpec& h, const QuadSpec& spec,
                                 bool require_positive_on_ray) {
    h.validate();
    if (gamma < -1.0 - kGammaSnap) throw DomainError("contour formula requires gamma >= -1");
    const double s = decay_exponent(gamma, h);
    if (!(s > 1.0)) throw DomainError("integrand (1+it)^gamma H(t) must decay faster than |t|^-1");

    IntegralResult out;
    if (std::abs(gamma + 1.0) <= kGammaSnap) {
        const double h_i = h_at_i(h);
        if (require_positive_on_ray && !(h_i > 0.0)) throw ConsistencyError("H(i) is not positive");
        out.value = 2.0 * kPi * h_i;
        out.err_estimate = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(out.value);
        out.evaluations = 1;
        out.converged = true;
        return out;
    }

    const double coeff = -2.0 * sin_pi(gamma);
    if (coeff == 0.0) {
        out.converged = true;
        return out;
    }
    auto on_ray = [&h, require_positive_on_ray](double y) -> cplx {
        const double v = h_on_ray(h, y);
        if (require_positive_on_ray && !(v > 0.0)) {
            throw ConsistencyError("H(i+iy) is not positive on the shifted ray");
        }
        return {v, 0.0};
    };
    QuadSpec inner = spec.with_decay(s);
    inner.abs_tol = spec.abs_tol / std::abs(coeff);
    out = integrate_half_line(on_ray, gamma, inner);
    out.value *= coeff;
    out.err_estimate *= std::abs(coeff);
    return out;
}

IntegralResult lemma_real_line(double gamma, const HSpec& h, const QuadSpec& spec) {
    h.validate();
    const double s = decay_exponent(gamma, h);
    if (!(s > 1.0)) throw DomainError("integrand (1+it)^gamma H(t) must decay faster than |t|^-1");
    const BranchFactor plus = BranchFactor::one_plus_it();
    auto integrand = [&h, gamma, plus](double t) -> cplx {
        return branch_power(plus, t, gamma) * h_on_line(h, t);
    };
    return integrate_real_line(integrand, spec.with_decay(s));
}

HSpec I_integrand(const ExponentConfig& cfg, double a) {
    const double half_dim = (cfg.d - 1.0) / 2.0;
    HSpec h;
    h.q = cfg.q;
    h.exp_minus = -cfg.beta + half_dim;
    h.exp_q = -half_dim;
    h.gauss_a = a;
    return h;
}

HSpec I_k_integrand(const ExponentConfig& cfg, int k) {
    HSpec h = I_integrand(cfg, 0.0);
    h.exp_q -= k;
    return h;
}

HSpec I_prime_k_integrand(const ExponentConfig& cfg, int k) {
    HSpec h = I_k_integrand(cfg, k);
    h.poly_k = k;
    h.poly_const = cfg.p * cfg.q - cfg.p - cfg.q;
    h.poly_it_coeff = cfg.q - cfg.p;
    return h;
}

namespace {

IntegralResult I_series(double a, const ExponentConfig& cfg, const QuadSpec& spec) {
    if (cfg.kind == ExponentCase::Critical) {
        throw DomainError("series expansion of I(a) is not defined for p = 2");
    }
    const bool subcritical = cfg.kind == ExponentCase::Subcritical;
    const double rate = subcritical ? a * (cfg.q - 2.0) : a;
    const double prefactor = subcritical ? std::exp(-a) : std::exp(-(cfg.p - 1.0) * a);

    // coefficient errors are amplified by weights up to e^{rate}
    QuadSpec inner = spec;
    inner.abs_tol = spec.abs_tol * std::exp(-rate);
    inner.rel_tol = 0.1 * spec.rel_tol;

    IntegralResult out;
    out.converged = false;
    cplx sum{0.0, 0.0};
    double abs_sum = 0.0;
    double err = 0.0;
    double weight = 1.0;  // rate^k / k!
    int small_run = 0;
    for (int k = 0; k <= kSeriesCap; ++k) {
        if (k > 0) weight *= rate / k;
        if (weight == 0.0) {
            out.converged = true;
            break;
        }
        const IntegralResult coeff = subcritical ? series_I_k(k, cfg, inner) : series_I_prime_k(k, cfg, inner);
        out.evaluations += coeff.evaluations;
        if (!coeff.converged) return out;
        const cplx term = weight * coeff.value;
        sum += term;
        abs_sum += std::abs(term);
        err += weight * coeff.err_estimate;
        const bool past_peak = k > rate;
        small_run = (past_peak && std::abs(term) <= 0.01 * spec.rel_tol * std::abs(sum)) ? small_run + 1 : 0;
        if (small_run >= 2) {
            err += 10.0 * std::abs(term);
            out.converged = true;
            break;
        }
    }
    err += 16.0 * std::numeric_limits<double>::epsilon() * abs_sum;
    out.value = prefactor * sum;
    out.err_estimate = prefactor * err;
    out.converged = out.converged && out.err_estimate <= IntegralResult::target(spec, out.value);
    return out;
}

}  // namespace

IntegralResult I_of_a(double a, const ExponentConfig& cfg, IMethod method, const QuadSpec& spec) {
    if (!(a >= 0.0)) throw DomainError("I(a) is defined for a >= 0");
    switch (method) {
        case IMethod::RealLine: return lemma_real_line(-cfg.beta, I_integrand(cfg, a), spec);
        case IMethod::Contour:
            if (cfg.beta > 1.0) {
                throw DomainError("contour evaluation of I(a) needs beta <= 1 (p >= 2)");
            }
            return lemma_integration(-cfg.beta, I_integrand(cfg, a), spec);
        case IMethod::Series: return I_series(a, cfg, spec);
    }
    throw DomainError("unknown evaluation method");
}

IntegralResult J_of_a(double a, const AdmissiblePair& pair, const QuadSpec& spec) {
    if (!(a >= 0.0)) throw DomainError("J(a) is defined for a >= 0");
    const Admissibility check = check_admissible(pair.r, pair.q, pair.d);
    if (!check) throw DomainError("J(a) requires an admissible pair: " + check.reason);

    const double dm1 = pair.d - 1.0;
    const double gamma = -(pair.r / (4.0 * pair.q)) * dm1 * (pair.q - 2.0);
    HSpec full;
    full.q = pair.q;
    full.exp_minus = gamma + dm1 / 2.0;
    full.exp_q = -dm1 / 2.0;
    full.gauss_a = a;
    const IntegralResult direct = lemma_real_line(gamma, full, spec);

    HSpec reduced = full;
    reduced.exp_minus = (pair.d - 3.0) / 2.0;
    IntegralResult out = lemma_integration(-1.0, reduced, spec);

    cross_check(out, direct, spec, "J(a)");
    out.err_estimate += std::abs(out.value - direct.value);
    out.evaluations += direct.evaluations;
    out.converged = direct.converged && out.err_estimate <= IntegralResult::target(spec, out.value);
    return out;
}

IntegralResult series_I_k(int k, const ExponentConfig& cfg, const QuadSpec& spec) {
    require_case(cfg, ExponentCase::Subcritical, "I_k");
    if (k < 0) throw DomainError("series index k must be >= 0");
    const double gamma = k - cfg.beta;
    const HSpec h = I_k_integrand(cfg, k);
    const IntegralResult real_line = lemma_real_line(gamma, h, spec);
    if (gamma < -1.0 - kGammaSnap) return real_line;

    IntegralResult contour = lemma_integration(gamma, h, spec, /*require_positive_on_ray=*/true);
    cross_check(contour, real_line, spec, "I_k");
    contour.evaluations += real_line.evaluations;
    contour.converged = contour.converged && real_line.converged;
    return contour;
}

IntegralResult series_I_prime_k(int k, const ExponentConfig& cfg, const QuadSpec& spec) {
    require_case(cfg, ExponentCase::Supercritical, "I'_k");
    if (k < 0) throw DomainError("series index k must be >= 0");
    const double gamma = -cfg.beta;
    // the +2 sin(beta pi) form and the generic -2 sin(gamma pi) form coincide
    if (sin_pi(cfg.beta) != -sin_pi(gamma)) throw ConsistencyError("sign convention mismatch");
    const HSpec h = I_prime_k_integrand(cfg, k);
    IntegralResult contour = lemma_integration(gamma, h, spec);
    const IntegralResult real_line = lemma_real_line(gamma, h, spec);
    cross_check(contour, real_line, spec, "I'_k");
    contour.evaluations += real_line.evaluations;
    contour.converged = contour.converged && real_line.converged;
    return contour;
}

double residue_value_p2(double a, int d) {
    if (d < 2) throw DomainError("dimension d must satisfy d >= 2");
    const double q = diagonal_exponent(d);
    return 2.0 * kPi * std::pow(2.0, (d - 3.0) / 2.0) * std::pow(q, -(d - 1.0) / 2.0) * std::exp(-a);
}

std::vector<LemmaCase> lemma_suite() {
    const double gammas[] = {-1.0, -0.75, -0.5, 0.25, 1.6};
    std::vector<LemmaCase> out;
    for (double gamma : gammas) {
        for (int k = 0; k <= 4; ++k) {
            LemmaCase c;
            c.gamma = gamma;
            std::ostringstream label;
            label << "gamma=" << gamma << ",k=" << k;
            c.label = label.str();
            HSpec& h = c.h;
            if (k == 0 && (gamma == -1.0 || gamma == -0.5)) {
                h.q = gamma == -1.0 ? 3.0 : 4.0;
                h.exp_q = -1.0;
                c.exact = gamma == -1.0 ? 2.0 * std::numbers::pi / 3.0 : std::numbers::pi;
            } else {
                h.q = 3.0 + 0.5 * k;
                h.exp_minus = 0.5;
                h.poly_k = k;
                h.poly_const = 1.5;
                h.poly_it_coeff = 0.5;
                h.gauss_a = 0.3 * k;
                // total decay |t|^{-1.75}
                h.exp_q = -(k + h.exp_minus + gamma + 1.75);
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace gausscrit
