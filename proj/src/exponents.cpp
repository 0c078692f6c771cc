#include "gausscrit/exponents.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gausscrit/error.hpp"

namespace gausscrit {

std::string to_string(ExponentCase c) {
    switch (c) {
        case ExponentCase::Subcritical: return "subcritical";
        case ExponentCase::Critical: return "critical";
        case ExponentCase::Supercritical: return "supercritical";
    }
    return "unknown";
}

double p_upper(int d) { return 2.0 * d / (d - 1.0); }

namespace {

void require_dimension(int d) {
    if (d < 2) {
        throw DomainError("dimension d must satisfy d >= 2 (got " + std::to_string(d) + ")");
    }
}

void require_p(double p, int d) {
    if (!std::isfinite(p) || !(p > 1.0) || !(p < p_upper(d))) {
        std::ostringstream os;
        os.precision(17);
        os << "exponent p must satisfy 1 < p < 2d/(d-1) = " << p_upper(d) << " (got " << p << ")";
        throw DomainError(os.str());
    }
}

}  // namespace

double dual_exponent(double p, int d) {
    require_dimension(d);
    require_p(p, d);
    const double inv_q = (d - 1.0) / (d + 1.0) * (1.0 - 1.0 / p);
    return 1.0 / inv_q;
}

double primal_exponent(double q, int d) {
    require_dimension(d);
    if (!(q > 0.0) || !std::isfinite(q)) throw DomainError("exponent q must be positive and finite");
    // 1 - 1/p = (d+1)/((d-1) q)
    const double one_minus = (d + 1.0) / ((d - 1.0) * q);
    return 1.0 / (1.0 - one_minus);
}

double diagonal_exponent(int d) {
    require_dimension(d);
    return 2.0 * (d + 1.0) / (d - 1.0);
}

ExponentConfig make_config(double p, int d) {
    require_dimension(d);
    require_p(p, d);

    ExponentConfig cfg;
    cfg.d = d;
    cfg.p = p;
    if (std::abs(p - 2.0) <= kIntegerSnap) {
        cfg.p = 2.0;
        cfg.kind = ExponentCase::Critical;
    } else {
        cfg.kind = p < 2.0 ? ExponentCase::Subcritical : ExponentCase::Supercritical;
    }
    cfg.q = dual_exponent(cfg.p, d);

    const double dm1 = d - 1.0;
    if (!(dm1 * (cfg.q - 2.0) > 2.0 + kConvergenceMargin)) {
        throw DomainError("integrability requires (d-1)(q-2) > 2; p is too close to 2d/(d-1)");
    }

    double beta = dm1 * (cfg.q - 2.0) / 4.0;
    const double nearest = std::round(beta);
    if (std::abs(beta - nearest) <= kIntegerSnap * std::max(1.0, std::abs(beta))) {
        beta = nearest;
        cfg.beta_integral = true;
        // keep q consistent with the snapped beta
        cfg.q = 2.0 + 4.0 * beta / dm1;
    }
    cfg.beta = beta;
    cfg.k0 = static_cast<int>(std::ceil(beta));

    if (cfg.k0 < 1) throw DomainError("internal: k0 < 1");
    if (cfg.kind == ExponentCase::Critical && cfg.beta != 1.0) {
        throw DomainError("internal: p = 2 must give beta = 1");
    }
    if (cfg.kind == ExponentCase::Supercritical && !(cfg.beta >= 0.5 && cfg.beta < 1.0)) {
        throw DomainError("internal: supercritical beta outside [1/2, 1)");
    }
    return cfg;
}

Admissibility check_admissible(double r, double q, int d) {
    Admissibility out;
    if (d < 2) {
        out.reason = "dimension d must satisfy d >= 2";
        out.residual = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double half = (d - 1.0) / 2.0;
    out.residual = 2.0 / r + (d - 1.0) / q - half;
    if (!std::isfinite(r) || !std::isfinite(q)) {
        out.reason = "exponents must be finite";
        return out;
    }
    if (r < 2.0 || q < 2.0) {
        out.reason = "exponents must satisfy q, r >= 2";
        return out;
    }
    if (std::abs(out.residual) > kAdmissibleTolerance * std::max(1.0, half)) {
        std::ostringstream os;
        os.precision(17);
        os << "scaling relation 2/r + (d-1)/q = (d-1)/2 fails, residual " << out.residual;
        out.reason = os.str();
        return out;
    }
    out.pair = AdmissiblePair{d, q, r};
    return out;
}

}  // namespace gausscrit
