#include "gausscrit/el_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gausscrit/error.hpp"
#include "gausscrit/parallel.hpp"

namespace gausscrit {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Critical: return "critical";
        case Verdict::NotCritical: return "not-critical";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::vector<double> default_a_grid() { return linear_grid(0.0, 8.0, 21); }

std::vector<double> linear_grid(double a_min, double a_max, int steps) {
    if (steps < 1) throw DomainError("a-grid needs at least one point");
    if (!(a_min >= 0.0) || !(a_max >= a_min)) throw DomainError("a-grid needs 0 <= a_min <= a_max");
    if (steps == 1) return {a_min};
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i) grid[i] = a_min + (a_max - a_min) * i / (steps - 1.0);
    grid.back() = a_max;
    return grid;
}

namespace {

void validate_grid(const std::vector<double>& a_grid) {
    if (a_grid.empty()) throw DomainError("a-grid must be nonempty");
    for (double a : a_grid) {
        if (!(a >= 0.0 && a <= 10.0)) throw DomainError("a-grid values must lie in [0, 10]");
    }
}

void finish_profile(ProfileReport& rep, const VerdictThresholds& th) {
    const auto n = static_cast<double>(rep.R_values.size());
    double imag_scale = 0.0;
    for (std::size_t i = 0; i < rep.R_values.size(); ++i) {
        imag_scale = std::max(imag_scale, std::abs(rep.R_imag[i]));
    }
    rep.fitted_constant = std::accumulate(rep.R_values.begin(), rep.R_values.end(), 0.0) / n;
    double dev = 0.0;
    for (double r : rep.R_values) dev = std::max(dev, std::abs(r - rep.fitted_constant));
    rep.max_rel_deviation = rep.fitted_constant != 0.0 ? dev / std::abs(rep.fitted_constant)
                                                       : std::numeric_limits<double>::infinity();

    if (imag_scale > 1e-10 * std::max(1.0, std::abs(rep.fitted_constant))) {
        rep.diagnostics.push_back("imaginary part of R(a) is not negligible");
    }
    if (!rep.all_converged) {
        rep.diagnostics.push_back("quadrature did not converge at one or more grid points");
        rep.verdict = Verdict::Inconclusive;
        return;
    }
    if (!std::isfinite(rep.max_rel_deviation)) {
        rep.diagnostics.push_back("non-finite deviation");
        rep.verdict = Verdict::Inconclusive;
        return;
    }
    if (rep.max_rel_deviation < th.critical) {
        if (th.require_positive_constant && !(rep.fitted_constant > 0.0)) {
            rep.diagnostics.push_back("R(a) is constant but the fitted constant is not positive");
            rep.verdict = Verdict::Inconclusive;
        } else {
            rep.verdict = Verdict::Critical;
        }
    } else if (rep.max_rel_deviation > th.not_critical) {
        rep.verdict = Verdict::NotCritical;
    } else {
        rep.verdict = Verdict::Inconclusive;
    }
}

template <typename Eval>
ProfileReport run_profile(const std::vector<double>& a_grid, const ProfileOptions& options, Eval&& eval) {
    validate_grid(a_grid);
    ProfileReport rep;
    rep.a_grid = a_grid;
    const std::size_t n = a_grid.size();
    rep.R_values.assign(n, 0.0);
    rep.R_imag.assign(n, 0.0);
    rep.err_estimates.assign(n, 0.0);
    std::vector<char> converged(n, 0);
    parallel_for(n, options.threads, [&](std::size_t i) {
        const auto [res, growth] = eval(a_grid[i]);
        const double scale = std::exp(growth * a_grid[i]);
        rep.R_values[i] = res.value.real() * scale;
        rep.R_imag[i] = res.value.imag() * scale;
        rep.err_estimates[i] = res.err_estimate * scale;
        converged[i] = res.converged ? 1 : 0;
    });
    rep.all_converged = std::all_of(converged.begin(), converged.end(), [](char c) { return c != 0; });
    finish_profile(rep, options.thresholds);
    return rep;
}

}  // namespace

ProfileReport el_profile(const ExponentConfig& cfg, const std::vector<double>& a_grid,
                         const ProfileOptions& options) {
    ProfileReport rep = run_profile(a_grid, options, [&](double a) {
        return std::pair{I_of_a(a, cfg, options.method, options.spec), cfg.p - 1.0};
    });
    rep.cfg = cfg;
    return rep;
}

ProfileReport mixed_el_profile(const AdmissiblePair& pair, const std::vector<double>& a_grid,
                               const ProfileOptions& options) {
    const Admissibility check = check_admissible(pair.r, pair.q, pair.d);
    if (!check) throw DomainError("mixed profile requires an admissible pair: " + check.reason);
    ProfileReport rep = run_profile(a_grid, options, [&](double a) {
        return std::pair{J_of_a(a, pair, options.spec), 1.0};
    });
    rep.pair = pair;
    return rep;
}

SeriesReport series_consistency(const ExponentConfig& cfg, int kmax, const QuadSpec& spec, double tol) {
    if (cfg.kind == ExponentCase::Critical) {
        throw DomainError("series consistency is not defined for p = 2");
    }
    if (kmax < cfg.k0 + 2) {
        std::ostringstream os;
        os << "kmax must be at least k0 + 2 = " << cfg.k0 + 2 << " (got " << kmax << ")";
        throw DomainError(os.str());
    }
    const bool subcritical = cfg.kind == ExponentCase::Subcritical;

    SeriesReport rep;
    rep.cfg = cfg;
    rep.tol = tol;
    rep.ratio_target = subcritical ? (2.0 - cfg.p) / (cfg.q - 2.0) : 0.0;
    double scale = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        const IntegralResult r = subcritical ? series_I_k(k, cfg, spec) : series_I_prime_k(k, cfg, spec);
        rep.ks.push_back(k);
        rep.values.push_back(r.value.real());
        rep.errors.push_back(r.err_estimate);
        rep.all_converged = rep.all_converged && r.converged;
        scale = std::max(scale, std::abs(r.value.real()));
    }
    for (double v : rep.values) {
        rep.signs.push_back(std::abs(v) <= 1e-13 * scale ? 0 : (v > 0.0 ? 1 : -1));
    }

    // With integral beta, I_k vanishes for k >= k0 while the ratio is nonzero,
    // so the only admissible constant is zero.
    rep.c_forced_zero = subcritical && cfg.beta_integral;
    rep.c_fit = rep.c_forced_zero ? 0.0 : rep.values.front();
    const double bound = tol * (rep.c_fit != 0.0 ? std::abs(rep.c_fit) : scale);
    double power = 1.0;
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
        const double predicted = rep.c_fit * power;
        const double residual = std::abs(rep.values[i] - predicted);
        rep.residuals.push_back(residual);
        if (residual > bound && !rep.first_violation) rep.first_violation = rep.ks[i];
        power *= rep.ratio_target;
    }
    rep.consistent = !rep.first_violation.has_value();

    rep.alternating_from_k0 = true;
    for (int k = cfg.k0; k < kmax; ++k) {
        if (rep.signs[k] * rep.signs[k + 1] != -1) rep.alternating_from_k0 = false;
    }
    return rep;
}

}  // namespace gausscrit
