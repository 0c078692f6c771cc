#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gausscrit/contour.hpp"
#include "gausscrit/exponents.hpp"
#include "gausscrit/quadrature.hpp"

namespace gausscrit {

enum class Verdict { Critical, NotCritical, Inconclusive };
std::string to_string(Verdict v);

/// Critical iff deviation < critical, NotCritical iff deviation > not_critical.
struct VerdictThresholds {
    double critical = 1e-6;
    double not_critical = 1e-4;
    /// Refuse a Critical verdict unless the fitted constant is positive.
    bool require_positive_constant = true;
};

struct ProfileOptions {
    QuadSpec spec{};
    VerdictThresholds thresholds{};
    IMethod method = IMethod::RealLine;
    int threads = 1;
};

/// Constancy profile R(a) = I(a) e^{(p-1)a} (or J(a) e^a for a mixed pair).
struct ProfileReport {
    std::optional<ExponentConfig> cfg;
    std::optional<AdmissiblePair> pair;
    std::vector<double> a_grid;
    std::vector<double> R_values;
    std::vector<double> R_imag;
    std::vector<double> err_estimates;
    double fitted_constant = 0.0;
    double max_rel_deviation = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    bool all_converged = true;
    std::vector<std::string> diagnostics;
};

/// {0, 0.4, ..., 8}.
std::vector<double> default_a_grid();
/// `steps` equally spaced points from a_min to a_max inclusive.
std::vector<double> linear_grid(double a_min, double a_max, int steps);

ProfileReport el_profile(const ExponentConfig& cfg, const std::vector<double>& a_grid,
                         const ProfileOptions& options = {});

ProfileReport mixed_el_profile(const AdmissiblePair& pair, const std::vector<double>& a_grid,
                               const ProfileOptions& options = {});

/// Series coefficients and their test against the geometric law
/// I_k = c ((2-p)/(q-2))^k (subcritical) or I'_k = c 0^k (supercritical).
struct SeriesReport {
    ExponentConfig cfg;
    std::vector<int> ks;
    std::vector<double> values;
    std::vector<double> errors;
    std::vector<int> signs;
    std::vector<double> residuals;
    double ratio_target = 0.0;
    double c_fit = 0.0;
    bool c_forced_zero = false;
    double tol = 0.0;
    bool consistent = true;
    std::optional<int> first_violation;
    /// sign(I_k) sign(I_{k+1}) = -1 for all k0 <= k < kmax.
    bool alternating_from_k0 = false;
    bool all_converged = true;
};

SeriesReport series_consistency(const ExponentConfig& cfg, int kmax, const QuadSpec& spec = {},
                                double tol = 1e-6);

}  // namespace gausscrit
