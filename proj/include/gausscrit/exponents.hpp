#pragma once

#include <optional>
#include <string>

namespace gausscrit {

enum class ExponentCase { Subcritical, Critical, Supercritical };

std::string to_string(ExponentCase c);

/// A validated (d, p, q) triple together with the series parameters used by
/// the contour machinery: beta = (d-1)(q-2)/4 and k0 = ceil(beta).
struct ExponentConfig {
    int d = 0;
    double p = 0.0;
    double q = 0.0;
    double beta = 0.0;
    int k0 = 0;
    ExponentCase kind = ExponentCase::Critical;
    /// True when beta was snapped to an integer (within 1e-12).
    bool beta_integral = false;
};

/// Strichartz exponents (q, r) satisfying 2/r + (d-1)/q = (d-1)/2, both finite.
struct AdmissiblePair {
    int d = 0;
    double q = 0.0;
    double r = 0.0;
};

/// Outcome of an admissibility test. Rejection is a value: `pair` is empty
/// and `reason` says why; `residual` is always 2/r + (d-1)/q - (d-1)/2.
struct Admissibility {
    std::optional<AdmissiblePair> pair;
    double residual = 0.0;
    std::string reason;

    explicit operator bool() const { return pair.has_value(); }
};

inline constexpr double kIntegerSnap = 1e-12;
inline constexpr double kConvergenceMargin = 1e-9;
inline constexpr double kAdmissibleTolerance = 1e-12;

/// Upper end 2d/(d-1) of the open p-range.
double p_upper(int d);

/// q(p,d) from 1/q = ((d-1)/(d+1))(1 - 1/p). Throws DomainError outside
/// d >= 2, 1 < p < 2d/(d-1).
double dual_exponent(double p, int d);

/// Inverse of dual_exponent: recovers p from (q, d).
double primal_exponent(double q, int d);

/// Builds and validates an ExponentConfig. The error message names the
/// violated constraint.
ExponentConfig make_config(double p, int d);

Admissibility check_admissible(double r, double q, int d);

/// The diagonal Strichartz exponent q = r = 2(d+1)/(d-1), i.e. q(2, d).
double diagonal_exponent(int d);

}  // namespace gausscrit
