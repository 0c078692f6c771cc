#pragma once

#include <complex>

namespace gausscrit {

using cplx = std::complex<double>;

enum class FactorKind { OnePlusIt, OneMinusIt, QMinus1MinusIt };

/// One of the three analytic factors (1+it), (1-it), (q-1-it). The logarithm
/// of (1+it) is cut along i[1, inf); the other two along -i[1, inf). On the
/// real line none of the cuts is met, so the branch agrees with the
/// principal logarithm there.
struct BranchFactor {
    FactorKind kind = FactorKind::OnePlusIt;
    double q = 0.0;  // only meaningful for QMinus1MinusIt, requires q > 2

    static BranchFactor one_plus_it() { return {FactorKind::OnePlusIt, 0.0}; }
    static BranchFactor one_minus_it() { return {FactorKind::OneMinusIt, 0.0}; }
    static BranchFactor q_minus_1_minus_it(double q);
};

/// Base of the factor at real t.
cplx factor_base(const BranchFactor& f, double t);

/// Branch logarithm of the factor at real t.
cplx branch_log(const BranchFactor& f, double t);

/// exp(gamma * log(base)) on the fixed branch, for real t.
cplx branch_power(const BranchFactor& f, double t, double gamma);

/// Real positive base of the factor on the shifted ray t = i + iy, y >= 0:
/// 2 + y for (1-it), q + y for (q-1-it). The (1+it) factor sits on its own
/// cut there and is rejected with DomainError.
double shifted_base(const BranchFactor& f, double y);

/// sin(pi x), exact zero at integers.
double sin_pi(double x);

}  // namespace gausscrit
