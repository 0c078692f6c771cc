#include "gausscrit/complex_branch.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "gausscrit/error.hpp"

namespace gausscrit {

BranchFactor BranchFactor::q_minus_1_minus_it(double q) {
    if (!(q > 2.0)) throw DomainError("factor (q-1-it) requires q > 2");
    return {FactorKind::QMinus1MinusIt, q};
}

cplx factor_base(const BranchFactor& f, double t) {
    switch (f.kind) {
        case FactorKind::OnePlusIt: return {1.0, t};
        case FactorKind::OneMinusIt: return {1.0, -t};
        case FactorKind::QMinus1MinusIt: return {f.q - 1.0, -t};
    }
    return {};
}

cplx branch_log(const BranchFactor& f, double t) {
    const cplx base = factor_base(f, t);
    // Re(base) > 0 on the real line, so the principal branch is the fixed one.
    assert(base.real() > 0.0);
    return std::log(base);
}

cplx branch_power(const BranchFactor& f, double t, double gamma) {
    if (gamma == 0.0) return {1.0, 0.0};
    return std::exp(gamma * branch_log(f, t));
}

double shifted_base(const BranchFactor& f, double y) {
    if (!(y >= 0.0)) throw DomainError("shifted ray parameter must satisfy y >= 0");
    switch (f.kind) {
        case FactorKind::OnePlusIt:
            throw DomainError("(1+it) lies on its branch cut along t = i + iy");
        case FactorKind::OneMinusIt: return 2.0 + y;
        case FactorKind::QMinus1MinusIt: return f.q + y;
    }
    return 0.0;
}

double sin_pi(double x) {
    const double n = std::round(x);
    const double frac = x - n;
    if (frac == 0.0) return 0.0;
    const double s = std::sin(std::numbers::pi * frac);
    return std::fmod(std::abs(n), 2.0) == 0.0 ? s : -s;
}

}  // namespace gausscrit
