#include <doctest.h>

#include <cmath>
#include <random>

#include "gausscrit/complex_branch.hpp"
#include "gausscrit/error.hpp"

using namespace gausscrit;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("branch power examples") {
    CHECK(branch_power(BranchFactor::one_plus_it(), 0.0, -3.7) == cplx(1.0, 0.0));
    const cplx root3 = branch_power(BranchFactor::q_minus_1_minus_it(4.0), 0.0, 0.5);
    CHECK(root3.real() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK(root3.imag() == 0.0);
    const cplx a = branch_power(BranchFactor::one_minus_it(), 2.0, 0.25);
    const cplx b = branch_power(BranchFactor::one_plus_it(), 2.0, 0.25);
    CHECK(rel(a, std::conj(b)) < 1e-15);
}

TEST_CASE("logarithms at t = 0") {
    CHECK(branch_log(BranchFactor::one_plus_it(), 0.0) == cplx(0.0, 0.0));
    CHECK(branch_log(BranchFactor::one_minus_it(), 0.0) == cplx(0.0, 0.0));
    CHECK(branch_log(BranchFactor::q_minus_1_minus_it(5.0), 0.0).real() == doctest::Approx(std::log(4.0)));
}

TEST_CASE("q factor needs q > 2") {
    CHECK_THROWS_AS(BranchFactor::q_minus_1_minus_it(2.0), DomainError);
    CHECK_THROWS_AS(BranchFactor::q_minus_1_minus_it(1.5), DomainError);
}

TEST_CASE("shifted bases") {
    CHECK(shifted_base(BranchFactor::one_minus_it(), 0.0) == 2.0);
    CHECK(shifted_base(BranchFactor::q_minus_1_minus_it(9.0), 1.0) == 10.0);
    CHECK_THROWS_AS(shifted_base(BranchFactor::one_plus_it(), 0.5), DomainError);
    CHECK_THROWS_AS(shifted_base(BranchFactor::one_minus_it(), -0.1), DomainError);
}

TEST_CASE("shifted bases agree with the analytic continuation of the base") {
    // (1 - i t) and (q - 1 - i t) at t = i + i y
    for (double y : {0.0, 0.3, 2.0, 17.5}) {
        const cplx t(0.0, 1.0 + y);
        const cplx one_minus = 1.0 - cplx(0.0, 1.0) * t;
        const cplx q_minus = 6.0 - 1.0 - cplx(0.0, 1.0) * t;
        CHECK(std::abs(one_minus - shifted_base(BranchFactor::one_minus_it(), y)) < 1e-14);
        CHECK(std::abs(q_minus - shifted_base(BranchFactor::q_minus_1_minus_it(6.0), y)) < 1e-14);
    }
}

TEST_CASE("sin_pi is exactly zero at integers") {
    for (int k = -6; k <= 6; ++k) CHECK(sin_pi(static_cast<double>(k)) == 0.0);
    CHECK(sin_pi(0.5) == doctest::Approx(1.0));
    CHECK(sin_pi(0.25) == doctest::Approx(std::sqrt(0.5)));
    CHECK(sin_pi(1.25) == doctest::Approx(-std::sqrt(0.5)));
}

TEST_CASE("random properties of branch powers") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ts(-50.0, 50.0);
    std::uniform_real_distribution<double> gs(-4.0, 4.0);
    std::uniform_real_distribution<double> qs(2.05, 12.0);
    for (int i = 0; i < 2000; ++i) {
        const double t = ts(rng);
        const double g1 = gs(rng);
        const double g2 = gs(rng);
        const BranchFactor plus = BranchFactor::one_plus_it();
        const BranchFactor minus = BranchFactor::one_minus_it();
        const BranchFactor qf = BranchFactor::q_minus_1_minus_it(qs(rng));

        // conjugate symmetry
        CHECK(rel(branch_power(minus, t, g1), std::conj(branch_power(plus, t, g1))) < 1e-15);
        // modulus
        const double mod = std::abs(branch_power(plus, t, g1));
        CHECK(std::abs(mod / std::pow(1.0 + t * t, g1 / 2.0) - 1.0) < 1e-14);
        // multiplicativity in gamma
        for (const BranchFactor& f : {plus, minus, qf}) {
            CHECK(rel(branch_power(f, t, g1 + g2), branch_power(f, t, g1) * branch_power(f, t, g2)) < 1e-13);
        }
        // continuity across t = 0 on the fixed branch: arguments stay in (-pi/2, pi/2)
        CHECK(std::abs(branch_log(plus, t).imag()) < M_PI / 2);
        CHECK(std::abs(branch_log(qf, t).imag()) < M_PI / 2);
    }
}

TEST_CASE("kernel modulus identity") {
    // |(1+it)^{-(d-1)/2}|^{q-2} = (1+t^2)^{-(d-1)(q-2)/4}
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ts(-30.0, 30.0);
    for (int d = 2; d <= 6; ++d) {
        for (double q : {3.0, 4.5, 6.0, 9.0}) {
            const double t = ts(rng);
            const double lhs = std::pow(std::abs(branch_power(BranchFactor::one_plus_it(), t, -(d - 1) / 2.0)), q - 2.0);
            const double rhs = std::pow(1.0 + t * t, -(d - 1.0) * (q - 2.0) / 4.0);
            CHECK(std::abs(lhs / rhs - 1.0) < 1e-13);
        }
    }
}
