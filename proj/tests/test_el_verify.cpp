#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gausscrit/el_verify.hpp"
#include "gausscrit/error.hpp"

using namespace gausscrit;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> integer_grid() { return linear_grid(0.0, 8.0, 9); }

}  // namespace

TEST_CASE("a grids") {
    const auto g = default_a_grid();
    REQUIRE(g.size() == 21);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 8.0);
    CHECK(g[1] == doctest::Approx(0.4));
    CHECK(linear_grid(1.0, 1.0, 1) == std::vector<double>{1.0});
    CHECK_THROWS_AS(linear_grid(0.0, 8.0, 0), DomainError);
    CHECK_THROWS_AS(linear_grid(-1.0, 8.0, 5), DomainError);
    CHECK_THROWS_AS(el_profile(make_config(2.0, 3), {}, {}), DomainError);
    CHECK_THROWS_AS(el_profile(make_config(2.0, 3), {0.0, 11.0}, {}), DomainError);
}

TEST_CASE("el_profile examples") {
    const ProfileReport crit = el_profile(make_config(2.0, 3), integer_grid());
    for (double r : crit.R_values) CHECK(std::abs(r - kPi / 2.0) < 1e-8);
    CHECK(crit.max_rel_deviation < 1e-8);
    CHECK(crit.verdict == Verdict::Critical);
    CHECK(crit.cfg.has_value());

    CHECK(el_profile(make_config(1.5, 2), integer_grid()).verdict == Verdict::NotCritical);
    CHECK(el_profile(make_config(2.5, 2), integer_grid()).verdict == Verdict::NotCritical);
}

TEST_CASE("R values are real") {
    for (double p : {1.5, 2.0, 2.5}) {
        const ProfileReport rep = el_profile(make_config(p, 2), default_a_grid());
        double scale = 0.0;
        for (double r : rep.R_values) scale = std::max(scale, std::abs(r));
        for (double im : rep.R_imag) CHECK(std::abs(im) <= 1e-10 * scale);
        CHECK(rep.diagnostics.empty());
    }
}

TEST_CASE("verdict soundness") {
    const auto grid = linear_grid(0.0, 8.0, 20);
    for (int d = 2; d <= 6; ++d) {
        const ProfileReport rep = el_profile(make_config(2.0, d), grid);
        CHECK(rep.max_rel_deviation < 1e-8);
        CHECK(rep.verdict == Verdict::Critical);
        CHECK(std::abs(rep.fitted_constant / residue_value_p2(0.0, d) - 1.0) < 1e-8);
    }
    for (int d : {2, 3}) {
        for (double p : {1.25, 1.5, 1.75, 2.25, 2.5}) {
            const ProfileReport rep = el_profile(make_config(p, d), grid);
            CHECK(rep.max_rel_deviation > 1e-3);
            CHECK(rep.verdict == Verdict::NotCritical);
        }
    }
}

TEST_CASE("verdict thresholds") {
    ProfileOptions strict;
    strict.thresholds.critical = 1e-20;
    const ProfileReport rep = el_profile(make_config(2.0, 3), integer_grid(), strict);
    CHECK(rep.max_rel_deviation > 1e-20);
    CHECK(rep.max_rel_deviation < 1e-4);
    CHECK(rep.verdict == Verdict::Inconclusive);

    ProfileOptions loose;
    loose.thresholds.critical = 2.0;
    loose.thresholds.not_critical = 3.0;
    CHECK(el_profile(make_config(1.5, 2), integer_grid(), loose).verdict == Verdict::Critical);
}

TEST_CASE("non-convergence is inconclusive with diagnostics") {
    ProfileOptions starved;
    starved.spec.max_evaluations = 30;
    const ProfileReport rep = el_profile(make_config(2.0, 3), integer_grid(), starved);
    CHECK_FALSE(rep.all_converged);
    CHECK(rep.verdict == Verdict::Inconclusive);
    CHECK_FALSE(rep.diagnostics.empty());
}

TEST_CASE("parallel sweeps are deterministic") {
    ProfileOptions one;
    ProfileOptions four;
    four.threads = 4;
    const ProfileReport a = el_profile(make_config(1.5, 2), default_a_grid(), one);
    const ProfileReport b = el_profile(make_config(1.5, 2), default_a_grid(), four);
    CHECK(a.R_values == b.R_values);
    CHECK(a.err_estimates == b.err_estimates);
}

TEST_CASE("mixed profile examples") {
    const ProfileReport a = mixed_el_profile({3, 4.0, 4.0}, default_a_grid());
    CHECK(a.verdict == Verdict::Critical);
    CHECK(std::abs(a.fitted_constant - kPi / 2.0) < 1e-8 * kPi / 2.0);
    CHECK(a.pair.has_value());
    CHECK(mixed_el_profile({2, 4.0, 8.0}, default_a_grid()).verdict == Verdict::Critical);
    CHECK_THROWS_AS(mixed_el_profile({2, 4.0, 7.9}, default_a_grid()), DomainError);
}

TEST_CASE("diagonal coherence") {
    for (int d = 2; d <= 5; ++d) {
        const double q = diagonal_exponent(d);
        const ProfileReport mixed = mixed_el_profile({d, q, q}, default_a_grid());
        const ProfileReport plain = el_profile(make_config(2.0, d), default_a_grid());
        for (std::size_t i = 0; i < mixed.R_values.size(); ++i) {
            CHECK(std::abs(mixed.R_values[i] - plain.R_values[i]) <= 1e-10 * std::abs(plain.R_values[i]));
        }
    }
}

TEST_CASE("series consistency examples") {
    const SeriesReport a = series_consistency(make_config(1.5, 2), 12);
    CHECK_FALSE(a.consistent);
    CHECK(a.ratio_target == doctest::Approx(1.0 / 14.0));
    REQUIRE(a.first_violation.has_value());
    CHECK(a.alternating_from_k0);
    for (int k = 2; k < 12; ++k) CHECK(a.signs[k] * a.signs[k + 1] == -1);
    CHECK(a.ks.size() == a.values.size());
    CHECK(a.values.size() == a.signs.size());
    CHECK(a.values.size() == a.residuals.size());
    CHECK(a.all_converged);

    const SeriesReport b = series_consistency(make_config(1.5, 3), 12);
    CHECK_FALSE(b.consistent);
    CHECK(b.c_forced_zero);
    CHECK(b.c_fit == 0.0);
    CHECK(std::abs(b.values[1] - kPi / 36.0) < 1e-12);
    for (int k = 2; k <= 12; ++k) CHECK(b.signs[k] == 0);

    const ExponentConfig c = make_config(1.5, 2);
    CHECK_THROWS_AS(series_consistency(c, c.k0), DomainError);
    CHECK_THROWS_AS(series_consistency(make_config(2.0, 3), 12), DomainError);
}

TEST_CASE("every subcritical configuration is inconsistent") {
    for (int d : {2, 3, 4}) {
        for (double p : {1.2, 1.5, 1.8}) {
            const ExponentConfig cfg = make_config(p, d);
            CHECK_FALSE(series_consistency(cfg, cfg.k0 + 4).consistent);
        }
    }
}

TEST_CASE("supercritical series") {
    const SeriesReport rep = series_consistency(make_config(2.5, 2), 6);
    CHECK(rep.ratio_target == 0.0);
    CHECK_FALSE(rep.consistent);
    CHECK(rep.values[0] > 0.0);
    CHECK(rep.values[2] > 0.0);
}
