#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gausscrit/error.hpp"
#include "gausscrit/gaussian_ext.hpp"

using namespace gausscrit;

namespace {

constexpr double kPi = std::numbers::pi;

RealVector vec(std::initializer_list<double> xs) {
    RealVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

bool params_close(const GaussianParams& a, const GaussianParams& b, double tol) {
    return std::abs(a.c - b.c) <= tol * std::max(1.0, std::abs(b.c)) && std::abs(a.z - b.z) <= tol &&
           (a.y0 - b.y0).norm() <= tol && (a.v - b.v).norm() <= tol;
}

}  // namespace

TEST_CASE("standard Gaussian") {
    const GaussianParams g = GaussianParams::standard(3);
    CHECK(g.c == cplx(1.0));
    CHECK(g.z == cplx(0.5));
    CHECK(g.y0.size() == 2);
    CHECK(g.y0.isZero());
    CHECK(g.v.isZero());
    CHECK(g(vec({1.0, 2.0})).real() == doctest::Approx(std::exp(-2.5)));
}

TEST_CASE("validation") {
    GaussianParams g = GaussianParams::standard(2);
    g.z = cplx(-0.1, 0.0);
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = GaussianParams::standard(2);
    g.c = 0.0;
    CHECK_THROWS_AS(g.validate(), DomainError);
    SymmetryElement s = SymmetryElement::identity(2);
    s.A(0, 1) = 0.3;
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("extension_closed examples") {
    CHECK(std::abs(extension_closed(vec({0.0, 0.0}), 0.0, 3) - 2.0 * kPi) < 1e-14);
    CHECK(std::abs(extension_closed(vec({0.0}), 1.0, 2)) ==
          doctest::Approx(std::sqrt(2.0 * kPi) * std::pow(2.0, -0.25)).epsilon(1e-15));
    for (double t : {-2.0, 0.0, 0.7}) {
        const RealVector x = vec({0.4, -1.3});
        CHECK(extension_closed(x, t, 3) == extension_closed(-x, t, 3));
    }
}

TEST_CASE("extension_direct examples") {
    const QuadSpec spec;
    const IntegralResult a = extension_direct(vec({0.0}), 0.0, 2, spec);
    CHECK(std::abs(a.value - std::sqrt(2.0 * kPi)) < 1e-10);
    CHECK(std::abs(extension_direct(vec({1.0}), 0.5, 2, spec).value - extension_closed(vec({1.0}), 0.5, 2)) < 1e-8);
    CHECK(std::abs(extension_direct(vec({1.0, 1.0}), 2.0, 3, spec).value -
                   extension_closed(vec({1.0, 1.0}), 2.0, 3)) < 1e-8);
    CHECK_THROWS_AS(extension_direct(vec({0, 0, 0, 0}), 0.0, 5, spec), DomainError);
}

TEST_CASE("oracle agreement on a 5x5 grid") {
    const QuadSpec spec;
    const double xs[] = {-2.0, -0.7, 0.0, 0.9, 2.5};
    const double ts[] = {-3.0, -0.5, 0.0, 1.0, 4.0};
    for (double x : xs) {
        for (double t : ts) {
            CHECK(std::abs(extension_direct(vec({x}), t, 2, spec).value - extension_closed(vec({x}), t, 2)) < 1e-8);
            const RealVector x3 = vec({x, 0.5 * x - 0.3});
            CHECK(std::abs(extension_direct(x3, t, 3, spec).value - extension_closed(x3, t, 3)) < 1e-8);
        }
    }
}

TEST_CASE("modulus law") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const int d = 2 + i % 4;
        RealVector x(d - 1);
        for (int k = 0; k < d - 1; ++k) x[k] = u(rng);
        const double t = 3.0 * u(rng);
        const double expected = std::pow(2.0 * kPi, (d - 1) / 2.0) * std::pow(1.0 + t * t, -(d - 1) / 4.0) *
                                std::exp(-x.squaredNorm() / (2.0 * (1.0 + t * t)));
        CHECK(std::abs(std::abs(extension_closed(x, t, d)) / expected - 1.0) < 1e-13);
    }
}

TEST_CASE("kernel power") {
    const ExponentConfig cfg = make_config(1.5, 3);
    const double origin = std::pow(2.0 * kPi, (cfg.q - 1.0) * (cfg.d - 1) / 2.0);
    CHECK(std::abs(kernel_power(vec({0.0, 0.0}), 0.0, cfg) - origin) < 1e-12 * origin);
    const RealVector x = vec({0.3, -0.4});
    CHECK(std::abs(kernel_power(x, 0.0, cfg) - origin * std::exp(-0.25 * (cfg.q - 1.0) / 2.0)) < 1e-12 * origin);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (double p : {1.25, 1.5, 2.0, 2.3}) {
        for (int d : {2, 3, 4}) {
            const ExponentConfig c = make_config(p, d);
            for (int i = 0; i < 20; ++i) {
                RealVector y(d - 1);
                for (int k = 0; k < d - 1; ++k) y[k] = u(rng);
                const double t = 4.0 * u(rng);
                const cplx e = extension_closed(y, t, d);
                const cplx expect = std::pow(std::abs(e), c.q - 2.0) * e;
                CHECK(std::abs(kernel_power(y, t, c) - expect) <= 1e-12 * std::abs(expect));
            }
        }
    }
}

TEST_CASE("slice norm power") {
    for (double t : {0.0, 1.0, -3.0}) CHECK(slice_norm_power(t, 4.0, 4.0, 3) == doctest::Approx(1.0));
    const double q = 4.0, r = 8.0;
    const int d = 2;
    const double at0 = std::pow(2.0 * kPi, (r - q) * (d - 1) * (1.0 + 1.0 / q) / 2.0) *
                       std::pow(q, -(d - 1) * (r - q) / (2.0 * q));
    CHECK(slice_norm_power(0.0, q, r, d) == doctest::Approx(at0).epsilon(1e-14));

    // r - q = q: the value is the plain integral of |u(., 1)|^4
    const IntegralResult direct = integrate_real_line(
        [](double x) { return cplx(std::pow(std::abs(extension_closed(vec({x}), 1.0, 2)), 4.0)); },
        QuadSpec{}.with_decay(50.0));
    CHECK(std::abs(direct.value.real() - slice_norm_power(1.0, q, r, d)) < 1e-8);
}

TEST_CASE("lp norm in closed form") {
    const GaussianParams g = GaussianParams::standard(2);
    CHECK(lp_norm_power(g, 2.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-15));
    GaussianParams h = g;
    h.v[0] = cplx(0.4, 0.9);
    h.y0[0] = 0.3;
    h.c = cplx(0.5, 1.0);
    const IntegralResult direct = integrate_real_line(
        [&h](double y) { return cplx(std::pow(std::abs(h(vec({y}))), 1.5)); }, QuadSpec{}.with_decay(50.0));
    CHECK(lp_norm_power(h, 1.5) == doctest::Approx(direct.value.real()).epsilon(1e-11));
}

TEST_CASE("apply_symmetry examples") {
    std::mt19937_64 rng(2);
    GaussianParams g = GaussianParams::standard(3);
    g.c = cplx(0.7, -0.2);
    g.y0 = vec({0.1, 0.4});
    g.v = ComplexVector::Zero(2);
    g.v[0] = cplx(0.2, 0.5);
    CHECK(params_close(apply_symmetry(g, SymmetryElement::identity(2)), g, 1e-15));

    SymmetryElement mod = SymmetryElement::identity(2);
    mod.w = vec({0.3, -0.8});
    GaussianParams expected = g;
    expected.v += cplx(0.0, 1.0) * mod.w.cast<cplx>();
    CHECK(params_close(apply_symmetry(g, mod), expected, 1e-15));

    SymmetryElement dil = SymmetryElement::identity(2);
    dil.r = 1.7;
    const GaussianParams dilated = apply_symmetry(GaussianParams::standard(3), dil);
    CHECK(dilated.z.real() == doctest::Approx(1.7 * 1.7 / 2.0));
    CHECK(dilated.y0.isZero());
    CHECK(dilated.v.isZero());
}

TEST_CASE("apply_symmetry matches its defining formula pointwise") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const int n = 1 + i % 3;
        GaussianParams g = GaussianParams::standard(n + 1);
        g.c = cplx(u(rng), u(rng)) + 1.5;
        g.z = cplx(0.8 + 0.5 * u(rng), 0.3 * u(rng));
        for (int k = 0; k < n; ++k) {
            g.y0[k] = u(rng);
            g.v[k] = cplx(u(rng), u(rng));
        }
        const SymmetryElement s = random_symmetry(n, rng);
        const GaussianParams h = apply_symmetry(g, s);
        RealVector y(n);
        for (int k = 0; k < n; ++k) y[k] = u(rng);
        const cplx direct = s.rho * g(s.r * (s.A * y) + s.v) * std::exp(cplx(0.0, y.dot(s.w)));
        CHECK(std::abs(h(y) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)));
    }
}

TEST_CASE("group law") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + i % 3;
        const SymmetryElement s1 = random_symmetry(n, rng);
        const SymmetryElement s2 = random_symmetry(n, rng);
        GaussianParams g = apply_symmetry(GaussianParams::standard(n + 1), random_symmetry(n, rng));
        const GaussianParams lhs = apply_symmetry(apply_symmetry(g, s1), s2);
        const GaussianParams rhs = apply_symmetry(g, compose(s2, s1));
        CHECK(params_close(lhs, rhs, 1e-12));
    }
}

TEST_CASE("random symmetries are orthogonal") {
    std::mt19937_64 rng(8);
    for (int n = 1; n <= 5; ++n) {
        const SymmetryElement s = random_symmetry(n, rng);
        CHECK_NOTHROW(s.validate());
        CHECK((s.A.transpose() * s.A - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-12);
        CHECK(s.r >= 0.5);
        CHECK(s.r <= 2.0);
    }
}

TEST_CASE("orbit of the standard Gaussian") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 50; ++i) {
        const int n = 1 + i % 3;
        const GaussianParams g = apply_symmetry(GaussianParams::standard(n + 1), random_symmetry(n, rng));
        const SymmetryElement s = symmetry_from_standard(g);
        CHECK(params_close(apply_symmetry(GaussianParams::standard(n + 1), s), g, 1e-12));
    }
    GaussianParams chirped = GaussianParams::standard(2);
    chirped.z = cplx(0.5, 0.2);
    CHECK_THROWS_AS(symmetry_from_standard(chirped), DomainError);
}

TEST_CASE("transported extension agrees with direct quadrature") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const QuadSpec spec;
    for (int i = 0; i < 30; ++i) {
        const int n = 1 + i % 2;
        GaussianParams g = apply_symmetry(GaussianParams::standard(n + 1), random_symmetry(n, rng));
        if (i % 3 == 0) g.z += cplx(0.0, 0.4 * u(rng));  // chirped, outside the orbit
        RealVector x(n);
        for (int k = 0; k < n; ++k) x[k] = u(rng);
        const double t = u(rng);
        const cplx closed = extension(g, x, t);
        const IntegralResult direct = extension_direct(g, x, t, spec);
        CHECK(std::abs(closed - direct.value) <= 1e-8 * std::max(1.0, std::abs(direct.value)));
    }
}

TEST_CASE("evaluator matches the per-Gaussian extension") {
    std::mt19937_64 rng(13);
    GaussianSum sum;
    for (int i = 0; i < 3; ++i) sum.push_back(apply_symmetry(GaussianParams::standard(3), random_symmetry(2, rng)));
    sum[1].z += cplx(0.0, 0.3);
    const ExtensionEvaluator eval(sum);
    const RealVector x = vec({0.2, -0.6});
    for (double t : {-1.0, 0.0, 2.5}) CHECK(std::abs(eval(x, t) - extension(sum, x, t)) < 1e-13);
    CHECK_THROWS_AS(ExtensionEvaluator(GaussianSum{}), DomainError);
}

TEST_CASE("packet track locates the modulus peak") {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 20; ++i) {
        GaussianParams g = apply_symmetry(GaussianParams::standard(2), random_symmetry(1, rng));
        if (i % 2) g.z += cplx(0.0, 0.25);
        for (double t : {-2.0, 0.0, 1.5}) {
            const PacketTrack track = packet_track(g, t);
            const double peak = std::abs(extension(g, track.centre, t));
            RealVector off = track.centre;
            off[0] += track.width;
            CHECK(std::abs(extension(g, off, t)) == doctest::Approx(peak * std::exp(-0.5)).epsilon(1e-10));
            off[0] = track.centre[0] - 0.01 * track.width;
            CHECK(std::abs(extension(g, off, t)) < peak);
        }
    }
}
