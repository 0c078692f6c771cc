#include "gausscrit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "gausscrit/error.hpp"

namespace gausscrit {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.14887433898163121088482600112972,
    0.0};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.03255816230796472747881897245939,
    0.05475589657435199603138130024458,  0.07503967481091995276704314091619,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

constexpr int kEvalsPerRule = 21;

struct Segment {
    double a = 0.0;
    double b = 0.0;
    cplx value;
    double err = 0.0;
};

Segment kronrod21(const Integrand& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    std::array<cplx, 10> lower{};
    std::array<cplx, 10> upper{};
    const cplx fc = f(centre);
    cplx res_k = kKronrodWeights[10] * fc;
    cplx res_g{0.0, 0.0};
    double res_abs = kKronrodWeights[10] * std::abs(fc);
    bool finite = std::isfinite(fc.real()) && std::isfinite(fc.imag());

    for (int j = 0; j < 10; ++j) {
        const double dx = half * kKronrodNodes[j];
        const cplx f1 = f(centre - dx);
        const cplx f2 = f(centre + dx);
        finite = finite && std::isfinite(f1.real()) && std::isfinite(f1.imag()) &&
                 std::isfinite(f2.real()) && std::isfinite(f2.imag());
        lower[j] = f1;
        upper[j] = f2;
        res_k += kKronrodWeights[j] * (f1 + f2);
        res_abs += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) res_g += kGaussWeights[j / 2] * (f1 + f2);
    }

    Segment s{a, b, res_k * half, 0.0};
    if (!finite) {
        s.value = {0.0, 0.0};
        s.err = std::numeric_limits<double>::infinity();
        return s;
    }

    const cplx mean = 0.5 * res_k;
    double res_asc = kKronrodWeights[10] * std::abs(fc - mean);
    for (int j = 0; j < 10; ++j) {
        res_asc += kKronrodWeights[j] * (std::abs(lower[j] - mean) + std::abs(upper[j] - mean));
    }
    const double width = std::abs(half);
    res_asc *= width;
    res_abs *= width;

    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * res_abs);
    }
    s.err = err;
    return s;
}

struct WorstFirst {
    bool operator()(const Segment& x, const Segment& y) const {
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;
    }
};

}  // namespace

double IntegralResult::target(const QuadSpec& spec, cplx value) {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

IntegralResult integrate_interval(const Integrand& f, double lo, double hi, const QuadSpec& spec,
                                  const std::vector<double>& breakpoints) {
    if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
        throw DomainError("quadrature tolerances must be positive");
    }
    std::vector<double> cuts{lo};
    for (double b : breakpoints) {
        if (b > lo && b < hi) cuts.push_back(b);
    }
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    std::vector<Segment> heap;
    std::vector<Segment> frozen;
    IntegralResult out;
    std::complex<long double> total{0.0L, 0.0L};
    long double total_err = 0.0L;

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s = kronrod21(f, cuts[i], cuts[i + 1]);
        out.evaluations += kEvalsPerRule;
        total += std::complex<long double>(s.value);
        total_err += s.err;
        heap.push_back(s);
    }
    std::make_heap(heap.begin(), heap.end(), WorstFirst{});

    auto done = [&] {
        const cplx v(static_cast<double>(total.real()), static_cast<double>(total.imag()));
        return static_cast<double>(total_err) <= IntegralResult::target(spec, v);
    };

    while (!heap.empty() && !done()) {
        if (out.evaluations + 2 * kEvalsPerRule > spec.max_evaluations) break;

        std::pop_heap(heap.begin(), heap.end(), WorstFirst{});
        const Segment worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        const double scale = std::max(std::abs(worst.a), std::abs(worst.b));
        if (!(mid > worst.a && mid < worst.b) ||
            worst.b - worst.a <= 64.0 * std::numeric_limits<double>::epsilon() * scale) {
            frozen.push_back(worst);
            continue;
        }

        const Segment left = kronrod21(f, worst.a, mid);
        const Segment right = kronrod21(f, mid, worst.b);
        out.evaluations += 2 * kEvalsPerRule;

        total += std::complex<long double>(left.value) + std::complex<long double>(right.value) -
                 std::complex<long double>(worst.value);
        if (std::isfinite(worst.err)) {
            total_err += static_cast<long double>(left.err) + right.err - worst.err;
        } else {
            // rebuild: the parent carried an infinite error
            total_err = 0.0L;
            for (const auto& s : heap) total_err += s.err;
            for (const auto& s : frozen) total_err += s.err;
            total_err += static_cast<long double>(left.err) + right.err;
        }
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), WorstFirst{});
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), WorstFirst{});
    }

    // Final value: re-sum in positional order.
    std::vector<Segment> all = std::move(heap);
    all.insert(all.end(), frozen.begin(), frozen.end());
    std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    std::complex<long double> sum{0.0L, 0.0L};
    long double err = 0.0L;
    for (const auto& s : all) {
        sum += std::complex<long double>(s.value);
        err += s.err;
    }
    out.value = cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    out.err_estimate = static_cast<double>(err);
    out.converged = std::isfinite(out.err_estimate) &&
                    out.err_estimate <= IntegralResult::target(spec, out.value);
    return out;
}

int regularizing_power(double excess) {
    if (!(excess > 0.0)) throw DomainError("regularizing power needs a positive excess");
    const double m = std::ceil(2.0 / excess - 1e-12);
    return static_cast<int>(std::clamp(m, 1.0, 64.0));
}

IntegralResult integrate_real_line(const Integrand& f, const QuadSpec& spec) {
    const double s = spec.decay_exponent;
    if (!(s > 1.0)) throw DomainError("real-line quadrature needs a decay exponent s > 1");
    const int m = regularizing_power(s - 1.0);
    const double half_pi = std::numbers::pi / 2.0;

    auto mapped = [&f, m, half_pi](double w) -> cplx {
        const double wm = std::pow(w, m);
        const double u = half_pi * wm;
        if (!(u > 0.0)) return {0.0, 0.0};
        const double sin_u = std::sin(u);
        const double t = std::cos(u) / sin_u;
        if (!std::isfinite(t)) return {0.0, 0.0};
        const double jac = half_pi * m * (m == 1 ? 1.0 : wm / w) / (sin_u * sin_u);
        if (!std::isfinite(jac)) return {0.0, 0.0};
        return (f(t) + f(-t)) * jac;
    };
    IntegralResult r = integrate_interval(mapped, 0.0, 1.0, spec);
    r.evaluations *= 2;
    return r;
}

IntegralResult integrate_half_line(const Integrand& g, double gamma, const QuadSpec& spec) {
    if (!(gamma > -1.0)) throw DomainError("half-line quadrature needs gamma > -1");
    const double sigma = spec.decay_exponent;
    if (!(sigma > 1.0)) throw DomainError("half-line quadrature needs a decay exponent > 1");
    const int m_near = regularizing_power(1.0 + gamma);
    const int m_far = regularizing_power(sigma - 1.0);
    const double near_exp = m_near * (1.0 + gamma) - 1.0;

    // x in [0,1]: y = x^m_near; x in [1,2]: y = (2-x)^{-m_far}.
    auto mapped = [&g, gamma, m_near, m_far, near_exp](double x) -> cplx {
        if (x <= 1.0) {
            if (!(x > 0.0)) return {0.0, 0.0};
            const double y = std::pow(x, m_near);
            return static_cast<double>(m_near) * std::pow(x, near_exp) * g(y);
        }
        const double w = 2.0 - x;
        if (!(w > 0.0)) return {0.0, 0.0};
        const double y = std::pow(w, -m_far);
        if (!std::isfinite(y)) return {0.0, 0.0};
        const cplx val = std::pow(y, gamma) * g(y) * (m_far * std::pow(w, -m_far - 1.0));
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) return {0.0, 0.0};
        return val;
    };
    return integrate_interval(mapped, 0.0, 2.0, spec, {1.0});
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace gausscrit
