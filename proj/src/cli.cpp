#include "gausscrit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "gausscrit/contour.hpp"
#include "gausscrit/el_verify.hpp"
#include "gausscrit/error.hpp"
#include "gausscrit/exponents.hpp"
#include "gausscrit/mixed_norm.hpp"

namespace gausscrit::cli {

namespace {

using Json = nlohmann::ordered_json;

const char* const kCsvHelp = R"(CSV schemas (--format csv):
  verify-el, verify-mixed   a,R,R_imag,err_estimate
  series                    k,value,err_estimate,sign,residual
  contour-check             case,gamma,exact,real_line,contour,abs_diff
  variation                 case,z,remainder
  functional                sample,value,rel_diff
  derivative                direction,real,imag,relative_magnitude
JSON (the default) is the schema of record.
Exit codes: 0 ok, 2 invalid configuration, 3 quadrature non-convergence,
4 assertion failure under --assert.)";

struct Options {
    std::string command;
    std::optional<int> d;
    std::optional<double> p;
    std::optional<double> q;
    std::optional<double> r;
    double a_min = 0.0;
    double a_max = 8.0;
    int a_steps = 21;
    int kmax = 12;
    std::optional<double> tol;
    std::string format = "json";
    bool assert_mode = false;
    std::optional<std::string> expect;
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::optional<std::string> out_path;
};

/// Numbers with 17 significant digits; non-finite values become null.
void write_json(const Json& j, std::ostream& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string pad_close(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out << ",\n";
                first = false;
                out << pad << Json(key).dump() << ": ";
                write_json(value, out, indent, depth + 1);
            }
            out << '\n' << pad_close << '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out << "[]";
                return;
            }
            out << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) out << ",\n";
                out << pad;
                write_json(j[i], out, indent, depth + 1);
            }
            out << '\n' << pad_close << ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out << "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << buf;
            return;
        }
        default:
            out << j.dump();
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& out) const {
        for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << '\n';
        }
    }
};

enum class Status { Pass, Fail, Inconclusive };

const char* status_name(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct Outcome {
    Json config = Json::object();
    Json tolerances = Json::object();
    Json results = Json::object();
    std::vector<std::pair<std::string, Status>> verdicts;
    CsvTable csv;
    bool converged = true;
};

template <typename T>
T require(const std::optional<T>& v, const char* flag) {
    if (!v) throw DomainError(std::string("missing required option ") + flag);
    return *v;
}

double tol_or(const Options& o, double fallback) {
    const double t = o.tol.value_or(fallback);
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("--tol must be positive");
    return t;
}

Json json_of(const std::vector<double>& v) { return Json(v); }

Json json_of(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json config_json(const ExponentConfig& cfg) {
    return Json{{"d", cfg.d},    {"p", cfg.p},       {"q", cfg.q},
                {"beta", cfg.beta}, {"k0", cfg.k0}, {"case", to_string(cfg.kind)}};
}

Json gaussian_json(const GaussianParams& g) {
    Json y0 = Json::array();
    Json v = Json::array();
    for (int i = 0; i < g.base_dim(); ++i) {
        y0.push_back(g.y0[i]);
        v.push_back(json_of(g.v[i]));
    }
    return Json{{"c", json_of(g.c)}, {"z", json_of(g.z)}, {"y0", y0}, {"v", v}};
}

/// Expectation string to a verdict status. `critical_observed` empty means
/// the evidence was inconclusive.
Status expectation_status(const std::string& expect, std::optional<bool> critical_observed) {
    if (!critical_observed) return Status::Inconclusive;
    return (*critical_observed == (expect == "critical")) ? Status::Pass : Status::Fail;
}

std::optional<bool> observed(Verdict v) {
    if (v == Verdict::Inconclusive) return std::nullopt;
    return v == Verdict::Critical;
}

void fill_profile(Outcome& out, const ProfileReport& rep) {
    Json diag = Json::array();
    for (const auto& s : rep.diagnostics) diag.push_back(s);
    out.results = Json{{"a_grid", json_of(rep.a_grid)},
                       {"R_values", json_of(rep.R_values)},
                       {"R_imag", json_of(rep.R_imag)},
                       {"err_estimates", json_of(rep.err_estimates)},
                       {"fitted_constant", rep.fitted_constant},
                       {"max_rel_deviation", rep.max_rel_deviation},
                       {"verdict", to_string(rep.verdict)},
                       {"all_converged", rep.all_converged},
                       {"diagnostics", diag}};
    out.csv.header = {"a", "R", "R_imag", "err_estimate"};
    for (std::size_t i = 0; i < rep.a_grid.size(); ++i) {
        out.csv.rows.push_back(
            {fmt17(rep.a_grid[i]), fmt17(rep.R_values[i]), fmt17(rep.R_imag[i]), fmt17(rep.err_estimates[i])});
    }
    out.converged = rep.all_converged;
}

ProfileOptions profile_options(const Options& o, Outcome& out) {
    ProfileOptions po;
    po.threads = o.threads;
    po.thresholds.critical = tol_or(o, 1e-6);
    po.thresholds.not_critical = std::max(1e-4, po.thresholds.critical);
    out.tolerances = Json{{"critical", po.thresholds.critical},
                          {"not_critical", po.thresholds.not_critical},
                          {"quad_abs_tol", po.spec.abs_tol},
                          {"quad_rel_tol", po.spec.rel_tol}};
    return po;
}

std::vector<double> a_grid(const Options& o, Outcome& out) {
    out.config["a_min"] = o.a_min;
    out.config["a_max"] = o.a_max;
    out.config["a_steps"] = o.a_steps;
    return linear_grid(o.a_min, o.a_max, o.a_steps);
}

Outcome cmd_verify_el(const Options& o) {
    Outcome out;
    const ExponentConfig cfg = make_config(require(o.p, "--p"), require(o.d, "--d"));
    out.config = config_json(cfg);
    const auto grid = a_grid(o, out);
    const ProfileOptions po = profile_options(o, out);
    const ProfileReport rep = el_profile(cfg, grid, po);
    fill_profile(out, rep);
    const std::string expect = o.expect.value_or(cfg.kind == ExponentCase::Critical ? "critical" : "not-critical");
    out.config["expect"] = expect;
    out.verdicts.push_back({"expect " + expect, expectation_status(expect, observed(rep.verdict))});
    return out;
}

AdmissiblePair resolve_pair(const Options& o) {
    const int d = require(o.d, "--d");
    if (d < 2) throw DomainError("dimension d must satisfy d >= 2");
    const double half = (d - 1.0) / 2.0;
    double q = 0.0;
    double r = 0.0;
    if (o.q && o.r) {
        q = *o.q;
        r = *o.r;
    } else if (o.q) {
        q = *o.q;
        r = 2.0 / (half - (d - 1.0) / q);
    } else if (o.r) {
        r = *o.r;
        q = (d - 1.0) / (half - 2.0 / r);
    } else {
        throw DomainError("give --q, --r or both");
    }
    const Admissibility check = check_admissible(r, q, d);
    if (!check) throw DomainError("(q, r) is not admissible: " + check.reason);
    return *check.pair;
}

Outcome cmd_verify_mixed(const Options& o) {
    Outcome out;
    const AdmissiblePair pair = resolve_pair(o);
    out.config = Json{{"d", pair.d}, {"q", pair.q}, {"r", pair.r}};
    const auto grid = a_grid(o, out);
    const ProfileOptions po = profile_options(o, out);
    const ProfileReport rep = mixed_el_profile(pair, grid, po);
    fill_profile(out, rep);
    const std::string expect = o.expect.value_or("critical");
    out.config["expect"] = expect;
    out.verdicts.push_back({"expect " + expect, expectation_status(expect, observed(rep.verdict))});
    return out;
}

Outcome cmd_series(const Options& o) {
    Outcome out;
    const ExponentConfig cfg = make_config(require(o.p, "--p"), require(o.d, "--d"));
    out.config = config_json(cfg);
    out.config["kmax"] = o.kmax;
    const double tol = tol_or(o, 1e-6);
    const QuadSpec spec;
    out.tolerances = Json{{"fit", tol}, {"quad_abs_tol", spec.abs_tol}, {"quad_rel_tol", spec.rel_tol}};
    const SeriesReport rep = series_consistency(cfg, o.kmax, spec, tol);
    out.results = Json{{"coefficient", cfg.kind == ExponentCase::Subcritical ? "I_k" : "I'_k"},
                       {"ks", rep.ks},
                       {"values", json_of(rep.values)},
                       {"err_estimates", json_of(rep.errors)},
                       {"signs", rep.signs},
                       {"residuals", json_of(rep.residuals)},
                       {"ratio_target", rep.ratio_target},
                       {"c_fit", rep.c_fit},
                       {"c_forced_zero", rep.c_forced_zero},
                       {"consistent", rep.consistent},
                       {"first_violation", rep.first_violation ? Json(*rep.first_violation) : Json(nullptr)},
                       {"alternating_from_k0", rep.alternating_from_k0},
                       {"all_converged", rep.all_converged}};
    out.csv.header = {"k", "value", "err_estimate", "sign", "residual"};
    for (std::size_t i = 0; i < rep.ks.size(); ++i) {
        out.csv.rows.push_back({std::to_string(rep.ks[i]), fmt17(rep.values[i]), fmt17(rep.errors[i]),
                                std::to_string(rep.signs[i]), fmt17(rep.residuals[i])});
    }
    out.converged = rep.all_converged;
    // a consistent geometric fit is what a critical Gaussian would produce
    const std::string expect = o.expect.value_or("not-critical");
    out.config["expect"] = expect;
    out.verdicts.push_back({"expect " + expect, expectation_status(expect, rep.consistent)});
    return out;
}

Outcome cmd_contour_check(const Options& o) {
    Outcome out;
    const double tol = tol_or(o, 1e-8);
    const QuadSpec spec;
    out.tolerances = Json{{"agreement", tol}, {"quad_abs_tol", spec.abs_tol}, {"quad_rel_tol", spec.rel_tol}};
    Json rows = Json::array();
    out.csv.header = {"case", "gamma", "exact", "real_line", "contour", "abs_diff"};
    bool all_agree = true;
    for (const LemmaCase& c : lemma_suite()) {
        const IntegralResult line = lemma_real_line(c.gamma, c.h, spec);
        const IntegralResult contour = lemma_integration(c.gamma, c.h, spec);
        out.converged = out.converged && line.converged && contour.converged;
        const double diff = std::abs(line.value - contour.value);
        const double scale = std::max(1.0, std::abs(contour.value));
        bool agree = diff <= tol * scale;
        if (c.exact) agree = agree && std::abs(contour.value.real() - *c.exact) <= tol * scale;
        all_agree = all_agree && agree;
        rows.push_back(Json{{"case", c.label},
                            {"gamma", c.gamma},
                            {"exact", c.exact ? Json(*c.exact) : Json(nullptr)},
                            {"real_line", json_of(line.value)},
                            {"contour", json_of(contour.value)},
                            {"abs_diff", diff},
                            {"agree", agree}});
        out.csv.rows.push_back({c.label, fmt17(c.gamma), c.exact ? fmt17(*c.exact) : "", fmt17(line.value.real()),
                                fmt17(contour.value.real()), fmt17(diff)});
    }
    out.results = Json{{"cases", rows}, {"all_agree", all_agree}};
    out.verdicts.push_back({"real-line and contour agree", all_agree ? Status::Pass : Status::Fail});
    return out;
}

GaussianParams random_gaussian(int base_dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> width(0.3, 1.5);
    std::uniform_real_distribution<double> unit(-0.5, 0.5);
    GaussianParams g = GaussianParams::standard(base_dim + 1);
    g.z = width(rng);
    for (int i = 0; i < base_dim; ++i) {
        g.y0[i] = unit(rng);
        g.v[i] = cplx(0.0, unit(rng));
    }
    return g;
}

Outcome cmd_variation(const Options& o) {
    Outcome out;
    const int d = o.d.value_or(2);
    const double q = o.q.value_or(4.0);
    const double r = o.r.value_or(8.0);
    if (d < 2) throw DomainError("dimension d must satisfy d >= 2");
    out.config = Json{{"d", d}, {"q", q}, {"r", r}};
    const GaussianParams F = GaussianParams::standard(d);
    GaussianParams G = F;
    G.z = 1.0;
    if (o.seed) {
        std::mt19937_64 rng(*o.seed);
        G = random_gaussian(d - 1, rng);
        out.config["seed"] = *o.seed;
    }
    out.config["F"] = gaussian_json(F);
    out.config["G"] = gaussian_json(G);
    const std::vector<double> mags{1e-2, 3e-3, 1e-3, 3e-4};
    out.tolerances = Json{{"slope_min", 1.0}, {"self_slope_window", Json::array({1.9, 2.1})}};

    GridOptions go;
    go.threads = o.threads;
    auto grid = std::make_shared<const SpaceTimeGrid>(make_grid({F, G}, go));
    const SampledField Fs = sample_extension(grid, {F}, o.threads);
    const SampledField Gs = sample_extension(grid, {G}, o.threads);
    const VariationReport mixed = remainder_slope(Fs, Gs, q, r, mags);
    const VariationReport self = remainder_slope(Fs, Fs, q, r, mags);

    auto to_json = [](const VariationReport& v) {
        return Json{{"base_norm_r", v.base_norm_r},       {"first_order_coeff", v.first_order_coeff},
                    {"z_magnitudes", json_of(v.z_magnitudes)}, {"remainders", json_of(v.remainders)},
                    {"fitted_slope", v.fitted_slope},     {"degenerate", v.degenerate},
                    {"noise_floor", v.noise_floor}};
    };
    out.results = Json{{"gaussian", to_json(mixed)}, {"self", to_json(self)}};
    out.csv.header = {"case", "z", "remainder"};
    for (const auto& [name, rep] : {std::pair{"gaussian", &mixed}, std::pair{"self", &self}}) {
        for (std::size_t i = 0; i < mags.size(); ++i) {
            out.csv.rows.push_back({name, fmt17(mags[i]), fmt17(rep->remainders[i])});
        }
    }
    auto slope_status = [](const VariationReport& v, bool ok) {
        if (v.degenerate) return Status::Inconclusive;
        return ok ? Status::Pass : Status::Fail;
    };
    out.verdicts.push_back({"remainder slope > 1", slope_status(mixed, mixed.fitted_slope > 1.0)});
    out.verdicts.push_back(
        {"self remainder slope near 2", slope_status(self, self.fitted_slope >= 1.9 && self.fitted_slope <= 2.1)});
    return out;
}

Outcome cmd_functional(const Options& o) {
    Outcome out;
    const double tol = tol_or(o, 1e-6);
    const std::uint64_t seed = o.seed.value_or(1);
    const int samples = 10;
    GridOptions go;
    go.threads = o.threads;

    std::function<double(const GaussianParams&)> value;
    double closed = 0.0;
    int d = 0;
    if (o.p) {
        const ExponentConfig cfg = make_config(*o.p, require(o.d, "--d"));
        d = cfg.d;
        out.config = config_json(cfg);
        out.config["functional"] = "phi";
        value = [cfg, go](const GaussianParams& g) { return phi_value(g, cfg, go); };
        closed = standard_extension_norm_power(cfg) /
                 std::pow(lp_norm_power(GaussianParams::standard(d), cfg.p), cfg.q / cfg.p);
    } else {
        const AdmissiblePair pair = resolve_pair(o);
        d = pair.d;
        out.config = Json{{"d", pair.d}, {"q", pair.q}, {"r", pair.r}, {"functional", "psi"}};
        value = [pair, go](const GaussianParams& g) { return psi_value(g, pair, go); };
        closed = standard_mixed_norm_power(pair.q, pair.r, d) /
                 std::pow(lp_norm_power(GaussianParams::standard(d), 2.0), pair.r / 2.0);
    }
    out.config["seed"] = seed;
    out.config["samples"] = samples;
    out.tolerances = Json{{"relative", tol}};

    const GaussianParams f = GaussianParams::standard(d);
    const double base = value(f);
    const double closed_rel = std::abs(base / closed - 1.0);
    std::mt19937_64 rng(seed);
    Json rows = Json::array();
    out.csv.header = {"sample", "value", "rel_diff"};
    out.csv.rows.push_back({"standard", fmt17(base), fmt17(base / closed - 1.0)});
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const SymmetryElement s = random_symmetry(d - 1, rng);
        const double v = value(apply_symmetry(f, s));
        const double rel = v / base - 1.0;
        worst = std::max(worst, std::abs(rel));
        rows.push_back(Json{{"sample", i}, {"value", v}, {"rel_diff", rel}});
        out.csv.rows.push_back({std::to_string(i), fmt17(v), fmt17(rel)});
    }
    out.results = Json{{"standard_value", base},
                       {"closed_form", closed},
                       {"closed_form_rel_diff", closed_rel},
                       {"symmetry_samples", rows},
                       {"max_symmetry_rel_diff", worst}};
    out.verdicts.push_back({"matches closed form", closed_rel < tol ? Status::Pass : Status::Fail});
    out.verdicts.push_back({"symmetry invariance", worst < tol ? Status::Pass : Status::Fail});
    return out;
}

Outcome cmd_derivative(const Options& o) {
    Outcome out;
    const ExponentConfig cfg = make_config(require(o.p, "--p"), o.d.value_or(2));
    out.config = config_json(cfg);
    const double tol = tol_or(o, 3e-6);
    const double visible = 1e-3;
    const std::vector<double> eps{1e-2, 5e-3, 2.5e-3};
    out.config["eps"] = json_of(eps);
    out.tolerances = Json{{"critical_relative", tol}, {"not_critical_relative", visible}};
    GridOptions go;
    go.threads = o.threads;

    const GaussianParams f = GaussianParams::standard(cfg.d);
    Json rows = Json::array();
    out.csv.header = {"direction", "real", "imag", "relative_magnitude"};
    double largest = 0.0;
    for (const NamedDirection& nd : direction_dictionary()) {
        const DerivativeReport rep = directional_derivative_phi(f, nd.dir, cfg, eps, go);
        const double rel = rep.magnitude() / rep.phi;
        largest = std::max(largest, rel);
        rows.push_back(Json{{"direction", nd.name},
                            {"dir", gaussian_json(nd.dir)},
                            {"phi", rep.phi},
                            {"real", rep.real_direction},
                            {"imag", rep.imag_direction},
                            {"relative_magnitude", rel},
                            {"noise_limited", rep.noise_limited}});
        out.csv.rows.push_back({nd.name, fmt17(rep.real_direction), fmt17(rep.imag_direction), fmt17(rel)});
    }
    out.results = Json{{"directions", rows}, {"max_relative_magnitude", largest}};
    std::optional<bool> critical;
    if (largest < tol) critical = true;
    else if (largest > visible) critical = false;
    const std::string expect = o.expect.value_or(cfg.kind == ExponentCase::Critical ? "critical" : "not-critical");
    out.config["expect"] = expect;
    out.verdicts.push_back({"expect " + expect, expectation_status(expect, critical)});
    return out;
}

void add_exponent_flags(CLI::App* sub, Options& o, bool with_p, bool with_qr) {
    sub->add_option("--d", o.d, "Ambient dimension d >= 2");
    if (with_p) sub->add_option("--p", o.p, "Lebesgue exponent p");
    if (with_qr) {
        sub->add_option("--q", o.q, "Spatial exponent q");
        sub->add_option("--r", o.r, "Temporal exponent r");
    }
}

void add_common_flags(CLI::App* sub, Options& o) {
    sub->add_option("--tol", o.tol, "Command tolerance (see --help of the command)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--assert", o.assert_mode, "Exit 4 unless every verdict passes");
    sub->add_option("--expect", o.expect, "Expected outcome")->check(CLI::IsMember({"critical", "not-critical"}));
    sub->add_option("--seed", o.seed, "Seed for randomized samples");
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 256));
    sub->add_option("--out", o.out_path, "Write the report to this file instead of stdout");
}

void add_a_grid_flags(CLI::App* sub, Options& o) {
    sub->add_option("--a-min", o.a_min, "Smallest a");
    sub->add_option("--a-max", o.a_max, "Largest a");
    sub->add_option("--a-steps", o.a_steps, "Number of a values");
}

Json report_json(const Options& o, const Outcome& out, long long ms) {
    Json verdicts = Json::array();
    for (const auto& [name, status] : out.verdicts) verdicts.push_back(Json{{"name", name}, {"status", status_name(status)}});
    Json config = out.config;
    config["format"] = o.format;
    config["threads"] = o.threads;
    config["assert"] = o.assert_mode;
    return Json{{"command", o.command},     {"config", config},       {"results", out.results},
                {"tolerances", out.tolerances}, {"verdicts", verdicts}, {"timing_ms", ms}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Numerical certification of Gaussian critical points for Fourier extension functionals",
                 args.empty() ? "gausscrit" : args.front()};
    app.footer(kCsvHelp);
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        bool p, qr, a_grid;
    };
    const Sub subs[] = {
        {"verify-el", "Constancy profile R(a) = I(a) e^{(p-1)a}; --tol is the critical threshold", true, false, true},
        {"verify-mixed", "Mixed-norm profile R(a) = J(a) e^a for an admissible pair", false, true, true},
        {"series", "Series coefficients against the geometric law; --tol is the fit tolerance", true, false, false},
        {"contour-check", "Real-line versus contour evaluation on the reference suite", false, false, false},
        {"variation", "First-variation remainder slopes of the mixed norm", false, true, false},
        {"functional", "Phi (with --p) or Psi (with --q/--r) and its symmetry invariance", true, true, false},
        {"derivative", "Directional derivatives of Phi at the standard Gaussian (d = 2)", true, false, false},
    };
    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->footer(kCsvHelp);
        add_exponent_flags(sub, o, s.p, s.qr);
        if (s.a_grid) add_a_grid_flags(sub, o);
        if (std::string(s.name) == "series") sub->add_option("--kmax", o.kmax, "Largest coefficient index");
        add_common_flags(sub, o);
        sub->callback([&o, name = std::string(s.name)] { o.command = name; });
    }

    std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInvalidConfig;
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        if (o.command == "verify-el") outcome = cmd_verify_el(o);
        else if (o.command == "verify-mixed") outcome = cmd_verify_mixed(o);
        else if (o.command == "series") outcome = cmd_series(o);
        else if (o.command == "contour-check") outcome = cmd_contour_check(o);
        else if (o.command == "variation") outcome = cmd_variation(o);
        else if (o.command == "functional") outcome = cmd_functional(o);
        else if (o.command == "derivative") outcome = cmd_derivative(o);
    } catch (const DomainError& e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const ConvergenceError& e) {
        err << "quadrature did not converge: " << e.what() << '\n';
        return kExitNoConvergence;
    } catch (const ConsistencyError& e) {
        err << "independent evaluations disagree: " << e.what() << '\n';
        return kExitNoConvergence;
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream text;
    if (o.format == "csv") {
        outcome.csv.write(text);
    } else {
        write_json(report_json(o, outcome, ms), text, 2, 0);
        text << '\n';
    }
    if (o.out_path) {
        std::ofstream file(*o.out_path);
        if (!file) {
            err << "cannot open " << *o.out_path << " for writing\n";
            return kExitInvalidConfig;
        }
        file << text.str();
    } else {
        out << text.str();
    }

    if (!outcome.converged) {
        err << "quadrature did not converge at one or more points\n";
        return kExitNoConvergence;
    }
    if (o.assert_mode) {
        for (const auto& [name, status] : outcome.verdicts) {
            if (status != Status::Pass) {
                err << "assertion failed: " << name << " (" << status_name(status) << ")\n";
                return kExitAssertFailed;
            }
        }
    }
    return kExitOk;
}

}  // namespace gausscrit::cli
