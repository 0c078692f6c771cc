#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "gausscrit/exponents.hpp"
#include "gausscrit/gaussian_ext.hpp"

namespace gausscrit {

enum class GridProvenance { TanMap, Uniform };
std::string to_string(GridProvenance p);

struct GridOptions {
    /// Gauss-Legendre panels in the compactified time variable (even).
    int t_panels = 16;
    int t_order = 16;
    /// Nodes per spatial axis; 0 picks a default from the dimension.
    int x_points = 0;
    /// Half-width of each slice box, in packet widths.
    double box_widths = 9.0;
    /// Decay exponent s > 1 of the time integrand, |.| ~ |t|^{-s}. Zero
    /// selects the natural value of the functional being computed (2 for
    /// plain grids).
    double decay_exponent = 0.0;
    /// Time scale of the map; 0 derives it from the packets.
    double t_scale = 0.0;
    int threads = 1;
};

/// Default nodes per spatial axis for dimension d.
int default_x_points(int d);

/// Axis-aligned box holding the uniform midpoint nodes of one time slice.
struct SliceBox {
    RealVector lo;
    RealVector hi;
};

/// Time nodes with weights, and for each time node a box of n^{d-1} spatial
/// midpoint nodes.
struct SpaceTimeGrid {
    int base_dim = 1;
    GridProvenance provenance = GridProvenance::TanMap;
    std::vector<double> t_nodes;
    std::vector<double> t_weights;
    std::vector<SliceBox> boxes;
    int x_points = 0;

    std::size_t slice_size() const;
    std::size_t size() const { return slice_size() * t_nodes.size(); }
    RealVector x_node(std::size_t slice, std::size_t index) const;
    double x_weight(std::size_t slice) const;
    void validate() const;
};

/// Tan-mapped time nodes; slice boxes cover every packet of `packets` to
/// `box_widths` widths.
SpaceTimeGrid make_grid(const GaussianSum& packets, const GridOptions& options);

/// Midpoint nodes on [t_lo, t_hi] x [x_lo, x_hi]^{base_dim}.
SpaceTimeGrid make_uniform_grid(int base_dim, double t_lo, double t_hi, int t_points, double x_lo,
                                double x_hi, int x_points);

/// Values F(x, t) in slice-major order.
struct SampledField {
    std::shared_ptr<const SpaceTimeGrid> grid;
    std::vector<cplx> values;

    cplx at(std::size_t slice, std::size_t index) const { return values[slice * grid->slice_size() + index]; }
    void validate() const;
};

using SpaceTimeFunction = std::function<cplx(const RealVector&, double)>;

SampledField sample(std::shared_ptr<const SpaceTimeGrid> grid, const SpaceTimeFunction& f, int threads = 1);
SampledField sample_extension(std::shared_ptr<const SpaceTimeGrid> grid, const GaussianSum& sum,
                              int threads = 1);

/// F + z G on a shared grid.
SampledField combine(const SampledField& F, const SampledField& G, cplx z);
SampledField scale(const SampledField& F, cplx c);

/// CSV rows x_1..x_n, t, re, im.
void write_csv(const SampledField& F, std::ostream& out);

/// int (int |F|^q dx)^{r/q} dt on the grid.
double mixed_norm_power(const SampledField& F, double q, double r);
double mixed_norm_value(const SampledField& F, double q, double r);

/// r int ||F_t||_q^{r-q} int |F|^{q-2} Re(z G conj F) dx dt. Slices on which
/// F vanishes identically contribute zero, as do nodes with F = 0.
double first_variation(const SampledField& F, const SampledField& G, double q, double r, cplx z);

struct VariationReport {
    double base_norm_r = 0.0;
    /// first_variation for the unit direction `phase`.
    double first_order_coeff = 0.0;
    std::vector<double> z_magnitudes;
    std::vector<double> remainders;
    double fitted_slope = 0.0;
    /// Some remainder sits at the rounding floor, so the slope is not meaningful.
    bool degenerate = false;
    double noise_floor = 0.0;
};

/// remainder(|z|) = | ||F + zG||^r - ||F||^r - first_variation(z) | with
/// z = |z| phase, and its log-log least-squares slope.
VariationReport remainder_slope(const SampledField& F, const SampledField& G, double q, double r,
                                const std::vector<double>& z_magnitudes, cplx phase = {1.0, 0.0});

/// ||E g||_q^q / ||g||_p^q with q = q(p, d).
double phi_value(const GaussianParams& g, const ExponentConfig& cfg, GridOptions options = {});

/// ||E g||_{L^r_t L^q_x}^r / ||g||_2^r.
double psi_value(const GaussianParams& g, const AdmissiblePair& pair, GridOptions options = {});

/// ||g||_p^p of a Gaussian sum by quadrature; base dimension 1 only.
IntegralResult lp_norm_power(const GaussianSum& sum, double p, const QuadSpec& spec = {});

/// Grid options matched to the time decay of |E g|^q for cfg.
GridOptions phi_grid_options(const ExponentConfig& cfg, GridOptions options = {});

struct DerivativeReport {
    double phi = 0.0;
    /// d/de Phi(g + e dir) and d/de Phi(g + i e dir) at e = 0.
    double real_direction = 0.0;
    double imag_direction = 0.0;
    std::vector<double> eps;
    std::vector<double> real_differences;
    std::vector<double> imag_differences;
    /// The central differences are below 1e-9 Phi, i.e. at the noise floor.
    bool noise_limited = false;

    double magnitude() const;
};

/// Central differences of Phi along dir, extrapolated to e = 0 in e^2.
/// Base dimension 1 only.
DerivativeReport directional_derivative_phi(const GaussianParams& g, const GaussianParams& dir,
                                            const ExponentConfig& cfg, const std::vector<double>& eps_list,
                                            GridOptions options = {});

/// The same two derivatives predicted by pairing dir with the Euler-Lagrange
/// left side  E*(|Eg|^{q-2} Eg)(y) = (2 pi)^{q(d-1)/2} I(|y|^2/2)  for the
/// standard Gaussian g. Base dimension 1 only.
struct PairingReport {
    double phi = 0.0;
    double real_direction = 0.0;
    double imag_direction = 0.0;
};
PairingReport el_pairing_derivative(const GaussianParams& dir, const ExponentConfig& cfg,
                                    const QuadSpec& spec = {});

/// ||E g||_{L^r_t L^q_x}^r for the standard Gaussian g, in closed form.
/// Requires (d-1)(q-2)r/(4q) > 1/2.
double standard_mixed_norm_power(double q, double r, int d);

/// ||E g||_q^q for the standard Gaussian, in closed form.
double standard_extension_norm_power(const ExponentConfig& cfg);

/// Named perturbation directions around the standard Gaussian in d = 2:
/// width change, frequency shift, translation, chirp and a mixed one.
struct NamedDirection {
    std::string name;
    GaussianParams dir;
};
std::vector<NamedDirection> direction_dictionary();

}  // namespace gausscrit
