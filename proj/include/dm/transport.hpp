#pragma once
// Conductivity observables: smooth spatial filters p/q and their closed-form
// gradients, the compactly supported density-of-states weight phi', the
// sum-over-states trace 2*pi*sigma = 2*pi * sum_j phi'(lambda_j)
// <u_j| Q i[H,P] |u_j>, valley-resolved conductivities, and sweep drivers.
//
// All filters are exactly constant outside transition bands of half-width
// delta and exactly periodic on the torus: switch-ups are paired with
// switch-downs placed inside the region where the mask q vanishes, so the
// counter-transition never contributes to the masked trace.

#include <optional>
#include <string>
#include <vector>

#include "dm/common.hpp"
#include "dm/fourier.hpp"
#include "dm/model.hpp"
#include "dm/switches.hpp"

namespace dm::transport {

using fourier::AssembledOperator;
using fourier::FourierGrid;
using fourier::SpectralDecomposition;

enum class FilterKind {
  edge_1d,     // p(x): up-switch at x0, down-switch at |x-L/2| = 7L/16
  junction_p,  // 2D wedge filter: smooth union of one vertical and two
               // oblique half-plane switches (apex at (x0+Lx/4, Ly/2))
  rotated_p,   // junction_p evaluated in coordinates rotated by -2*pi*j/3
  mask_q       // plateau mask, 1 on the centered box, 0 near the seam
};

struct FilterSpec {
  FilterKind kind = FilterKind::junction_p;
  double x0 = 50.0;               // switch abscissa, absolute torus coordinate
  double delta = 2.0;             // transition half-width
  double theta = pi - pi / 12.0;  // tilt of the oblique wedge boundaries
  int j = 0;                      // rotation index for rotated_p
  // mask half-extents as fractions of the domain lengths
  double hx_frac = 0.25;
  double hy_frac = 0.375;
  SwitchProfile profile = SwitchProfile::PolynomialSmoothstep;
};

// Filter sampled on the dealiasing grid together with its gradient fields
// (closed-form derivatives of the switch composition, not differencing).
struct SampledFilter {
  FilterSpec spec;
  std::vector<double> p, px, py;  // size nx_samples * ny_samples, y-outer
};

SampledFilter make_filter(const FilterSpec& spec, const FourierGrid& g);

// Pointwise product of two filters (e.g. seam mask times wall mask).
SampledFilter multiply_filters(const SampledFilter& a, const SampledFilter& b);

// Normalized C^inf bump phi'(E) = c * exp(-1/(1-(E/E0)^2)) on (-E0, E0),
// with integral exactly 1 (c fixed by quadrature at construction).
struct DensityWeight {
  double E0 = 0.9;
  double c = 0.0;
  double operator()(double E) const {
    const double t = E / E0;
    if (std::abs(t) >= 1.0) return 0.0;
    return c * std::exp(-1.0 / (1.0 - t * t));
  }
};

DensityWeight make_density_weight(double E0);

struct Contribution {
  double lambda;      // eigenvalue
  double phi_weight;  // phi'(lambda)
  double element;     // Re <u | Q i[H,P] | u>
};

struct ConductivityResult {
  double two_pi_sigma = 0.0;
  std::vector<Contribution> contributions;
  std::string provenance;
  double recompute() const {
    double s = 0.0;
    for (const auto& cb : contributions) s += cb.phi_weight * cb.element;
    return 2.0 * pi * s;
  }
};

// Sum-over-states trace with the commutator formed from the assembled
// operator matrix: i[H,P]u = i(H(Pu) - P(Hu)), P and Q applied as dealiased
// multiplication operators (grid transforms; identical to the matrix action).
ConductivityResult conductivity(const AssembledOperator& op,
                                const SpectralDecomposition& sd,
                                const SampledFilter& P, const SampledFilter& Q,
                                const DensityWeight& w);

// Dirac-model oracle: same trace with the analytic commutator
// i[H,P] = [[0, px - i py], [px + i py, 0]] (2-component operators only).
ConductivityResult conductivity_dirac_analytic(const SpectralDecomposition& sd,
                                               const SampledFilter& P,
                                               const SampledFilter& Q,
                                               const DensityWeight& w);

// Valley-resolved trace Tr i Q [H_vv, P] phi'_vv(H): the valley block H_vv is
// the submatrix over basis elements tagged with `valley`; eigenvectors of the
// full H are restricted to that block.
ConductivityResult valley_conductivity(const AssembledOperator& op,
                                       const SpectralDecomposition& sd,
                                       const SampledFilter& P,
                                       const SampledFilter& Q, int valley,
                                       const DensityWeight& w);

// --- sweep drivers -----------------------------------------------------------

struct JunctionTableEntry {
  double x0;
  int N;
  double two_pi_sigma;
};

// How the trace element <u|Q i[H,P]|u> is evaluated:
//  - assembled_commutator: discrete commutator of the assembled operator with
//    the dealiased multiplication operator P (production default; converges
//    fastest and is nearly insensitive to the filter geometry).
//  - analytic_quadrature: closed-form commutator entries (grad p) integrated
//    by plain quadrature on the fine grid (the classical evaluation; carries
//    larger discretization error at coarse cutoffs).
enum class ElementMethod { assembled_commutator, analytic_quadrature };

// Dirac-junction conductivity cross table; one diagonalization per N serves
// every x0.
std::vector<JunctionTableEntry> junction_table(
    const model::DiracJunctionSpec& spec, const std::vector<double>& x0_list,
    const std::vector<int>& N_list, double delta = 2.0, double weight_E0 = 0.9,
    ElementMethod method = ElementMethod::assembled_commutator,
    SwitchProfile filter_profile = SwitchProfile::PolynomialSmoothstep);

struct ValleySweepEntry {
  double omega;   // fast frequency (omega sweeps) or 0
  double V0;      // perturbation amplitude
  double E;       // energy shift
  double x0;      // filter center (absolute)
  double sigma_plus, sigma_minus;  // 2*pi-normalized valley conductivities
};

// H2eps frequency sweep at fixed V0: sigma_{I,+-}(omega, x0).
std::vector<ValleySweepEntry> omega_sweep(const model::ValleyModelSpec& base,
                                          const std::vector<double>& omega_list,
                                          const std::vector<double>& x0_list,
                                          int K, double weight_E0 = 0.2);

// H2 or H4 amplitude/energy sweep: sigma_{I,+-}(V0, E) at fixed x0.
std::vector<ValleySweepEntry> energy_sweep(const model::ValleyModelSpec& base,
                                           const std::vector<double>& V0_list,
                                           const std::vector<double>& E_list,
                                           double x0, int Kx, int Ky,
                                           double weight_E0 = 0.2);

}  // namespace dm::transport
