#pragma once
// Time-domain wavepacket transport through the junction: Gaussian edge
// packets projected onto in-gap chiral states, exact propagation by spectral
// synthesis, tubular branch-weight diagnostics, steering sweeps with the
// symmetry-breaking mass perturbation, and a Strang split-step stepper used
// as an independent cross-check of the spectral evolution.

#include <array>
#include <vector>

#include "dm/common.hpp"
#include "dm/fourier.hpp"
#include "dm/model.hpp"
#include "dm/transport.hpp"

namespace dm::dynamics {

using fourier::AssembledOperator;
using fourier::FourierGrid;
using fourier::SpectralDecomposition;

struct Wavepacket {
  Vec state;          // coefficient-space field (ncomp * modes)
  double time = 0.0;
  double norm0 = 1.0; // norm at construction; evolution must preserve it
};

struct EdgePacketInfo {
  double retention = 0.0;  // |projected| / |raw Gaussian|
  double energy = 0.0;     // <psi|H|psi>
  double current = 0.0;    // masked current element of the projected packet
  int n_states = 0;        // eigenstates kept by the direction selection
};

// Gaussian envelope of the given width centered at `center` (absolute torus
// coordinates, expected on an interface branch), carried by a spinor aligned
// with the local edge mode, projected onto the in-gap window eigenstates
// whose masked current through a switch at center.x has sign `direction`.
// Throws std::runtime_error when the selection is empty.
Wavepacket edge_packet(const AssembledOperator& op, const SpectralDecomposition& sd,
                       std::array<double, 2> center, double width, int direction,
                       EdgePacketInfo* info = nullptr);

// psi(t0 + t) = sum_j e^{-i lambda_j t} <u_j, psi> u_j. Requires the window
// to carry all but 1e-10 of the packet's spectral mass.
Wavepacket propagate(const SpectralDecomposition& sd, const Wavepacket& psi,
                     double t);

double packet_norm(const Wavepacket& psi);
double packet_energy(const AssembledOperator& op, const Wavepacket& psi);

// |psi|^2 summed over components on the fine grid (y-outer); each entry
// carries the per-cell weight, so the plain sum is 1 for a unit-norm packet.
std::vector<double> density_field(const FourierGrid& g, const Wavepacket& psi);

struct PacketMoments {
  double mean_x = 0.0, mean_y = 0.0;
  double var_x = 0.0, var_y = 0.0;
};
PacketMoments packet_moments(const FourierGrid& g, const Wavepacket& psi);

// Mass-density weight inside tubular sectors around the 2k interface rays
// theta_j = j pi / k (centered coordinates), between r_min and r_max, with
// the given angular half-width. weights sum to <= 1; the remainder is the
// junction/bulk residue.
struct BranchWeights {
  std::vector<double> weights;  // per ray, j = 0 .. 2k-1, theta_j = j pi / k
  double residue = 0.0;
};
BranchWeights branch_weights(const FourierGrid& g, const Wavepacket& psi,
                             const model::JunctionGeometry& geom,
                             double r_min = 10.0, double half_width = pi / 18.0,
                             double r_max = -1.0);  // default 0.45 * min(L)

// End-to-end steering run: assemble the (possibly perturbed) junction at
// cutoff K, build the incoming packet on the left branch, evolve to t_final,
// and report branch weights. theta_m only matters when amplitude != 0.
struct SteerResult {
  BranchWeights weights;
  Wavepacket final;
  EdgePacketInfo packet_info;
  double norm_drift = 0.0;    // | |psi(t)| - norm0 |
  double energy_drift = 0.0;  // |E(t) - E(0)|
};
SteerResult steer(model::DiracJunctionSpec spec, double theta_m, double amplitude,
                  int K, double t_final, double packet_width = 5.0);

// Strang splitting cross-check for the 2-component Dirac junction:
// e^{-iH dt} ~ e^{-iK dt/2} e^{-iM dt} e^{-iK dt/2} with K the kinetic
// symbol (exact per mode) and M the pointwise mass/potential factor.
Wavepacket split_step_propagate(const model::DiracJunctionSpec& spec,
                                const FourierGrid& g, const Wavepacket& psi,
                                double t, int n_steps);

}  // namespace dm::dynamics
