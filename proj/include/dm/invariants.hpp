#pragma once
// Berry-curvature invariants of the bulk bands over the momentum plane.
//
// Curvature is computed by the gauge-invariant plaquette (link-variable)
// method on a polar grid over the disk of radius R; the half-invariant adds
// the boundary connection line integrals (annulus tail via Stokes):
//   W(R) = disk_plaquette_sum + [conn(limit gauge at infinity) - conn(radius R)]
// where conn(C) = (1/2pi) * oint of the Berry connection i<u, du> along C,
// discretized as -(1/2pi) sum Arg<u_j, u_{j+1}> (counterclockwise).

#include <set>
#include <vector>

#include "dm/bulkspectra.hpp"
#include "dm/common.hpp"
#include "dm/model.hpp"

namespace dm::invariants {

using model::ModelParams;

struct CurvaturePlaquette {
  double xi1, xi2;  // plaquette center
  double value;     // integrated curvature over the plaquette (radians / 2pi units: raw)
  double r;         // center radius
};

struct CurvatureField {
  std::vector<CurvaturePlaquette> plaquettes;
  double R = 0.0;
  int n = 0;
  double total() const {
    double s = 0.0;
    for (const auto& p : plaquettes) s += p.value;
    return s;
  }
  double total_abs() const {
    double s = 0.0;
    for (const auto& p : plaquettes) s += std::abs(p.value);
    return s;
  }
};

// Plaquette curvature of the given band set over the disk of radius R,
// n radial x n angular cells. Values are (1/2pi) * plaquette Berry phase, so
// the field sums to the disk curvature integral in Chern units.
CurvatureField curvature_map(const ModelParams& p, const std::set<int>& bands,
                             double R, int n);

// Discrete boundary connection (1/2pi) * oint i<u,du> on the circle of
// radius R (R <= 0 selects the |xi| -> infinity limit gauge).
double boundary_connection(const ModelParams& p, int band, double R, int n);

struct HalfInvariantResult {
  double value = 0.0;        // disk sum + tail correction
  double disk_sum = 0.0;     // plaquette part alone
  double tail = 0.0;         // conn(infinity) - conn(R)
};

HalfInvariantResult half_invariant(const ModelParams& p, int band, double R, int n);

struct BulkDifferenceResult {
  double W = 0.0;
  int nearest_int = 0;
  double residual = 0.0;
  double W_plus = 0.0, W_minus = 0.0;  // per-stacking sums over bands 3,4
  // gluing combinations (integer-valued Chern numbers)
  double glue_43 = 0.0;  // W_+^4 - W_-^3
  double glue_34 = 0.0;  // W_+^3 - W_-^4
};

BulkDifferenceResult bulk_difference_invariant(const ModelParams& p, double R, int n);

}  // namespace dm::invariants
