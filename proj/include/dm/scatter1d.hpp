#pragma once
// One-dimensional Helmholtz scattering: (D_x^2 + V - E) psi = 0, E = k^2,
// D = -i d/dx, so psi'' = (V - E) psi. Transfer matrices are propagated in
// the (psi, psi') basis over piecewise-constant cells and converted to
// plane-wave scattering matrices at the segment ends. Plane waves carry the
// absolute coordinate phase: left of the segment psi = a e^{ikx} + b e^{-ikx},
// right of it psi = c e^{ikx} + d e^{-ikx}; S maps incoming (a, d) to
// outgoing (b, c) as S = [[R+, T-], [T+, R-]].

#include <complex>
#include <functional>
#include <vector>

#include "dm/common.hpp"

namespace dm::scatter1d {

struct ScatterMatrix {
  cplx r_plus{0, 0}, t_minus{1, 0}, t_plus{1, 0}, r_minus{0, 0};
  double k = 1.0;
  double x_left = 0.0, x_right = 0.0;

  // max-abs residual of S S^* - I
  double unitarity_residual() const;
};

using Potential = std::function<double(double)>;

// S-matrix of V restricted to [xL, xR] by piecewise-constant transfer
// integration over `cells` uniform cells. Evanescent plateaus (k^2 < V) are
// handled by the same complex-trigonometric transfer blocks.
ScatterMatrix numeric_smatrix(const Potential& V, double xL, double xR, double k,
                              int cells = 1000);

// Closed-form reflection coefficient R_-^L of the square barrier V0 on
// [-a, a] in the propagating regime q = sqrt(k^2 - V0) > 0.
cplx closed_form_barrier(double V0, double a, double k);

struct SplitResult {
  double sigma_plus = 0.0, sigma_minus = 0.0;
  cplx uL, vL, uR, vR;
  bool degenerate = false;  // total reflection on both sides
};

// Position-resolved valley conductivities from the left/right segment
// scattering matrices.
SplitResult split_conductivities(const ScatterMatrix& SL, const ScatterMatrix& SR);

struct SweepPoint {
  double x0;
  double sigma_plus, sigma_minus;
  bool split_in_support = false;  // x0 fell where |V| > 1e-12 (documented warning)
};

// sigma^+(x0) profile: split V at each x0, build both segment matrices,
// combine. xL/xR must bracket the support of V.
std::vector<SweepPoint> position_sweep(const Potential& V, double xL, double xR,
                                       double k, const std::vector<double>& x0_list,
                                       int cells = 1000);

}  // namespace dm::scatter1d
