#pragma once
// Continuum-model ingredients: bulk/edge/junction symbols, junction geometry
// functions f and g, mass profiles, valley-coupling models, and the operator
// term descriptions consumed by the pseudo-spectral assembler.
//
// Conventions fixed here (and relied on everywhere else):
//  * stacking "+" is the 4x4 bulk Hamiltonian with the interlayer coupling at
//    entries (2,3)/(3,2); stacking "-" has it at (1,4)/(4,1).
//  * D = -i d/dx, so the Fourier symbol of D on mode k is +2*pi*k/L.
//  * 2D coefficients are evaluated in centered coordinates (x-Lx/2, y-Ly/2);
//    the torus fundamental cell is [0,Lx)x[0,Ly).

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dm/common.hpp"
#include "dm/switches.hpp"

namespace dm::model {

struct ModelParams {
  double omega = 1.0;   // gating half-potential
  double lambda = 0.2;  // interlayer coupling strength
  int eta = +1;         // valley index, +1 or -1
  int stacking = +1;    // +1 or -1, selects which coupling block is populated
};

// ---------------------------------------------------------------------------
// Junction geometry: f(x,y) = chi(r) * r * sin(k theta) (sector pattern),
// g(x,y) = chi(r) * r * (cos(theta-theta1) - cos(theta0)) (filter level set).
// ---------------------------------------------------------------------------
struct JunctionGeometry {
  int k = 3;                 // number of sector pairs
  double eps_r = 0.25;       // chi == 0 inside this radius
  double theta0 = pi / 6.0;  // filter-curve half-opening parameter
  double theta1 = 0.0;       // filter-curve axis angle
  SwitchSpec chi{0.0, 1.0, 0.25, 1.0, SwitchProfile::PolynomialSmoothstep};

  JunctionGeometry() = default;
  JunctionGeometry(int k_, double eps, double th0, double th1)
      : k(k_), eps_r(eps), theta0(th0), theta1(th1),
        chi{0.0, 1.0, eps, 1.0, SwitchProfile::PolynomialSmoothstep} {
    if (k <= 0) throw std::invalid_argument("junction: k must be positive");
    if (!(eps_r > 0.0 && eps_r < 1.0))
      throw std::invalid_argument("junction: eps_r must be in (0,1)");
    // The angular factors sin(k*theta) and cos(theta-theta1)-cos(theta0) must
    // not vanish simultaneously, otherwise the filter level curve runs along
    // an interface.
    for (int j = 0; j < 2 * k; ++j) {
      const double th = pi * j / k;  // zeros of sin(k theta)
      if (std::abs(std::cos(th - theta1) - std::cos(theta0)) < 1e-12)
        throw std::invalid_argument("junction: f and g zero sets intersect");
    }
  }
};

inline double eval_f(const JunctionGeometry& g, double x, double y) {
  const double r = std::hypot(x, y);
  if (r <= g.eps_r) return 0.0;
  const double th = std::atan2(y, x);
  return eval_switch(g.chi, r) * r * std::sin(g.k * th);
}

inline double eval_g(const JunctionGeometry& g, double x, double y) {
  const double r = std::hypot(x, y);
  if (r <= g.eps_r) return 0.0;
  const double th = std::atan2(y, x);
  return eval_switch(g.chi, r) * r * (std::cos(th - g.theta1) - std::cos(g.theta0));
}

// m~(x,y) = m(f(x,y)); m must be an odd switch from -1 to +1.
inline double junction_mass(const JunctionGeometry& g, const SwitchSpec& m,
                            double x, double y) {
  return eval_switch(m, eval_f(g, x, y));
}

// ---------------------------------------------------------------------------
// Momentum-space symbols.
// ---------------------------------------------------------------------------

// 4x4 gated-bilayer bulk symbol. xi/zeta are the two momentum components.
inline Mat4 bulk_symbol(const ModelParams& p, double xi, double zeta) {
  if (p.eta != 1 && p.eta != -1) throw std::invalid_argument("eta must be +-1");
  if (p.stacking != 1 && p.stacking != -1)
    throw std::invalid_argument("stacking must be +-1");
  Mat4 h = Mat4::Zero();
  const cplx z(xi, p.eta * zeta);  // xi*s1 + eta*zeta*s2 has entries (zbar; z)
  // diagonal Dirac blocks with +-Omega shift
  h(0, 0) = p.omega; h(1, 1) = p.omega;
  h(2, 2) = -p.omega; h(3, 3) = -p.omega;
  h(0, 1) = std::conj(z); h(1, 0) = z;
  h(2, 3) = std::conj(z); h(3, 2) = z;
  if (p.stacking > 0) {  // coupling at (2,3)/(3,2): upper-right block = lambda*A^*
    h(1, 2) = p.lambda; h(2, 1) = p.lambda;
  } else {               // coupling at (1,4)/(4,1): upper-right block = lambda*A
    h(0, 3) = p.lambda; h(3, 0) = p.lambda;
  }
  return h;
}

inline Mat2 dirac_symbol(double mass, double xi, double zeta) {
  Mat2 h;
  h(0, 0) = mass; h(1, 1) = -mass;
  h(0, 1) = cplx(xi, -zeta);
  h(1, 0) = cplx(xi, zeta);
  return h;
}

// ---------------------------------------------------------------------------
// Operator term descriptions for the assembler: H = sum of
//   coeff (ncomp x ncomp) (x) D_axis   (derivative terms, diagonal in Fourier)
// + coeff (ncomp x ncomp) (x) Mult[f]  (dealiased multiplication terms)
// + const_term (x) Identity.
// Coefficient functions receive torus coordinates in [0,L) per dimension
// (1D terms receive (x, 0)).
// ---------------------------------------------------------------------------
using CoeffFn = std::function<cplx(double, double)>;

struct DerivTerm {
  int axis = 0;  // 0 = x, 1 = y
  Mat coeff;     // ncomp x ncomp
};

struct MultTerm {
  Mat coeff;  // ncomp x ncomp
  CoeffFn f;
};

struct OperatorSpec {
  int dims = 1;
  int ncomp = 1;
  std::vector<DerivTerm> derivs;
  std::vector<MultTerm> mults;
  Mat constant;                         // ncomp x ncomp, may be zero-size
  std::vector<int> valley_of_component; // empty unless valley-tagged
  std::string tag;
};

// Smooth periodization window: 1 on the physical region, 0 in a collar near
// the cell boundary so sampled coefficients are exactly periodic.
inline double boundary_window(double t_centered, double L) {
  const double a = std::abs(t_centered);
  const SwitchSpec down{1.0, 0.0, 0.38 * L, 0.46 * L,
                        SwitchProfile::PolynomialSmoothstep};
  return eval_switch(down, a);
}

// ---------------------------------------------------------------------------
// Dirac junction: H = D_x s1 + D_y s2 + mass(x,y) s3 (+ optional potential*I).
// `orientation` multiplies the mass globally (fixes which branches are
// incoming and the sign of the quantized conductivity).
// ---------------------------------------------------------------------------
struct SteeringPerturbation {
  double amplitude = 0.0;  // conventional default when enabled: 1/4
  double sigma = 5.0;
  double theta_m = 0.0;
};

struct DiracJunctionSpec {
  JunctionGeometry geom;
  SwitchSpec mass_profile = odd_mass_switch(1.0);  // transition width 2
  double Lx = 100.0, Ly = 100.0;
  double orientation = -1.0;
  SteeringPerturbation steer;                       // amplitude 0 = symmetric
  std::function<double(double, double)> extra_potential;  // optional, centered coords
};

// The mass is evaluated on the fundamental cell as-is. f is even across the
// x-seam, so the mass is continuous there; across the y-seam it flips sign,
// leaving an artificial wall along y = 0 that the q-mask excludes from every
// conductivity trace.
inline double dirac_junction_mass(const DiracJunctionSpec& s, double x, double y) {
  const double xc = x - s.Lx / 2.0, yc = y - s.Ly / 2.0;
  // the steering dipole acts on the oriented mass (outside the orientation
  // factor), so theta_m = 0 always favors the straight-through branch
  double m = junction_mass(s.geom, s.mass_profile, xc, yc) * s.orientation;
  if (s.steer.amplitude != 0.0) {
    const double g = std::exp(-(xc * xc + yc * yc) / (2.0 * s.steer.sigma * s.steer.sigma));
    m -= s.steer.amplitude * g * (std::sin(s.steer.theta_m) * xc + std::cos(s.steer.theta_m) * yc);
  }
  return m;
}

inline OperatorSpec dirac_junction_operator(const DiracJunctionSpec& s) {
  OperatorSpec op;
  op.dims = 2;
  op.ncomp = 2;
  op.tag = "dirac_junction";
  op.derivs.push_back({0, pauli(1)});
  op.derivs.push_back({1, pauli(2)});
  op.mults.push_back({pauli(3), [s](double x, double y) {
                        return cplx(dirac_junction_mass(s, x, y), 0.0);
                      }});
  if (s.extra_potential) {
    auto v = s.extra_potential;
    const double Lx = s.Lx, Ly = s.Ly;
    op.mults.push_back({pauli(0), [v, Lx, Ly](double x, double y) {
                          return cplx(v(x - Lx / 2, y - Ly / 2), 0.0);
                        }});
  }
  return op;
}

// ---------------------------------------------------------------------------
// Gated-bilayer edge model at fixed longitudinal momentum xi1 (1D in y):
//   H_e(xi1) = Omega s3 x I + I x (xi1 s1 + eta D_y s2)
//            + (lambda/2) (s1 x s1 + m(y) s2 x s2).
// The mass is periodized with a second (descending) wall at the seam.
// ---------------------------------------------------------------------------
inline double edge_periodized_mass(const SwitchSpec& m, double y, double Ly) {
  double yc = y - Ly / 2.0;  // wall at the cell center
  if (yc > Ly / 4.0) return -eval_switch(m, yc - Ly / 2.0);
  if (yc < -Ly / 4.0) return -eval_switch(m, yc + Ly / 2.0);
  return eval_switch(m, yc);
}

struct EdgeModelSpec {
  ModelParams params;
  SwitchSpec mass_profile = odd_mass_switch(1.0);
  double Ly = 100.0;
};

inline OperatorSpec edge_operator(const EdgeModelSpec& s, double xi1) {
  OperatorSpec op;
  op.dims = 1;
  op.ncomp = 4;
  op.tag = "edge";
  const Mat2 I2 = pauli(0);
  op.constant = s.params.omega * kron(pauli(3), I2) + xi1 * kron(I2, pauli(1)) +
                0.5 * s.params.lambda * kron(pauli(1), pauli(1));
  op.derivs.push_back({0, double(s.params.eta) * kron(I2, pauli(2))});
  const SwitchSpec m = s.mass_profile;
  const double Ly = s.Ly, half_lambda = 0.5 * s.params.lambda;
  op.mults.push_back({kron(pauli(2), pauli(2)), [m, Ly, half_lambda](double y, double) {
                        return cplx(half_lambda * edge_periodized_mass(m, y, Ly), 0.0);
                      }});
  return op;
}

// ---------------------------------------------------------------------------
// Full 4x4 junction Hamiltonian: Omega s3 x I + I x (D_x s1 + eta D_y s2)
// + (lambda/2)(s1 x s1 + m~(x,y) s2 x s2), with m~ the junction sector mass.
// ---------------------------------------------------------------------------
struct BilayerJunctionSpec {
  ModelParams params;
  JunctionGeometry geom;
  SwitchSpec mass_profile = odd_mass_switch(1.0);
  double Lx = 100.0, Ly = 100.0;
  double orientation = -1.0;
};

inline OperatorSpec bilayer_junction_operator(const BilayerJunctionSpec& s) {
  OperatorSpec op;
  op.dims = 2;
  op.ncomp = 4;
  op.tag = "bilayer_junction";
  const Mat2 I2 = pauli(0);
  op.constant = s.params.omega * kron(pauli(3), I2) +
                0.5 * s.params.lambda * kron(pauli(1), pauli(1));
  op.derivs.push_back({0, kron(I2, pauli(1))});
  op.derivs.push_back({1, double(s.params.eta) * kron(I2, pauli(2))});
  const auto geom = s.geom;
  const auto prof = s.mass_profile;
  const double Lx = s.Lx, Ly = s.Ly, orient = s.orientation,
               half_lambda = 0.5 * s.params.lambda;
  op.mults.push_back({kron(pauli(2), pauli(2)),
                      [geom, prof, Lx, Ly, orient, half_lambda](double x, double y) {
                        const double xc = x - Lx / 2, yc = y - Ly / 2;
                        const double m = orient * junction_mass(geom, prof, xc, yc);
                        return cplx(half_lambda * m, 0.0);
                      }});
  return op;
}

// ---------------------------------------------------------------------------
// Valley-coupling models. Valley "+" is always the first block and carries
// +D_x drift on its propagating channel, so its decoupled conductivity is +1.
// ---------------------------------------------------------------------------
enum class ValleyKind { H2, H2eps, H4 };

struct EffectivePotential {
  double V0 = 0.1;
  double omega_fast = 2.0;  // fast-phase frequency of the two-scale potential
  // envelope in x: plateau 1 on [-10,10], support [-20,20]
  SwitchSpec chi_up{0.0, 1.0, -20.0, -10.0, SwitchProfile::PolynomialSmoothstep};
  SwitchSpec chi_down{1.0, 0.0, 10.0, 20.0, SwitchProfile::PolynomialSmoothstep};
  // envelope in y (2D variants): plateau 1 on [-5,5], support [-10,10]
  SwitchSpec xi_up{0.0, 1.0, -10.0, -5.0, SwitchProfile::PolynomialSmoothstep};
  SwitchSpec xi_down{1.0, 0.0, 5.0, 10.0, SwitchProfile::PolynomialSmoothstep};
  bool y_dependent = false;  // if false the 2D envelope in y is identically 1

  double chi(double xc) const { return eval_switch(chi_up, xc) * eval_switch(chi_down, xc); }
  double xi(double yc) const {
    return y_dependent ? eval_switch(xi_up, yc) * eval_switch(xi_down, yc) : 1.0;
  }
};

struct ValleyModelSpec {
  ValleyKind kind = ValleyKind::H2eps;
  EffectivePotential pot;
  double L = 100.0;        // x-extent
  double Ly = 16.0;        // y-extent (H4 only)
  double lambda_wall = 1.0;  // H4 wall slope
  double energy_shift = 0.0; // assembles H - E for energy sweeps
};

// The two-valley 1D blocks shared by H2/H2eps, as an ncomp x ncomp matrix of
// multiplication coefficients plus the drift. `drift_sign` lets H4 embed the
// sign-reversed copy required by the wall-channel reduction.
inline OperatorSpec valley_operator(const ValleyModelSpec& s) {
  OperatorSpec op;
  op.dims = 1;
  op.ncomp = 2;
  const double L = s.L, V0 = s.pot.V0, w = s.pot.omega_fast, E = s.energy_shift;
  const EffectivePotential pot = s.pot;
  Mat drift = Mat::Zero(2, 2);
  drift(0, 0) = 1.0; drift(1, 1) = -1.0;
  if (s.kind == ValleyKind::H2) {
    op.tag = "H2";
    op.derivs.push_back({0, drift});
    // effective potentials: Vhat(x,0)=0 diagonal, Vhat(x,+-2)=V0 chi(x)/2
    Mat c12 = Mat::Zero(2, 2); c12(0, 1) = 1.0;
    Mat c21 = Mat::Zero(2, 2); c21(1, 0) = 1.0;
    op.mults.push_back({c12, [pot, V0, L](double x, double) {
                          return cplx(0.5 * V0 * pot.chi(x - L / 2), 0.0);
                        }});
    op.mults.push_back({c21, [pot, V0, L](double x, double) {
                          return cplx(0.5 * V0 * pot.chi(x - L / 2), 0.0);
                        }});
  } else if (s.kind == ValleyKind::H2eps) {
    op.tag = "H2eps";
    op.derivs.push_back({0, drift});
    Mat diag = Mat::Identity(2, 2);
    op.mults.push_back({diag, [pot, V0, w, L](double x, double) {
                          const double xc = x - L / 2;
                          return cplx(V0 * pot.chi(xc) * std::cos(w * xc), 0.0);
                        }});
    Mat c12 = Mat::Zero(2, 2); c12(0, 1) = 1.0;
    Mat c21 = Mat::Zero(2, 2); c21(1, 0) = 1.0;
    op.mults.push_back({c12, [pot, V0, w, L](double x, double) {
                          const double xc = x - L / 2;
                          return cplx(V0 * pot.chi(xc) * std::cos(w * xc), 0.0) *
                                 std::exp(cplx(0.0, -2.0 * xc));
                        }});
    op.mults.push_back({c21, [pot, V0, w, L](double x, double) {
                          const double xc = x - L / 2;
                          return cplx(V0 * pot.chi(xc) * std::cos(w * xc), 0.0) *
                                 std::exp(cplx(0.0, +2.0 * xc));
                        }});
  } else {
    throw std::invalid_argument("valley_operator: H4 uses valley_operator_2d");
  }
  if (E != 0.0) {
    op.constant = -E * Mat::Identity(2, 2);
  }
  op.valley_of_component = {+1, -1};
  return op;
}

// H4 = D_y I x s2 + lambda_w t(y) I x s3 - H2(y-dependent) x s1, with the
// wall profile t(y) = (Ly/2pi) sin(2pi yc / Ly) (slope 1 at the wall, mirror
// wall at the seam). Components ordered (valley, spinor) row-major.
inline OperatorSpec valley_operator_2d(const ValleyModelSpec& s) {
  if (s.kind != ValleyKind::H4)
    throw std::invalid_argument("valley_operator_2d: kind must be H4");
  OperatorSpec op;
  op.dims = 2;
  op.ncomp = 4;
  op.tag = "H4";
  const Mat2 I2 = pauli(0);
  const double L = s.L, Ly = s.Ly, V0 = s.pot.V0, lw = s.lambda_wall,
               E = s.energy_shift;
  const EffectivePotential pot = s.pot;
  op.derivs.push_back({1, kron(I2, pauli(2))});
  op.mults.push_back({kron(I2, pauli(3)), [lw, Ly](double, double y) {
                        const double yc = y - Ly / 2;
                        return cplx(lw * (Ly / (2 * pi)) * std::sin(2 * pi * yc / Ly), 0.0);
                      }});
  // minus the H2 block, tensored with s1 in the spinor factor
  Mat vdrift = Mat::Zero(2, 2);
  vdrift(0, 0) = 1.0; vdrift(1, 1) = -1.0;
  op.derivs.push_back({0, kron(-vdrift, pauli(1))});
  Mat c12 = Mat::Zero(2, 2); c12(0, 1) = 1.0;
  Mat c21 = Mat::Zero(2, 2); c21(1, 0) = 1.0;
  auto vhat2 = [pot, V0, L, Ly](double x, double y) {
    return cplx(-0.5 * V0 * pot.chi(x - L / 2) * pot.xi(y - Ly / 2), 0.0);
  };
  op.mults.push_back({kron(c12, pauli(1)), vhat2});
  op.mults.push_back({kron(c21, pauli(1)), vhat2});
  if (E != 0.0) op.constant = -E * Mat::Identity(4, 4);
  op.valley_of_component = {+1, +1, -1, -1};
  return op;
}

// Growth-comparison constants for <f,g> vs <x,y> on a sample grid; used by
// consistency checks on the junction geometry.
inline std::pair<double, double> fg_growth_constants(const JunctionGeometry& g,
                                                     double rmax, int n) {
  double c1 = 1e300, c2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = -rmax + 2 * rmax * (i + 0.5) / n;
      const double y = -rmax + 2 * rmax * (j + 0.5) / n;
      const double fv = eval_f(g, x, y), gv = eval_g(g, x, y);
      const double num = std::sqrt(1 + fv * fv + gv * gv);
      const double den = std::sqrt(1 + x * x + y * y);
      c1 = std::min(c1, num / den);
      c2 = std::max(c2, num / den);
    }
  return {c1, c2};
}

}  // namespace dm::model
