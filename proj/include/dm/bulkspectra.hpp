#pragma once
// Closed-form spectral theory of the 4x4 bulk symbol: eigenvalue surfaces,
// spectral gap, and a globally smooth gauge for bands 3 and 4.
//
// With rho2 = xi1^2 + xi2^2 and eps = lambda:
//   E_pm^2 = Omega^2 + eps^2/2 + rho2 +- sqrt((4 Omega^2 + eps^2) rho2 + eps^4/4)
// sorted bands are E1=-E+, E2=-E-, E3=E-, E4=E+.
// The gap is E_min = |Omega||eps| / sqrt(4 Omega^2 + eps^2), attained at
// rho2 = 2 Omega^2 (2 Omega^2 + eps^2) / (4 Omega^2 + eps^2).
//
// Smooth gauges (canonical sector Omega>0, eps>0, eta=+1) use the
// cancellation-free auxiliary h(rho2) = (E_- - Omega)/rho2, which extends
// smoothly through rho=0:
//   h = (rho2 - 4 Omega^2) / ((eps^2/2 + rho2 + S)(E_- + Omega)),
//   S = sqrt((4 Omega^2 + eps^2) rho2 + eps^4/4).
// Other parameter sign sectors are reached by constant unitaries / momentum
// flips, never by re-deriving gauges.

#include <array>
#include <stdexcept>

#include "dm/common.hpp"
#include "dm/model.hpp"

namespace dm::bulkspectra {

using model::ModelParams;

struct EigPair {
  double Eminus = 0.0, Eplus = 0.0;
};

inline EigPair bulk_Epm(double omega, double lambda, double rho2) {
  const double e2 = lambda * lambda;
  const double base = omega * omega + 0.5 * e2 + rho2;
  const double S = std::sqrt((4 * omega * omega + e2) * rho2 + 0.25 * e2 * e2);
  EigPair out;
  out.Eplus = std::sqrt(base + S);
  // base - S can suffer cancellation; rationalize: (base^2 - S^2)/(base + S)
  const double num = base * base - S * S;
  out.Eminus = std::sqrt(std::max(0.0, num / (base + S)));
  return out;
}

inline std::array<double, 4> bulk_eigenvalues(const ModelParams& p, double xi,
                                              double zeta) {
  const auto e = bulk_Epm(p.omega, p.lambda, xi * xi + zeta * zeta);
  return {-e.Eplus, -e.Eminus, e.Eminus, e.Eplus};
}

struct GapResult {
  double E_min = 0.0;
  double xi_min_sq = 0.0;
};

inline GapResult bulk_gap(const ModelParams& p) {
  if (p.lambda == 0.0 || p.omega == 0.0)
    throw std::invalid_argument("bulk_gap: gapless when lambda*omega == 0");
  const double o2 = p.omega * p.omega, e2 = p.lambda * p.lambda;
  GapResult g;
  g.E_min = std::abs(p.omega) * std::abs(p.lambda) / std::sqrt(4 * o2 + e2);
  g.xi_min_sq = 2 * o2 * (2 * o2 + e2) / (4 * o2 + e2);
  return g;
}

namespace detail {

// (E_-(rho) - Omega)/rho^2, smooth in rho2 including rho2 = 0.
inline double h_aux(double omega, double lambda, double rho2) {
  const double e2 = lambda * lambda;
  const double S = std::sqrt((4 * omega * omega + e2) * rho2 + 0.25 * e2 * e2);
  const double Em = bulk_Epm(omega, lambda, rho2).Eminus;
  return (rho2 - 4 * omega * omega) / ((0.5 * e2 + rho2 + S) * (Em + omega));
}

// Canonical-sector gauge vectors (Omega>0, lambda>0, eta=+1), not normalized.
inline Vec4 gauge_plus_band4(double omega, double eps, cplx xi) {
  const double rho2 = std::norm(xi);
  const double E = bulk_Epm(omega, eps, rho2).Eplus;
  const double g = omega + E - rho2 / (omega + E);
  Vec4 u;
  u(0) = std::conj(xi) * g / (E - omega);
  u(1) = g;
  u(2) = eps;
  u(3) = eps * xi / (omega + E);
  return u;
}

inline Vec4 gauge_plus_band3(double omega, double eps, cplx xi) {
  const double rho2 = std::norm(xi);
  const double E = bulk_Epm(omega, eps, rho2).Eminus;
  const double h = h_aux(omega, eps, rho2);
  const double one_minus = 1.0 - h * h * rho2;
  Vec4 u;
  u(0) = eps;
  u(1) = eps * h * xi;
  u(2) = -xi * one_minus;
  u(3) = -xi * xi * one_minus / (omega + E);
  return u;
}

inline Vec4 gauge_minus_band4(double omega, double eps, cplx xi) {
  const double rho2 = std::norm(xi);
  const double E = bulk_Epm(omega, eps, rho2).Eplus;
  const double g = omega + E - rho2 / (omega + E);
  Vec4 u;
  u(0) = g;
  u(1) = xi * g / (E - omega);
  u(2) = std::conj(xi) * eps / (omega + E);
  u(3) = eps;
  return u;
}

inline Vec4 gauge_minus_band3(double omega, double eps, cplx xi) {
  const double rho2 = std::norm(xi);
  const double E = bulk_Epm(omega, eps, rho2).Eminus;
  const double h = h_aux(omega, eps, rho2);
  const double hh = h * h * rho2 - 1.0;
  const cplx xb = std::conj(xi);
  Vec4 u;
  u(0) = h * xb * eps;
  u(1) = eps;
  u(2) = xb * xb * hh / (omega + E);
  u(3) = xb * hh;
  return u;
}

}  // namespace detail

// Smooth unit eigenvector for band 3 or 4 of bulk_symbol(p, xi, zeta).
// General parameter signs are reduced to the canonical sector:
//   eta = -1  ->  zeta -> -zeta (symbol identical in the flipped variable)
//   lambda<0  ->  conjugate by s3 x I (flips the coupling sign)
//   omega<0   ->  conjugate by s1 x I (swaps stacking and Omega -> -Omega)
inline Vec4 smooth_eigenvector(const ModelParams& p, int band, double xi,
                               double zeta) {
  if (band != 3 && band != 4)
    throw std::invalid_argument("smooth_eigenvector: band must be 3 or 4");
  if (p.lambda == 0.0 || p.omega == 0.0)
    throw std::invalid_argument("smooth_eigenvector: needs lambda*omega != 0");
  ModelParams q = p;
  double z2 = (p.eta == -1) ? -zeta : zeta;
  q.eta = +1;
  bool flip_lambda = false, flip_omega = false;
  if (q.lambda < 0) { q.lambda = -q.lambda; flip_lambda = true; }
  if (q.omega < 0) { q.omega = -q.omega; q.stacking = -q.stacking; flip_omega = true; }
  const cplx zc(xi, z2);
  Vec4 u;
  if (q.stacking > 0)
    u = (band == 4) ? detail::gauge_plus_band4(q.omega, q.lambda, zc)
                    : detail::gauge_plus_band3(q.omega, q.lambda, zc);
  else
    u = (band == 4) ? detail::gauge_minus_band4(q.omega, q.lambda, zc)
                    : detail::gauge_minus_band3(q.omega, q.lambda, zc);
  if (flip_omega) {  // undo the s1 x I conjugation (swap block pairs)
    Vec4 v;
    v(0) = u(2); v(1) = u(3); v(2) = u(0); v(3) = u(1);
    u = v;
  }
  if (flip_lambda) { u(2) = -u(2); u(3) = -u(3); }
  return u / u.norm();
}

// Asymptotic gauge vector in the direction theta (|xi| -> infinity limit of
// the smooth gauge). Sign sectors reduced exactly as in smooth_eigenvector.
inline Vec4 limit_eigenvector(const ModelParams& p, int band, double theta) {
  if (band != 3 && band != 4)
    throw std::invalid_argument("limit_eigenvector: band must be 3 or 4");
  ModelParams q = p;
  double th = (p.eta == -1) ? -theta : theta;
  q.eta = +1;
  bool flip_lambda = false, flip_omega = false;
  if (q.lambda < 0) { q.lambda = -q.lambda; flip_lambda = true; }
  if (q.omega < 0) { q.omega = -q.omega; q.stacking = -q.stacking; flip_omega = true; }
  const double omega = q.omega, eps = q.lambda;
  const double beta = 2 * omega + std::sqrt(4 * omega * omega + eps * eps);
  const cplx xh = std::exp(iu * th), xb = std::conj(xh);
  Vec4 u;
  if (q.stacking > 0) {
    if (band == 4) { u(0) = xb * beta; u(1) = beta; u(2) = eps; u(3) = eps * xh; }
    else { u(0) = eps; u(1) = eps * xh; u(2) = -beta * xh; u(3) = -beta * xh * xh; }
  } else {
    if (band == 4) { u(0) = beta; u(1) = beta * xh; u(2) = xb * eps; u(3) = eps; }
    else { u(0) = xb * eps; u(1) = eps; u(2) = -beta * xb * xb; u(3) = -beta * xb; }
  }
  if (flip_omega) {
    Vec4 v;
    v(0) = u(2); v(1) = u(3); v(2) = u(0); v(3) = u(1);
    u = v;
  }
  if (flip_lambda) { u(2) = -u(2); u(3) = -u(3); }
  return u / u.norm();
}

// Closed-form half-invariants (canonical sector), used as test oracles and
// reporting references.
struct HalfInvariants {
  double W4_plus, W3_plus, W4_minus, W3_minus;
};

inline HalfInvariants closed_form_half_invariants(double omega, double lambda) {
  const double eps2 = lambda * lambda;
  const double beta = 2 * omega + std::sqrt(4 * omega * omega + eps2);
  const double b2 = beta * beta, d = 2 * (eps2 + b2);
  HalfInvariants w;
  w.W4_plus = (b2 - eps2) / d;
  w.W3_plus = -(eps2 + 3 * b2) / d;
  w.W4_minus = (eps2 - b2) / d;
  w.W3_minus = (eps2 + 3 * b2) / d;
  return w;
}

}  // namespace dm::bulkspectra
