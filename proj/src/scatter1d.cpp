#include "dm/scatter1d.hpp"

#include <stdexcept>

namespace dm::scatter1d {

namespace {

using Mat22 = Eigen::Matrix2cd;

// Transfer matrix of one constant-potential cell of width h:
// (psi, psi') at the right end = M * (psi, psi') at the left end,
// psi'' = (V - E) psi = -q^2 psi with q = sqrt(E - V) (complex branch covers
// evanescent cells: cos/sin of imaginary argument become cosh/sinh).
Mat22 cell_transfer(double V, double E, double h) {
  const cplx q = std::sqrt(cplx(E - V, 0.0));
  Mat22 m;
  if (std::abs(q) * h < 1e-8) {
    // q -> 0 limit: psi'' ~ 0
    m << 1.0, h, -q * q * h, 1.0;
    return m;
  }
  const cplx c = std::cos(q * h), s = std::sin(q * h);
  m << c, s / q, -q * s, c;
  return m;
}

ScatterMatrix from_transfer(const Mat22& M, double k, double xL, double xR) {
  // plane-wave frames W(x) = [[e^{ikx}, e^{-ikx}], [ik e^{ikx}, -ik e^{-ikx}]]
  auto frame = [k](double x) {
    const cplx ep = std::exp(cplx(0.0, k * x)), em = std::exp(cplx(0.0, -k * x));
    Mat22 w;
    w << ep, em, cplx(0, k) * ep, cplx(0, -k) * em;
    return w;
  };
  const Mat22 T = frame(xR).inverse() * M * frame(xL);  // (a,b) -> (c,d)
  ScatterMatrix s;
  s.k = k;
  s.x_left = xL;
  s.x_right = xR;
  const cplx t22 = T(1, 1);
  s.r_plus = -T(1, 0) / t22;
  s.t_plus = T.determinant() / t22;  // = 1/t22 since det T = 1
  s.t_minus = cplx(1.0) / t22;
  s.r_minus = T(0, 1) / t22;
  return s;
}

}  // namespace

double ScatterMatrix::unitarity_residual() const {
  Mat22 s;
  s << r_plus, t_minus, t_plus, r_minus;
  return ((s * s.adjoint()) - Mat22::Identity()).cwiseAbs().maxCoeff();
}

ScatterMatrix numeric_smatrix(const Potential& V, double xL, double xR, double k,
                              int cells) {
  if (k <= 0) throw std::invalid_argument("numeric_smatrix: k must be positive");
  if (!(xR > xL)) throw std::invalid_argument("numeric_smatrix: empty segment");
  const double E = k * k;
  const double h = (xR - xL) / cells;
  Mat22 M = Mat22::Identity();
  for (int j = 0; j < cells; ++j) {
    const double xm = xL + (j + 0.5) * h;  // midpoint sample
    M = cell_transfer(V(xm), E, h) * M;
  }
  return from_transfer(M, k, xL, xR);
}

cplx closed_form_barrier(double V0, double a, double k) {
  if (k * k <= V0)
    throw std::invalid_argument("closed_form_barrier: requires k^2 > V0");
  if (V0 == 0.0) return cplx(0.0);
  const double q = std::sqrt(k * k - V0);
  const cplx num = V0 * std::sin(2 * q * a) * std::exp(cplx(0.0, -2 * k * a));
  const cplx den = (2 * k * k - V0) * std::sin(2 * q * a) +
                   cplx(0.0, 2 * k * q) * std::cos(2 * q * a);
  return num / den;
}

SplitResult split_conductivities(const ScatterMatrix& SL, const ScatterMatrix& SR) {
  SplitResult out;
  const cplx denom = 1.0 - SL.r_minus * SR.r_plus;
  if (std::abs(denom) < 1e-12) {
    out.degenerate = true;
    return out;
  }
  out.uL = SL.t_plus / denom;
  out.vL = SR.r_plus * SL.t_plus / denom;
  out.vR = SR.t_minus / denom;
  out.uR = SL.r_minus * SR.t_minus / denom;
  out.sigma_plus = std::norm(out.uL) + std::norm(out.uR);
  out.sigma_minus = -(std::norm(out.vL) + std::norm(out.vR));
  return out;
}

std::vector<SweepPoint> position_sweep(const Potential& V, double xL, double xR,
                                       double k, const std::vector<double>& x0_list,
                                       int cells) {
  std::vector<SweepPoint> out;
  out.reserve(x0_list.size());
  for (double x0 : x0_list) {
    if (!(x0 > xL && x0 < xR))
      throw std::invalid_argument("position_sweep: x0 outside [xL, xR]");
    const double frac = (x0 - xL) / (xR - xL);
    const int cl = std::max(2, (int)std::lround(cells * frac));
    const int cr = std::max(2, cells - cl);
    const auto SL = numeric_smatrix(V, xL, x0, k, cl);
    const auto SR = numeric_smatrix(V, x0, xR, k, cr);
    const auto sp = split_conductivities(SL, SR);
    SweepPoint pt;
    pt.x0 = x0;
    pt.sigma_plus = sp.sigma_plus;
    pt.sigma_minus = sp.sigma_minus;
    pt.split_in_support = std::abs(V(x0)) > 1e-12;
    out.push_back(pt);
  }
  return out;
}

}  // namespace dm::scatter1d
