#include "dm/invariants.hpp"

#include <stdexcept>

namespace dm::invariants {

namespace {

using bulkspectra::smooth_eigenvector;

// Band frame at a momentum node: columns are the requested band vectors.
Mat frame_at(const ModelParams& p, const std::vector<int>& bands, double xi1,
             double xi2) {
  Mat f(4, (Eigen::Index)bands.size());
  for (size_t b = 0; b < bands.size(); ++b)
    f.col((Eigen::Index)b) = smooth_eigenvector(p, bands[b], xi1, xi2);
  return f;
}

// Normalized link variable between two frames: det of the overlap matrix.
cplx link(const Mat& a, const Mat& b) {
  const cplx d = (a.adjoint() * b).determinant();
  const double m = std::abs(d);
  if (m < 1e-13)
    throw std::runtime_error("curvature: singular projector link (gap closure?)");
  return d / m;
}

}  // namespace

CurvatureField curvature_map(const ModelParams& p, const std::set<int>& bands,
                             double R, int n) {
  if (p.lambda == 0.0 || p.omega == 0.0)
    throw std::invalid_argument("curvature_map: gapless parameters");
  if (R <= 0 || n < 16) throw std::invalid_argument("curvature_map: bad R or n");
  const std::vector<int> bl(bands.begin(), bands.end());
  const int nr = n, nt = n;
  // cache frames at all nodes (r_i, theta_j), i in [0,nr], j in [0,nt)
  std::vector<Mat> frames((size_t)(nr + 1) * nt);
  for (int i = 0; i <= nr; ++i) {
    const double r = R * i / nr;
    for (int j = 0; j < nt; ++j) {
      const double th = 2 * pi * j / nt;
      frames[(size_t)i * nt + j] = frame_at(p, bl, r * std::cos(th), r * std::sin(th));
    }
  }
  CurvatureField out;
  out.R = R;
  out.n = n;
  out.plaquettes.reserve((size_t)nr * nt);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      const int jp = (j + 1) % nt;
      const Mat& a = frames[(size_t)i * nt + j];
      const Mat& b = frames[(size_t)(i + 1) * nt + j];
      const Mat& c = frames[(size_t)(i + 1) * nt + jp];
      const Mat& d = frames[(size_t)i * nt + jp];
      // counterclockwise loop a -> b -> c -> d -> a; plaquette Berry phase
      // is minus the accumulated link phase.
      const cplx u = link(a, b) * link(b, c) * link(c, d) * link(d, a);
      const double phase = -std::arg(u);
      const double rc = R * (i + 0.5) / nr;
      const double thc = 2 * pi * (j + 0.5) / nt;
      out.plaquettes.push_back(
          {rc * std::cos(thc), rc * std::sin(thc), phase / (2 * pi), rc});
    }
  }
  return out;
}

double boundary_connection(const ModelParams& p, int band, double R, int n) {
  double acc = 0.0;
  Vec4 prev, first;
  for (int j = 0; j < n; ++j) {
    const double th = 2 * pi * j / n;
    const Vec4 u = (R > 0)
                       ? smooth_eigenvector(p, band, R * std::cos(th), R * std::sin(th))
                       : bulkspectra::limit_eigenvector(p, band, th);
    if (j == 0) first = u;
    else acc += std::arg(prev.dot(u));  // Eigen dot conjugates the left factor
    prev = u;
  }
  acc += std::arg(prev.dot(first));
  return -acc / (2 * pi);
}

HalfInvariantResult half_invariant(const ModelParams& p, int band, double R, int n) {
  HalfInvariantResult out;
  const auto field = curvature_map(p, {band}, R, n);
  out.disk_sum = field.total();
  const double conn_inf = boundary_connection(p, band, -1.0, n);
  const double conn_R = boundary_connection(p, band, R, n);
  out.tail = conn_inf - conn_R;
  out.value = out.disk_sum + out.tail;
  return out;
}

BulkDifferenceResult bulk_difference_invariant(const ModelParams& p, double R, int n) {
  ModelParams pp = p, pm = p;
  pp.stacking = +1;
  pm.stacking = -1;
  const double w4p = half_invariant(pp, 4, R, n).value;
  const double w3p = half_invariant(pp, 3, R, n).value;
  const double w4m = half_invariant(pm, 4, R, n).value;
  const double w3m = half_invariant(pm, 3, R, n).value;
  BulkDifferenceResult out;
  out.W_plus = w4p + w3p;
  out.W_minus = w4m + w3m;
  out.W = out.W_plus - out.W_minus;
  out.nearest_int = (int)std::lround(out.W);
  out.residual = std::abs(out.W - out.nearest_int);
  out.glue_43 = w4p - w3m;
  out.glue_34 = w3p - w4m;
  return out;
}

}  // namespace dm::invariants
