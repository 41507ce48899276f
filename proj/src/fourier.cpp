#include "dm/fourier.hpp"

#include <lapacke.h>

#include <map>
#include <mutex>

#include "dm/bulkspectra.hpp"

namespace dm::fourier {

namespace {

// Synthesis matrix E (M x n_modes): E(j, k+K) = e^{2 pi i k j / M}.
Mat synthesis_matrix(int M, int K) {
  Mat e(M, 2 * K + 1);
  for (int j = 0; j < M; ++j)
    for (int k = -K; k <= K; ++k)
      e(j, k + K) = std::exp(iu * (2.0 * pi * k * j / double(M)));
  return e;
}

// Offset-analysis matrix F (n_off x M): F(m+2K, j) = e^{-2 pi i m j / M} / M,
// for offsets m in [-2K, 2K].
Mat offset_matrix(int M, int K) {
  const int K2 = 2 * K;
  Mat f(2 * K2 + 1, M);
  for (int m = -K2; m <= K2; ++m)
    for (int j = 0; j < M; ++j)
      f(m + K2, j) = std::exp(-iu * (2.0 * pi * m * j / double(M))) / double(M);
  return f;
}

struct GridTables {
  Mat ex, ey;  // synthesis
  Mat fx, fy;  // offset analysis
};

const GridTables& tables_for(const FourierGrid& g) {
  static std::map<std::tuple<int, int, int>, GridTables> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(g.dims, g.Kx, g.Ky);
  auto it = cache.find(key);
  if (it == cache.end()) {
    GridTables t;
    t.ex = synthesis_matrix(g.nx_samples(), g.Kx);
    t.fx = offset_matrix(g.nx_samples(), g.Kx);
    if (g.dims == 2) {
      t.ey = synthesis_matrix(g.ny_samples(), g.Ky);
      t.fy = offset_matrix(g.ny_samples(), g.Ky);
    }
    it = cache.emplace(key, std::move(t)).first;
  }
  return it->second;
}

using CMatMap = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                                               Eigen::RowMajor>>;
using MatMap = Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>;

}  // namespace

std::vector<cplx> field_coefficients(const FourierGrid& g, const std::vector<cplx>& samples) {
  const int mx = g.nx_samples(), my = g.ny_samples();
  if ((int)samples.size() != mx * my)
    throw std::invalid_argument("field_coefficients: sample count mismatch");
  const auto& t = tables_for(g);
  CMatMap s(samples.data(), my, mx);
  if (g.dims == 1) {
    // row vector of samples -> offsets
    Mat out = t.fx * s.transpose();  // (4K+1) x 1
    return std::vector<cplx>(out.data(), out.data() + out.size());
  }
  Mat out = t.fy * (s * t.fx.transpose());  // (4Ky+1) x (4Kx+1)
  std::vector<cplx> flat((size_t)out.rows() * out.cols());
  MatMap(flat.data(), out.rows(), out.cols()) = out;
  return flat;
}

Mat multiplication_operator(const FourierGrid& g, const std::vector<cplx>& samples) {
  const auto vh = field_coefficients(g, samples);
  const int nx = g.nx_modes(), ny = g.ny_modes();
  const int kx2 = 2 * g.Kx, ky2 = g.dims == 2 ? 2 * g.Ky : 0;
  const int nxo = 2 * kx2 + 1;
  const int n = nx * ny;
  Mat b(n, n);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const int row = iy * nx + ix;
      for (int jy = 0; jy < ny; ++jy)
        for (int jx = 0; jx < nx; ++jx)
          b(row, jy * nx + jx) = vh[(size_t)(iy - jy + ky2) * nxo + (ix - jx + kx2)];
    }
  return b;
}

std::vector<cplx> synthesize(const FourierGrid& g, const Vec& coeff) {
  const int nx = g.nx_modes(), ny = g.ny_modes();
  const int mx = g.nx_samples(), my = g.ny_samples();
  if ((int)coeff.size() != nx * ny) throw std::invalid_argument("synthesize: size");
  const auto& t = tables_for(g);
  CMatMap c(coeff.data(), ny, nx);
  std::vector<cplx> out((size_t)my * mx);
  if (g.dims == 1) {
    Mat v = t.ex * c.transpose();  // mx x 1
    std::copy(v.data(), v.data() + mx, out.begin());
    return out;
  }
  Mat v = t.ey * (c * t.ex.transpose());  // my x mx
  MatMap(out.data(), my, mx) = v;
  return out;
}

Vec analyze(const FourierGrid& g, const std::vector<cplx>& samples) {
  const int nx = g.nx_modes(), ny = g.ny_modes();
  const int mx = g.nx_samples(), my = g.ny_samples();
  if ((int)samples.size() != mx * my) throw std::invalid_argument("analyze: size");
  const auto& t = tables_for(g);
  CMatMap s(samples.data(), my, mx);
  // Restriction of the offset analysis to |k| <= K: rows [K, 3K] of F.
  Vec out(nx * ny);
  if (g.dims == 1) {
    Mat v = t.fx.middleRows(g.Kx, nx) * s.transpose();
    std::copy(v.data(), v.data() + nx, out.data());
    return out;
  }
  Mat v = t.fy.middleRows(g.Ky, ny) * (s * t.fx.middleRows(g.Kx, nx).transpose());
  Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out.data(), ny, nx) = v;
  return out;
}

Vec apply_multiplication(const FourierGrid& g, const std::vector<cplx>& samples,
                         const Vec& coeff) {
  auto grid_vals = synthesize(g, coeff);
  for (size_t i = 0; i < grid_vals.size(); ++i) grid_vals[i] *= samples[i];
  return analyze(g, grid_vals);
}

AssembledOperator assemble(const model::OperatorSpec& spec, const FourierGrid& g) {
  if (spec.dims != g.dims) throw std::invalid_argument("assemble: dimension mismatch");
  const int nk = g.modes_per_component();
  const int nc = spec.ncomp;
  AssembledOperator op;
  op.grid = g;
  op.ncomp = nc;
  op.valley_of_component = spec.valley_of_component;
  op.tag = spec.tag;
  op.matrix = Mat::Zero((Eigen::Index)nc * nk, (Eigen::Index)nc * nk);
  const int nx = g.nx_modes(), ny = g.ny_modes();

  if (spec.constant.size() > 0) {
    for (int a = 0; a < nc; ++a)
      for (int b = 0; b < nc; ++b)
        if (spec.constant(a, b) != cplx(0.0))
          op.matrix.block((Eigen::Index)a * nk, (Eigen::Index)b * nk, nk, nk)
              .diagonal().array() += spec.constant(a, b);
  }
  for (const auto& d : spec.derivs) {
    RVec sym(nk);
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        sym[iy * nx + ix] = (d.axis == 0) ? g.kx_symbol(ix - g.Kx)
                                          : g.ky_symbol(iy - g.Ky);
    for (int a = 0; a < nc; ++a)
      for (int b = 0; b < nc; ++b)
        if (d.coeff(a, b) != cplx(0.0))
          op.matrix.block((Eigen::Index)a * nk, (Eigen::Index)b * nk, nk, nk)
              .diagonal() += d.coeff(a, b) * sym.cast<cplx>();
  }
  for (const auto& m : spec.mults) {
    const Mat block = multiplication_operator(g, sample_field(g, m.f));
    for (int a = 0; a < nc; ++a)
      for (int b = 0; b < nc; ++b)
        if (m.coeff(a, b) != cplx(0.0))
          op.matrix.block((Eigen::Index)a * nk, (Eigen::Index)b * nk, nk, nk) +=
              m.coeff(a, b) * block;
  }
  return op;
}

void hermitian_eig(const Mat& h, RVec& evals, Mat& evecs) {
  const int n = int(h.rows());
  evecs = h;  // zheev overwrites with eigenvectors (column-major, matches Eigen)
  evals.resize(n);
  const int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'V', 'L', n,
                                 reinterpret_cast<lapack_complex_double*>(evecs.data()),
                                 n, evals.data());
  if (info != 0) throw std::runtime_error("zheev failed, info=" + std::to_string(info));
}

SpectralDecomposition diagonalize(const AssembledOperator& op,
                                  std::optional<std::pair<double, double>> window) {
  const int n = op.dim();
  SpectralDecomposition sd;
  sd.grid = op.grid;
  sd.ncomp = op.ncomp;
  sd.valley_of_component = op.valley_of_component;
  sd.tag = op.tag;
  Mat a = op.matrix;  // zheevr destroys its input
  std::vector<double> w(n);
  std::vector<lapack_int> isuppz(2 * (size_t)n);
  int m = 0;
  // For windowed solves, cap eigenvector storage at n columns (zheevr writes
  // at most n); shrink afterwards.
  const char range = window ? 'V' : 'A';
  const double vl = window ? window->first : 0.0;
  const double vu = window ? window->second : 0.0;
  Mat z(n, n);
  const int info = LAPACKE_zheevr(
      LAPACK_COL_MAJOR, 'V', range, 'L', n,
      reinterpret_cast<lapack_complex_double*>(a.data()), n, vl, vu, 0, 0,
      2 * LAPACKE_dlamch('S'), &m, w.data(),
      reinterpret_cast<lapack_complex_double*>(z.data()), n, isuppz.data());
  if (info != 0) throw std::runtime_error("zheevr failed, info=" + std::to_string(info));
  if (window) {
    sd.windowed = true;
    sd.window_lo = vl;
    sd.window_hi = vu;
  }
  sd.eigenvalues = Eigen::Map<RVec>(w.data(), m);
  sd.eigenvectors = z.leftCols(m);
  return sd;
}

EdgeBandResult edge_band_structure(const model::EdgeModelSpec& spec,
                                   const std::vector<double>& xi1_list, int Ky) {
  const auto gap = bulkspectra::bulk_gap(spec.params);
  const FourierGrid g = make_grid_1d(spec.Ly, Ky);
  EdgeBandResult out;
  out.xi1_list = xi1_list;
  // localization window: smooth bump = 1 on |yc| <= Ly/8, 0 beyond Ly/4
  const SwitchSpec bump{1.0, 0.0, spec.Ly / 8.0, spec.Ly / 4.0,
                        SwitchProfile::PolynomialSmoothstep};
  const int mx = g.nx_samples();
  std::vector<double> win(mx);
  for (int j = 0; j < mx; ++j)
    win[j] = eval_switch(bump, std::abs(g.x_node(j) - spec.Ly / 2.0));
  for (double xi1 : xi1_list) {
    const auto op = assemble(model::edge_operator(spec, xi1), g);
    RVec evals;
    Mat evecs;
    hermitian_eig(op.matrix, evals, evecs);
    out.all_energies.emplace_back(evals.data(), evals.data() + evals.size());
    for (int j = 0; j < evals.size(); ++j) {
      if (std::abs(evals[j]) >= gap.E_min) continue;
      const int nk = g.modes_per_component();
      double num = 0.0, den = 0.0;
      for (int c = 0; c < 4; ++c) {
        const Vec comp = evecs.col(j).segment((Eigen::Index)c * nk, nk);
        const auto vals = synthesize(g, comp);
        for (int jx = 0; jx < mx; ++jx) {
          const double rho = std::norm(vals[jx]);
          den += rho;
          num += rho * win[jx];
        }
      }
      out.in_gap.push_back({xi1, evals[j], den > 0 ? num / den : 0.0});
    }
  }
  return out;
}

}  // namespace dm::fourier
