#pragma once
// Pseudo-spectral discretization on periodic boxes: truncated Fourier bases
// with modes k in [-K, K] per dimension, dealiased multiplication operators
// sampled on the 3(K+1) fine grid, dense Hermitian assembly, and full or
// windowed diagonalization (LAPACK zheevr).
//
// Basis ordering is row-major over (component, ky, kx):
//   index = (c * (2Ky+1) + (ky+Ky)) * (2Kx+1) + (kx+Kx)   (2D)
//   index =  c * (2K+1) + (k+K)                            (1D)
// Basis functions are e^{2 pi i (kx x/Lx + ky y/Ly)} / sqrt(Lx Ly).

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dm/common.hpp"
#include "dm/model.hpp"
#include "dm/switches.hpp"

namespace dm::fourier {

struct FourierGrid {
  int dims = 1;
  double Lx = 100.0, Ly = 0.0;
  int Kx = 16, Ky = 0;

  int nx_modes() const { return 2 * Kx + 1; }
  int ny_modes() const { return dims == 2 ? 2 * Ky + 1 : 1; }
  int modes_per_component() const { return nx_modes() * ny_modes(); }
  int nx_samples() const { return 3 * (Kx + 1); }
  int ny_samples() const { return dims == 2 ? 3 * (Ky + 1) : 1; }
  double dx() const { return Lx / nx_samples(); }
  double dy() const { return dims == 2 ? Ly / ny_samples() : 0.0; }
  double x_node(int j) const { return j * dx(); }
  double y_node(int j) const { return j * dy(); }
  // derivative symbol of D = -i d/dx on mode k
  double kx_symbol(int k) const { return 2 * pi * k / Lx; }
  double ky_symbol(int k) const { return 2 * pi * k / Ly; }
};

inline FourierGrid make_grid_1d(double L, int K) {
  if (L <= 0 || K < 1) throw std::invalid_argument("make_grid: bad sizes");
  FourierGrid g;
  g.dims = 1; g.Lx = L; g.Kx = K;
  return g;
}

inline FourierGrid make_grid_2d(double Lx, double Ly, int Kx, int Ky) {
  if (Lx <= 0 || Ly <= 0 || Kx < 1 || Ky < 1)
    throw std::invalid_argument("make_grid: bad sizes");
  FourierGrid g;
  g.dims = 2; g.Lx = Lx; g.Ly = Ly; g.Kx = Kx; g.Ky = Ky;
  return g;
}

struct AssembledOperator {
  FourierGrid grid;
  int ncomp = 1;
  Mat matrix;  // dense Hermitian, size ncomp * modes_per_component
  std::vector<int> valley_of_component;
  std::string tag;
  int dim() const { return int(matrix.rows()); }
};

struct SpectralDecomposition {
  RVec eigenvalues;   // ascending
  Mat eigenvectors;   // orthonormal columns, coefficient space
  FourierGrid grid;
  int ncomp = 1;
  std::vector<int> valley_of_component;
  std::string tag;
  bool windowed = false;
  double window_lo = 0.0, window_hi = 0.0;
};

// --- sampling and transforms ------------------------------------------------

// Sample a coefficient function on the fine grid (row-major y-outer).
inline std::vector<cplx> sample_field(const FourierGrid& g, const model::CoeffFn& f) {
  const int mx = g.nx_samples(), my = g.ny_samples();
  std::vector<cplx> v((size_t)mx * my);
  for (int jy = 0; jy < my; ++jy)
    for (int jx = 0; jx < mx; ++jx)
      v[(size_t)jy * mx + jx] = f(g.x_node(jx), g.dims == 2 ? g.y_node(jy) : 0.0);
  return v;
}

// Fourier coefficients v_hat[m] of fine-grid samples for offsets
// m in [-2K, 2K] per dimension (separable direct DFT; grids are small).
std::vector<cplx> field_coefficients(const FourierGrid& g, const std::vector<cplx>& samples);

// Dealiased multiplication operator block: B[k,k'] = v_hat[k - k'].
Mat multiplication_operator(const FourierGrid& g, const std::vector<cplx>& samples);

// Apply the same operator to a single-component coefficient vector without
// forming the matrix (fine-grid synthesis, pointwise product, analysis).
Vec apply_multiplication(const FourierGrid& g, const std::vector<cplx>& samples,
                         const Vec& coeff);

// Synthesize a single-component coefficient vector on the fine grid.
std::vector<cplx> synthesize(const FourierGrid& g, const Vec& coeff);
// Project fine-grid samples back to coefficients (adjoint-consistent analysis).
Vec analyze(const FourierGrid& g, const std::vector<cplx>& samples);

// --- assembly and diagonalization -------------------------------------------

AssembledOperator assemble(const model::OperatorSpec& spec, const FourierGrid& g);

// Full solve when window is absent; otherwise only pairs with
// lambda in [window->first, window->second].
SpectralDecomposition diagonalize(const AssembledOperator& op,
                                  std::optional<std::pair<double, double>> window = {});

// Standalone dense Hermitian eigensolve (ascending), used by oracles.
void hermitian_eig(const Mat& h, RVec& evals, Mat& evecs);

// --- edge band structure -----------------------------------------------------

struct EdgeState {
  double xi1;
  double energy;
  double weight;  // localization weight near the physical wall
};

struct EdgeBandResult {
  std::vector<EdgeState> in_gap;                 // all in-gap states with weights
  std::vector<std::vector<double>> all_energies; // full spectrum per xi1
  std::vector<double> xi1_list;
};

EdgeBandResult edge_band_structure(const model::EdgeModelSpec& spec,
                                   const std::vector<double>& xi1_list, int Ky);

}  // namespace dm::fourier
