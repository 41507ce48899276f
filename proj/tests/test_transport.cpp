#include <random>

#include "doctest.h"
#include "dm/transport.hpp"

using namespace dm;
using namespace dm::transport;

namespace {

// central finite-difference validation of the sampled gradient fields;
// requires the grid spacing to resolve the transition half-width delta
void check_gradients(const SampledFilter& f, const fourier::FourierGrid& g) {
  const int mx = g.nx_samples(), my = g.ny_samples();
  const double tol = 0.6 * std::max(g.dx(), g.dy()) / f.spec.delta;
  int checked = 0;
  const int jy0 = (my == 1) ? 0 : 1;
  for (int jy = jy0; jy + 1 < my || (my == 1 && jy == 0); jy += 3)
    for (int jx = 1; jx + 1 < mx; jx += 3) {
      const size_t i = (size_t)jy * mx + jx;
      const double fdx = (f.p[i + 1] - f.p[i - 1]) / (2 * g.dx());
      CHECK(std::abs(f.px[i] - fdx) < tol * (1.0 + std::abs(fdx)));
      if (g.dims == 2) {
        const double fdy = (f.p[i + mx] - f.p[i - mx]) / (2 * g.dy());
        CHECK(std::abs(f.py[i] - fdy) < tol * (1.0 + std::abs(fdy)));
      }
      ++checked;
    }
  CHECK(checked > 10);
}

}  // namespace

TEST_SUITE("fast") {

TEST_CASE("edge_1d filter: plateaus, gradient, periodicity") {
  const auto g = fourier::make_grid_1d(100.0, 40);
  FilterSpec spec;
  spec.kind = FilterKind::edge_1d;
  spec.x0 = 50.0;
  spec.delta = 3.0;
  const auto f = make_filter(spec, g);
  // plateau values are exactly 0/1 away from the transitions
  double pmin = 2.0, pmax = -1.0;
  for (int j = 0; j < g.nx_samples(); ++j) {
    pmin = std::min(pmin, f.p[(size_t)j]);
    pmax = std::max(pmax, f.p[(size_t)j]);
    if (std::abs(g.x_node(j) - 70.0) < 1.0) CHECK(f.p[(size_t)j] == 1.0);
  }
  CHECK(pmin == 0.0);
  CHECK(pmax == 1.0);
  // endpoint continuity on the torus (both ends sit on the same plateau)
  CHECK(f.p.front() == f.p.back());
  check_gradients(f, g);
}

TEST_CASE("wedge and mask filters: plateaus and gradients") {
  const auto g = fourier::make_grid_2d(100.0, 100.0, 24, 24);
  FilterSpec ps;
  ps.kind = FilterKind::junction_p;
  ps.delta = 3.0;
  const auto P = make_filter(ps, g);
  FilterSpec qs;
  qs.kind = FilterKind::mask_q;
  qs.delta = 3.0;
  const auto Q = make_filter(qs, g);
  const int mx = g.nx_samples();
  auto at = [&](double x, double y, const SampledFilter& f) {
    const int jx = (int)std::lround(x / g.dx()) % mx;
    const int jy = (int)std::lround(y / g.dy()) % g.ny_samples();
    return f.p[(size_t)jy * mx + jx];
  };
  // deep inside the wedge (right of the apex, inside the collar box): p = 1
  CHECK(at(78.0, 50.0, P) == 1.0);
  // the periodizing collar kills the wedge near the x seam
  CHECK(at(95.0, 50.0, P) == 0.0);
  // far left of the switch: p = 0
  CHECK(at(20.0, 50.0, P) == 0.0);
  // q is 1 on the centered box and 0 at the torus seams
  CHECK(at(50.0, 50.0, Q) == 1.0);
  CHECK(at(50.0, 0.0, Q) == 0.0);
  CHECK(at(0.0, 50.0, Q) == 0.0);
  check_gradients(P, g);
  check_gradients(Q, g);

  // rotated wedge: R(x) equals the base wedge evaluated at the point rotated
  // by -2 pi j / 3 about the cell center (both points on collar plateaus)
  FilterSpec rs = ps;
  rs.kind = FilterKind::rotated_p;
  rs.j = 2;
  const auto R = make_filter(rs, g);
  check_gradients(R, g);
  const double th = -2.0 * pi * 2 / 3.0, c = std::cos(th), s = std::sin(th);
  int compared = 0;
  for (auto [x, y] : {std::pair{62.0, 38.0}, {62.0, 62.0}, {40.0, 50.0},
                      {66.0, 50.0}, {58.0, 58.0}}) {
    const double xc = x - 50.0, yc = y - 50.0;
    const double xr = 50.0 + c * xc - s * yc, yr = 50.0 + s * xc + c * yc;
    // only compare where the nearest-node lookup sits on a filter plateau
    const double pr = at(xr, yr, P);
    if (pr != 0.0 && pr != 1.0) continue;
    CHECK(at(x, y, R) == doctest::Approx(pr).epsilon(1e-10));
    ++compared;
  }
  CHECK(compared >= 2);
}

TEST_CASE("filter product rule") {
  const auto g = fourier::make_grid_2d(100.0, 100.0, 8, 8);
  FilterSpec ps;
  ps.kind = FilterKind::junction_p;
  FilterSpec qs;
  qs.kind = FilterKind::mask_q;
  const auto P = make_filter(ps, g), Q = make_filter(qs, g);
  const auto PQ = multiply_filters(P, Q);
  for (size_t i = 0; i < PQ.p.size(); i += 7) {
    CHECK(PQ.p[i] == doctest::Approx(P.p[i] * Q.p[i]).epsilon(1e-14));
    CHECK(PQ.px[i] ==
          doctest::Approx(P.px[i] * Q.p[i] + P.p[i] * Q.px[i]).epsilon(1e-12));
  }
}

TEST_CASE("density weight: compact support and unit mass") {
  const auto w = make_density_weight(0.9);
  CHECK(w(0.9) == 0.0);
  CHECK(w(-1.5) == 0.0);
  CHECK(w(0.0) > 0.0);
  // trapezoid quadrature of the bump integrates to 1
  const int n = 20000;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double E = -0.9 + 1.8 * i / n;
    s += w(E) * ((i == 0 || i == n) ? 0.5 : 1.0);
  }
  s *= 1.8 / n;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("junction conductivity at N=8: contributions ledger is consistent") {
  model::DiracJunctionSpec js;
  const auto g = fourier::make_grid_2d(js.Lx, js.Ly, 8, 8);
  const auto op = fourier::assemble(model::dirac_junction_operator(js), g);
  const auto sd = fourier::diagonalize(op, std::make_pair(-0.95, 0.95));
  const auto w = make_density_weight(0.9);
  FilterSpec ps;
  ps.kind = FilterKind::junction_p;
  FilterSpec qs;
  qs.kind = FilterKind::mask_q;
  const auto P = make_filter(ps, g), Q = make_filter(qs, g);
  const auto r = conductivity(op, sd, P, Q, w);
  CHECK(r.recompute() == doctest::Approx(r.two_pi_sigma).epsilon(1e-12));
  // only states with nonzero weight are recorded
  CHECK((int)r.contributions.size() <= sd.eigenvalues.size());
  CHECK(r.contributions.size() > 10);
  CHECK(r.two_pi_sigma > 0.5);  // coarse but already order 1
  CHECK(r.two_pi_sigma < 1.5);
  // analytic-commutator evaluation agrees at the few-percent level
  const auto ra = conductivity_dirac_analytic(sd, P, Q, w);
  CHECK(std::abs(ra.two_pi_sigma - r.two_pi_sigma) < 0.3);
}

TEST_CASE("valley conductivities: decoupled quantization and sum rule") {
  model::ValleyModelSpec vs;
  vs.pot.V0 = 0.0;  // decoupled
  const auto sw = omega_sweep(vs, {1.0}, {50.0}, 96);
  REQUIRE(sw.size() == 1);
  CHECK(sw[0].sigma_plus == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sw[0].sigma_minus == doctest::Approx(-1.0).epsilon(0.02));
  // frozen regression value at E0 = 0.2, K = 96
  CHECK(sw[0].sigma_plus == doctest::Approx(0.9993).epsilon(2e-3));
  CHECK(sw[0].sigma_plus + sw[0].sigma_minus == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("valley coupling dips at the resonant fast frequency") {
  model::ValleyModelSpec vs;  // V0 = 0.1
  const auto sw = omega_sweep(vs, {0.5, 2.0}, {50.0}, 96);
  REQUIRE(sw.size() == 2);
  const double off = sw[0].sigma_plus, res = sw[1].sigma_plus;
  CHECK(res < off);
  CHECK((off - res) / std::abs(off) >= 0.10);  // >= 10% relative dip at omega = 2
  for (const auto& e : sw)
    CHECK(e.sigma_plus + e.sigma_minus == doctest::Approx(0.0).epsilon(1e-8));
}

}  // TEST_SUITE

TEST_SUITE("slow") {

TEST_CASE("junction table at N=16: frozen values for both trace evaluations") {
  model::DiracJunctionSpec js;
  const std::vector<double> x0s{37.5, 50.0, 62.5};
  const auto rows = junction_table(js, x0s, {16});
  REQUIRE(rows.size() == 3);
  // regression baseline, assembled commutator, delta=2 polynomial switches
  CHECK(rows[0].two_pi_sigma == doctest::Approx(0.92470).epsilon(2e-3));
  CHECK(rows[1].two_pi_sigma == doctest::Approx(0.94752).epsilon(2e-3));
  CHECK(rows[2].two_pi_sigma == doctest::Approx(0.94341).epsilon(2e-3));

  const auto rows_q =
      junction_table(js, x0s, {16}, 4.0, 0.9, ElementMethod::analytic_quadrature,
                     SwitchProfile::TanhMollified);
  // quadrature evaluation of the analytic commutator, tanh switches, delta=4
  CHECK(rows_q[0].two_pi_sigma == doctest::Approx(0.94566).epsilon(2e-3));
  CHECK(rows_q[1].two_pi_sigma == doctest::Approx(0.73413).epsilon(2e-3));
  CHECK(rows_q[2].two_pi_sigma == doctest::Approx(0.93632).epsilon(2e-3));
}

TEST_CASE("energy sweep of the wall-channel model stays antisymmetric") {
  model::ValleyModelSpec vs;
  vs.kind = model::ValleyKind::H4;
  vs.pot.y_dependent = true;
  const auto sw = energy_sweep(vs, {0.1}, {0.0, 0.05}, 50.0, 24, 12);
  REQUIRE(sw.size() == 2);
  for (const auto& e : sw) {
    CHECK(e.sigma_plus + e.sigma_minus == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(e.sigma_plus > 0.5);
    CHECK(e.sigma_plus < 1.1);
  }
}

}  // TEST_SUITE
