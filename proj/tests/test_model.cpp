#include <random>

#include "doctest.h"
#include "dm/model.hpp"

using namespace dm;
using namespace dm::model;

TEST_SUITE("fast") {

TEST_CASE("switches: exact plateaus and derivative support") {
  SwitchSpec sw{0.0, 1.0, -1.0, 1.0, SwitchProfile::PolynomialSmoothstep};
  CHECK(eval_switch(sw, -1.0) == 0.0);
  CHECK(eval_switch(sw, -5.0) == 0.0);
  CHECK(eval_switch(sw, 1.0) == 1.0);
  CHECK(eval_switch(sw, 7.0) == 1.0);
  CHECK(eval_switch_deriv(sw, -1.0) == 0.0);
  CHECK(eval_switch_deriv(sw, 1.0) == 0.0);
  CHECK(eval_switch(sw, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  sw.profile = SwitchProfile::TanhMollified;
  CHECK(eval_switch(sw, -1.0) == 0.0);
  CHECK(eval_switch(sw, 1.0) == 1.0);
  CHECK(eval_switch(sw, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  // no overflow near the plateau edges
  CHECK(std::isfinite(eval_switch_deriv(sw, -0.999999)));
  CHECK(std::isfinite(eval_switch_deriv(sw, 0.999999)));
}

TEST_CASE("switches: derivative matches finite differences") {
  for (auto prof : {SwitchProfile::PolynomialSmoothstep, SwitchProfile::TanhMollified}) {
    SwitchSpec sw{-1.0, 2.0, 0.5, 3.5, prof};
    const double h = 1e-6;
    for (double t : {0.8, 1.5, 2.0, 2.9, 3.3}) {
      const double fd = (eval_switch(sw, t + h) - eval_switch(sw, t - h)) / (2 * h);
      CHECK(eval_switch_deriv(sw, t) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("odd mass switch is odd and hits +-1") {
  const SwitchSpec m = odd_mass_switch(1.0);
  CHECK(eval_switch(m, 0.0) == 0.0);
  for (double t : {0.1, 0.35, 0.8, 1.0, 2.0})
    CHECK(eval_switch(m, t) == doctest::Approx(-eval_switch(m, -t)).epsilon(1e-14));
  CHECK(eval_switch(m, 1.0) == 1.0);
  CHECK(eval_switch(m, -1.0) == -1.0);
}

TEST_CASE("junction geometry: f vanishes inside the core and on the rays") {
  JunctionGeometry g;
  CHECK(eval_f(g, 0.1, 0.1) == 0.0);  // inside eps_r
  // sin(3 theta) = 0 on rays theta = j pi / 3
  for (int j = 0; j < 6; ++j) {
    const double th = pi * j / 3.0;
    CHECK(std::abs(eval_f(g, 10 * std::cos(th), 10 * std::sin(th))) < 1e-12);
  }
  // sector sign alternation: mass flips across adjacent sectors
  const SwitchSpec m = odd_mass_switch(1.0);
  for (int j = 0; j < 6; ++j) {
    const double th = pi * j / 3.0 + pi / 6.0;
    const double a = junction_mass(g, m, 20 * std::cos(th), 20 * std::sin(th));
    const double b = junction_mass(g, m, 20 * std::cos(th + pi / 3), 20 * std::sin(th + pi / 3));
    CHECK(a == doctest::Approx(-b).epsilon(1e-12));
    CHECK(std::abs(a) == doctest::Approx(1.0).epsilon(1e-12));  // deep in a sector
  }
}

TEST_CASE("junction geometry: g vanishes on the filter rays only") {
  JunctionGeometry g;
  // cos(theta - theta1) = cos(theta0) at theta = +-pi/6
  for (double th : {pi / 6.0, -pi / 6.0})
    CHECK(std::abs(eval_g(g, 10 * std::cos(th), 10 * std::sin(th))) < 1e-12);
  CHECK(std::abs(eval_g(g, 10.0, 0.0)) > 0.1);
  // growth comparison: <f,g> and <x,y> are uniformly comparable
  const auto [c1, c2] = fg_growth_constants(g, 40.0, 60);
  CHECK(c1 > 0.0);
  CHECK(c2 < 10.0);
}

TEST_CASE("junction geometry: intersecting zero sets rejected") {
  CHECK_THROWS_AS(JunctionGeometry(3, 0.25, pi / 6.0, pi / 6.0), std::invalid_argument);
  CHECK_THROWS_AS(JunctionGeometry(0, 0.25, pi / 6.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(JunctionGeometry(3, 1.5, pi / 6.0, 0.0), std::invalid_argument);
}

TEST_CASE("bulk symbol: hermitian with paired eigenvalues") {
  ModelParams p;
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double xi = U(rng), zeta = U(rng);
    const Mat4 h = bulk_symbol(p, xi, zeta);
    CHECK((h - h.adjoint()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Mat4> es(h);
    const auto& ev = es.eigenvalues();
    CHECK(ev(0) == doctest::Approx(-ev(3)).epsilon(1e-12));
    CHECK(ev(1) == doctest::Approx(-ev(2)).epsilon(1e-12));
  }
  // at xi = zeta = 0: eigenvalues {+-1, +-sqrt(1.04)} for omega=1, lambda=0.2
  Eigen::SelfAdjointEigenSolver<Mat4> es(bulk_symbol(p, 0.0, 0.0));
  CHECK(es.eigenvalues()(0) == doctest::Approx(-std::sqrt(1.04)).epsilon(1e-14));
  CHECK(es.eigenvalues()(1) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(es.eigenvalues()(2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(es.eigenvalues()(3) == doctest::Approx(std::sqrt(1.04)).epsilon(1e-14));
}

TEST_CASE("bulk symbol: parameter validation") {
  ModelParams p;
  p.eta = 2;
  CHECK_THROWS_AS(bulk_symbol(p, 0.0, 0.0), std::invalid_argument);
  p.eta = 1;
  p.stacking = 0;
  CHECK_THROWS_AS(bulk_symbol(p, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("dirac symbol eigenvalues") {
  const Mat2 h = dirac_symbol(0.7, 0.3, -0.4);
  Eigen::SelfAdjointEigenSolver<Mat2> es(h);
  const double E = std::sqrt(0.7 * 0.7 + 0.3 * 0.3 + 0.4 * 0.4);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-E).epsilon(1e-14));
  CHECK(es.eigenvalues()(1) == doctest::Approx(E).epsilon(1e-14));
}

TEST_CASE("edge periodized mass: continuous and periodic") {
  const SwitchSpec m = odd_mass_switch(1.0);
  const double Ly = 100.0;
  // continuity at the matching points y = Ly/4 and 3Ly/4
  for (double y0 : {Ly / 4.0, 3 * Ly / 4.0}) {
    const double a = edge_periodized_mass(m, y0 - 1e-9, Ly);
    const double b = edge_periodized_mass(m, y0 + 1e-9, Ly);
    CHECK(a == doctest::Approx(b).epsilon(1e-8));
  }
  // periodicity across the cell
  CHECK(edge_periodized_mass(m, 0.0, Ly) ==
        doctest::Approx(edge_periodized_mass(m, Ly, Ly)).epsilon(1e-14));
  // physical wall at the center: odd around Ly/2
  for (double d : {0.3, 0.7, 2.0})
    CHECK(edge_periodized_mass(m, Ly / 2 + d, Ly) ==
          doctest::Approx(-edge_periodized_mass(m, Ly / 2 - d, Ly)).epsilon(1e-14));
}

TEST_CASE("junction mass: steering dipole tilts the oriented mass") {
  DiracJunctionSpec s;
  // symmetric case: mass inherits the sector alternation
  const double a = dirac_junction_mass(s, 70.0, 50.0);  // theta=0 ray: m=0
  CHECK(std::abs(a) < 1e-12);
  s.steer.amplitude = 0.25;
  s.steer.theta_m = 0.0;
  // theta_m = 0 adds -amplitude * g * yc: antisymmetric in y around the center
  const double up = dirac_junction_mass(s, 52.0, 53.0);
  const double dn = dirac_junction_mass(s, 52.0, 47.0);
  DiracJunctionSpec s0;
  const double up0 = dirac_junction_mass(s0, 52.0, 53.0);
  const double dn0 = dirac_junction_mass(s0, 52.0, 47.0);
  CHECK(up - up0 == doctest::Approx(-(dn - dn0)).epsilon(1e-10));
  CHECK(up < up0);  // dipole lowers the mass above the axis
  // far from the vertex the Gaussian envelope kills the perturbation
  CHECK(dirac_junction_mass(s, 95.0, 50.0) ==
        doctest::Approx(dirac_junction_mass(s0, 95.0, 50.0)).epsilon(1e-12));
}

TEST_CASE("valley operator kinds and wrong-kind rejection") {
  ValleyModelSpec s;
  s.kind = ValleyKind::H4;
  CHECK_THROWS_AS(valley_operator(s), std::invalid_argument);
  const auto op4 = valley_operator_2d(s);
  CHECK(op4.ncomp == 4);
  CHECK(op4.valley_of_component == std::vector<int>{+1, +1, -1, -1});
  s.kind = ValleyKind::H2eps;
  CHECK_THROWS_AS(valley_operator_2d(s), std::invalid_argument);
  const auto op2 = valley_operator(s);
  CHECK(op2.ncomp == 2);
  CHECK(op2.valley_of_component == std::vector<int>{+1, -1});
}

}  // TEST_SUITE
