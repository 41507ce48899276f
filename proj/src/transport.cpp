#include "dm/transport.hpp"

#include <sstream>
#include <stdexcept>

namespace dm::transport {

namespace {

struct FilterPoint {
  double p = 0.0, px = 0.0, py = 0.0;
};

// Smooth box collar: 1 on the physical window, 0 in a band near the torus
// seam, placed strictly inside the region where the q-mask vanishes so it
// never contributes to masked traces. Makes every p-filter exactly periodic.
struct Collar {
  SwitchSpec down;
  double value(double t) const { return eval_switch(down, std::abs(t)); }
  double deriv(double t) const {
    const double d = eval_switch_deriv(down, std::abs(t));
    return t >= 0 ? d : -d;
  }
};

Collar x_collar(double L) {
  return {SwitchSpec{1.0, 0.0, 0.30 * L, 0.40 * L, SwitchProfile::PolynomialSmoothstep}};
}
Collar y_collar(double L) {
  return {SwitchSpec{1.0, 0.0, 0.40 * L, 0.46 * L, SwitchProfile::PolynomialSmoothstep}};
}

FilterPoint eval_edge_1d(const FilterSpec& s, double x, double L) {
  const double xc = x - L / 2.0, x0c = s.x0 - L / 2.0;
  const SwitchSpec up{0.0, 1.0, x0c - s.delta, x0c + s.delta, s.profile};
  const SwitchSpec dn{1.0, 0.0, 7.0 * L / 16.0 - s.delta, 7.0 * L / 16.0 + s.delta,
                      s.profile};
  const double u = eval_switch(up, xc), du = eval_switch_deriv(up, xc);
  const double d = eval_switch(dn, xc), dd = eval_switch_deriv(dn, xc);
  FilterPoint f;
  f.p = u * d;
  f.px = du * d + u * dd;
  return f;
}

// Wedge filter of the junction trace: smooth union of the vertical
// half-plane switch at x0 and the two oblique half-plane switches whose
// common zero region is the leftward wedge with apex at (x0 + Lx/4, Ly/2).
FilterPoint eval_wedge(const FilterSpec& s, double x, double y, double Lx,
                       double Ly) {
  const double c = std::cos(s.theta), sn = std::sin(s.theta);
  const SwitchSpec S{0.0, 1.0, -s.delta, s.delta, s.profile};
  const double yc = y - Ly / 2.0;
  const double e1 = x - s.x0;
  const double xa = x - s.x0 - Lx / 4.0;
  const double e2p = -c * yc + sn * xa;
  const double e2m = +c * yc + sn * xa;
  // max-form composition: a single switch ramp applied to the largest of the
  // three half-plane coordinates; gradient follows the active branch
  double e = e1, gx = 1.0, gy = 0.0;
  if (e2p > e) { e = e2p; gx = sn; gy = -c; }
  if (e2m > e) { e = e2m; gx = sn; gy = c; }
  const double v = eval_switch(S, e), dv = eval_switch_deriv(S, e);
  FilterPoint f;
  f.p = v;
  f.px = dv * gx;
  f.py = dv * gy;
  return f;
}

FilterPoint eval_junction_p(const FilterSpec& s, double x, double y, double Lx,
                            double Ly) {
  FilterPoint w;
  if (s.kind == FilterKind::rotated_p && s.j != 0) {
    // evaluate the base wedge in coordinates rotated by -2*pi*j/3 about the
    // cell center; chain rule maps the gradient back
    const double a = -2.0 * pi * s.j / 3.0;
    const double ca = std::cos(a), sa = std::sin(a);
    const double xc = x - Lx / 2.0, yc = y - Ly / 2.0;
    const double xr = ca * xc - sa * yc + Lx / 2.0;
    const double yr = sa * xc + ca * yc + Ly / 2.0;
    FilterPoint g = eval_wedge(s, xr, yr, Lx, Ly);
    w.p = g.p;
    w.px = g.px * ca + g.py * sa;
    w.py = -g.px * sa + g.py * ca;
  } else {
    w = eval_wedge(s, x, y, Lx, Ly);
  }
  // periodizing collar (inside the q = 0 region)
  const Collar cx = x_collar(Lx), cy = y_collar(Ly);
  const double xc = x - Lx / 2.0, yc = y - Ly / 2.0;
  const double bx = cx.value(xc), by = cy.value(yc);
  FilterPoint f;
  f.p = w.p * bx * by;
  f.px = w.px * bx * by + w.p * cx.deriv(xc) * by;
  f.py = w.py * bx * by + w.p * bx * cy.deriv(yc);
  return f;
}

FilterPoint eval_mask_q(const FilterSpec& s, double x, double y, double Lx,
                        double Ly, int dims) {
  const SwitchSpec T{1.0, 0.0, -s.delta, s.delta, s.profile};
  const double xc = x - Lx / 2.0;
  const double ax = std::abs(xc) - s.hx_frac * Lx;
  FilterPoint f;
  if (dims == 1) {
    f.p = eval_switch(T, ax);
    f.px = eval_switch_deriv(T, ax) * (xc >= 0 ? 1.0 : -1.0);
    return f;
  }
  // max-form: descend through one ramp on the largest box coordinate
  const double yc = y - Ly / 2.0;
  const double ay = std::abs(yc) - s.hy_frac * Ly;
  double e = ax, gx = (xc >= 0 ? 1.0 : -1.0), gy = 0.0;
  if (ay > e) { e = ay; gx = 0.0; gy = (yc >= 0 ? 1.0 : -1.0); }
  f.p = eval_switch(T, e);
  const double dv = eval_switch_deriv(T, e);
  f.px = dv * gx;
  f.py = dv * gy;
  return f;
}

// Apply a real scalar field (dealiased multiplication) to every component of
// a coefficient vector.
Vec apply_scalar(const FourierGrid& g, const std::vector<cplx>& field,
                 const Vec& u, int ncomp) {
  const int m = g.modes_per_component();
  Vec out(u.size());
  for (int c = 0; c < ncomp; ++c)
    out.segment((Eigen::Index)c * m, m) =
        fourier::apply_multiplication(g, field, u.segment((Eigen::Index)c * m, m));
  return out;
}

std::vector<cplx> to_cplx(const std::vector<double>& v) {
  std::vector<cplx> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = cplx(v[i], 0.0);
  return out;
}

}  // namespace

SampledFilter make_filter(const FilterSpec& spec, const FourierGrid& g) {
  if (spec.delta <= 0.0) throw std::invalid_argument("make_filter: delta <= 0");
  if (spec.delta > std::min(g.Lx, g.dims == 2 ? g.Ly : g.Lx) / 16.0)
    throw std::invalid_argument("make_filter: delta too large for the domain");
  if ((spec.kind == FilterKind::junction_p || spec.kind == FilterKind::rotated_p) &&
      g.dims != 2)
    throw std::invalid_argument("make_filter: wedge filters need a 2D grid");
  const int mx = g.nx_samples(), my = g.ny_samples();
  SampledFilter out;
  out.spec = spec;
  out.p.resize((size_t)mx * my);
  out.px.resize((size_t)mx * my);
  out.py.resize((size_t)mx * my);
  for (int jy = 0; jy < my; ++jy) {
    const double y = g.dims == 2 ? g.y_node(jy) : 0.0;
    for (int jx = 0; jx < mx; ++jx) {
      const double x = g.x_node(jx);
      FilterPoint f;
      switch (spec.kind) {
        case FilterKind::edge_1d: f = eval_edge_1d(spec, x, g.Lx); break;
        case FilterKind::junction_p:
        case FilterKind::rotated_p: f = eval_junction_p(spec, x, y, g.Lx, g.Ly); break;
        case FilterKind::mask_q: f = eval_mask_q(spec, x, y, g.Lx, g.Ly, g.dims); break;
      }
      const size_t idx = (size_t)jy * mx + jx;
      out.p[idx] = f.p;
      out.px[idx] = f.px;
      out.py[idx] = f.py;
    }
  }
  return out;
}

SampledFilter multiply_filters(const SampledFilter& a, const SampledFilter& b) {
  if (a.p.size() != b.p.size())
    throw std::invalid_argument("multiply_filters: grid mismatch");
  SampledFilter out = a;
  for (size_t i = 0; i < a.p.size(); ++i) {
    out.p[i] = a.p[i] * b.p[i];
    out.px[i] = a.px[i] * b.p[i] + a.p[i] * b.px[i];
    out.py[i] = a.py[i] * b.p[i] + a.p[i] * b.py[i];
  }
  return out;
}

DensityWeight make_density_weight(double E0) {
  if (E0 <= 0.0) throw std::invalid_argument("density weight: E0 <= 0");
  // integral of exp(-1/(1-t^2)) over (-1,1) by composite Simpson
  const int n = 4000;
  double s = 0.0;
  auto f = [](double t) {
    const double d = 1.0 - t * t;
    return d > 0 ? std::exp(-1.0 / d) : 0.0;
  };
  const double h = 2.0 / n;
  for (int i = 0; i < n; ++i) {
    const double a = -1.0 + i * h;
    s += h / 6.0 * (f(a) + 4.0 * f(a + h / 2.0) + f(a + h));
  }
  DensityWeight w;
  w.E0 = E0;
  w.c = 1.0 / (E0 * s);
  return w;
}

ConductivityResult conductivity(const AssembledOperator& op,
                                const SpectralDecomposition& sd,
                                const SampledFilter& P, const SampledFilter& Q,
                                const DensityWeight& w) {
  const auto& g = sd.grid;
  const auto pf = to_cplx(P.p), qf = to_cplx(Q.p);
  ConductivityResult res;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < sd.eigenvalues.size(); ++j) {
    const double wj = w(sd.eigenvalues[j]);
    if (wj < 1e-14) continue;
    const Vec u = sd.eigenvectors.col(j);
    const Vec pu = apply_scalar(g, pf, u, sd.ncomp);
    const Vec hpu = op.matrix * pu;
    const Vec hu = op.matrix * u;
    const Vec phu = apply_scalar(g, pf, hu, sd.ncomp);
    const Vec comm = iu * (hpu - phu);
    const Vec qc = apply_scalar(g, qf, comm, sd.ncomp);
    const double elem = u.dot(qc).real();
    res.contributions.push_back({sd.eigenvalues[j], wj, elem});
    acc += wj * elem;
  }
  res.two_pi_sigma = 2.0 * pi * acc;
  std::ostringstream prov;
  prov << op.tag << " dims=" << g.dims << " Kx=" << g.Kx << " Ky=" << g.Ky
       << " Lx=" << g.Lx << " Ly=" << g.Ly << " x0=" << P.spec.x0
       << " delta=" << P.spec.delta << " E0=" << w.E0;
  res.provenance = prov.str();
  return res;
}

ConductivityResult conductivity_dirac_analytic(const SpectralDecomposition& sd,
                                               const SampledFilter& P,
                                               const SampledFilter& Q,
                                               const DensityWeight& w) {
  if (sd.ncomp != 2)
    throw std::invalid_argument("analytic commutator: 2-component models only");
  const auto& g = sd.grid;
  const int m = g.modes_per_component();
  // Quadrature weight over the squared grid norm of a coefficient-normalized
  // state (Parseval: sum_i |u(x_i)|^2 dx dy = Lx * Ly when sum |u_hat|^2 = 1).
  const double cell = 1.0 / ((double)g.nx_samples() * (g.dims == 2 ? g.ny_samples() : 1));
  ConductivityResult res;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < sd.eigenvalues.size(); ++j) {
    const double wj = w(sd.eigenvalues[j]);
    if (wj < 1e-14) continue;
    const auto u0 = fourier::synthesize(g, sd.eigenvectors.col(j).segment(0, m));
    const auto u1 = fourier::synthesize(g, sd.eigenvectors.col(j).segment(m, m));
    cplx elem(0.0, 0.0);
    for (size_t i = 0; i < u0.size(); ++i) {
      const cplx grad_m(P.px[i], -P.py[i]);  // upper-right entry px - i py
      const cplx e0 = Q.p[i] * grad_m * u1[i];
      const cplx e1 = Q.p[i] * std::conj(grad_m) * u0[i];
      elem += std::conj(u0[i]) * e0 + std::conj(u1[i]) * e1;
    }
    const double el = elem.real() * cell;
    res.contributions.push_back({sd.eigenvalues[j], wj, el});
    acc += wj * el;
  }
  res.two_pi_sigma = 2.0 * pi * acc;
  res.provenance = "dirac analytic commutator";
  return res;
}

ConductivityResult valley_conductivity(const AssembledOperator& op,
                                       const SpectralDecomposition& sd,
                                       const SampledFilter& P,
                                       const SampledFilter& Q, int valley,
                                       const DensityWeight& w) {
  if (sd.valley_of_component.empty())
    throw std::invalid_argument("valley_conductivity: operator is not valley-tagged");
  const auto& g = sd.grid;
  const int m = g.modes_per_component();
  std::vector<int> comps;
  for (int c = 0; c < sd.ncomp; ++c)
    if (sd.valley_of_component[c] == valley) comps.push_back(c);
  if (comps.empty())
    throw std::invalid_argument("valley_conductivity: no components with that tag");
  std::vector<Eigen::Index> idx;
  for (int c : comps)
    for (int k = 0; k < m; ++k) idx.push_back((Eigen::Index)c * m + k);
  const Eigen::Index nb = (Eigen::Index)idx.size();
  Mat Hb(nb, nb);
  for (Eigen::Index a = 0; a < nb; ++a)
    for (Eigen::Index b = 0; b < nb; ++b) Hb(a, b) = op.matrix(idx[a], idx[b]);
  const auto pf = to_cplx(P.p), qf = to_cplx(Q.p);
  const int nbc = (int)comps.size();
  ConductivityResult res;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < sd.eigenvalues.size(); ++j) {
    const double wj = w(sd.eigenvalues[j]);
    if (wj < 1e-14) continue;
    Vec ub(nb);
    for (Eigen::Index a = 0; a < nb; ++a) ub(a) = sd.eigenvectors(idx[a], j);
    const Vec pu = apply_scalar(g, pf, ub, nbc);
    const Vec t1 = Hb * pu;
    const Vec hu = Hb * ub;
    const Vec t2 = apply_scalar(g, pf, hu, nbc);
    const Vec comm = iu * (t1 - t2);
    const Vec qc = apply_scalar(g, qf, comm, nbc);
    const double elem = ub.dot(qc).real();
    res.contributions.push_back({sd.eigenvalues[j], wj, elem});
    acc += wj * elem;
  }
  res.two_pi_sigma = 2.0 * pi * acc;
  std::ostringstream prov;
  prov << op.tag << " valley=" << valley << " x0=" << P.spec.x0 << " E0=" << w.E0;
  res.provenance = prov.str();
  return res;
}

std::vector<JunctionTableEntry> junction_table(
    const model::DiracJunctionSpec& spec, const std::vector<double>& x0_list,
    const std::vector<int>& N_list, double delta, double weight_E0,
    ElementMethod method, SwitchProfile filter_profile) {
  std::vector<JunctionTableEntry> out;
  const auto w = make_density_weight(weight_E0);
  for (int N : N_list) {
    const auto g = fourier::make_grid_2d(spec.Lx, spec.Ly, N, N);
    const auto op = fourier::assemble(model::dirac_junction_operator(spec), g);
    const double margin = 1.05 * weight_E0;
    const auto sd = fourier::diagonalize(op, std::make_pair(-margin, margin));
    FilterSpec qs;
    qs.kind = FilterKind::mask_q;
    qs.delta = delta;
    qs.profile = filter_profile;
    const auto Q = make_filter(qs, g);
    for (double x0 : x0_list) {
      FilterSpec ps;
      ps.kind = FilterKind::junction_p;
      ps.x0 = x0;
      ps.delta = delta;
      ps.profile = filter_profile;
      const auto P = make_filter(ps, g);
      const auto r = method == ElementMethod::assembled_commutator
                         ? conductivity(op, sd, P, Q, w)
                         : conductivity_dirac_analytic(sd, P, Q, w);
      out.push_back({x0, N, r.two_pi_sigma});
    }
  }
  return out;
}

namespace {

// Shared driver: build the 1D valley model, solve, and evaluate both valley
// conductivities at one filter position.
std::pair<double, double> valley_pair_1d(const model::ValleyModelSpec& spec, int K,
                                         double x0, double delta,
                                         const DensityWeight& w) {
  const auto g = fourier::make_grid_1d(spec.L, K);
  const auto op = fourier::assemble(model::valley_operator(spec), g);
  const auto sd = fourier::diagonalize(op);
  FilterSpec ps;
  ps.kind = FilterKind::edge_1d;
  ps.x0 = x0;
  ps.delta = delta;
  const auto P = make_filter(ps, g);
  FilterSpec qs;
  qs.kind = FilterKind::mask_q;
  qs.delta = delta;
  qs.hx_frac = 0.375;
  const auto Q = make_filter(qs, g);
  const double sp = valley_conductivity(op, sd, P, Q, +1, w).two_pi_sigma;
  const double sm = valley_conductivity(op, sd, P, Q, -1, w).two_pi_sigma;
  return {sp, sm};
}

}  // namespace

std::vector<ValleySweepEntry> omega_sweep(const model::ValleyModelSpec& base,
                                          const std::vector<double>& omega_list,
                                          const std::vector<double>& x0_list,
                                          int K, double weight_E0) {
  if (base.kind != model::ValleyKind::H2eps)
    throw std::invalid_argument("omega_sweep: model must be the two-scale 1D kind");
  const auto w = make_density_weight(weight_E0);
  std::vector<ValleySweepEntry> out;
  for (double om : omega_list) {
    model::ValleyModelSpec spec = base;
    spec.pot.omega_fast = om;
    for (double x0 : x0_list) {
      const auto [sp, sm] = valley_pair_1d(spec, K, x0, 2.0, w);
      out.push_back({om, spec.pot.V0, spec.energy_shift, x0, sp, sm});
    }
  }
  return out;
}

std::vector<ValleySweepEntry> energy_sweep(const model::ValleyModelSpec& base,
                                           const std::vector<double>& V0_list,
                                           const std::vector<double>& E_list,
                                           double x0, int Kx, int Ky,
                                           double weight_E0) {
  const auto w = make_density_weight(weight_E0);
  std::vector<ValleySweepEntry> out;
  for (double V0 : V0_list) {
    for (double E : E_list) {
      model::ValleyModelSpec spec = base;
      spec.pot.V0 = V0;
      spec.energy_shift = E;
      double sp = 0.0, sm = 0.0;
      if (spec.kind == model::ValleyKind::H4) {
        const auto g = fourier::make_grid_2d(spec.L, spec.Ly, Kx, Ky);
        const auto op = fourier::assemble(model::valley_operator_2d(spec), g);
        const double margin = 1.05 * weight_E0;
        const auto sd = fourier::diagonalize(op, std::make_pair(-margin, margin));
        // the wall channel lives in a thin strip, so the transition
        // half-width must shrink with the smaller period
        const double delta = std::min(2.0, std::min(spec.L, spec.Ly) / 16.0);
        FilterSpec ps;
        ps.kind = FilterKind::edge_1d;
        ps.x0 = x0;
        ps.delta = delta;
        const auto P = make_filter(ps, g);
        FilterSpec qs;
        qs.kind = FilterKind::mask_q;
        qs.hx_frac = 0.375;
        qs.hy_frac = 0.25;  // select the physical wall, mask its seam mirror
        qs.delta = delta;
        const auto Q = make_filter(qs, g);
        sp = valley_conductivity(op, sd, P, Q, +1, w).two_pi_sigma;
        sm = valley_conductivity(op, sd, P, Q, -1, w).two_pi_sigma;
      } else {
        std::tie(sp, sm) = valley_pair_1d(spec, Kx, x0, 2.0, w);
      }
      out.push_back({spec.pot.omega_fast, V0, E, x0, sp, sm});
    }
  }
  return out;
}

}  // namespace dm::transport
