#pragma once
// Smooth switch functions: C^infinity-in-practice interpolants that are
// bit-exactly constant outside a finite transition interval [c1, c2].
// The default profile is the quintic smoothstep t^3(10-15t+6t^2); it has two
// continuous derivatives at the endpoints and exact plateaus, which the
// dealiasing sampler relies on.

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dm {

enum class SwitchProfile { PolynomialSmoothstep, TanhMollified };

struct SwitchSpec {
  double v1 = 0.0;  // value for t < c1
  double v2 = 1.0;  // value for t > c2
  double c1 = -1.0;
  double c2 = 1.0;
  SwitchProfile profile = SwitchProfile::PolynomialSmoothstep;
};

// Unit profile on [0,1]: 0 at 0, 1 at 1, monotone.
inline double switch_unit(double s, SwitchProfile profile) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  if (profile == SwitchProfile::TanhMollified) {
    // exp-based bump integral profile: exactly constant outside (0,1),
    // C^inf inside; 1/(1+exp(1/s - 1/(1-s))) in the overflow-safe tanh form.
    const double a = 1.0 / s - 1.0 / (1.0 - s);
    return 0.5 * (1.0 - std::tanh(0.5 * a));
  }
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

inline double switch_unit_deriv(double s, SwitchProfile profile) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  if (profile == SwitchProfile::TanhMollified) {
    // f' = -a' f (1 - f) with f = 1/(1+e^a); f(1-f) = sech^2(a/2)/4 is
    // overflow-safe for large |a|
    const double a = 1.0 / s - 1.0 / (1.0 - s);
    const double da = -1.0 / (s * s) - 1.0 / ((1.0 - s) * (1.0 - s));
    const double sech = 1.0 / std::cosh(0.5 * a);
    return -da * 0.25 * sech * sech;
  }
  return 30.0 * s * s * (1.0 - s) * (1.0 - s);
}

inline double eval_switch(const SwitchSpec& sw, double t) {
  if (sw.c2 < sw.c1) throw std::invalid_argument("switch: c2 < c1");
  if (t <= sw.c1) return sw.v1;
  if (t >= sw.c2) return sw.v2;
  const double s = (t - sw.c1) / (sw.c2 - sw.c1);
  return sw.v1 + (sw.v2 - sw.v1) * switch_unit(s, sw.profile);
}

inline double eval_switch_deriv(const SwitchSpec& sw, double t) {
  if (t <= sw.c1 || t >= sw.c2) return 0.0;
  const double w = sw.c2 - sw.c1;
  const double s = (t - sw.c1) / w;
  return (sw.v2 - sw.v1) * switch_unit_deriv(s, sw.profile) / w;
}

// Odd switch through 0 on [-w, w] from v=-1 to +1 (mass-type profile).
inline SwitchSpec odd_mass_switch(double halfwidth) {
  return SwitchSpec{-1.0, 1.0, -halfwidth, halfwidth,
                    SwitchProfile::PolynomialSmoothstep};
}

}  // namespace dm
