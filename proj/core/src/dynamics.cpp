#include "stvo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stvo/errors.hpp"

namespace stvo {

void DynamicalConstants::validate() const {
  if (chirality != 1 && chirality != -1) {
    throw ConfigError("chirality must be +1 or -1, got " + std::to_string(chirality));
  }
  for (double v : {a_j, b_j, a, b}) {
    if (!std::isfinite(v)) throw ConfigError("dynamical constants must be finite");
  }
}

double OscillatorConfig::area_cm2() const {
  const double radius_cm = 0.5 * diameter_nm * 1e-7;
  return std::numbers::pi * radius_cm * radius_cm;
}

void OscillatorConfig::validate() const {
  if (!(diameter_nm > 0.0)) throw ConfigError("oscillator diameter must be positive");
  if (!(resistance_ohm > 0.0)) throw ConfigError("oscillator resistance must be positive");
  if (i_cr2_override_ma && !(*i_cr2_override_ma > 0.0)) {
    throw ConfigError("i_cr2 override must be positive");
  }
  constants.validate();
}

HpteaOrderPolynomial::HpteaOrderPolynomial(const Coefficients& coefficients) : c_(coefficients) {
  for (double v : c_) {
    if (!std::isfinite(v)) throw ConfigError("order polynomial coefficients must be finite");
  }
}

bool HpteaOrderPolynomial::is_degenerate() const noexcept {
  return c_[0] == 2.0 && std::all_of(c_.begin() + 1, c_.end(), [](double v) { return v == 0.0; });
}

void HpteaOrderPolynomial::check_range(double density_lo, double density_hi, int samples) const {
  samples = std::max(samples, 2);
  for (int i = 0; i < samples; ++i) {
    const double j = density_lo + (density_hi - density_lo) * i / (samples - 1);
    const double n = (*this)(j);
    if (!(n >= 1.0)) {
      throw ConfigError("order polynomial gives n(J) = " + std::to_string(n) + " < 1 at J = " +
                        std::to_string(j) + " A/cm^2");
    }
  }
}

double s_infinity(double density, const DynamicalConstants& k) {
  const double al = alpha(density, k);
  const double be = beta(density, k);
  if (!(be < 0.0)) {
    throw DomainError("beta(J) must be negative, got " + std::to_string(be) + " Hz");
  }
  if (al <= 0.0) return 0.0;
  const double s = std::sqrt(-al / be);
  if (s >= 1.0) {
    throw DomainError("steady orbit s_inf = " + std::to_string(s) +
                      " leaves the dot (current above I_cr2)");
  }
  return s;
}

double fixed_point(double density, double order, const DynamicalConstants& k) {
  const double al = alpha(density, k);
  const double be = beta(density, k);
  if (!(be < 0.0)) {
    throw DomainError("beta(J) must be negative, got " + std::to_string(be) + " Hz");
  }
  if (al <= 0.0) return 0.0;
  return std::pow(-al / be, 1.0 / order);
}

double evolve_order(double s0, double density, double dt_s, double order,
                    const DynamicalConstants& k, const StateBounds& bounds) {
  if (!(s0 >= 0.0 && s0 < 1.0)) {
    throw DomainError("reduced position must lie in [0, 1), got " + std::to_string(s0));
  }
  if (!(dt_s >= 0.0)) throw DomainError("evolution time must be non-negative");
  if (!(density >= 0.0)) {
    throw DomainError("current density must be non-negative, got " + std::to_string(density));
  }
  if (!(order >= 1.0)) {
    throw ConfigError("Bernoulli order must be >= 1, got " + std::to_string(order));
  }
  if (s0 == 0.0 || dt_s == 0.0) return std::clamp(s0, bounds.floor, bounds.ceiling);

  const bool quadratic = order == 2.0;
  const double al = alpha(density, k);
  const double be = beta(density, k);
  const double x = quadratic ? s0 * s0 : std::pow(s0, order);

  // (1 + x beta/alpha) e^{-n alpha t} - x beta/alpha, rearranged so that the
  // alpha -> 0 cancellation is carried by expm1.
  double den;
  if (std::abs(al) < kAlphaLimitHz) {
    den = 1.0 - order * be * x * dt_s;
  } else {
    const double nat = order * al * dt_s;
    den = std::exp(-nat) - x * be * (-std::expm1(-nat)) / al;
  }
  if (!(den > 0.0)) {
    throw DomainError("finite-time blow-up: root argument " + std::to_string(den) +
                      " at J = " + std::to_string(density) + " A/cm^2");
  }
  const double s = quadratic ? s0 / std::sqrt(den) : s0 * std::pow(den, -1.0 / order);
  return std::clamp(s, bounds.floor, bounds.ceiling);
}

double evolve_hptea(double s0, double density, double dt_s, const DynamicalConstants& k,
                    const HpteaOrderPolynomial& order, const StateBounds& bounds) {
  const double n = order(density);
  if (!(n >= 1.0)) {
    throw ConfigError("order polynomial gives n(J) = " + std::to_string(n) + " < 1 at J = " +
                      std::to_string(density) + " A/cm^2");
  }
  return evolve_order(s0, density, dt_s, n, k, bounds);
}

double current_to_density(double current_ma, const OscillatorConfig& osc) {
  if (!(current_ma >= 0.0)) {
    throw DomainError("drive current must be non-negative, got " + std::to_string(current_ma) +
                      " mA");
  }
  return current_ma * 1e-3 / osc.area_cm2();
}

double density_to_current(double density, const OscillatorConfig& osc) {
  return density * osc.area_cm2() * 1e3;
}

double critical_current_1(const OscillatorConfig& osc) {
  const auto& k = osc.constants;
  if (k.a_j == 0.0) throw ConfigError("a_J = 0: alpha does not depend on the current");
  return density_to_current(-k.a / k.a_j, osc);
}

double critical_current_2(const OscillatorConfig& osc) {
  if (osc.i_cr2_override_ma) {
    if (!(*osc.i_cr2_override_ma > 0.0)) throw ConfigError("i_cr2 override must be positive");
    return *osc.i_cr2_override_ma;
  }
  const auto& k = osc.constants;
  const double slope = k.a_j + k.b_j;
  if (!(slope > 0.0)) {
    throw ConfigError("a_J + b_J <= 0: s_inf never reaches 1; set an explicit I_cr2 override");
  }
  return density_to_current(-(k.a + k.b) / slope, osc);
}

Dynamics::Dynamics(DynamicalConstants constants, DynamicsModel model, HpteaOrderPolynomial order,
                   StateBounds bounds)
    : constants_(constants), model_(model), order_(order), bounds_(bounds) {
  constants_.validate();
  if (!(bounds_.floor >= 0.0 && bounds_.floor < bounds_.ceiling && bounds_.ceiling < 1.0)) {
    throw ConfigError("state bounds must satisfy 0 <= floor < ceiling < 1");
  }
}

}  // namespace stvo
