#pragma once

// Closed-form reduced-position dynamics of a spin-torque vortex oscillator.
//
// The vortex core obeys the Bernoulli equation  ds/dt = alpha(J) s + beta(J) s^(n+1)
// with alpha and beta affine in the current density J. n = 2 is the low-order
// model (s-LOTEA); a current-dependent real order n(J) gives the high-precision
// model (s-HPTEA). Both are integrated exactly over a constant-current interval.
//
// Units: current densities in A/cm^2, currents in mA, rates in Hz, times in s.

#include <array>
#include <cstddef>
#include <optional>

namespace stvo {

inline constexpr double kDefaultSFloor = 1e-4;
inline constexpr double kDefaultEdgeMargin = 1e-6;
// Below this |alpha| the alpha -> 0 limit of the closed form is used.
inline constexpr double kAlphaLimitHz = 1.0;

/// Fitted coefficients of alpha(J) = a_J J + a and beta(J) = b_J J + b.
/// Defaults are the chirality +1 set for a 200 nm dot.
struct DynamicalConstants {
  double a_j = 6.64;     // Hz cm^2 / A
  double b_j = -0.43;    // Hz cm^2 / A
  double a = -39.97e6;   // Hz
  double b = -25.92e6;   // Hz
  int chirality = +1;

  void validate() const;
};

struct OscillatorConfig {
  double diameter_nm = 200.0;
  double resistance_ohm = 140.6;
  DynamicalConstants constants{};
  std::optional<double> i_cr2_override_ma;

  /// Cross-section pi (d/2)^2 in cm^2.
  double area_cm2() const;
  void validate() const;
};

/// Bernoulli order n(J) = sum_k c_k J^k, J in A/cm^2. The default n == 2
/// reduces s-HPTEA to s-LOTEA.
class HpteaOrderPolynomial {
 public:
  using Coefficients = std::array<double, 6>;

  HpteaOrderPolynomial() = default;
  explicit HpteaOrderPolynomial(const Coefficients& coefficients);

  double operator()(double density) const noexcept {
    double n = c_[5];
    for (std::size_t k = 5; k-- > 0;) n = n * density + c_[k];
    return n;
  }

  const Coefficients& coefficients() const noexcept { return c_; }
  bool is_degenerate() const noexcept;

  /// Throws ConfigError if n(J) < 1 anywhere on a uniform grid over [lo, hi].
  void check_range(double density_lo, double density_hi, int samples = 1001) const;

 private:
  Coefficients c_{2.0, 0.0, 0.0, 0.0, 0.0, 0.0};
};

/// Clamp applied to every evolved state. s = 0 is absorbing, so the floor keeps
/// the oscillator excitable; the ceiling keeps the core inside the dot.
struct StateBounds {
  double floor = kDefaultSFloor;
  double ceiling = 1.0 - kDefaultEdgeMargin;
};

inline double alpha(double density, const DynamicalConstants& k) noexcept {
  return k.a_j * density + k.a;
}

inline double beta(double density, const DynamicalConstants& k) noexcept {
  return k.b_j * density + k.b;
}

/// Steady-state reduced position sqrt(-alpha/beta); 0 in the resonant regime
/// (alpha <= 0). Throws DomainError if beta >= 0 or the orbit would leave the
/// dot (value >= 1).
double s_infinity(double density, const DynamicalConstants& k);

/// Stable fixed point of the order-n equation, (-alpha/beta)^(1/n), or 0 when
/// alpha <= 0. Equal to s_infinity for n = 2.
double fixed_point(double density, double order, const DynamicalConstants& k);

/// Exact solution of ds/dt = alpha s + beta s^(order+1) after dt_s seconds at
/// constant density, clamped to `bounds`.
double evolve_order(double s0, double density, double dt_s, double order,
                    const DynamicalConstants& k, const StateBounds& bounds = {});

inline double evolve_lotea(double s0, double density, double dt_s, const DynamicalConstants& k,
                           const StateBounds& bounds = {}) {
  return evolve_order(s0, density, dt_s, 2.0, k, bounds);
}

/// Throws ConfigError if n(J) < 1 at the given density.
double evolve_hptea(double s0, double density, double dt_s, const DynamicalConstants& k,
                    const HpteaOrderPolynomial& order, const StateBounds& bounds = {});

double current_to_density(double current_ma, const OscillatorConfig& osc);
double density_to_current(double density, const OscillatorConfig& osc);

/// Current (mA) at which alpha vanishes: below it the oscillator is resonant.
double critical_current_1(const OscillatorConfig& osc);

/// Override if set, otherwise the current at which s_infinity reaches 1.
double critical_current_2(const OscillatorConfig& osc);

enum class DynamicsModel { Lotea, Hptea };

/// A model choice bound to its parameters; the per-slot stepping primitive
/// used by the reservoir.
class Dynamics {
 public:
  Dynamics() = default;
  Dynamics(DynamicalConstants constants, DynamicsModel model,
           HpteaOrderPolynomial order = {}, StateBounds bounds = {});

  double step(double s, double density, double dt_s) const {
    return model_ == DynamicsModel::Lotea
               ? evolve_lotea(s, density, dt_s, constants_, bounds_)
               : evolve_hptea(s, density, dt_s, constants_, order_, bounds_);
  }

  const DynamicalConstants& constants() const noexcept { return constants_; }
  DynamicsModel model() const noexcept { return model_; }
  const HpteaOrderPolynomial& order() const noexcept { return order_; }
  const StateBounds& bounds() const noexcept { return bounds_; }

 private:
  DynamicalConstants constants_{};
  DynamicsModel model_ = DynamicsModel::Lotea;
  HpteaOrderPolynomial order_{};
  StateBounds bounds_{};
};

}  // namespace stvo
