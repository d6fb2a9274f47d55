#include "stvo/logistic_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Core>
#include <unsupported/Eigen/NonLinearOptimization>

namespace stvo {
namespace {

// ln(1 + e^z) without overflow.
double softplus(double z) {
  return z > 30.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double logistic_sigma(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Parameters: theta = (ln Q, ln B, ln nu).
struct Residuals {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  std::span<const std::pair<double, double>> points;

  int inputs() const { return 3; }
  int values() const { return static_cast<int>(points.size()); }

  int operator()(const Eigen::VectorXd& theta, Eigen::VectorXd& fvec) const {
    const double b = std::exp(theta(1));
    const double nu = std::exp(theta(2));
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double z = theta(0) - b * points[i].first;
      fvec(static_cast<Eigen::Index>(i)) =
          50.0 + 50.0 * std::exp(-softplus(z) / nu) - points[i].second;
    }
    return 0;
  }

  int df(const Eigen::VectorXd& theta, Eigen::MatrixXd& fjac) const {
    const double b = std::exp(theta(1));
    const double nu = std::exp(theta(2));
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double x = points[i].first;
      const double z = theta(0) - b * x;
      const double u = softplus(z);
      const double g = 50.0 * std::exp(-u / nu);
      const double dz = -g / nu * logistic_sigma(z);
      const auto r = static_cast<Eigen::Index>(i);
      fjac(r, 0) = dz;
      fjac(r, 1) = dz * (-b * x);
      fjac(r, 2) = g * u / nu;
    }
    return 0;
  }
};

bool converged(Eigen::LevenbergMarquardtSpace::Status s) {
  using namespace Eigen::LevenbergMarquardtSpace;
  switch (s) {
    case RelativeReductionTooSmall:
    case RelativeErrorTooSmall:
    case RelativeErrorAndReductionTooSmall:
    case CosinusTooSmall:
    case FtolTooSmall:
    case XtolTooSmall:
    case GtolTooSmall:
      return true;
    default:
      return false;
  }
}

double max_relative_error(const LogisticFit& fit, std::span<const std::pair<double, double>> pts) {
  double worst = 0.0;
  for (const auto& [x, y] : pts) worst = std::max(worst, std::abs(fit(x) - y) / std::abs(y));
  return worst;
}

}  // namespace

double generalized_logistic(double snr_db, double q, double b, double nu) {
  return 50.0 + 50.0 * std::exp(-softplus(std::log(q) - b * snr_db) / nu);
}

double LogisticFit::operator()(double snr_db) const {
  return generalized_logistic(snr_db, q, b, nu);
}

LogisticFit fit_generalized_logistic(std::span<const std::pair<double, double>> points) {
  if (points.size() < 4) {
    throw LogisticFitError("need at least 4 points, got " + std::to_string(points.size()), {});
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y) || y <= 0.0) {
      throw LogisticFitError("non-finite or non-positive data point", {});
    }
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  if (hi - lo < 1.0) {
    throw LogisticFitError("data spans " + std::to_string(hi - lo) +
                               " points: no sigmoid transition to fit",
                           {});
  }

  Residuals functor{points};
  LogisticFit best;
  best.rss = std::numeric_limits<double>::infinity();
  bool any_converged = false;
  for (double q0 : {10.0, 1e2, 1e3, 1e4}) {
    for (double b0 : {0.1, 0.3, 1.0}) {
      for (double nu0 : {0.5, 1.0, 2.0}) {
        Eigen::VectorXd theta(3);
        theta << std::log(q0), std::log(b0), std::log(nu0);
        Eigen::LevenbergMarquardt<Residuals> lm(functor);
        lm.parameters.maxfev = 2000;
        lm.parameters.ftol = 1e-14;
        lm.parameters.xtol = 1e-14;
        const auto status = lm.minimize(theta);
        if (!theta.allFinite()) continue;
        Eigen::VectorXd r(functor.values());
        functor(theta, r);
        const double rss = r.squaredNorm();
        if (!std::isfinite(rss)) continue;
        const bool ok = converged(status);
        // Prefer converged runs; among those, the smallest residual.
        if ((ok && !any_converged) || (ok == any_converged && rss < best.rss)) {
          best.q = std::exp(theta(0));
          best.b = std::exp(theta(1));
          best.nu = std::exp(theta(2));
          best.rss = rss;
          any_converged = any_converged || ok;
        }
      }
    }
  }
  if (!std::isfinite(best.rss)) throw LogisticFitError("no start produced a finite fit", best);
  best.max_relative_error = max_relative_error(best, points);
  if (!any_converged) throw LogisticFitError("Levenberg-Marquardt did not converge", best);
  if (!std::isfinite(best.q) || best.q <= 0.0 || !(best.q < 1e300) || best.b > 1e6 ||
      best.nu > 1e6 || best.nu < 1e-6) {
    throw LogisticFitError("fit ran to a parameter boundary", best);
  }
  return best;
}

double invert_logistic(const LogisticFit& fit, double accuracy_pct) {
  if (!(accuracy_pct > 50.0 && accuracy_pct < 100.0)) {
    throw DomainError("accuracy " + std::to_string(accuracy_pct) + "% outside (50, 100)");
  }
  // (1 + Q e^{-Bx})^{1/nu} = 50 / (acc - 50)
  const double ratio = 50.0 / (accuracy_pct - 50.0);
  const double inner = std::expm1(fit.nu * std::log(ratio));
  const double snr = -std::log(inner / fit.q) / fit.b;
  if (std::isnan(snr)) throw NumericError("logistic inversion failed");
  return snr;
}

}  // namespace stvo
