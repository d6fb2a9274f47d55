#pragma once

// Generalized logistic model of accuracy versus SNR:
//   ACC(x) = 50 + 50 / (1 + Q exp(-B x))^(1/nu)      [%], x in dB

#include <span>
#include <utility>
#include <vector>

#include "stvo/errors.hpp"

namespace stvo {

struct LogisticFit {
  double q = 1.0;
  double b = 0.1;   // 1/dB
  double nu = 1.0;
  double max_relative_error = 0.0;  // max |fit - data| / data over the fitted points
  double rss = 0.0;

  double operator()(double snr_db) const;
};

/// Fit failure; best_so_far() holds the best parameters that were reached.
class LogisticFitError : public NumericError {
 public:
  LogisticFitError(const std::string& what, LogisticFit best)
      : NumericError(what), best_(best) {}
  const LogisticFit& best_so_far() const noexcept { return best_; }

 private:
  LogisticFit best_;
};

double generalized_logistic(double snr_db, double q, double b, double nu);

/// Least-squares fit of (Q, B, nu) with Levenberg-Marquardt in log-parameter
/// space (keeps all three positive), started from a grid of initial guesses.
/// Needs >= 4 points with a visible transition.
LogisticFit fit_generalized_logistic(std::span<const std::pair<double, double>> points);

/// SNR (dB) at which the curve reaches `accuracy_pct`. Throws DomainError
/// outside (50, 100); returns -infinity when the value underflows the model.
double invert_logistic(const LogisticFit& fit, double accuracy_pct);

}  // namespace stvo
