#pragma once

// Closed-form tail bounds and expectation formulas. Pure functions.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace randlab::bounds {

struct BoundQuery {
  double mu = 0.0;     // expectation of the sum
  double delta = 0.0;  // relative deviation
  double t = 0.0;      // absolute deviation (or R for the 2^-R variant)
  std::vector<double> c;                         // bounded-difference widths
  std::vector<std::pair<double, double>> ab;     // per-variable ranges a_i <= X_i <= b_i
};

enum class ChernoffVariant { classic, third, fourth, power_of_two_R };
enum class HoeffdingForm { symmetric, asymmetric };

// Validity windows for the simplified upper-tail variants.
inline constexpr double kThirdVariantMaxDelta = 1.81;
inline constexpr double kFourthVariantMaxDelta = 4.11;

/// Pr[X >= (1+delta) mu] for a sum of independent 0-1 variables.
/// power_of_two_R reads R from q.t and needs R >= 2 e mu.
/// Throws invalid_argument when delta (or R) is outside the variant's window.
double chernoff_upper(const BoundQuery& q, ChernoffVariant variant);

/// Pr[X <= (1-delta) mu] <= exp(-mu delta^2 / 2), 0 <= delta <= 1.
double chernoff_lower(const BoundQuery& q);

double hoeffding(const BoundQuery& q, HoeffdingForm form);

/// exp(-2 t^2 / sum c_i^2)
double mcdiarmid(const BoundQuery& q);

struct TrialPlan {
  double epsilon = 0.0;
  double confidence_delta = 0.0;
  double rho = 0.0;
  std::uint64_t n_trials = 0;
};

/// Number of Bernoulli samples giving relative error epsilon with
/// probability 1 - confidence_delta when the hit rate is at least rho:
/// ceil(3 / (eps^2 rho) * ln(2 / delta)), valid for eps <= 1.81.
TrialPlan trials_needed(double epsilon, double confidence_delta, double rho);

struct KuwOptions {
  // Split the range at every integer so step functions such as ceil(x)/n
  // are integrated piece by piece without quadrature error.
  bool split_at_integers = true;
  double relative_tolerance = 1e-9;
};

/// Upper bound on the expected rounds of a size-decreasing process with
/// expected progress mu(x) at size x: the integral of 1/mu over (a, n].
/// mu must be positive on the interval.
double kuw_expected_rounds(double a, double n, const std::function<double(double)>& mu_fn,
                           const KuwOptions& options = {});

/// H_n accumulated in long double, smallest terms first.
long double harmonic(std::uint64_t n);

}  // namespace randlab::bounds
