#include "randlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "randlab/error.hpp"

namespace randlab::bounds {
namespace {

double clamp_probability(double log_value) {
  if (log_value >= 0.0) return 1.0;
  return std::exp(log_value);
}

void check_mu_delta(const BoundQuery& q) {
  require(std::isfinite(q.mu) && q.mu >= 0.0, "mu must be a nonnegative finite number");
  require(std::isfinite(q.delta) && q.delta >= 0.0, "delta must be a nonnegative finite number");
}

}  // namespace

double chernoff_upper(const BoundQuery& q, ChernoffVariant variant) {
  switch (variant) {
    case ChernoffVariant::classic: {
      check_mu_delta(q);
      // mu * (delta - (1+delta) ln(1+delta)), kept in log space.
      const double exponent = q.mu * (q.delta - (1.0 + q.delta) * std::log1p(q.delta));
      return clamp_probability(exponent);
    }
    case ChernoffVariant::third:
      check_mu_delta(q);
      require(q.delta <= kThirdVariantMaxDelta, "delta exceeds 1.81 for the e^(-mu delta^2/3) variant");
      return clamp_probability(-q.mu * q.delta * q.delta / 3.0);
    case ChernoffVariant::fourth:
      check_mu_delta(q);
      require(q.delta <= kFourthVariantMaxDelta, "delta exceeds 4.11 for the e^(-mu delta^2/4) variant");
      return clamp_probability(-q.mu * q.delta * q.delta / 4.0);
    case ChernoffVariant::power_of_two_R: {
      require(std::isfinite(q.mu) && q.mu >= 0.0, "mu must be a nonnegative finite number");
      require(std::isfinite(q.t) && q.t >= 2.0 * std::numbers::e * q.mu,
              "R must be at least 2 e mu for the 2^-R variant");
      return clamp_probability(-q.t * std::numbers::ln2);
    }
  }
  fail(ErrorCode::invalid_argument, "unknown Chernoff variant");
}

double chernoff_lower(const BoundQuery& q) {
  check_mu_delta(q);
  require(q.delta <= 1.0, "lower-tail Chernoff bound needs delta <= 1");
  return clamp_probability(-q.mu * q.delta * q.delta / 2.0);
}

double hoeffding(const BoundQuery& q, HoeffdingForm form) {
  require(std::isfinite(q.t) && q.t >= 0.0, "t must be nonnegative");
  double denominator = 0.0;
  double scale = 0.0;
  if (form == HoeffdingForm::symmetric) {
    require(!q.c.empty(), "symmetric Hoeffding needs at least one c_i");
    for (double ci : q.c) {
      require(ci >= 0.0, "c_i must be nonnegative");
      denominator += ci * ci;
    }
    denominator *= 2.0;
    scale = 1.0;
  } else {
    require(!q.ab.empty(), "asymmetric Hoeffding needs at least one (a_i, b_i)");
    for (auto [a, b] : q.ab) {
      require(a <= b, "a_i must not exceed b_i");
      denominator += (b - a) * (b - a);
    }
    scale = 2.0;
  }
  if (q.t == 0.0) return 1.0;
  require(denominator > 0.0, "all-zero ranges with t > 0");
  return clamp_probability(-scale * q.t * q.t / denominator);
}

double mcdiarmid(const BoundQuery& q) {
  require(std::isfinite(q.t) && q.t >= 0.0, "t must be nonnegative");
  require(!q.c.empty(), "McDiarmid needs at least one c_i");
  double sum = 0.0;
  for (double ci : q.c) {
    require(ci >= 0.0, "c_i must be nonnegative");
    sum += ci * ci;
  }
  if (q.t == 0.0) return 1.0;
  require(sum > 0.0, "all-zero c_i with t > 0");
  return clamp_probability(-2.0 * q.t * q.t / sum);
}

TrialPlan trials_needed(double epsilon, double confidence_delta, double rho) {
  require(epsilon > 0.0 && epsilon <= kThirdVariantMaxDelta, "epsilon must lie in (0, 1.81]");
  require(confidence_delta > 0.0 && confidence_delta < 1.0, "delta must lie in (0, 1)");
  require(rho > 0.0 && rho <= 1.0, "rho must lie in (0, 1]");
  const long double n =
      3.0L / (static_cast<long double>(epsilon) * epsilon * rho) * std::log(2.0L / confidence_delta);
  return TrialPlan{epsilon, confidence_delta, rho, static_cast<std::uint64_t>(std::ceil(n))};
}

double kuw_expected_rounds(double a, double n, const std::function<double(double)>& mu_fn,
                           const KuwOptions& options) {
  require(std::isfinite(a) && std::isfinite(n) && a < n, "need a < n");
  require(static_cast<bool>(mu_fn), "mu function is empty");
  auto inverse = [&](double x) {
    const double mu = mu_fn(x);
    if (!(mu > 0.0)) fail(ErrorCode::invalid_argument, "mu(x) <= 0 at x = " + std::to_string(x));
    return 1.0 / mu;
  };

  std::vector<double> cuts{a};
  if (options.split_at_integers) {
    for (double k = std::floor(a) + 1.0; k < n; k += 1.0) cuts.push_back(k);
  }
  cuts.push_back(n);

  // Gauss-Kronrod nodes are interior, so a left-open step at an integer
  // breakpoint never gets sampled on the wrong side.
  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  long double total = 0.0L;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += Quad::integrate(inverse, cuts[i], cuts[i + 1], 15, options.relative_tolerance);
  }
  return static_cast<double>(total);
}

long double harmonic(std::uint64_t n) {
  long double sum = 0.0L;
  for (std::uint64_t i = n; i >= 1; --i) sum += 1.0L / static_cast<long double>(i);
  return sum;
}

}  // namespace randlab::bounds
