#pragma once

// Two-parameter Weibull model: validated samples, density, likelihood, the
// profile score F(k) obtained by eliminating the scale, its derivative and the
// closed-form scale estimate.
//
// Every power sum sum_i x_i^k is evaluated through the log gaps
// g_i = ln(x_max / x_i) >= 0 with weights w_i = exp(-k g_i) in (0, 1], so
// nothing overflows for any finite k. In that form
//   F(k) = C1 - sum w_i g_i / sum w_i - 1/k,   C1 = mean(g),
// and the weighted mean of the gaps is never negative, which keeps the
// computed F on the right side of its upper bound C1 - 1/k.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weibull_bd/error.hpp"

namespace weibull_bd {

class WeibullParams {
 public:
  WeibullParams(double k, double lambda) : k_(k), lambda_(lambda) {
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw Error(ErrorCode::DomainError, "shape k must be positive and finite");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw Error(ErrorCode::DomainError, "scale lambda must be positive and finite");
    }
  }

  double k() const noexcept { return k_; }
  double lambda() const noexcept { return lambda_; }

 private:
  double k_;
  double lambda_;
};

class Sample;
Sample build_sample(std::span<const double> raw);

/// Immutable set of positive observations plus the log-domain statistics the
/// estimators need. Construct through build_sample().
class Sample {
 public:
  std::span<const double> observations() const noexcept { return observations_; }
  std::span<const double> log_values() const noexcept { return log_values_; }
  /// ln(x_max / x_i), the form used by every weighted sum.
  std::span<const double> log_gaps() const noexcept { return gaps_; }

  std::size_t n() const noexcept { return observations_.size(); }
  double mean_log() const noexcept { return mean_log_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double c1() const noexcept { return c1_; }
  double c2() const noexcept { return c2_; }
  /// ln(x_max / x_min), the largest gap.
  double log_range() const noexcept { return log_range_; }

 private:
  friend Sample build_sample(std::span<const double> raw);
  Sample() = default;

  std::vector<double> observations_;
  std::vector<double> log_values_;
  std::vector<double> gaps_;
  double mean_log_ = 0.0;
  double x_min_ = 0.0;
  double x_max_ = 0.0;
  double c1_ = 0.0;
  double c2_ = 0.0;
  double log_range_ = 0.0;
};

inline Sample build_sample(std::span<const double> raw) {
  if (raw.size() < 2) {
    throw Error(ErrorCode::EmptyInput, "need at least 2 observations, got " + std::to_string(raw.size()));
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] > 0.0) || !std::isfinite(raw[i])) {
      throw Error(ErrorCode::NonPositiveValue,
                  "observation " + std::to_string(i) + " is not a positive finite number");
    }
  }

  Sample s;
  s.observations_.assign(raw.begin(), raw.end());
  auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  s.x_min_ = *lo;
  s.x_max_ = *hi;
  if (s.x_min_ == s.x_max_) {
    throw Error(ErrorCode::DegenerateSample, "all observations are equal; the likelihood has no finite maximum");
  }

  const auto n = static_cast<double>(raw.size());
  s.log_values_.reserve(raw.size());
  for (double x : raw) s.log_values_.push_back(std::log(x));
  s.mean_log_ = std::accumulate(s.log_values_.begin(), s.log_values_.end(), 0.0) / n;

  // Differences of logs rather than logs of ratios: x_max / x_i may overflow.
  const double log_max = std::log(s.x_max_);
  s.gaps_.reserve(raw.size());
  for (double y : s.log_values_) s.gaps_.push_back(log_max - y);
  s.c1_ = std::accumulate(s.gaps_.begin(), s.gaps_.end(), 0.0) / n;
  s.log_range_ = log_max - std::log(s.x_min_);
  s.c2_ = s.log_range_ * s.log_range_;
  return s;
}

inline Sample build_sample(const std::vector<double>& raw) { return build_sample(std::span<const double>(raw)); }

namespace detail {

inline void require_positive_k(double k, const char* what) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::DomainError, std::string(what) + ": k must be positive and finite");
  }
}

/// Mean and variance of the log gaps under weights proportional to x^k.
struct WeightedGapMoments {
  double log_weight_sum = 0.0;  // ln sum_i exp(-k g_i)
  double mean = 0.0;
  double variance = 0.0;
};

inline WeightedGapMoments weighted_moments(const Sample& sample, double k, bool with_variance) {
  double sw = 0.0;
  double swg = 0.0;
  for (double g : sample.log_gaps()) {
    const double w = std::exp(-k * g);
    sw += w;
    swg += w * g;
  }
  WeightedGapMoments m;
  m.log_weight_sum = std::log(sw);
  m.mean = swg / sw;
  if (with_variance) {
    double swd = 0.0;
    for (double g : sample.log_gaps()) {
      const double d = g - m.mean;
      swd += std::exp(-k * g) * d * d;
    }
    m.variance = swd / sw;
  }
  return m;
}

}  // namespace detail

/// Weibull density f(x) = (k/x) (x/lambda)^k exp(-(x/lambda)^k).
inline double density_at(const WeibullParams& params, double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "density_at: x must be positive");
  const double t = params.k() * (std::log(x) - std::log(params.lambda()));
  return std::exp(std::log(params.k()) - std::log(x) + t - std::exp(t));
}

inline double log_likelihood(const WeibullParams& params, const Sample& sample) {
  const double log_k = std::log(params.k());
  const double log_lambda = std::log(params.lambda());
  double total = 0.0;
  for (double y : sample.log_values()) {
    const double t = params.k() * (y - log_lambda);
    total += log_k - y + t - std::exp(t);
  }
  return total;
}

/// F(k) = sum x^k ln x / sum x^k - mean(ln x) - 1/k. Strictly increasing in k;
/// its unique root is the maximum-likelihood shape.
inline double estimating_fn(const Sample& sample, double k) {
  detail::require_positive_k(k, "estimating_fn");
  return (sample.c1() - detail::weighted_moments(sample, k, false).mean) - 1.0 / k;
}

/// F'(k) = 1/k^2 + weighted variance of ln x under weights x^k.
inline double estimating_fn_derivative(const Sample& sample, double k) {
  detail::require_positive_k(k, "estimating_fn_derivative");
  return 1.0 / (k * k) + detail::weighted_moments(sample, k, true).variance;
}

/// Rounding-error bound on a computed F(k). Values of F with smaller magnitude
/// carry no sign information.
inline double estimating_fn_resolution(const Sample& sample, double k) {
  return 16.0 * std::numeric_limits<double>::epsilon() * (sample.log_range() + 1.0 / k);
}

struct EnvelopeConstants {
  double c1;  // lim F(k) + 1/k as k -> inf
  double c2;  // ln^2(x_max / x_min)
};

inline EnvelopeConstants envelope_constants(const Sample& sample) noexcept { return {sample.c1(), sample.c2()}; }

/// Closed-form scale estimate ((1/n) sum x^k)^(1/k).
inline double lambda_hat(const Sample& sample, double k_hat) {
  detail::require_positive_k(k_hat, "lambda_hat");
  const auto m = detail::weighted_moments(sample, k_hat, false);
  const double log_mean_power = m.log_weight_sum - std::log(static_cast<double>(sample.n()));
  return sample.x_max() * std::exp(log_mean_power / k_hat);
}

}  // namespace weibull_bd
