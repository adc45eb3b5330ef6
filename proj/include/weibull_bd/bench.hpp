#pragma once

// Synthetic Weibull data and F-evaluation benchmarks across solvers.

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "weibull_bd/error.hpp"
#include "weibull_bd/model.hpp"
#include "weibull_bd/solvers.hpp"

namespace weibull_bd {

//--------------------------------------------------------------------------
// Random streams
//--------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// mt19937_64 seeded through splitmix64. stream(i) gives an independent
/// generator for trial i, so a trial's data never depends on other trials.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  static RandomStream stream(std::uint64_t seed, std::uint64_t index) {
    return RandomStream(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  }

  /// Uniform on [0, 1) with 53 random bits. Portable, unlike std::uniform_real_distribution.
  double uniform01() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (lo, hi].
  double uniform_left_open(double lo, double hi) noexcept { return hi - (hi - lo) * uniform01(); }

  /// Uniform integer on [lo, hi].
  std::size_t uniform_int(std::size_t lo, std::size_t hi) noexcept {
    const auto span = static_cast<double>(hi - lo + 1);
    auto v = lo + static_cast<std::size_t>(uniform01() * span);
    return v > hi ? hi : v;
  }

 private:
  std::mt19937_64 engine_;
};

//--------------------------------------------------------------------------
// Sampling
//--------------------------------------------------------------------------

/// Inverse CDF: lambda * (-ln(1 - u))^(1/k).
inline double weibull_quantile(const WeibullParams& params, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw Error(ErrorCode::DomainError, "quantile needs u in [0, 1)");
  return params.lambda() * std::pow(-std::log1p(-u), 1.0 / params.k());
}

inline std::vector<double> sample_weibull(const WeibullParams& params, std::size_t n, RandomStream& rng) {
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const double u = rng.uniform01();
    if (u == 0.0) continue;  // would map to x = 0
    out.push_back(weibull_quantile(params, u));
  }
  return out;
}

inline std::vector<double> sample_weibull(const WeibullParams& params, std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed);
  return sample_weibull(params, n, rng);
}

//--------------------------------------------------------------------------
// Studies
//--------------------------------------------------------------------------

struct Interval {
  double lo;
  double hi;
};

struct CountInterval {
  std::size_t lo;
  std::size_t hi;
};

inline std::vector<double> default_study_precisions() { return {1e-1, 1e-2, 1e-3, 1e-4}; }
inline std::vector<double> reference_precisions() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-6, 1e-10, 1e-14}; }

struct TrialSpec {
  Interval k_range{std::numeric_limits<double>::epsilon(), 40.0};
  Interval lambda_range{std::numeric_limits<double>::epsilon(), 40.0};
  CountInterval n_range{2, 200};
  std::size_t trials = 200;
  std::uint64_t seed = 42;
  std::vector<double> precisions = default_study_precisions();

  void validate() const {
    auto check = [](const Interval& r, const char* name) {
      if (!(r.lo > 0.0) || !(r.lo <= r.hi) || !std::isfinite(r.hi)) {
        throw Error(ErrorCode::InvalidSpec, std::string(name) + " must be a nonempty positive interval");
      }
    };
    check(k_range, "k_range");
    check(lambda_range, "lambda_range");
    if (n_range.lo < 2 || n_range.lo > n_range.hi) {
      throw Error(ErrorCode::InvalidSpec, "n_range must be nonempty with lower bound >= 2");
    }
    if (trials < 1) throw Error(ErrorCode::InvalidSpec, "trials must be positive");
    if (precisions.empty()) throw Error(ErrorCode::InvalidSpec, "at least one precision is required");
    for (double p : precisions) {
      if (!(p > 0.0)) throw Error(ErrorCode::InvalidSpec, "precisions must be positive");
    }
  }
};

struct StudyRecord {
  Method method;
  double epsilon;
  double mean_f_evals;      // over converged runs; NaN when none converged
  double mean_deriv_evals;  // same
  std::size_t converged;
  std::size_t total;
  std::uint64_t seed;

  double convergence_fraction() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(converged) / static_cast<double>(total);
  }
};

struct StudyReport {
  std::vector<Method> methods;
  std::vector<double> precisions;
  std::vector<StudyRecord> records;  // method-major, in caller order
  std::size_t trials = 0;
  std::size_t invalid_samples = 0;  // draws that under/overflowed or tied; excluded from every record
  std::uint64_t seed = 0;

  const StudyRecord* find(Method m, double epsilon) const {
    for (const auto& r : records) {
      if (r.method == m && r.epsilon == epsilon) return &r;
    }
    return nullptr;
  }
};

namespace detail {

struct Tally {
  std::size_t converged = 0;
  std::size_t total = 0;
  double f_sum = 0.0;
  double d_sum = 0.0;

  void add(const SolveTrace& t) {
    ++total;
    if (t.status != Status::Converged) return;
    ++converged;
    f_sum += static_cast<double>(t.f_evals);
    d_sum += static_cast<double>(t.deriv_evals);
  }
};

inline StudyReport assemble(std::span<const Method> methods, std::span<const double> precisions,
                            const std::vector<Tally>& tallies, std::uint64_t seed) {
  StudyReport report;
  report.methods.assign(methods.begin(), methods.end());
  report.precisions.assign(precisions.begin(), precisions.end());
  report.seed = seed;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    for (std::size_t p = 0; p < precisions.size(); ++p) {
      const Tally& t = tallies[m * precisions.size() + p];
      const double nan = std::numeric_limits<double>::quiet_NaN();
      const auto conv = static_cast<double>(t.converged);
      report.records.push_back({methods[m], precisions[p], t.converged ? t.f_sum / conv : nan,
                                t.converged ? t.d_sum / conv : nan, t.converged, t.total, seed});
    }
  }
  return report;
}

inline void run_all(const Sample& sample, std::span<const Method> methods, std::span<const double> precisions,
                    const SolverConfig& base, std::vector<Tally>& tallies) {
  for (std::size_t m = 0; m < methods.size(); ++m) {
    for (std::size_t p = 0; p < precisions.size(); ++p) {
      SolverConfig cfg = base;
      cfg.method = methods[m];
      cfg.delta2 = precisions[p];
      tallies[m * precisions.size() + p].add(solve(sample, cfg));
    }
  }
}

}  // namespace detail

/// The data for trial `index` of a study, drawn from its own stream.
struct TrialDraw {
  double k;
  double lambda;
  std::vector<double> values;
};

inline TrialDraw draw_trial(const TrialSpec& spec, std::size_t index) {
  auto rng = RandomStream::stream(spec.seed, index);
  TrialDraw d;
  d.k = rng.uniform_left_open(spec.k_range.lo, spec.k_range.hi);
  d.lambda = rng.uniform_left_open(spec.lambda_range.lo, spec.lambda_range.hi);
  const std::size_t n = rng.uniform_int(spec.n_range.lo, spec.n_range.hi);
  d.values = sample_weibull(WeibullParams(d.k, d.lambda), n, rng);
  return d;
}

/// Monte Carlo comparison: every method at every precision on each trial's sample.
inline StudyReport run_random_study(const TrialSpec& spec, std::span<const Method> methods,
                                    const SolverConfig& base = {}) {
  spec.validate();
  std::vector<detail::Tally> tallies(methods.size() * spec.precisions.size());
  std::size_t invalid = 0;
  for (std::size_t i = 0; i < spec.trials; ++i) {
    const TrialDraw draw = draw_trial(spec, i);
    try {
      const Sample sample = build_sample(draw.values);
      detail::run_all(sample, methods, spec.precisions, base, tallies);
    } catch (const Error&) {
      ++invalid;
    }
  }
  StudyReport report = detail::assemble(methods, spec.precisions, tallies, spec.seed);
  report.trials = spec.trials;
  report.invalid_samples = invalid;
  return report;
}

/// 32 draws from a Weibull distribution used as the fixed reference case.
inline constexpr std::array<double, 32> kReferenceDataset = {
    2.6144, 4.1834, 4.3258, 4.3496, 4.3740, 4.4006,  //
    3.2073, 4.2573, 4.3273, 4.3544, 4.3828, 4.4051,  //
    3.9800, 4.2884, 4.3334, 4.3646, 4.3873, 4.4123,  //
    4.1767, 4.3150, 4.3403, 4.3698, 4.3959, 4.4194,  //
    4.4317, 4.4919, 4.4448, 4.5082, 4.4623, 4.5439,  //
    4.4756, 4.5715};

inline StudyReport run_reference_case(std::span<const double> precisions, std::span<const Method> methods = kAllMethods,
                                      const SolverConfig& base = {}) {
  for (double p : precisions) {
    if (!(p > 0.0)) throw Error(ErrorCode::InvalidSpec, "precisions must be positive");
  }
  const Sample sample = build_sample(std::span<const double>(kReferenceDataset));
  std::vector<detail::Tally> tallies(methods.size() * precisions.size());
  detail::run_all(sample, methods, precisions, base, tallies);
  StudyReport report = detail::assemble(methods, precisions, tallies, 0);
  report.trials = 1;
  return report;
}

//--------------------------------------------------------------------------
// Rendering
//--------------------------------------------------------------------------

/// Shortest decimal string that parses back to exactly `v`.
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline nlohmann::json to_json(const StudyRecord& r) {
  nlohmann::json j;
  j["method"] = std::string(to_string(r.method));
  j["epsilon"] = r.epsilon;
  j["mean_f_evals"] = std::isnan(r.mean_f_evals) ? nlohmann::json(nullptr) : nlohmann::json(r.mean_f_evals);
  j["mean_deriv_evals"] =
      std::isnan(r.mean_deriv_evals) ? nlohmann::json(nullptr) : nlohmann::json(r.mean_deriv_evals);
  j["converged"] = r.converged;
  j["total"] = r.total;
  j["seed"] = r.seed;
  return j;
}

/// One JSON object per line, one line per (method, epsilon).
inline std::string to_json_lines(const StudyReport& report) {
  std::string out;
  for (const auto& r : report.records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline std::string to_csv(const StudyReport& report) {
  std::string out = "method,epsilon,mean_f_evals,mean_deriv_evals,converged,total,seed\n";
  for (const auto& r : report.records) {
    out += std::string(to_string(r.method)) + ',' + format_number(r.epsilon) + ',' + format_number(r.mean_f_evals) +
           ',' + format_number(r.mean_deriv_evals) + ',' + std::to_string(r.converged) + ',' +
           std::to_string(r.total) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

/// Rows are precisions, columns are methods in report order; cells are mean F evaluations.
inline std::string render_table(const StudyReport& report) {
  if (report.methods.empty()) return {};
  constexpr int kWidth = 12;
  std::ostringstream os;
  os << std::left << std::setw(kWidth) << "epsilon";
  for (Method m : report.methods) os << std::right << std::setw(kWidth) << to_string(m);
  os << '\n';
  for (double eps : report.precisions) {
    os << std::left << std::setw(kWidth) << format_number(eps);
    for (Method m : report.methods) {
      const StudyRecord* r = report.find(m, eps);
      os << std::right << std::setw(kWidth) << (r ? format_number(r->mean_f_evals) : std::string("-"));
    }
    os << '\n';
  }
  bool any_failed = false;
  for (const auto& r : report.records) {
    if (r.converged == r.total) continue;
    if (!any_failed) os << "non-converged runs (excluded from means):\n";
    any_failed = true;
    os << "  " << to_string(r.method) << " @ " << format_number(r.epsilon) << ": " << (r.total - r.converged) << " of "
       << r.total << '\n';
  }
  os << "trials: " << report.trials << ", seed: " << report.seed;
  if (report.invalid_samples) os << ", unusable samples: " << report.invalid_samples;
  os << '\n';
  return os.str();
}

}  // namespace weibull_bd
