#pragma once

// Root finders for F(k) = 0. All of them go through EvalCounter so the number
// of F evaluations, the efficiency measure the benchmarks compare, is exact.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weibull_bd/envelope.hpp"
#include "weibull_bd/error.hpp"
#include "weibull_bd/model.hpp"

namespace weibull_bd {

enum class Method { Bounded, Combined, Secant, Bisection, BiSecant, NewtonRaphson };

inline constexpr std::array<Method, 6> kAllMethods = {Method::Bounded,   Method::Combined, Method::Secant,
                                                      Method::Bisection, Method::BiSecant, Method::NewtonRaphson};

constexpr std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Bounded: return "bounded";
    case Method::Combined: return "combined";
    case Method::Secant: return "secant";
    case Method::Bisection: return "bisection";
    case Method::BiSecant: return "bisecant";
    case Method::NewtonRaphson: return "newton";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

enum class Status { Converged, MaxIterations, Diverged };

constexpr std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Converged: return "Converged";
    case Status::MaxIterations: return "MaxIterations";
    case Status::Diverged: return "Diverged";
  }
  return "Unknown";
}

struct SolverConfig {
  Method method = Method::Combined;
  double delta1 = 2.0;    // bracket width below which Combined/BiSecant switch to secant
  double delta2 = 1e-10;  // halt precision in k
  std::size_t max_iter = 1000;
  double secant_seed0 = 1.0;
  double secant_seed1 = 2.0;

  void validate() const {
    if (!(delta1 > 0.0)) throw Error(ErrorCode::InvalidConfig, "delta1 must be positive");
    if (!(delta2 > 0.0)) throw Error(ErrorCode::InvalidConfig, "delta2 must be positive");
    if (max_iter < 1) throw Error(ErrorCode::InvalidConfig, "max_iter must be at least 1");
    if (!(secant_seed0 > 0.0) || !(secant_seed1 > 0.0)) {
      throw Error(ErrorCode::InvalidConfig, "secant seeds must be positive");
    }
    if (secant_seed0 == secant_seed1) throw Error(ErrorCode::InvalidConfig, "secant seeds must differ");
  }
};

struct SolveTrace {
  double k_hat = std::numeric_limits<double>::quiet_NaN();
  std::size_t f_evals = 0;
  std::size_t deriv_evals = 0;
  std::size_t iterations = 0;
  std::vector<Bracket> bracket_history;
  Status status = Status::MaxIterations;
};

/// Counts every evaluation of F and F'.
class EvalCounter {
 public:
  explicit EvalCounter(const Sample& sample) : sample_(&sample) {}

  double operator()(double k) {
    ++f_evals_;
    return estimating_fn(*sample_, k);
  }
  double derivative(double k) {
    ++deriv_evals_;
    return estimating_fn_derivative(*sample_, k);
  }

  /// |F| at or below this is indistinguishable from zero.
  bool is_zero(double k, double f) const { return std::abs(f) <= estimating_fn_resolution(*sample_, k); }

  const Sample& sample() const noexcept { return *sample_; }
  std::size_t f_evals() const noexcept { return f_evals_; }
  std::size_t deriv_evals() const noexcept { return deriv_evals_; }

 private:
  const Sample* sample_;
  std::size_t f_evals_ = 0;
  std::size_t deriv_evals_ = 0;
};

namespace detail {

// A bracket a few ulps wide cannot be split further.
inline bool at_machine_resolution(const Bracket& b) noexcept {
  return b.width() <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b.hi);
}

/// Running bracket plus the two most recent evaluated points. Narrowing uses
/// either the envelope curves at each evaluated point or plain sign tests.
class BracketSearch {
 public:
  enum class Narrowing { Envelope, Sign };

  BracketSearch(const Sample& sample, const SolverConfig& config, Narrowing narrowing)
      : eval_(sample), config_(config), narrowing_(narrowing) {}

  /// Sets the starting bracket; used by the sign-based searches.
  void start(Bracket b) {
    bracket_ = b;
    trace_.bracket_history.push_back(b);
  }

  /// Evaluates F at k and narrows. Returns true when the search is finished.
  bool step(double k) {
    const double f = eval_(k);
    remember(k, f);
    if (eval_.is_zero(k, f)) return finish(Status::Converged, k);

    Bracket next = *bracket_;
    if (narrowing_ == Narrowing::Envelope) {
      const Bracket env = bracket_from_anchor({k, f}, eval_.sample().c2());
      // Disjoint envelopes only arise from rounding once F is near its noise floor.
      if (!overlaps(next, env)) return finish(Status::Converged, k);
      next = intersect(next, env);
    } else if (f > 0.0) {
      next.hi = std::min(next.hi, k);
    } else {
      next.lo = std::max(next.lo, k);
    }
    bracket_ = next;
    trace_.bracket_history.push_back(next);
    return false;
  }

  /// First evaluation for the envelope searches: the bracket comes from the anchor alone.
  bool step_initial(double k) {
    const double f = eval_(k);
    remember(k, f);
    if (eval_.is_zero(k, f)) return finish(Status::Converged, k);
    start(bracket_from_anchor({k, f}, eval_.sample().c2()));
    return false;
  }

  bool bracket_done() const { return bracket_->width() <= config_.delta2 || at_machine_resolution(*bracket_); }

  bool out_of_iterations() const { return trace_.iterations >= config_.max_iter; }

  /// Safeguarded secant refinement inside the running bracket.
  bool secant_phase() {
    if (points_ < 2) {
      if (bracket_done()) return finish(Status::Converged, bracket_->midpoint());
      if (out_of_iterations()) return finish(Status::MaxIterations, bracket_->midpoint());
      ++trace_.iterations;
      if (step(bracket_->midpoint())) return true;
    }
    for (;;) {
      if (bracket_done()) return finish(Status::Converged, bracket_->midpoint());
      if (out_of_iterations()) return finish(Status::MaxIterations, bracket_->midpoint());
      double k = bracket_->midpoint();
      if (prev_f_ != last_f_) {
        const double candidate = last_k_ - last_f_ * (last_k_ - prev_k_) / (last_f_ - prev_f_);
        if (std::isfinite(candidate) && bracket_->contains(candidate)) k = candidate;
      }
      if (std::abs(k - last_k_) <= config_.delta2) return finish(Status::Converged, k);
      ++trace_.iterations;
      if (step(k)) return true;
    }
  }

  bool finish(Status status, double k_hat) {
    trace_.status = status;
    trace_.k_hat = k_hat;
    return true;
  }

  SolveTrace take_trace() {
    trace_.f_evals = eval_.f_evals();
    trace_.deriv_evals = eval_.deriv_evals();
    return std::move(trace_);
  }

  EvalCounter& eval() noexcept { return eval_; }
  const Bracket& bracket() const { return *bracket_; }
  SolveTrace& trace() noexcept { return trace_; }

  void remember(double k, double f) {
    prev_k_ = last_k_;
    prev_f_ = last_f_;
    last_k_ = k;
    last_f_ = f;
    ++points_;
  }

 private:
  EvalCounter eval_;
  const SolverConfig& config_;
  Narrowing narrowing_;
  std::optional<Bracket> bracket_;
  SolveTrace trace_;
  double prev_k_ = 0.0, prev_f_ = 0.0, last_k_ = 0.0, last_f_ = 0.0;
  std::size_t points_ = 0;
};

// Bounded-derivative loop: re-bracket at the midpoint until the width drops
// to `switch_width`. Returns true when the whole solve is finished.
inline bool run_bounded_phase(BracketSearch& search, double switch_width) {
  if (search.step_initial(1.0 / search.eval().sample().c1())) return true;
  for (;;) {
    const Bracket& b = search.bracket();
    if (search.bracket_done()) return search.finish(Status::Converged, b.midpoint());
    if (b.width() <= switch_width) return false;
    if (search.out_of_iterations()) return search.finish(Status::MaxIterations, b.midpoint());
    ++search.trace().iterations;
    if (search.step(b.midpoint())) return true;
  }
}

// Bisection from [1/C1, 2/C1], doubling the upper end until F changes sign.
inline bool run_bisection_phase(BracketSearch& search, double switch_width) {
  double lo = 1.0 / search.eval().sample().c1();
  double hi = 2.0 * lo;
  for (;;) {
    if (search.out_of_iterations()) return search.finish(Status::MaxIterations, hi);
    ++search.trace().iterations;
    const double f = search.eval()(hi);
    search.remember(hi, f);
    if (search.eval().is_zero(hi, f)) return search.finish(Status::Converged, hi);
    if (f > 0.0) break;
    lo = hi;
    hi *= 2.0;
  }
  search.start({lo, hi});
  for (;;) {
    const Bracket& b = search.bracket();
    if (search.bracket_done()) return search.finish(Status::Converged, b.midpoint());
    if (b.width() <= switch_width) return false;
    if (search.out_of_iterations()) return search.finish(Status::MaxIterations, b.midpoint());
    ++search.trace().iterations;
    if (search.step(b.midpoint())) return true;
  }
}

}  // namespace detail

/// Bounded-derivative bracketing: one F evaluation per step, and each step
/// shrinks the bracket by more than half.
inline SolveTrace solve_bounded(const Sample& sample, const SolverConfig& config) {
  config.validate();
  detail::BracketSearch search(sample, config, detail::BracketSearch::Narrowing::Envelope);
  detail::run_bounded_phase(search, 0.0);
  return search.take_trace();
}

/// Bounded-derivative bracketing down to width delta1, then safeguarded secant.
inline SolveTrace solve_combined(const Sample& sample, const SolverConfig& config) {
  config.validate();
  detail::BracketSearch search(sample, config, detail::BracketSearch::Narrowing::Envelope);
  if (!detail::run_bounded_phase(search, config.delta1)) search.secant_phase();
  return search.take_trace();
}

inline SolveTrace solve_bisection(const Sample& sample, const SolverConfig& config) {
  config.validate();
  detail::BracketSearch search(sample, config, detail::BracketSearch::Narrowing::Sign);
  detail::run_bisection_phase(search, 0.0);
  return search.take_trace();
}

inline SolveTrace solve_bisecant(const Sample& sample, const SolverConfig& config) {
  config.validate();
  detail::BracketSearch search(sample, config, detail::BracketSearch::Narrowing::Sign);
  if (!detail::run_bisection_phase(search, config.delta1)) search.secant_phase();
  return search.take_trace();
}

/// Plain secant from two seeds. May leave (0, inf), reported as Diverged.
inline SolveTrace solve_secant(const Sample& sample, const SolverConfig& config) {
  config.validate();
  EvalCounter eval(sample);
  SolveTrace trace;
  auto done = [&](Status s, double k) {
    trace.status = s;
    trace.k_hat = k;
    trace.f_evals = eval.f_evals();
    return trace;
  };

  double k0 = config.secant_seed0;
  double k1 = config.secant_seed1;
  double f0 = eval(k0);
  if (eval.is_zero(k0, f0)) return done(Status::Converged, k0);
  double f1 = eval(k1);
  for (;;) {
    if (eval.is_zero(k1, f1)) return done(Status::Converged, k1);
    if (f1 == f0) return done(Status::Diverged, k1);
    const double k2 = k1 - f1 * (k1 - k0) / (f1 - f0);
    if (!std::isfinite(k2) || !(k2 > 0.0)) return done(Status::Diverged, k1);
    if (std::abs(k2 - k1) <= config.delta2) return done(Status::Converged, k2);
    if (trace.iterations >= config.max_iter) return done(Status::MaxIterations, k1);
    ++trace.iterations;
    k0 = k1;
    f0 = f1;
    k1 = k2;
    f1 = eval(k1);
  }
}

/// Newton-Raphson from 1/C1; each step costs one F and one F' evaluation.
inline SolveTrace solve_newton(const Sample& sample, const SolverConfig& config) {
  config.validate();
  EvalCounter eval(sample);
  SolveTrace trace;
  auto done = [&](Status s, double k) {
    trace.status = s;
    trace.k_hat = k;
    trace.f_evals = eval.f_evals();
    trace.deriv_evals = eval.deriv_evals();
    return trace;
  };

  double k = 1.0 / sample.c1();
  for (;;) {
    const double f = eval(k);
    if (eval.is_zero(k, f)) return done(Status::Converged, k);
    const double next = k - f / eval.derivative(k);
    if (!std::isfinite(next) || !(next > 0.0)) return done(Status::Diverged, k);
    if (std::abs(next - k) <= config.delta2) return done(Status::Converged, next);
    if (trace.iterations >= config.max_iter) return done(Status::MaxIterations, k);
    ++trace.iterations;
    k = next;
  }
}

inline SolveTrace solve(const Sample& sample, const SolverConfig& config) {
  switch (config.method) {
    case Method::Bounded: return solve_bounded(sample, config);
    case Method::Combined: return solve_combined(sample, config);
    case Method::Secant: return solve_secant(sample, config);
    case Method::Bisection: return solve_bisection(sample, config);
    case Method::BiSecant: return solve_bisecant(sample, config);
    case Method::NewtonRaphson: return solve_newton(sample, config);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown method");
}

struct FitResult {
  std::optional<WeibullParams> params;  // empty when the solver diverged
  SolveTrace trace;
};

inline FitResult fit(const Sample& sample, const SolverConfig& config) {
  FitResult result{std::nullopt, solve(sample, config)};
  if (result.trace.status != Status::Diverged && std::isfinite(result.trace.k_hat) && result.trace.k_hat > 0.0) {
    result.params.emplace(result.trace.k_hat, lambda_hat(sample, result.trace.k_hat));
  }
  return result;
}

}  // namespace weibull_bd
