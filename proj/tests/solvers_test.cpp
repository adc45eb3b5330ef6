#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "oracle.hpp"
#include "weibull_bd/bench.hpp"
#include "weibull_bd/solvers.hpp"

namespace wb = weibull_bd;
using std::numbers::e;

namespace {

constexpr double kRootOneE = 2.3993572805154676678;

wb::SolverConfig config(wb::Method m, double delta2 = 1e-10) {
  wb::SolverConfig c;
  c.method = m;
  c.delta2 = delta2;
  return c;
}

wb::Sample one_e() { return wb::build_sample(std::vector<double>{1.0, e}); }

bool is_bracketing(wb::Method m) {
  return m == wb::Method::Bounded || m == wb::Method::Combined || m == wb::Method::Bisection ||
         m == wb::Method::BiSecant;
}

}  // namespace

TEST(Solvers, AllMethodsFindRootOfOneE) {
  const auto s = one_e();
  for (wb::Method m : wb::kAllMethods) {
    const auto t = wb::solve(s, config(m));
    EXPECT_EQ(t.status, wb::Status::Converged) << wb::to_string(m);
    EXPECT_NEAR(t.k_hat, kRootOneE, 1e-9) << wb::to_string(m);
    EXPECT_GE(t.f_evals, 1u);
  }
}

TEST(Solvers, OracleAgreesWithFrozenRoot) { EXPECT_NEAR(oracle::root({1.0, e}), kRootOneE, 1e-11); }

TEST(SolveBounded, ShrinksByMoreThanHalf) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto s = wb::build_sample(oracle::random_sample(rng).values);
    const auto t = wb::solve_bounded(s, config(wb::Method::Bounded));
    ASSERT_EQ(t.status, wb::Status::Converged);
    for (std::size_t j = 1; j < t.bracket_history.size(); ++j) {
      EXPECT_LT(t.bracket_history[j].width(), 0.5 * t.bracket_history[j - 1].width());
    }
  }
}

TEST(SolveBounded, OneEvaluationPerIteration) {
  const auto t = wb::solve_bounded(one_e(), config(wb::Method::Bounded));
  EXPECT_EQ(t.f_evals, t.iterations + 1);
  EXPECT_EQ(t.deriv_evals, 0u);
}

TEST(SolveBounded, ScaleInvariantRoot) {
  std::vector<double> xs{0.8, 1.1, 1.7, 2.2, 2.9, 3.4};
  const auto a = wb::solve_bounded(wb::build_sample(xs), config(wb::Method::Bounded));
  for (double& x : xs) x *= 1000.0;
  const auto b = wb::solve_bounded(wb::build_sample(xs), config(wb::Method::Bounded));
  EXPECT_NEAR(a.k_hat, b.k_hat, 1e-9);
}

TEST(SolveBounded, MaxIterationsReported) {
  auto c = config(wb::Method::Bounded, 1e-12);
  c.max_iter = 1;
  const auto t = wb::solve_bounded(one_e(), c);
  EXPECT_EQ(t.status, wb::Status::MaxIterations);
  EXPECT_EQ(t.f_evals, 2u);
  EXPECT_TRUE(t.bracket_history.back().contains(kRootOneE));
}

TEST(SolveCombined, ReferenceDatasetBudget) {
  const auto s = wb::build_sample(std::span<const double>(wb::kReferenceDataset));
  const auto t = wb::solve_combined(s, config(wb::Method::Combined, 1e-14));
  EXPECT_EQ(t.status, wb::Status::Converged);
  EXPECT_LE(t.f_evals, 12u);
  EXPECT_NEAR(t.k_hat, 25.658949922489957868, 1e-11);
}

TEST(SolveCombined, EvaluationCountMatchesIterations) {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 50; ++i) {
    const auto s = wb::build_sample(oracle::random_sample(rng).values);
    const auto t = wb::solve_combined(s, config(wb::Method::Combined));
    EXPECT_EQ(t.f_evals, t.iterations + 1);
  }
}

TEST(Solvers, BracketsContainOracleRoot) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const auto r = oracle::random_sample(rng);
    const auto s = wb::build_sample(r.values);
    const double root = oracle::root(r.values);
    const double slack = 1e-12 * root;
    for (wb::Method m : wb::kAllMethods) {
      if (!is_bracketing(m)) continue;
      const auto t = wb::solve(s, config(m));
      for (const auto& b : t.bracket_history) {
        EXPECT_LE(b.lo, root + slack) << wb::to_string(m);
        EXPECT_GE(b.hi, root - slack) << wb::to_string(m);
      }
      for (std::size_t j = 1; j < t.bracket_history.size(); ++j) {
        EXPECT_LT(t.bracket_history[j].width(), t.bracket_history[j - 1].width()) << wb::to_string(m);
      }
    }
  }
}

TEST(Solvers, CrossMethodAgreement) {
  std::mt19937_64 rng(43);
  const double delta2 = 1e-10;
  for (int i = 0; i < 100; ++i) {
    const auto s = wb::build_sample(oracle::random_sample(rng).values);
    const double ref = wb::solve_bounded(s, config(wb::Method::Bounded, delta2)).k_hat;
    for (wb::Method m : wb::kAllMethods) {
      const auto t = wb::solve(s, config(m, delta2));
      if (t.status != wb::Status::Converged) continue;
      EXPECT_NEAR(t.k_hat, ref, 10 * delta2) << wb::to_string(m);
    }
  }
}

TEST(Solvers, Deterministic) {
  std::mt19937_64 rng(47);
  const auto s = wb::build_sample(oracle::random_sample(rng).values);
  for (wb::Method m : wb::kAllMethods) {
    const auto a = wb::solve(s, config(m));
    const auto b = wb::solve(s, config(m));
    EXPECT_EQ(a.k_hat, b.k_hat);
    EXPECT_EQ(a.f_evals, b.f_evals);
    EXPECT_EQ(a.bracket_history, b.bracket_history);
  }
}

TEST(SolveSecant, SeedValidation) {
  auto c = config(wb::Method::Secant);
  c.secant_seed0 = 0.0;
  EXPECT_THROW(wb::solve_secant(one_e(), c), wb::Error);
  c.secant_seed0 = -1.0;
  EXPECT_THROW(wb::solve_secant(one_e(), c), wb::Error);
  c.secant_seed0 = 2.0;
  EXPECT_THROW(wb::solve_secant(one_e(), c), wb::Error);
}

TEST(SolveSecant, StraddlingSeedsConvergeQuickly) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 50; ++i) {
    const auto r = oracle::random_sample(rng, 1.0, 10.0, 20, 200);
    const auto s = wb::build_sample(r.values);
    const double root = oracle::root(r.values);
    auto c = config(wb::Method::Secant);
    c.secant_seed0 = 0.98 * root;
    c.secant_seed1 = 1.02 * root;
    const auto t = wb::solve_secant(s, c);
    EXPECT_EQ(t.status, wb::Status::Converged);
    EXPECT_LE(t.f_evals, 10u);
    EXPECT_NEAR(t.k_hat, root, 1e-9 * std::max(1.0, root));
  }
}

TEST(SolveSecant, DivergenceIsReported) {
  // Seeds far to the right on the flat part of F throw the next iterate below zero.
  const auto s = wb::build_sample(std::vector<double>{1.0, 1.5, 2.0, 4.0});
  auto c = config(wb::Method::Secant);
  c.secant_seed0 = 40.0;
  c.secant_seed1 = 50.0;
  const auto t = wb::solve_secant(s, c);
  EXPECT_EQ(t.status, wb::Status::Diverged);
  EXPECT_FALSE(wb::fit(s, c).params.has_value());
}

TEST(SolveBisection, StartsFromOneOverC1AndHalves) {
  const auto s = one_e();
  const auto t = wb::solve_bisection(s, config(wb::Method::Bisection));
  ASSERT_GE(t.bracket_history.size(), 2u);
  EXPECT_DOUBLE_EQ(t.bracket_history.front().lo, 1.0 / s.c1());
  EXPECT_LE(wb::estimating_fn(s, 1.0 / s.c1()), 0.0);
  const double w0 = t.bracket_history.front().width();
  for (std::size_t i = 0; i < t.bracket_history.size(); ++i) {
    EXPECT_NEAR(t.bracket_history[i].width(), w0 / std::pow(2.0, static_cast<double>(i)), 1e-14 * t.k_hat);
  }
  EXPECT_EQ(t.f_evals, t.iterations);
}

TEST(SolveBisection, ExpandsUpperEnd) {
  // A single maximum above many ties: the root lies above 2/C1.
  const std::vector<double> xs{1, 1, 1, 1, 1, 1, 1, 1, 2};
  const auto s = wb::build_sample(xs);
  ASSERT_LT(wb::estimating_fn(s, 2.0 / s.c1()), 0.0);
  const auto t = wb::solve_bisection(s, config(wb::Method::Bisection, 1e-6));
  EXPECT_EQ(t.status, wb::Status::Converged);
  EXPECT_NEAR(t.k_hat, oracle::root(xs), 1e-6);
  EXPECT_GT(t.bracket_history.front().lo, 1.0 / s.c1());
}

TEST(SolveBisecant, ReducesToBisectionWhenSwitchNeverFires) {
  std::mt19937_64 rng(59);
  for (int i = 0; i < 20; ++i) {
    const auto s = wb::build_sample(oracle::random_sample(rng).values);
    auto c = config(wb::Method::BiSecant, 1e-6);
    c.delta1 = 1e-7;
    const auto a = wb::solve_bisecant(s, c);
    const auto b = wb::solve_bisection(s, config(wb::Method::Bisection, 1e-6));
    EXPECT_EQ(a.k_hat, b.k_hat);
    EXPECT_EQ(a.f_evals, b.f_evals);
  }
}

TEST(SolveBisecant, CheaperThanBisectionOnAverage) {
  std::mt19937_64 rng(61);
  double bis = 0.0, bisec = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto s = wb::build_sample(oracle::random_sample(rng).values);
    bis += static_cast<double>(wb::solve_bisection(s, config(wb::Method::Bisection)).f_evals);
    bisec += static_cast<double>(wb::solve_bisecant(s, config(wb::Method::BiSecant)).f_evals);
  }
  EXPECT_LE(bisec, bis);
}

TEST(SolveNewton, CountsDerivativeEvaluations) {
  const auto t = wb::solve_newton(one_e(), config(wb::Method::NewtonRaphson));
  EXPECT_EQ(t.status, wb::Status::Converged);
  EXPECT_GE(t.deriv_evals, 1u);
  EXPECT_LE(t.deriv_evals, t.f_evals);
}

TEST(SolveNewton, SignChangesAtMostOnceWhenConverging) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 100; ++i) {
    const auto s = wb::build_sample(oracle::random_sample(rng).values);
    const auto t = wb::solve_newton(s, config(wb::Method::NewtonRaphson));
    if (t.status != wb::Status::Converged) continue;
    // Replay the iterates and count sign changes of F along them.
    double k = 1.0 / s.c1();
    int changes = 0;
    double prev = wb::estimating_fn(s, k);
    for (std::size_t j = 0; j < t.iterations; ++j) {
      k -= wb::estimating_fn(s, k) / wb::estimating_fn_derivative(s, k);
      const double f = wb::estimating_fn(s, k);
      if (std::abs(f) > wb::estimating_fn_resolution(s, k) && std::signbit(f) != std::signbit(prev)) ++changes;
      if (std::abs(f) > wb::estimating_fn_resolution(s, k)) prev = f;
    }
    EXPECT_LE(changes, 1);
  }
}

TEST(SolverConfig, Validation) {
  wb::SolverConfig c;
  c.delta2 = 0.0;
  EXPECT_THROW(c.validate(), wb::Error);
  c = {};
  c.delta1 = -1.0;
  EXPECT_THROW(c.validate(), wb::Error);
  c = {};
  c.max_iter = 0;
  EXPECT_THROW(c.validate(), wb::Error);
  EXPECT_NO_THROW(wb::SolverConfig{}.validate());
}

TEST(MethodNames, RoundTrip) {
  for (wb::Method m : wb::kAllMethods) EXPECT_EQ(wb::parse_method(wb::to_string(m)), m);
  EXPECT_FALSE(wb::parse_method("brent").has_value());
}

TEST(Fit, ReturnsBothParameters) {
  const auto r = wb::fit(one_e(), config(wb::Method::Combined));
  ASSERT_TRUE(r.params.has_value());
  EXPECT_NEAR(r.params->k(), kRootOneE, 1e-9);
  EXPECT_NEAR(r.params->lambda(), 2.1113446485705653468, 1e-9);
}

TEST(Fit, LargeSampleRecoversParameters) {
  const auto xs = wb::sample_weibull(wb::WeibullParams(2.5, 3.0), 100000, 2024);
  const auto r = wb::fit(wb::build_sample(xs), config(wb::Method::Combined));
  ASSERT_TRUE(r.params.has_value());
  EXPECT_NEAR(r.params->k() / 2.5, 1.0, 0.02);
  EXPECT_NEAR(r.params->lambda() / 3.0, 1.0, 0.02);
}

TEST(Fit, ScalingMultipliesLambdaOnly) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 50; ++i) {
    const auto r = oracle::random_sample(rng);
    const auto base = wb::fit(wb::build_sample(r.values), config(wb::Method::Combined, 1e-12));
    for (double c : {1e-3, 1e3}) {
      std::vector<double> xs = r.values;
      for (double& x : xs) x *= c;
      const auto scaled = wb::fit(wb::build_sample(xs), config(wb::Method::Combined, 1e-12));
      EXPECT_NEAR(scaled.params->k(), base.params->k(), 1e-9);
      EXPECT_NEAR(scaled.params->lambda() / (c * base.params->lambda()), 1.0, 1e-9);
    }
  }
}
