#include "bipoly/simulator.h"

#include <cmath>
#include <numeric>

#include "bipoly/error.h"
#include "gtest/gtest.h"

namespace bipoly {
namespace {

double Harmonic(std::size_t n) {
  double h = 0.0;
  for (std::size_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

SimConfig Pool(std::size_t n, double lambda, double nu, std::size_t rth, std::size_t m,
               std::size_t trials) {
  SimConfig cfg;
  cfg.classes = {{n, lambda, nu}};
  cfg.scheme_rth = rth;
  cfg.m = m;
  cfg.trials = trials;
  return cfg;
}

TEST(Sampling, ShiftedExponentialMoments) {
  std::mt19937_64 rng(11);
  const double lambda = 2.0, nu = 0.3;
  const int n = 1000000;
  double sum = 0.0, lo = 1e300;
  for (int i = 0; i < n; ++i) {
    const double t = SampleTaskTime(lambda, nu, rng);
    sum += t;
    lo = std::min(lo, t);
  }
  EXPECT_NEAR(sum / n, nu + 1.0 / lambda, 0.01 * (nu + 1.0 / lambda));
  EXPECT_GT(lo, nu);
}

TEST(Sampling, OpenUniformStaysInside) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100000; ++i) {
    const double u = OpenUniform(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Simulate, OrderStatisticOfExponentials) {
  // R-th of N unit exponentials has mean H_N - H_(N-R).
  for (auto model : {TaskTimeModel::kPerWorker, TaskTimeModel::kPerTask}) {
    auto cfg = Pool(20, 1.0, 0.0, 10, 1, 200000);
    cfg.model = model;
    const auto res = ExpectedTime(cfg);
    EXPECT_NEAR(res.mean_time, Harmonic(20) - Harmonic(10), 0.01);
    EXPECT_EQ(res.completion_rate, 1.0);
  }
}

TEST(Simulate, PerWorkerArrivalsAreMultiples) {
  // One worker, m = 3: the third result lands at exactly 3x the first.
  auto first = Pool(1, 1.0, 0.5, 1, 3, 50);
  auto third = Pool(1, 1.0, 0.5, 3, 3, 50);
  const auto a = ExpectedTime(first).per_trial_times;
  const auto b = ExpectedTime(third).per_trial_times;
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_DOUBLE_EQ(b[i], 3.0 * a[i]);
}

TEST(Simulate, DeterministicAndThreadInvariant) {
  SimConfig cfg;
  cfg.classes = {{5, 2.0, 0.1}, {7, 0.2, 0.4}};
  cfg.scheme_rth = 20;
  cfg.m = 3;
  cfg.trials = 3000;
  cfg.seed = 99;
  const auto one = ExpectedTime(cfg);
  EXPECT_EQ(ExpectedTime(cfg).per_trial_times, one.per_trial_times);
  cfg.threads = 4;
  const auto four = ExpectedTime(cfg);
  EXPECT_EQ(four.per_trial_times, one.per_trial_times);
  EXPECT_EQ(four.mean_time, one.mean_time);
  cfg.model = TaskTimeModel::kPerTask;
  const auto per_task_4 = ExpectedTime(cfg);
  cfg.threads = 1;
  EXPECT_EQ(ExpectedTime(cfg).per_trial_times, per_task_4.per_trial_times);
}

TEST(Simulate, MonotoneInThresholdAndM) {
  // Same seed gives the same per-worker draws, so the comparison is per trial.
  const auto base = ExpectedTime(Pool(10, 1.0, 0.2, 12, 2, 500)).per_trial_times;
  const auto higher_r = ExpectedTime(Pool(10, 1.0, 0.2, 15, 2, 500)).per_trial_times;
  const auto more_m = ExpectedTime(Pool(10, 1.0, 0.2, 12, 3, 500)).per_trial_times;
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_LE(base[i], higher_r[i]);
    EXPECT_LE(more_m[i], base[i]);
  }
}

TEST(Simulate, Incompletable) {
  auto cfg = Pool(4, 1.0, 0.0, 9, 2, 10);
  EXPECT_FALSE(cfg.completable());
  const auto res = ExpectedTime(cfg);
  EXPECT_EQ(res.completion_rate, 0.0);
  EXPECT_TRUE(std::isnan(res.per_trial_times.front()));
  std::mt19937_64 rng(0);
  EXPECT_FALSE(SimulateOnce(cfg, rng).has_value());
}

TEST(Simulate, RejectsBadConfig) {
  EXPECT_THROW(ExpectedTime(Pool(4, 0.0, 0.0, 1, 1, 10)), Error);
  EXPECT_THROW(ExpectedTime(Pool(4, 1.0, -1.0, 1, 1, 10)), Error);
  EXPECT_THROW(ExpectedTime(Pool(4, 1.0, 0.0, 1, 1, 0)), Error);
  EXPECT_THROW(ParseTaskTimeModel("sometimes"), Error);
  EXPECT_EQ(ParseTaskTimeModel("per-task"), TaskTimeModel::kPerTask);
}

TEST(Sweep, DerivesMAndThreshold) {
  SchemeParams p;
  p.K = 5;
  p.L = 5;
  p.T = 3;
  auto base = Pool(51, 0.25, 0.4, 1, 1, 200);
  const std::vector<std::size_t> budgets{2, 4, 10};
  const auto prop = BudgetSweep(base, budgets, SchemeKind::kProposed, p);
  const auto gasp = BudgetSweep(base, budgets, SchemeKind::kGasp, p);
  ASSERT_EQ(prop.size(), 3u);
  EXPECT_EQ(prop[0].m, 1u);
  EXPECT_EQ(prop[0].r_th, 47u);
  EXPECT_EQ(prop[1].m, 3u);
  EXPECT_EQ(prop[1].r_th, 61u);
  EXPECT_EQ(prop[2].m, 5u);
  EXPECT_EQ(prop[2].r_th, 75u);
  EXPECT_EQ(gasp[2].m, 5u);
  EXPECT_EQ(gasp[2].r_th, 79u);
  EXPECT_THROW(BudgetSweep(base, {1}, SchemeKind::kProposed, p), Error);

  const std::string csv = SweepCsv(prop, 200, 0);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kSweepCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_NE(csv.find("\nproposed,2,1,47,"), std::string::npos);
}

}  // namespace
}  // namespace bipoly
