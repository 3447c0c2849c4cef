#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bipoly/params.h"

namespace bipoly {

struct WorkerClass {
  std::size_t count = 1;
  double lambda = 1.0;  // rate, 1/s
  double nu = 0.0;      // shift, s
};

// How sub-task durations of one worker relate to each other.
enum class TaskTimeModel {
  // One shifted-exponential draw per worker per trial; each of its sub-tasks
  // takes that long, so the j-th result arrives at j * duration.
  kPerWorker,
  // Every sub-task draws an independent duration.
  kPerTask,
};

std::string ToString(TaskTimeModel model);
// Accepts "per-worker" and "per-task"; throws Errc::kParse otherwise.
TaskTimeModel ParseTaskTimeModel(const std::string& text);

struct SimConfig {
  std::vector<WorkerClass> classes;
  std::size_t scheme_rth = 1;
  std::size_t m = 1;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  TaskTimeModel model = TaskTimeModel::kPerWorker;
  std::size_t threads = 1;

  std::size_t worker_count() const;
  bool completable() const { return worker_count() * m >= scheme_rth; }
  // Throws Errc::kInvalidParams on empty classes, lambda <= 0, nu < 0, zero
  // trials, zero m or zero threshold.
  void Validate() const;
};

struct SimResult {
  double mean_time = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(completed trials)
  double completion_rate = 0.0;
  std::vector<double> per_trial_times;  // NaN marks an incompletable trial
};

// Deterministic per-trial generator seeded from (seed, trial index), so that
// results do not depend on how trials are split across threads.
std::mt19937_64 TrialRng(std::uint64_t seed, std::uint64_t trial);

// Uniform draw on the open interval (0, 1) from 53 random bits.
double OpenUniform(std::mt19937_64& rng);

// nu + Exp(lambda) by inverse CDF; always strictly greater than nu.
double SampleTaskTime(double lambda, double nu, std::mt19937_64& rng);

// Arrival time of the scheme_rth-th result, or nullopt if the pool can never
// produce that many results.
std::optional<double> SimulateOnce(const SimConfig& cfg, std::mt19937_64& rng);

SimResult ExpectedTime(const SimConfig& cfg);

enum class SchemeKind { kProposed, kGasp };
std::string ToString(SchemeKind kind);

struct SweepRow {
  SchemeKind scheme = SchemeKind::kProposed;
  std::size_t budget = 0;
  std::size_t m = 0;
  std::size_t r_th = 0;
  SimResult result;
};

// For each budget derive (m, R_th) for the chosen scheme from (K, L, T) in p
// and run ExpectedTime with the template's worker pool, trials and seed.
std::vector<SweepRow> BudgetSweep(const SimConfig& base, const std::vector<std::size_t>& budgets,
                                  SchemeKind scheme, const SchemeParams& p);

// Schema-stable CSV rendering, "%.6g" for floating point values.
inline constexpr const char* kSweepCsvHeader =
    "scheme,budget,m,r_th,mean_time_s,std_err_s,trials,seed";
std::string SweepCsv(const std::vector<SweepRow>& rows, std::size_t trials, std::uint64_t seed);

}  // namespace bipoly
