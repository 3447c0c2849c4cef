#include "bipoly/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "bipoly/baseline.h"
#include "bipoly/error.h"
#include "bipoly/scheme.h"

namespace bipoly {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string ToString(TaskTimeModel model) {
  return model == TaskTimeModel::kPerWorker ? "per-worker" : "per-task";
}

TaskTimeModel ParseTaskTimeModel(const std::string& text) {
  if (text == "per-worker") return TaskTimeModel::kPerWorker;
  if (text == "per-task") return TaskTimeModel::kPerTask;
  throw Error(Errc::kParse, "unknown task time model '" + text + "'");
}

std::string ToString(SchemeKind kind) { return kind == SchemeKind::kProposed ? "proposed" : "gasp"; }

std::size_t SimConfig::worker_count() const {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.count;
  return n;
}

void SimConfig::Validate() const {
  if (classes.empty()) throw Error(Errc::kInvalidParams, "at least one worker class is required");
  for (const auto& c : classes) {
    if (c.count == 0) throw Error(Errc::kInvalidParams, "worker class count must be positive");
    if (!(c.lambda > 0.0)) throw Error(Errc::kInvalidParams, "lambda must be positive");
    if (!(c.nu >= 0.0)) throw Error(Errc::kInvalidParams, "nu must be non-negative");
  }
  if (trials == 0) throw Error(Errc::kInvalidParams, "trials must be positive");
  if (m == 0) throw Error(Errc::kInvalidParams, "m must be positive");
  if (scheme_rth == 0) throw Error(Errc::kInvalidParams, "recovery threshold must be positive");
}

std::mt19937_64 TrialRng(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(SplitMix64(SplitMix64(seed) ^ trial));
}

double OpenUniform(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

double SampleTaskTime(double lambda, double nu, std::mt19937_64& rng) {
  return nu - std::log(OpenUniform(rng)) / lambda;
}

std::optional<double> SimulateOnce(const SimConfig& cfg, std::mt19937_64& rng) {
  if (!cfg.completable()) return std::nullopt;
  std::vector<double> arrivals;
  arrivals.reserve(cfg.worker_count() * cfg.m);
  for (const auto& cls : cfg.classes) {
    for (std::size_t w = 0; w < cls.count; ++w) {
      if (cfg.model == TaskTimeModel::kPerWorker) {
        const double duration = SampleTaskTime(cls.lambda, cls.nu, rng);
        for (std::size_t j = 1; j <= cfg.m; ++j) arrivals.push_back(duration * static_cast<double>(j));
        continue;
      }
      double clock = 0.0;
      for (std::size_t j = 0; j < cfg.m; ++j) {
        clock += SampleTaskTime(cls.lambda, cls.nu, rng);
        arrivals.push_back(clock);
      }
    }
  }
  auto nth = arrivals.begin() + static_cast<std::ptrdiff_t>(cfg.scheme_rth - 1);
  std::nth_element(arrivals.begin(), nth, arrivals.end());
  return *nth;
}

SimResult ExpectedTime(const SimConfig& cfg) {
  cfg.Validate();
  SimResult out;
  out.per_trial_times.assign(cfg.trials, std::numeric_limits<double>::quiet_NaN());

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      auto rng = TrialRng(cfg.seed, t);
      if (auto time = SimulateOnce(cfg, rng)) out.per_trial_times[t] = *time;
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(cfg.threads, 1, cfg.trials);
  if (threads == 1) {
    run_range(0, cfg.trials);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (cfg.trials + threads - 1) / threads;
    for (std::size_t begin = 0; begin < cfg.trials; begin += chunk) {
      pool.emplace_back(run_range, begin, std::min(cfg.trials, begin + chunk));
    }
  }

  // Aggregate in trial order so the result is independent of threading.
  std::size_t completed = 0;
  double sum = 0.0;
  for (double t : out.per_trial_times) {
    if (std::isnan(t)) continue;
    ++completed;
    sum += t;
  }
  out.completion_rate = static_cast<double>(completed) / static_cast<double>(cfg.trials);
  if (completed == 0) {
    out.mean_time = std::numeric_limits<double>::quiet_NaN();
    out.std_error = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.mean_time = sum / static_cast<double>(completed);
  if (completed > 1) {
    double sq = 0.0;
    for (double t : out.per_trial_times) {
      if (!std::isnan(t)) sq += (t - out.mean_time) * (t - out.mean_time);
    }
    const double variance = sq / static_cast<double>(completed - 1);
    out.std_error = std::sqrt(variance / static_cast<double>(completed));
  }
  return out;
}

std::vector<SweepRow> BudgetSweep(const SimConfig& base, const std::vector<std::size_t>& budgets,
                                  SchemeKind scheme, const SchemeParams& p) {
  std::vector<SweepRow> rows;
  for (std::size_t budget : budgets) {
    if (budget < 2 || budget > 10) {
      throw Error(Errc::kInvalidParams,
                  "budget " + std::to_string(budget) + " outside the supported range [2, 10]");
    }
    SweepRow row;
    row.scheme = scheme;
    row.budget = budget;
    if (scheme == SchemeKind::kProposed) {
      SchemeParams q = p;
      q.m = MaxMForBudget(budget, p);
      row.m = q.m;
      row.r_th = RecoveryThreshold(q);
    } else {
      row.m = GaspMaxM(budget);
      row.r_th = GaspRecoveryThreshold({p.K, p.L, p.T, row.m});
    }
    SimConfig cfg = base;
    cfg.m = row.m;
    cfg.scheme_rth = row.r_th;
    row.result = ExpectedTime(cfg);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string SweepCsv(const std::vector<SweepRow>& rows, std::size_t trials, std::uint64_t seed) {
  std::string out = std::string(kSweepCsvHeader) + "\n";
  char buf[256];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%zu,%zu,%zu,%.6g,%.6g,%zu,%llu\n",
                  ToString(row.scheme).c_str(), row.budget, row.m, row.r_th,
                  row.result.mean_time, row.result.std_error, trials,
                  static_cast<unsigned long long>(seed));
    out += buf;
  }
  return out;
}

}  // namespace bipoly
