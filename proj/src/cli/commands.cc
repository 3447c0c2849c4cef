#include "bipoly/cli.h"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "bipoly/baseline.h"
#include "bipoly/config.h"
#include "bipoly/error.h"
#include "bipoly/privacy.h"
#include "bipoly/scheme.h"
#include "bipoly/serialize.h"
#include "bipoly/simulator.h"
#include "json.hpp"

namespace bipoly::cli {

namespace {

using Json = nlohmann::ordered_json;

int ExitFor(const Error& e) {
  switch (e.code()) {
    case Errc::kInvalidParams:
    case Errc::kIndivisibleDimensions:
    case Errc::kFieldTooSmall:
    case Errc::kBudgetTooSmall:
    case Errc::kUnsupportedRegime:
    case Errc::kDimensionMismatch:
    case Errc::kParse:
    case Errc::kTooLargeToEnumerate:
      return kExitValidation;
    default:
      return kExitRuntime;
  }
}

Json ParamsJson(const SchemeParams& p) {
  return Json{{"K", p.K}, {"L", p.L}, {"T", p.T}, {"m", p.m}, {"N", p.N}, {"q", p.q}};
}

void WriteManifest(const std::filesystem::path& path, const std::string& subcommand,
                   Json parameters, std::uint64_t seed, const std::vector<std::string>& outputs) {
  Json manifest;
  manifest["subcommand"] = subcommand;
  manifest["parameters"] = std::move(parameters);
  manifest["seed"] = seed;
  manifest["tool_version"] = kToolVersion;
  manifest["outputs"] = outputs;
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw Error(Errc::kFormat, "cannot write manifest " + path.string());
  f << manifest.dump(2) << "\n";
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::trunc | std::ios::binary);
  if (!f) throw Error(Errc::kFormat, "cannot write " + path.string());
  f << text;
}

std::filesystem::path ManifestPath(const std::filesystem::path& out) {
  return out.string() + ".manifest.json";
}

template <typename Fn>
int Guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitFor(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

// Visits every size-k subset of {0..n-1} in lexicographic order.
template <typename Fn>
void ForEachSubset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::string FormatMatrix(const FieldMatrix& m) {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "    [";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << "]\n";
  }
  return os.str();
}

}  // namespace

std::uint64_t SeedFromEnvironment(std::uint64_t fallback) {
  const char* env = std::getenv("BIPOLY_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  return (end != nullptr && *end == '\0') ? v : fallback;
}

int RunDemo(const DemoOptions& opts, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const SchemeParams& p = opts.params;
    p.Validate();
    if (opts.r == 0 || opts.s == 0 || opts.c == 0) {
      throw Error(Errc::kInvalidParams, "matrix dimensions must be positive");
    }
    if (opts.r % p.K != 0) {
      throw Error(Errc::kIndivisibleDimensions,
                  "K=" + std::to_string(p.K) + " does not divide r=" + std::to_string(opts.r));
    }
    if (opts.c % p.L != 0) {
      throw Error(Errc::kIndivisibleDimensions,
                  "L=" + std::to_string(p.L) + " does not divide c=" + std::to_string(opts.c));
    }
    const std::size_t threshold = RecoveryThreshold(p);
    out << "demo K=" << p.K << " L=" << p.L << " T=" << p.T << " m=" << p.m << " N=" << p.N
        << " q=" << p.q << " r=" << opts.r << " s=" << opts.s << " c=" << opts.c
        << " seed=" << opts.seed << "\n";
    out << "recovery threshold: " << threshold << "\n";
    if (p.N * p.m < threshold) {
      out << "INCOMPLETABLE: N*m=" << p.N * p.m << " results can never reach the threshold\n";
      return static_cast<int>(kExitIncompletable);
    }

    const PrimeField field = p.field();
    std::mt19937_64 rng(opts.seed);
    const FieldMatrix a = FieldMatrix::Random(opts.r, opts.s, field, rng);
    const FieldMatrix b = FieldMatrix::Random(opts.s, opts.c, field, rng);
    const Encoding enc = Encode(a, b, p, rng);

    ResponseSet all;
    for (const auto& share : enc.shares) {
      for (std::size_t order = 0; order < p.m; ++order) {
        all.push_back(WorkerCompute(share, order, field));
      }
    }
    const ResponseSet chosen = RandomPrefixSubset(all, threshold, rng);
    out << "upload cost: " << UploadCostBits(p, opts.r, opts.s, opts.c) << " bits\n";
    out << "results computed: " << all.size() << ", used for decoding: " << chosen.size() << "\n";

    if (opts.dump_dir) {
      std::filesystem::create_directories(*opts.dump_dir);
      const WireHeader header{p, opts.r, opts.s, opts.c};
      std::vector<std::string> files;
      char name[64];
      for (const auto& share : enc.shares) {
        std::snprintf(name, sizeof(name), "share_%04zu.bin", share.worker_id);
        WriteBytes(*opts.dump_dir / name, SerializeShare(header, share));
        files.emplace_back(name);
      }
      for (const auto& res : CanonicalOrder(chosen)) {
        std::snprintf(name, sizeof(name), "result_%04zu_%02zu.bin", res.worker_id, res.order);
        WriteBytes(*opts.dump_dir / name, SerializeResult(header, res));
        files.emplace_back(name);
      }
      Json params = ParamsJson(p);
      params["r"] = opts.r;
      params["s"] = opts.s;
      params["c"] = opts.c;
      WriteManifest(*opts.dump_dir / "manifest.json", "demo", std::move(params), opts.seed, files);
      out << "dumped " << files.size() << " files to " << opts.dump_dir->string() << "\n";
    }

    const DecodedProduct decoded = Decode(chosen, p);
    const bool ok = decoded.assembled == MatMul(a, b, field);
    out << (ok ? "PASS" : "FAIL") << ": decoded product "
        << (ok ? "matches" : "differs from") << " direct multiplication\n";
    return static_cast<int>(ok ? kExitOk : kExitRuntime);
  });
}

std::string ThresholdCsv(const ThresholdOptions& opts) {
  SchemeParams p;
  p.K = opts.K;
  p.L = opts.L;
  p.T = opts.T;
  std::string csv = std::string(kThresholdCsvHeader) + "\n";
  for (std::size_t budget : opts.budgets) {
    if (budget < 2 || budget > 10) {
      throw Error(Errc::kInvalidParams,
                  "budget " + std::to_string(budget) + " outside the supported range [2, 10]");
    }
    p.m = MaxMForBudget(budget, p);
    const std::size_t gasp_m = GaspMaxM(budget);
    const std::size_t gasp_rth = GaspRecoveryThreshold({opts.K, opts.L, opts.T, gasp_m});
    csv += std::to_string(budget) + "," + std::to_string(p.m) + "," +
           std::to_string(RecoveryThreshold(p)) + "," + std::to_string(gasp_m) + "," +
           std::to_string(gasp_rth) + "\n";
  }
  return csv;
}

int RunThresholds(const ThresholdOptions& opts, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    if (opts.K == 0 || opts.L == 0) throw Error(Errc::kInvalidParams, "K and L must be positive");
    const std::string csv = ThresholdCsv(opts);
    if (opts.out) {
      WriteText(*opts.out, csv);
      WriteManifest(ManifestPath(*opts.out), "thresholds",
                    Json{{"K", opts.K}, {"L", opts.L}, {"T", opts.T}, {"budgets", opts.budgets}},
                    0, {opts.out->filename().string()});
    } else {
      out << csv;
    }
    return static_cast<int>(kExitOk);
  });
}

int RunSimulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const SweepConfig cfg = LoadSweepConfig(opts.config);
    std::vector<SchemeKind> schemes;
    if (opts.scheme == "proposed" || opts.scheme == "both") schemes.push_back(SchemeKind::kProposed);
    if (opts.scheme == "gasp" || opts.scheme == "both") schemes.push_back(SchemeKind::kGasp);
    if (schemes.empty()) {
      throw Error(Errc::kInvalidParams, "scheme must be proposed, gasp or both");
    }

    SimConfig base;
    base.classes = cfg.classes;
    base.trials = opts.trials.value_or(cfg.trials);
    base.seed = opts.seed.value_or(cfg.seed);
    base.model = cfg.model;
    base.threads = opts.threads;
    if (base.trials == 0) throw Error(Errc::kInvalidParams, "trials must be positive");

    SchemeParams p;
    p.K = cfg.K;
    p.L = cfg.L;
    p.T = cfg.T;
    if (p.K == 0 || p.L == 0) throw Error(Errc::kInvalidParams, "K and L must be positive");

    std::vector<SweepRow> rows;
    for (SchemeKind kind : schemes) {
      auto part = BudgetSweep(base, cfg.budgets, kind, p);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    const std::string csv = SweepCsv(rows, base.trials, base.seed);
    if (opts.out) {
      WriteText(*opts.out, csv);
      Json classes = Json::array();
      for (const auto& c : cfg.classes) {
        classes.push_back(Json{{"count", c.count}, {"lambda", c.lambda}, {"nu", c.nu}});
      }
      WriteManifest(ManifestPath(*opts.out), "simulate",
                    Json{{"config", opts.config.string()},
                         {"scheme", opts.scheme},
                         {"K", cfg.K},
                         {"L", cfg.L},
                         {"T", cfg.T},
                         {"budgets", cfg.budgets},
                         {"classes", classes},
                         {"model", ToString(cfg.model)},
                         {"trials", base.trials}},
                    base.seed, {opts.out->filename().string()});
    } else {
      out << csv;
    }
    for (const auto& row : rows) {
      if (row.result.completion_rate < 1.0) {
        err << "warning: " << ToString(row.scheme) << " at budget " << row.budget
            << " is incompletable (N*m < R_th)\n";
        return static_cast<int>(kExitIncompletable);
      }
    }
    return static_cast<int>(kExitOk);
  });
}

int RunPrivacy(const PrivacyOptions& opts, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const SchemeParams& p = opts.params;
    p.Validate();
    if (opts.sweeps == 0) throw Error(Errc::kInvalidParams, "sweeps must be positive");
    out << "privacy K=" << p.K << " L=" << p.L << " T=" << p.T << " m=" << p.m << " N=" << p.N
        << " q=" << p.q << " sweeps=" << opts.sweeps << " seed=" << opts.seed << "\n";
    if (p.T == 0) {
      out << "T=0: no collusion tolerance, nothing to verify\nPASS\n";
      return static_cast<int>(kExitOk);
    }
    if (p.T > p.N) throw Error(Errc::kInvalidParams, "T cannot exceed N");

    std::mt19937_64 rng(opts.seed);
    std::size_t checked = 0, failed = 0;
    bool witness_printed = false;
    std::vector<EvalPoint> first_draw;
    for (std::size_t sweep = 0; sweep < opts.sweeps; ++sweep) {
      std::vector<EvalPoint> points = SamplePoints(p, rng);
      if (opts.allow_degenerate && points.size() >= 2) points[1] = points[0];
      if (sweep == 0) first_draw = points;
      std::vector<EvalPoint> coalition(p.T);
      ForEachSubset(p.N, p.T, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < idx.size(); ++i) coalition[i] = points[idx[i]];
        const PrivacyVerdict v = PerfectPrivacyCheck(coalition, p);
        ++checked;
        if (v.pass) return;
        ++failed;
        if (witness_printed) return;
        witness_printed = true;
        out << "witness: draw " << sweep << ", workers {";
        for (std::size_t i = 0; i < idx.size(); ++i) out << (i ? "," : "") << idx[i] + 1;
        out << "}, " << v.witness_name << " rank " << (v.witness_name == "MA" ? v.rank_a : v.rank_b)
            << " < " << (v.witness_name == "MA" ? p.T : p.T * p.m) << "\n"
            << FormatMatrix(*v.witness);
      });
    }
    out << "rank checks: " << checked << ", failed: " << failed << "\n";

    bool mi_ok = true;
    if (IsEnumerable(p)) {
      const std::vector<EvalPoint> coalition(first_draw.begin(), first_draw.begin() + p.T);
      const double mi = ExhaustiveMutualInformation(p, coalition);
      out << "exhaustive MI (workers 1.." << p.T << "): " << mi << " bits\n";
      // Full rank must imply zero information; the converse need not hold.
      mi_ok = failed != 0 || mi == 0.0;
    } else {
      out << "exhaustive MI: skipped (instance too large to enumerate)\n";
    }
    const bool pass = failed == 0 && mi_ok;
    out << (pass ? "PASS" : "FAIL") << "\n";
    return static_cast<int>(pass ? kExitOk : kExitRuntime);
  });
}

}  // namespace bipoly::cli
