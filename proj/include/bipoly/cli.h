#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bipoly/params.h"

namespace bipoly::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitRuntime = 2,
  kExitIncompletable = 3,
};

struct DemoOptions {
  SchemeParams params{5, 5, 3, 5, 51, 2147483647};
  std::size_t r = 100;
  std::size_t s = 100;
  std::size_t c = 100;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> dump_dir;
};

struct ThresholdOptions {
  std::size_t K = 5;
  std::size_t L = 5;
  std::size_t T = 3;
  std::vector<std::size_t> budgets{2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::optional<std::filesystem::path> out;
};

struct SimulateOptions {
  std::filesystem::path config;
  std::string scheme = "both";  // proposed | gasp | both
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  std::optional<std::filesystem::path> out;
};

struct PrivacyOptions {
  SchemeParams params{5, 5, 3, 5, 51, 2147483647};
  std::size_t sweeps = 10;
  std::uint64_t seed = 0;
  bool allow_degenerate = false;
};

inline constexpr const char* kThresholdCsvHeader = "budget,proposed_m,proposed_rth,gasp_m,gasp_rth";

// Each command writes its report or CSV to `out`, diagnostics to `err`, and
// returns one of the exit codes above. When an output path is given a
// manifest (<path>.manifest.json) capturing the exact inputs is written next
// to it.
int RunDemo(const DemoOptions& opts, std::ostream& out, std::ostream& err);
int RunThresholds(const ThresholdOptions& opts, std::ostream& out, std::ostream& err);
int RunSimulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int RunPrivacy(const PrivacyOptions& opts, std::ostream& out, std::ostream& err);

// Threshold table as CSV text (header plus one row per budget).
std::string ThresholdCsv(const ThresholdOptions& opts);

// Seed from BIPOLY_SEED when set and parseable, else `fallback`.
std::uint64_t SeedFromEnvironment(std::uint64_t fallback);

}  // namespace bipoly::cli
