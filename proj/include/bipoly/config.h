#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "bipoly/simulator.h"

namespace bipoly {

// Simulation sweep description read from an INI-style key=value file:
//
//   # comment
//   [scheme]
//   K = 5
//   L = 5
//   T = 3
//   budgets = 2, 3, 4
//
//   [class]            ; repeat once per worker class
//   count = 17
//   lambda = 2.5
//   nu = 0.4
//
//   [simulation]       ; optional
//   trials = 10000
//   seed = 0
//   model = per-worker
struct SweepConfig {
  std::size_t K = 0;
  std::size_t L = 0;
  std::size_t T = 0;
  std::vector<std::size_t> budgets;
  std::vector<WorkerClass> classes;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  TaskTimeModel model = TaskTimeModel::kPerWorker;
};

// Throws Errc::kParse with "line N:" in the message for malformed input.
SweepConfig ParseSweepConfig(std::istream& in);
SweepConfig LoadSweepConfig(const std::filesystem::path& path);

}  // namespace bipoly
