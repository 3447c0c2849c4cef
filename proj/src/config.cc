#include "bipoly/config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "bipoly/error.h"

namespace bipoly {

namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void Fail(std::size_t line, const std::string& what) {
  throw Error(Errc::kParse, "line " + std::to_string(line) + ": " + what);
}

std::uint64_t ParseUnsigned(const std::string& text, std::size_t line) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) Fail(line, "expected a non-negative integer, got '" + text + "'");
  return v;
}

double ParseDouble(const std::string& text, std::size_t line) {
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  double v = 0.0;
  is >> v;
  if (is.fail() || !is.eof()) Fail(line, "expected a number, got '" + text + "'");
  return v;
}

}  // namespace

SweepConfig ParseSweepConfig(std::istream& in) {
  SweepConfig cfg;
  enum class Section { kNone, kScheme, kClass, kSimulation } section = Section::kNone;
  bool seen_k = false, seen_l = false, seen_t = false;
  // Per-class bookkeeping: which of count/lambda/nu were given.
  unsigned class_fields = 0;
  std::size_t class_line = 0;

  auto finish_class = [&] {
    if (section == Section::kClass && class_fields != 0b111) {
      Fail(class_line, "[class] needs count, lambda and nu");
    }
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find_first_of("#;"); hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') Fail(line_no, "unterminated section header");
      finish_class();
      const std::string name = Trim(line.substr(1, line.size() - 2));
      if (name == "scheme") {
        section = Section::kScheme;
      } else if (name == "class") {
        section = Section::kClass;
        cfg.classes.emplace_back();
        class_fields = 0;
        class_line = line_no;
      } else if (name == "simulation") {
        section = Section::kSimulation;
      } else {
        Fail(line_no, "unknown section [" + name + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) Fail(line_no, "expected key = value");
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) Fail(line_no, "expected key = value");

    switch (section) {
      case Section::kNone:
        Fail(line_no, "key '" + key + "' outside of any section");
      case Section::kScheme:
        if (key == "K") {
          cfg.K = ParseUnsigned(value, line_no);
          seen_k = true;
        } else if (key == "L") {
          cfg.L = ParseUnsigned(value, line_no);
          seen_l = true;
        } else if (key == "T") {
          cfg.T = ParseUnsigned(value, line_no);
          seen_t = true;
        } else if (key == "budgets") {
          std::istringstream items(value);
          std::string item;
          cfg.budgets.clear();
          while (std::getline(items, item, ',')) cfg.budgets.push_back(ParseUnsigned(Trim(item), line_no));
        } else {
          Fail(line_no, "unknown key '" + key + "' in [scheme]");
        }
        break;
      case Section::kClass: {
        WorkerClass& cls = cfg.classes.back();
        if (key == "count") {
          cls.count = ParseUnsigned(value, line_no);
          class_fields |= 0b001;
        } else if (key == "lambda") {
          cls.lambda = ParseDouble(value, line_no);
          if (!(cls.lambda > 0.0)) Fail(line_no, "lambda must be positive");
          class_fields |= 0b010;
        } else if (key == "nu") {
          cls.nu = ParseDouble(value, line_no);
          if (!(cls.nu >= 0.0)) Fail(line_no, "nu must be non-negative");
          class_fields |= 0b100;
        } else {
          Fail(line_no, "unknown key '" + key + "' in [class]");
        }
        break;
      }
      case Section::kSimulation:
        if (key == "trials") {
          cfg.trials = ParseUnsigned(value, line_no);
        } else if (key == "seed") {
          cfg.seed = ParseUnsigned(value, line_no);
        } else if (key == "model") {
          try {
            cfg.model = ParseTaskTimeModel(value);
          } catch (const Error&) {
            Fail(line_no, "model must be per-worker or per-task");
          }
        } else {
          Fail(line_no, "unknown key '" + key + "' in [simulation]");
        }
        break;
    }
  }
  finish_class();
  if (!seen_k || !seen_l || !seen_t) Fail(line_no, "[scheme] must define K, L and T");
  if (cfg.budgets.empty()) Fail(line_no, "[scheme] must define budgets");
  if (cfg.classes.empty()) Fail(line_no, "at least one [class] section is required");
  return cfg;
}

SweepConfig LoadSweepConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kParse, "cannot open config " + path.string());
  return ParseSweepConfig(in);
}

}  // namespace bipoly
