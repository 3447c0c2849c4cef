#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bipoly {

enum class Errc {
  kInvalidParams,
  kZeroInverse,
  kDimensionMismatch,
  kInvalidOrder,
  kIndivisibleDimensions,
  kFieldTooSmall,
  kNotEnoughResponses,
  kOrderViolation,
  kDecodeSingular,
  kNonIntegerBound,
  kBudgetTooSmall,
  kDuplicatePoints,
  kTooLargeToEnumerate,
  kUnsupportedRegime,
  kParse,
  kFormat,
};

std::string_view ErrcName(Errc code);

// Every failure raised by the library carries one of the codes above so that
// callers (notably the CLI) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(ErrcName(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace bipoly
