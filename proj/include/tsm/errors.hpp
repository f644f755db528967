// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsm {

enum class ErrorCode {
  kUsage,
  kPrecision,
  kNonUnit,
  kFractionalShift,
  kNotPlusSupport,
  kFormulaInapplicable,
  kInsufficientTable,
  kConstruction,
  kChecksum,
  kIo,
};

/// Machine-readable tag used in error prefixes, e.g. "insufficient-table".
std::string_view error_tag(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace tsm
