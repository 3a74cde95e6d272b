#pragma once

#include <stdexcept>
#include <string>

namespace confal {

// Engine-level failure classes, aligned with the process exit codes:
// 1 = verification failed, 2 = parse/usage, 3 = bound exceeded.
constexpr int kErrVerify = 1;
constexpr int kErrParse = 2;
constexpr int kErrBounds = 3;
constexpr int kErrUsage = 4;

struct ConfalError : std::runtime_error {
  int code;
  ConfalError(int code_, const std::string& msg)
      : std::runtime_error(msg), code(code_) {}
};

}  // namespace confal
