#pragma once

#include <stdexcept>
#include <string>

namespace randlab {

// Numeric values are mirrored by randlab_status in randlab.h.
enum class ErrorCode : int {
  invalid_argument = 1,
  duplicate_key = 2,
  missing_key = 3,
  load_limit = 4,
  contract_violation = 5,
  parse_error = 6,
  io_error = 7,
  unknown_metric = 8,
  config_mismatch = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::invalid_argument, what);
}

}  // namespace randlab
