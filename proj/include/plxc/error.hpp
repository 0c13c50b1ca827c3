#pragma once

#include <stdexcept>
#include <string>

namespace plxc {

enum class ErrorCode {
  invalid_argument = 1,
  domain = 2,
  degenerate_input = 3,
  sign_instability = 4,
  insufficient_points = 5,
  io = 6,
  integrity = 7,
  parse = 8,
};

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto plxc_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace plxc
