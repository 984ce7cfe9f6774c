#pragma once

#include <stdexcept>
#include <string>

namespace aniso {

/// Error classes surfaced by the library; the CLI maps them onto exit codes.
enum class ErrorKind {
  usage,         ///< bad command line or configuration value
  io,            ///< file missing, unreadable or malformed
  precondition,  ///< input violates an operation's precondition
  structural,    ///< mismatched grids, component counts or shapes
  range,         ///< shell or scale index outside the resolvable interval
  numerical,     ///< NaN input, non-convergence, breakdown
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace aniso
