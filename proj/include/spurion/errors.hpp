#pragma once

#include <stdexcept>
#include <string>

namespace spurion {

/// Error category, used by the CLI to pick its exit code.
enum class ErrorKind {
    Usage,      ///< bad input, config or file problem (exit 1)
    Refusal,    ///< methodological gate refused to proceed (exit 2)
    Numeric,    ///< numerical failure: rank deficiency, singular moments (exit 3)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_usage(const std::string& msg) { throw Error(ErrorKind::Usage, msg); }
[[noreturn]] inline void throw_refusal(const std::string& msg) { throw Error(ErrorKind::Refusal, msg); }
[[noreturn]] inline void throw_numeric(const std::string& msg) { throw Error(ErrorKind::Numeric, msg); }

}  // namespace spurion
