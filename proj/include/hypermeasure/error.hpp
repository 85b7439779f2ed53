#pragma once

#include <stdexcept>
#include <string>

namespace hm {

enum class ErrorKind {
  ConstraintViolation,  // bad (m, n) or other input preconditions
  Domain,               // argument outside the mathematical domain
  PrecisionFailure,     // a numerical target could not be certified
  CapExceeded,          // exact-arithmetic r cap
  CeilingExceeded,      // sieve ceiling
  Validity,             // dl_bound validity condition
  EnvelopeGap,          // theta envelope has no covering band or analytic bound
  Inapplicable,         // e.g. baker fallback with d2 != 1
  Io,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

}  // namespace hm
