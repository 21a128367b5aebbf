#pragma once

#include <stdexcept>
#include <string>

namespace spibox {

enum class ErrorKind {
  invalid_argument,
  contract_violation,
  parse,
  io,
  generation_stall,
  undefined_spread,
  empty_input,
};

/// Every failure raised by the core carries a kind so the C boundary can map
/// it to a status code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::invalid_argument, what);
}

}  // namespace spibox
