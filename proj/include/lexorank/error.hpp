#pragma once

#include <stdexcept>
#include <string>

namespace lexorank {

enum class ErrorKind {
  InvalidParameter,
  InvalidLetter,
  NotBlockable,
  NotRankable,
  NotInDomain,
  TooLarge,
  Unsupported,
  SamplingFailed,
  Parse,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lexorank
