#pragma once

#include <stdexcept>
#include <string>

namespace refdecomp {

enum class ErrorKind {
  Lexical,
  Parse,
  Type,
  InvalidPath,
  BaselineZero,
  StaleSite,
  GuardViolation,
  SignatureMismatch,
  UnsupportedType,
  InvalidArgument,
  EmptyCorpus,
  Io,
};

const char *to_string(ErrorKind kind);

/// Every failure surfaced by the library is an Error carrying its kind.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace refdecomp
