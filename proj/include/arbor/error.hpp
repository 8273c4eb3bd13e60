#pragma once

#include <stdexcept>
#include <string>

namespace arbor {

/// Base class for every structured failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different coefficient domains (moduli, towers, descriptors).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured size limit (tower degree, enumeration size, subset count) was hit.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t limit)
      : Error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

/// The request is outside what the library handles (e.g. p > 2 for the criterion).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments failed.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace arbor
