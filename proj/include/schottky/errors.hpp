#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schottky {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong shape, non-symmetric matrix, unparsable value.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(const std::string& what, std::size_t failing_minor)
      : Error(what), failing_minor_(failing_minor) {}

  // Order of the first leading principal minor that is not positive.
  std::size_t failing_minor() const { return failing_minor_; }

 private:
  std::size_t failing_minor_;
};

class SearchSpaceExceeded : public Error {
 public:
  using Error::Error;
};

class UnboundedError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotJacobianError : public Error {
 public:
  using Error::Error;
};

class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NoSingularityFound : public Error {
 public:
  using Error::Error;
};

}  // namespace schottky
