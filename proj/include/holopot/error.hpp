#pragma once

#include <stdexcept>
#include <string>

namespace holopot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonHomogeneous : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

// A point (or segment) leaves the open domain.
class DomainViolation : public Error {
 public:
  using Error::Error;
};

// Finite-difference stencil does not fit inside the domain.
class MarginViolation : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace holopot
