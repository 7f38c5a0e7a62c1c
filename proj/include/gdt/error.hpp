#pragma once

#include <stdexcept>
#include <string>

namespace gdt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The constraints admit no design (e.g. the budget cannot buy one unit
/// inspected once).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// The computation could not be completed to the requested accuracy:
/// bracket failure, iteration cap, loss of precision.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gdt
