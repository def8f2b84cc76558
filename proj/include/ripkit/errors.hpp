#pragma once

#include <stdexcept>
#include <string>

namespace ripkit {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

// An enumeration (supports, sign patterns, least-squares fits) would exceed
// the caller's budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class InfeasibleDivision : public Error {
 public:
  using Error::Error;
};

// The constraint set of a recovery program is empty.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// A bound was requested outside the regime where it is valid (delta >= 1/3).
class OutOfRegime : public Error {
 public:
  using Error::Error;
};

class InvalidWitness : public Error {
 public:
  using Error::Error;
};

}  // namespace ripkit
