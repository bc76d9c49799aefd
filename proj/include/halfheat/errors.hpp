#pragma once

#include <stdexcept>
#include <string>

namespace halfheat {

// Caller passed arguments outside an operation's contract (CLI exit code 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A computation left the region where it is defined (jet division by a
// non-invertible constant term, stencil outside the chart rectangle, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularChartError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CollarTooWideError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FixtureDefectError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IdentityRegressionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace halfheat
