#pragma once

#include <stdexcept>
#include <string>

namespace eup {

// Invalid argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A request asking for zero items (e.g. an empty spectrum).
class EmptyRequestError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative numerical procedure did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial, double last_term)
      : std::runtime_error(what), partial_(partial), last_term_(last_term) {}

  double partial() const noexcept { return partial_; }
  double last_term() const noexcept { return last_term_; }

 private:
  double partial_;
  double last_term_;
};

// Adaptive quadrature gave up before meeting the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double achieved)
      : std::runtime_error(what), estimate_(estimate), achieved_(achieved) {}

  double estimate() const noexcept { return estimate_; }
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double estimate_;
  double achieved_;
};

class RootNotFoundError : public std::runtime_error {
 public:
  RootNotFoundError(const std::string& what, double scanned_to)
      : std::runtime_error(what), scanned_to_(scanned_to) {}

  double scanned_to() const noexcept { return scanned_to_; }

 private:
  double scanned_to_;
};

// Sturm-Liouville coefficient p or w was non-positive at a sample point.
class CoefficientError : public std::domain_error {
 public:
  CoefficientError(const std::string& what, double where)
      : std::domain_error(what), where_(where) {}

  double where() const noexcept { return where_; }

 private:
  double where_;
};

// Should be unreachable for valid input; carries diagnostics in what().
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace eup
