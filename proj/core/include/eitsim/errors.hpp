#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eitsim {

/// Base of every error thrown by the library. `kind()` is a stable tag used
/// by the command-line front end for machine-readable error lines.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept { return "error"; }
};

/// A physical argument outside its domain (e.g. a non-positive density).
class DomainError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "domain"; }
};

/// A value object failed validation. `fields()` names every offending field.
class ValidationError : public Error {
 public:
  ValidationError(std::vector<std::string> fields, const std::string& what)
      : Error(what), fields_(std::move(fields)) {}
  const std::vector<std::string>& fields() const noexcept { return fields_; }
  std::string_view kind() const noexcept override { return "validation"; }

 private:
  std::vector<std::string> fields_;
};

/// The τ integration of the Bloch equations left the physical region.
class IntegrationError : public Error {
 public:
  IntegrationError(std::size_t tau_index, const std::string& what)
      : Error(what), tau_index_(tau_index) {}
  std::size_t tau_index() const noexcept { return tau_index_; }
  std::string_view kind() const noexcept override { return "integration-instability"; }

 private:
  std::size_t tau_index_;
};

class ScenarioError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "scenario"; }
};

class DegenerateSteadyStateError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "degenerate-steady-state"; }
};

class ShapeError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "shape"; }
};

class DivisionHazardError : public Error {
 public:
  DivisionHazardError(double tau_begin, double tau_end, const std::string& what)
      : Error(what), tau_begin_(tau_begin), tau_end_(tau_end) {}
  double tau_begin() const noexcept { return tau_begin_; }
  double tau_end() const noexcept { return tau_end_; }
  std::string_view kind() const noexcept override { return "division-hazard"; }

 private:
  double tau_begin_;
  double tau_end_;
};

class InversionError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "inversion"; }
};

class MetricError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "metric"; }
};

}  // namespace eitsim
