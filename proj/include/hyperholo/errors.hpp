#pragma once

#include <stdexcept>
#include <string>

namespace hyperholo {

/// A point, stencil or surface left the smooth domain of a field.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A matrix claimed to be a complex structure fails S^2 = -Id.
struct StructureError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Singular or indefinite metric.
struct MetricError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Invalid model data: action weights, curvature operators, configs.
struct ModelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The group does not act freely (rank-deficient moment-map derivative).
struct NonFreePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hyperholo
