#pragma once

#include <stdexcept>
#include <string>

namespace cicrdbo {

// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A request for zero items where at least one is required.
struct EmptyRequestError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Invalid optimizer, sweep, or CLI configuration. Raised before any work starts.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// File could not be opened, read, or written. The message names the path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tabular input is missing a required column.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tabular input has a malformed cell.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Model training or cross-validation cannot proceed on the given data.
struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cicrdbo
