#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace adl {

using Index = std::int64_t;

// Invalid configuration or schedule. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or non-finite input data. Maps to CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a4 == 0: the debiased estimate is not identifiable yet.
class DegenerateInformation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (non-finite t, q at 0 or 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Update arrived at the wrong point of the stream (e.g. before activation).
class SequencingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Caller broke a documented precondition (dimension mismatch, unpinned coordinate).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace adl
