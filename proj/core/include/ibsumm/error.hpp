#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ibsumm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value, unknown key, or inconsistent settings.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Transport failure or timeout talking to a model server. Retriable.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// A backend or caller broke an interface contract (wrong batch length,
/// mismatched dimensions, out-of-range index). Not retriable.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Raised for documents that cannot enter the pipeline, e.g. no sentence
/// survives the length filter.
class DocumentSkipped : public Error {
 public:
  using Error::Error;
};

}  // namespace ibsumm
