#pragma once

#include <stdexcept>
#include <string>

namespace swr {

/// Base for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or unreadable input: files, documents, configuration values.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed embedding file; the message names the offending line.
class LoadError : public InputError {
 public:
  using InputError::InputError;
};

/// The word graph could not be built (e.g. no edges in either channel).
class GraphError : public Error {
 public:
  using Error::Error;
};

}  // namespace swr
