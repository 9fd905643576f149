#pragma once

#include <stdexcept>
#include <string>

namespace baltic {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input artifact (trajectory, PLY, PNG, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// File that cannot be opened, read or written. The message names the path.
class FileError : public Error {
 public:
  using Error::Error;
};

/// Input geometry or images that violate an operation's preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Geometric configuration that does not determine a unique solution.
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

}  // namespace baltic
