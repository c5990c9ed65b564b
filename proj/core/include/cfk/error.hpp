#pragma once

#include <stdexcept>
#include <string>

namespace cfk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element, table or matrix sizes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was applied to the wrong algebra kind or action side.
class KindError : public Error {
 public:
  using Error::Error;
};

/// Operation called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured search or iteration cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial or document text.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cfk
