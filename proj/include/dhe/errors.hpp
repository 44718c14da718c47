#pragma once

#include <stdexcept>
#include <string>

namespace dhe {

// Base class for all library failures so callers can catch one type.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// An iteration failed to converge or an internal consistency check tripped.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

// Operation invoked on an object whose required state is not populated.
class StateError : public Error {
public:
  explicit StateError(const std::string& what) : Error(what) {}
};

// Requested computation exceeds a configured resource cap.
class ResourceError : public Error {
public:
  explicit ResourceError(const std::string& what) : Error(what) {}
};

}  // namespace dhe
