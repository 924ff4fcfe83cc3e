#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (scalars, JSON documents, configs).
class ParseError : public Error {
public:
  using Error::Error;
};

/// A value violates a documented precondition or type invariant.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// An explicit net was asked about a point outside its covered window.
class CoverageError : public Error {
public:
  using Error::Error;
};

/// A coefficient index or evaluation point is outside the space.
class IndexError : public Error {
public:
  using Error::Error;
};

/// An enumeration hit its node cap before finishing.
class SearchBudgetExceeded : public Error {
public:
  SearchBudgetExceeded(const std::string& what, std::uint64_t nodes)
      : Error(what), nodes_(nodes) {}

  std::uint64_t nodes() const noexcept { return nodes_; }

private:
  std::uint64_t nodes_;
};

/// The dual-lattice mesh of the U construction does not norm its stage.
class MeshTooCoarse : public Error {
public:
  using Error::Error;
};

} // namespace qlab
