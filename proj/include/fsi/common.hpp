#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsi {

using Index = std::size_t;
using Vector = std::vector<double>;
using IndexSet = std::vector<Index>;

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class SingularMatrixError : public Error {
public:
  SingularMatrixError(const std::string& what, Index pivot)
      : Error(what), pivot_(pivot) {}
  Index pivot() const { return pivot_; }

private:
  Index pivot_;
};

/// Raised by finite element assembly; carries the offending element id.
class AssemblyError : public Error {
public:
  AssemblyError(const std::string& what, Index element)
      : Error(what), element_(element) {}
  Index element() const { return element_; }

private:
  Index element_;
};

class SolverError : public Error {
public:
  using Error::Error;
};

}  // namespace fsi
