#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplexcover {

using IntVec = std::vector<std::int64_t>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularBasis : public Error {
 public:
  SingularBasis() : Error("basis rows are linearly dependent") {}
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Raised when an operation needs S°(n,d) + L to cover Z^n and it does not.
/// Carries a point whose coset is not reached within distance d.
class NotACovering : public Error {
 public:
  explicit NotACovering(IntVec witness)
      : Error("not a covering"), witness_(std::move(witness)) {}
  const IntVec& witness() const noexcept { return witness_; }

 private:
  IntVec witness_;
};

/// The notch candidate set of a tile had more than one minimal element.
/// Tiles never do this; seeing it means a bug upstream.
class MultipleMinimalNotches : public Error {
 public:
  explicit MultipleMinimalNotches(std::vector<IntVec> minima)
      : Error("notch candidate set has " + std::to_string(minima.size()) +
              " minimal elements"),
        minima_(std::move(minima)) {}
  const std::vector<IntVec>& minima() const noexcept { return minima_; }

 private:
  std::vector<IntVec> minima_;
};

class SingularAfterRounding : public Error {
 public:
  SingularAfterRounding() : Error("rounded basis is singular; increase the scale factor") {}
};

class BadSampleCount : public Error {
 public:
  BadSampleCount() : Error("sample or node count must be positive") {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace simplexcover
