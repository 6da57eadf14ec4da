#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mzls {

// Base of every exception raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input: argument out of range, malformed file content, bad flags.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DomainError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class UnsupportedDimension : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// Failures of the numerics rather than of the input.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public NumericalFailure {
 public:
  RankDeficient(const std::string& what, std::ptrdiff_t index)
      : NumericalFailure(what), index_(index) {}
  std::ptrdiff_t index() const noexcept { return index_; }

 private:
  std::ptrdiff_t index_;
};

class NonConvergence : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

// The layer cannot satisfy the lower Marcinkiewicz-Zygmund bound at the
// requested degree (too few points, or a numerically singular Gram matrix).
class MZDeficient : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mzls
