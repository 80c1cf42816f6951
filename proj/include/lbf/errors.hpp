#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lbf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched ring contexts, exponent-vector lengths, point dimensions.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Inexact division, exponent overflow and similar arithmetic failures.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A result contradicts a theorem the computation relies on. Seeing one of
/// these means either bad input or a bug upstream.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// A configured cap (pair count, operator size, deadline) was exceeded.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t pairs_processed, std::size_t basis_size,
                std::size_t pairs_pending)
      : Error(what),
        pairs_processed_(pairs_processed),
        basis_size_(basis_size),
        pairs_pending_(pairs_pending) {}

  std::size_t pairs_processed() const { return pairs_processed_; }
  std::size_t basis_size() const { return basis_size_; }
  std::size_t pairs_pending() const { return pairs_pending_; }

 private:
  std::size_t pairs_processed_;
  std::size_t basis_size_;
  std::size_t pairs_pending_;
};

/// The max_work cap of a Gröbner computation was reached.
class WorkLimitError : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

/// Lexical or syntax error in the text grammar; `position` is a 0-based
/// byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace lbf
