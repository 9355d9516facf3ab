#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace signed_spectra {

/// Bad user-supplied data: malformed files, invalid matrices, bad graph shapes.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Text input that could not be parsed. Line numbers are 1-based.
class ParseError : public InputError {
public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Structurally invalid input (asymmetric matrix, degree mismatch, self-loop...).
class ValidationError : public InputError {
public:
  using InputError::InputError;
};

/// Eigensolver failure: non-finite entries or no convergence within the sweep cap.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CheckpointError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace signed_spectra
