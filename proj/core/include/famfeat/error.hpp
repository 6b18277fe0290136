#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace famfeat {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied an argument outside an operation's domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed file content. Carries the file and (1-based) line, 0 if unknown.
class InputError : public ParameterError {
 public:
  InputError(std::string file, std::size_t line, const std::string& what);

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Iterative solver stopped without meeting its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations,
                   std::size_t violations = 0);

  std::size_t iterations() const noexcept { return iterations_; }
  std::size_t violations() const noexcept { return violations_; }

 private:
  std::size_t iterations_;
  std::size_t violations_;
};

/// A quantity is mathematically undefined for the given input
/// (zero variance, zero power, zero denominator).
class UndefinedError : public Error {
 public:
  using Error::Error;
};

/// One or more stimulus windows run past the end of a recording.
class EpochWindowError : public ParameterError {
 public:
  explicit EpochWindowError(std::vector<std::size_t> onsets);

  const std::vector<std::size_t>& onsets() const noexcept { return onsets_; }

 private:
  std::vector<std::size_t> onsets_;
};

}  // namespace famfeat
