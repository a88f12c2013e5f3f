#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rmnk {

/// Base for every domain error raised by the library. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RhoOutOfRange : public Error {
 public:
  RhoOutOfRange(double rho, double lower, double upper)
      : Error("rho " + std::to_string(rho) + " outside admissible interval [" +
              std::to_string(lower) + ", " + std::to_string(upper) + "]"),
        rho_(rho), lower_(lower), upper_(upper) {}

  double rho() const noexcept { return rho_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double rho_;
  double lower_;
  double upper_;
};

class NotPositiveSemidefinite : public Error {
 public:
  explicit NotPositiveSemidefinite(double min_eigenvalue)
      : Error("copula-adjusted correlation matrix is not positive semidefinite (min eigenvalue " +
              std::to_string(min_eigenvalue) + ")"),
        min_eigenvalue_(min_eigenvalue) {}

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class InvalidK : public InvalidParameter {
 public:
  InvalidK(int k, int n)
      : InvalidParameter("epistasis degree K=" + std::to_string(k) + " invalid for N=" +
                         std::to_string(n)) {}
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t expected, std::size_t actual)
      : Error("length mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(actual)) {}
};

class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

class SpaceTooLarge : public Error {
 public:
  SpaceTooLarge(int n, int limit)
      : Error("search space 2^" + std::to_string(n) + " exceeds enumeration limit 2^" +
              std::to_string(limit)) {}
};

class NonPositiveData : public Error {
 public:
  using Error::Error;
};

class ZeroVariance : public Error {
 public:
  using Error::Error;
};

}  // namespace rmnk
