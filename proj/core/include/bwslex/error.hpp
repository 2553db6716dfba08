#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bwslex {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. Carries the 1-based line number when known (0 otherwise).
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Term lists, inventories, or tuple designs that violate a structural rule.
class DesignError : public Error {
 public:
  using Error::Error;
};

// The design cannot satisfy one of the sampling criteria.
class DesignInfeasible : public DesignError {
 public:
  using DesignError::DesignError;
};

// Inputs that are individually well-formed but inconsistent with each other
// (a response naming an unknown tuple, a pair missing from the lexicon, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace bwslex
