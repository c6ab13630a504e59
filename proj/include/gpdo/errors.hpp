#pragma once

#include <stdexcept>
#include <string>

namespace gpdo {

// Invalid argument (mismatched group, bad parameter range).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested band or x-spectrum exceeds what a quadrature grid integrates exactly.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A difference operator shrank the band below the trivial representation.
class BandExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Symbol construction hit a resonance (division by zero in the weight basis).
class SingularSymbolError : public std::runtime_error {
 public:
  SingularSymbolError(const std::string& what, int mode_twice)
      : std::runtime_error(what), mode_twice_(mode_twice) {}
  // Offending weight m, doubled so half-integers stay exact.
  int mode_twice() const noexcept { return mode_twice_; }

 private:
  int mode_twice_;
};

}  // namespace gpdo
