#pragma once

#include <stdexcept>
#include <string>

namespace roughsew {

// Base of every error raised by the library. The CLI maps these onto its
// exit-code contract; everything else is a programming error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LevelMismatch : public Error {
 public:
  using Error::Error;
};

// A control-function series that does not converge for the requested k0.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

// Riemann refinements of a gamma > 1 sewing grow instead of settling.
class NotConverging : public Error {
 public:
  using Error::Error;
};

class TruncationExceeded : public Error {
 public:
  using Error::Error;
};

class AlphaReciprocalInteger : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace roughsew
