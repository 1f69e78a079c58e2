#pragma once

#include <stdexcept>
#include <string>

namespace juggling {

// Base for every error raised by the library. Derived types let callers
// (and the CLI exit-code mapping) tell validation problems apart from
// verification outcomes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input: bad indices, wrong parameter lengths,
// invalid bumping/overwriting sequences.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A required denominator (a prefix sum y_j or a normalizing sum) is zero.
class DegenerateParams : public Error {
 public:
  using Error::Error;
};

// A model that needs z_1 + ... + z_{n+1} = 1 got something else.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

class RowSumError : public Error {
 public:
  using Error::Error;
};

class UnknownSuccessor : public Error {
 public:
  using Error::Error;
};

// Stationary solve refused: the nonzero pattern is not strongly connected.
class ReducibleChain : public Error {
 public:
  using Error::Error;
};

// Internal invariant broken; signals a bug rather than bad input.
class InconsistentState : public Error {
 public:
  using Error::Error;
};

class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace juggling
