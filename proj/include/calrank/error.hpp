#pragma once

#include <stdexcept>
#include <string>

namespace calrank {

// Base of every error the library throws.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller passed an argument outside the operation's precondition.
class argument_error : public error {
 public:
  using error::error;
};

// A domain type was constructed with data that breaks its invariant.
class invariant_error : public error {
 public:
  using error::error;
};

// An exhaustive routine was asked for a size beyond its factorial/exponential guard.
class capacity_error : public error {
 public:
  using error::error;
};

// Two scores from one reviewer compare equal, so no ordinal outcome exists.
class degenerate_tie_error : public error {
 public:
  using error::error;
};

// The comparison graph contains a directed cycle.
class cycle_error : public error {
 public:
  using error::error;
};

// relative_improvement against a baseline with zero expected loss.
class undefined_improvement_error : public error {
 public:
  using error::error;
};

}  // namespace calrank
