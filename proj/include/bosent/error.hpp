#pragma once

#include <stdexcept>
#include <string>

namespace bosent {

/// Raised when a caller hands in arguments outside an operation's domain
/// (bad bipartition, wrong particle count, non-normalized state, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a dense oracle would exceed its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bosent
