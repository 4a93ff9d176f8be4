#pragma once

#include <stdexcept>
#include <string>

namespace k3cone {

/// Malformed or out-of-contract input (bad Gram matrix, wrong signature, bad vector length).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search ran out of its configured budget without finding what it was looking for.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace k3cone
