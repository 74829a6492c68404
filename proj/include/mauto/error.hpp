#pragma once

#include <stdexcept>
#include <string>

namespace mauto {

/// Malformed input: bad syntax, arity mismatch, incompatible operands.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mauto
