#pragma once

#include <stdexcept>
#include <string>

namespace rmlab {

// Thrown when a desk-scale cap or an operation precondition is violated.
// The message names the cap so callers (and the CLI) can report it verbatim.
class precondition_error : public std::invalid_argument {
 public:
  explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown by bec_decode when the received word conflicts with the code on a
// non-erased coordinate. Distinct from "ambiguous": it signals corrupted
// input rather than an erasure-pattern failure.
class decode_error : public std::runtime_error {
 public:
  explicit decode_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rmlab
