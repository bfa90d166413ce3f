#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mpc {

/// Base class for library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression or pattern text. `position` is the byte offset of the
/// offending character in the input.
struct parse_error : error {
  parse_error(const std::string& msg, std::size_t pos)
      : error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

/// Filesystem-level failure while reading or writing a table file.
struct io_error : error {
  using error::error;
};

/// Structurally invalid, truncated, or mismatching table file.
struct format_error : error {
  using error::error;
};

/// Violated internal invariant. Always a bug, never an input problem.
struct internal_error : error {
  using error::error;
};

}  // namespace mpc
