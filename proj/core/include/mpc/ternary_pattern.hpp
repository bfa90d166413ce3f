#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "mpc/truth_table.hpp"

namespace mpc {

/// Per-minterm constraint with cells Zero, One and DontCare, used to search
/// the tables for a function that completes a partially fixed child. Text
/// form mirrors truth_table ordering, with 'x' for DontCare: "xx0x01xx".
class ternary_pattern {
 public:
  enum class cell : uint8_t { zero, one, dont_care };

  ternary_pattern() = default;

  /// `ones` and `zeros` are minterm bit masks; they must be disjoint.
  ternary_pattern(unsigned num_vars, uint32_t ones, uint32_t zeros);

  static ternary_pattern from_string(std::string_view text);

  /// Pattern with every cell DontCare.
  static ternary_pattern any(unsigned num_vars);

  unsigned num_vars() const { return n_; }
  unsigned size() const { return 1u << n_; }
  uint32_t ones() const { return ones_; }
  uint32_t zeros() const { return zeros_; }
  uint32_t care_mask() const { return ones_ | zeros_; }
  unsigned num_dont_care() const;

  cell at(unsigned minterm) const;

  /// True when `t` agrees with every non-DontCare cell.
  bool matches(const truth_table& t) const;

  std::string to_string() const;

  bool operator==(const ternary_pattern&) const = default;

 private:
  uint8_t n_ = 0;
  uint32_t ones_ = 0;
  uint32_t zeros_ = 0;
};

}  // namespace mpc
