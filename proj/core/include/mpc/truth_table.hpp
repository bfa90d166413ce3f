#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mpc {

/// Single-output boolean function of up to five variables, one bit per
/// minterm. Bit i holds the output for minterm i, and a minterm index packs
/// the input assignment with the first variable (A) in the most significant
/// position. The text form lists minterm 0 leftmost, so the 3-input majority
/// M(A,B,C) renders as "00010111". The hex form packs the same ordering, most
/// significant nibble first: "17" for the same function.
class truth_table {
 public:
  static constexpr unsigned max_vars = 5;

  truth_table() = default;
  truth_table(unsigned num_vars, uint32_t bits);

  /// Parses "00010111" style text; the length (2, 4, 8, 16 or 32) fixes the
  /// variable count.
  static truth_table from_binary(std::string_view text);

  /// Parses hex text with one character per four minterms. Requires
  /// num_vars >= 2 so that the function is a whole number of nibbles.
  static truth_table from_hex(std::string_view text, unsigned num_vars);

  static truth_table zeros(unsigned num_vars);
  static truth_table ones(unsigned num_vars);

  /// Projection of input `index`: the function that returns that input.
  static truth_table var(unsigned num_vars, unsigned index);

  unsigned num_vars() const { return n_; }
  unsigned size() const { return 1u << n_; }
  uint32_t bits() const { return bits_; }
  uint32_t table_mask() const { return n_ == 5 ? 0xffffffffu : (1u << (1u << n_)) - 1; }

  bool bit(unsigned minterm) const { return (bits_ >> minterm) & 1u; }
  unsigned count() const;
  bool is_zeros() const { return bits_ == 0; }
  bool is_ones() const { return bits_ == table_mask(); }

  /// Numeric value of the text form (minterm 0 is the most significant bit).
  /// Used as the deterministic tie-break order throughout the library.
  uint32_t value() const;

  std::string to_binary() const;
  std::string to_hex() const;

  truth_table operator&(const truth_table& other) const;
  truth_table operator|(const truth_table& other) const;
  truth_table operator^(const truth_table& other) const;
  truth_table operator~() const;

  bool subset_of(const truth_table& other) const;

  bool operator==(const truth_table& other) const = default;

 private:
  void check_same_size(const truth_table& other) const;

  uint8_t n_ = 0;
  uint32_t bits_ = 0;
};

}  // namespace mpc
