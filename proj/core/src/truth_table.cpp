#include "mpc/truth_table.hpp"

#include <bit>
#include <stdexcept>

namespace mpc {

namespace {

unsigned vars_for_length(std::size_t len) {
  switch (len) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    case 16: return 4;
    case 32: return 5;
    default:
      throw std::invalid_argument("truth table text must have 2^n characters, n in 1..5");
  }
}

void check_vars(unsigned n) {
  if (n < 1 || n > truth_table::max_vars)
    throw std::invalid_argument("variable count must be in 1..5");
}

}  // namespace

truth_table::truth_table(unsigned num_vars, uint32_t bits) {
  check_vars(num_vars);
  n_ = static_cast<uint8_t>(num_vars);
  bits_ = bits & table_mask();
}

truth_table truth_table::from_binary(std::string_view text) {
  const unsigned n = vars_for_length(text.size());
  uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      bits |= 1u << i;
    else if (text[i] != '0')
      throw std::invalid_argument("truth table text may contain only '0' and '1'");
  }
  return truth_table(n, bits);
}

truth_table truth_table::from_hex(std::string_view text, unsigned num_vars) {
  check_vars(num_vars);
  if (num_vars < 2)
    throw std::invalid_argument("hex truth tables require at least 2 variables");
  const std::size_t want = (std::size_t{1} << num_vars) / 4;
  if (text.size() != want)
    throw std::invalid_argument("hex truth table for n=" + std::to_string(num_vars) +
                                " must have " + std::to_string(want) + " characters");
  uint32_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    unsigned v;
    if (c >= '0' && c <= '9')
      v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = static_cast<unsigned>(c - 'a') + 10;
    else if (c >= 'A' && c <= 'F')
      v = static_cast<unsigned>(c - 'A') + 10;
    else
      throw std::invalid_argument("invalid hex digit in truth table");
    // character i covers minterms 4i..4i+3, earliest minterm in the top bit
    for (unsigned k = 0; k < 4; ++k)
      if ((v >> (3 - k)) & 1u) bits |= 1u << (4 * i + k);
  }
  return truth_table(num_vars, bits);
}

truth_table truth_table::zeros(unsigned num_vars) { return truth_table(num_vars, 0); }

truth_table truth_table::ones(unsigned num_vars) {
  truth_table t(num_vars, 0);
  t.bits_ = t.table_mask();
  return t;
}

truth_table truth_table::var(unsigned num_vars, unsigned index) {
  check_vars(num_vars);
  if (index >= num_vars)
    throw std::invalid_argument("variable index out of range");
  uint32_t bits = 0;
  const unsigned m = 1u << num_vars;
  for (unsigned i = 0; i < m; ++i)
    if ((i >> (num_vars - 1 - index)) & 1u) bits |= 1u << i;
  return truth_table(num_vars, bits);
}

unsigned truth_table::count() const { return static_cast<unsigned>(std::popcount(bits_)); }

uint32_t truth_table::value() const {
  uint32_t v = 0;
  const unsigned m = size();
  for (unsigned i = 0; i < m; ++i) v = (v << 1) | ((bits_ >> i) & 1u);
  return v;
}

std::string truth_table::to_binary() const {
  std::string s(size(), '0');
  for (unsigned i = 0; i < size(); ++i)
    if (bit(i)) s[i] = '1';
  return s;
}

std::string truth_table::to_hex() const {
  if (n_ < 2)
    throw std::invalid_argument("hex rendering requires at least 2 variables");
  static const char* digits = "0123456789abcdef";
  const unsigned chars = size() / 4;
  std::string s(chars, '0');
  for (unsigned i = 0; i < chars; ++i) {
    unsigned v = 0;
    for (unsigned k = 0; k < 4; ++k)
      if (bit(4 * i + k)) v |= 1u << (3 - k);
    s[i] = digits[v];
  }
  return s;
}

void truth_table::check_same_size(const truth_table& other) const {
  if (n_ != other.n_)
    throw std::invalid_argument("truth table size mismatch");
}

truth_table truth_table::operator&(const truth_table& other) const {
  check_same_size(other);
  return truth_table(n_, bits_ & other.bits_);
}

truth_table truth_table::operator|(const truth_table& other) const {
  check_same_size(other);
  return truth_table(n_, bits_ | other.bits_);
}

truth_table truth_table::operator^(const truth_table& other) const {
  check_same_size(other);
  return truth_table(n_, bits_ ^ other.bits_);
}

truth_table truth_table::operator~() const { return truth_table(n_, ~bits_ & table_mask()); }

bool truth_table::subset_of(const truth_table& other) const {
  check_same_size(other);
  return (bits_ & ~other.bits_) == 0;
}

}  // namespace mpc
