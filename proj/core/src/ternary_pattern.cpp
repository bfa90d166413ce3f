#include "mpc/ternary_pattern.hpp"

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
      throw std::invalid_argument("pattern text must have 2^n characters, n in 1..5");
  }
}

}  // namespace

ternary_pattern::ternary_pattern(unsigned num_vars, uint32_t ones, uint32_t zeros) {
  if (num_vars < 1 || num_vars > truth_table::max_vars)
    throw std::invalid_argument("variable count must be in 1..5");
  n_ = static_cast<uint8_t>(num_vars);
  const uint32_t m = truth_table(num_vars, 0).table_mask();
  ones_ = ones & m;
  zeros_ = zeros & m;
  if (ones_ & zeros_)
    throw std::invalid_argument("pattern cell cannot be both Zero and One");
}

ternary_pattern ternary_pattern::from_string(std::string_view text) {
  const unsigned n = vars_for_length(text.size());
  uint32_t ones = 0, zeros = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case '1': ones |= 1u << i; break;
      case '0': zeros |= 1u << i; break;
      case 'x':
      case 'X': break;
      default:
        throw std::invalid_argument("pattern text may contain only '0', '1' and 'x'");
    }
  }
  return ternary_pattern(n, ones, zeros);
}

ternary_pattern ternary_pattern::any(unsigned num_vars) {
  return ternary_pattern(num_vars, 0, 0);
}

unsigned ternary_pattern::num_dont_care() const {
  const uint32_t m = truth_table(n_, 0).table_mask();
  return static_cast<unsigned>(std::popcount(m & ~care_mask()));
}

ternary_pattern::cell ternary_pattern::at(unsigned minterm) const {
  if ((ones_ >> minterm) & 1u) return cell::one;
  if ((zeros_ >> minterm) & 1u) return cell::zero;
  return cell::dont_care;
}

bool ternary_pattern::matches(const truth_table& t) const {
  if (t.num_vars() != n_)
    throw std::invalid_argument("pattern and truth table size mismatch");
  return (t.bits() & ones_) == ones_ && (t.bits() & zeros_) == 0;
}

std::string ternary_pattern::to_string() const {
  std::string s(size(), 'x');
  for (unsigned i = 0; i < size(); ++i) {
    if ((ones_ >> i) & 1u)
      s[i] = '1';
    else if ((zeros_ >> i) & 1u)
      s[i] = '0';
  }
  return s;
}

}  // namespace mpc
