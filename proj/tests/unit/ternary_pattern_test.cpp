#include <stdexcept>

#include "doctest.h"
#include "mpc/ternary_pattern.hpp"
#include "mpc/truth_table.hpp"

using mpc::ternary_pattern;
using mpc::truth_table;

TEST_CASE("pattern text mirrors truth table ordering with x as don't care") {
  const ternary_pattern p = ternary_pattern::from_string("xx0x01xx");
  CHECK(p.num_vars() == 3);
  CHECK(p.at(0) == ternary_pattern::cell::dont_care);
  CHECK(p.at(2) == ternary_pattern::cell::zero);
  CHECK(p.at(4) == ternary_pattern::cell::zero);
  CHECK(p.at(5) == ternary_pattern::cell::one);
  CHECK(p.num_dont_care() == 5);
  CHECK(p.to_string() == "xx0x01xx");
}

TEST_CASE("pattern masks agree with the text form") {
  const ternary_pattern p = ternary_pattern::from_string("xx0x01xx");
  CHECK(p.ones() == (1u << 5));
  CHECK(p.zeros() == ((1u << 2) | (1u << 4)));
  CHECK(p.care_mask() == ((1u << 2) | (1u << 4) | (1u << 5)));
  CHECK(p == ternary_pattern(3, p.ones(), p.zeros()));
}

TEST_CASE("matching checks only the constrained cells") {
  const ternary_pattern p = ternary_pattern::from_string("xx0x01xx");
  CHECK(p.matches(truth_table::from_binary("00000100")));
  CHECK(p.matches(truth_table::from_binary("11010111")));
  CHECK_FALSE(p.matches(truth_table::from_binary("00100100")));
  CHECK_FALSE(p.matches(truth_table::from_binary("00000000")));
}

TEST_CASE("the unconstrained pattern matches everything") {
  const ternary_pattern p = ternary_pattern::any(2);
  CHECK(p.num_dont_care() == 4);
  for (uint32_t bits = 0; bits < 16; ++bits) CHECK(p.matches(truth_table(2, bits)));
}

TEST_CASE("malformed patterns are rejected") {
  CHECK_THROWS_AS(ternary_pattern::from_string("xx0"), std::invalid_argument);
  CHECK_THROWS_AS(ternary_pattern::from_string("xy0x"), std::invalid_argument);
  CHECK_THROWS_AS(ternary_pattern(3, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(ternary_pattern(7, 0, 0), std::invalid_argument);
  const ternary_pattern p = ternary_pattern::any(3);
  CHECK_THROWS_AS(p.matches(truth_table::zeros(4)), std::invalid_argument);
}
