#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mpc/expr.hpp"
#include "mpc/oracle.hpp"
#include "mpc/truth_table.hpp"

using namespace mpc;

TEST_CASE("the exhaustive search finds known optima") {
  const oracle reference(search_bound{});

  const auto maj = reference.exact_optimum(truth_table::from_binary("00010111"));
  REQUIRE(maj.has_value());
  CHECK(maj->c == cost{1, 1, 0, 3});
  CHECK(truth_table_of(maj->e, 3) == truth_table::from_binary("00010111"));

  const auto lit = reference.exact_optimum(truth_table::var(3, 0));
  REQUIRE(lit.has_value());
  CHECK(lit->c == cost{0, 0, 0, 0});

  const truth_table not_b(3, ~truth_table::var(3, 1).bits() & 0xFF);
  const auto inverted = reference.exact_optimum(not_b);
  REQUIRE(inverted.has_value());
  CHECK(inverted->c == cost{0, 0, 1, 0});

  // Depth 2 saturates three variables: every function has an optimum.
  std::size_t found = 0;
  for (uint32_t bits = 0; bits < 256; ++bits)
    if (reference.exact_optimum(truth_table(3, bits))) ++found;
  CHECK(found == 256);
}

TEST_CASE("verify_optimal confirms matching claims and flags corrupt ones") {
  const oracle reference(search_bound{});
  std::vector<claimed_result> claims;
  claims.reserve(256);
  for (uint32_t bits = 0; bits < 256; ++bits) {
    const truth_table f(3, bits);
    claims.push_back({f, reference.exact_optimum(f)->c});
  }

  optimality_report clean = reference.verify_optimal(claims);
  CHECK(clean.num_checked == 256);
  CHECK(clean.ok());

  claims[100].c.gates += 1;
  optimality_report dirty = reference.verify_optimal(claims);
  CHECK(dirty.num_checked == 256);
  REQUIRE(dirty.mismatches.size() == 1);
  CHECK(dirty.mismatches[0].tt == claims[100].tt);
  CHECK(dirty.mismatches[0].claimed == claims[100].c);
  REQUIRE(dirty.mismatches[0].optimal.has_value());
  CHECK(*dirty.mismatches[0].optimal < claims[100].c);
}

TEST_CASE("functions beyond the bound report no realization") {
  const oracle reference(search_bound{2, 4, 4});
  const auto parity =
      reference.exact_optimum(truth_table::from_binary("0110100110010110"));
  CHECK(!parity.has_value());

  const auto anded = reference.exact_optimum(truth_table::from_binary("0000000000000011"));
  REQUIRE(anded.has_value());
  CHECK(anded->c.depth <= 2);
}

TEST_CASE("search bounds are validated") {
  CHECK_THROWS_AS(oracle(search_bound{2, 4, 0}), std::invalid_argument);
  CHECK_THROWS_AS(oracle(search_bound{2, 4, 5}), std::invalid_argument);
  CHECK_THROWS_AS(oracle(search_bound{3, 4, 4}), std::invalid_argument);
  CHECK_THROWS_AS(oracle(search_bound{-1, 4, 3}), std::invalid_argument);

  const oracle reference(search_bound{});
  CHECK_THROWS_AS(reference.exact_optimum(truth_table::from_binary("0110")),
                  std::invalid_argument);
}
