#include <cstdint>
#include <vector>

#include "doctest.h"
#include "mpc/enumeration.hpp"
#include "mpc/tables.hpp"
#include "mpc/truth_table.hpp"

using namespace mpc;

TEST_CASE("enumerating all three variable functions") {
  const table_set tables = table_set::build(3);
  const std::vector<enum_record> records = enumerate_all(tables, 1);
  REQUIRE(records.size() == 256);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].tt_bits == i);
    CHECK(records[i].verified);
  }

  const enum_summary summary = summarize(3, records);
  CHECK(summary.total == 256);
  CHECK(summary.num_verified == 256);
  CHECK(summary.by_depth[0] == 8);
  CHECK(summary.depth_at_most(1) == 40);
  CHECK(summary.by_depth[2] == 216);
  CHECK(summary.by_depth[3] == 0);
  CHECK(summary.by_method[int(synth_method::primitive)] == 40);
  CHECK(summary.by_method[int(synth_method::m2)] == 216);
  CHECK(summary.by_method[int(synth_method::loop1)] == 0);

  REQUIRE(summary.by_popcount.size() == 9);
  std::size_t across_rows = 0;
  for (const auto& row : summary.by_popcount)
    for (std::size_t d = 0; d < enum_summary::max_depth; ++d) across_rows += row[d];
  CHECK(across_rows == 256);

  // Functions with no minterms or all minterms are the two constants.
  CHECK(summary.by_popcount[0][0] == 1);
  CHECK(summary.by_popcount[8][0] == 1);
  // Four-minterm functions: the 6 literals sit at depth 0 and the 8
  // majorities of three literals at depth 1.
  CHECK(summary.by_popcount[4][0] == 6);
  CHECK(summary.by_popcount[4][1] == 8);
}

TEST_CASE("records are independent of the worker count") {
  const table_set tables = table_set::build(3);
  const std::vector<enum_record> one = enumerate_all(tables, 1);
  const std::vector<enum_record> three = enumerate_all(tables, 3);
  REQUIRE(one.size() == three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].tt_bits == three[i].tt_bits);
    CHECK(one[i].c == three[i].c);
    CHECK(one[i].method == three[i].method);
    CHECK(one[i].primitive_children == three[i].primitive_children);
    CHECK(one[i].verified == three[i].verified);
  }
}

TEST_CASE("a chosen subset keeps input order") {
  const table_set tables = table_set::build(4);
  const std::vector<uint32_t> picks = {0x1234, 0x0000, 0xFFFF, 0x0017, 0x8000};
  const std::vector<enum_record> records =
      enumerate_functions(tables, nullptr, picks, 2);
  REQUIRE(records.size() == picks.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].tt_bits == picks[i]);
    CHECK(records[i].verified);
  }
  CHECK(records[1].c == cost{0, 0, 0, 0});
  CHECK(records[2].c == cost{0, 0, 0, 0});

  const enum_summary summary = summarize(4, records);
  CHECK(summary.total == 5);
  CHECK(summary.num_verified == 5);
  REQUIRE(summary.by_popcount.size() == 17);
}
