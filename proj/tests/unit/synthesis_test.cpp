#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mpc/expr.hpp"
#include "mpc/expr_io.hpp"
#include "mpc/oracle.hpp"
#include "mpc/synthesis.hpp"
#include "mpc/tables.hpp"
#include "mpc/truth_table.hpp"

using namespace mpc;

namespace {

struct splitmix64 {
  uint64_t state;
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

}  // namespace

TEST_CASE("coverage vectors count covering children per minterm") {
  const truth_table x1 = truth_table::from_binary("1100110000000000");
  const truth_table x2 = truth_table::from_binary("1110000010100000");
  const std::vector<uint8_t> expected = {2, 2, 1, 0, 1, 1, 0, 0,
                                         1, 0, 1, 0, 0, 0, 0, 0};
  CHECK(coverage_vector(x1, x2) == expected);
  CHECK_THROWS_AS(coverage_vector(x1, truth_table::from_binary("00010111")),
                  std::invalid_argument);
}

TEST_CASE("child patterns demand exactly the missing coverage") {
  const truth_table f = truth_table::from_binary("1100010010000000");
  const truth_table x1 = truth_table::from_binary("1100110000000000");
  const truth_table x2 = truth_table::from_binary("1110000010100000");

  CHECK(second_child_pattern(f, x1).to_string() == "xxxx0xxx1xxxxxxx");
  CHECK(third_child_pattern(f, x1, x2).to_string() == "xx0x01xx1x0xxxxx");

  // Any table matching the third-child pattern completes the majority.
  const ternary_pattern p = third_child_pattern(f, x1, x2);
  for (uint32_t bits = 0; bits < 0x10000; bits += 257) {
    const truth_table x3(4, bits);
    if (!p.matches(x3)) continue;
    truth_table maj = truth_table::zeros(4);
    for (uint32_t m = 0; m < 16; ++m) {
      const int votes = int(x1.bit(m)) + int(x2.bit(m)) + int(x3.bit(m));
      if (votes >= 2) maj = truth_table(4, maj.bits() | (1u << m));
    }
    CHECK(maj == f);
  }
}

TEST_CASE("primitive_child_count looks one level down") {
  expr_arena arena;
  const expr A = expr::variable(0);
  const expr B = expr::variable(1);
  const expr C = expr::variable(2);
  const expr D = expr::variable(3);
  CHECK(primitive_child_count(A) == 0);
  const expr inner = arena.make_gate(A, B, C);
  const expr deep = arena.make_gate(inner, D, expr::constant(false));
  CHECK(primitive_child_count(arena.make_gate(A, inner, deep)) == 2);
  CHECK(primitive_child_count(arena.make_gate(deep, !inner, B)) == 2);
}

TEST_CASE("three variables resolve from the catalog at oracle cost") {
  const table_set tables = table_set::build(3);
  synthesizer synth(tables);

  const synth_result maj = synth.run(truth_table::from_binary("00010111"));
  CHECK(maj.c == cost{1, 1, 0, 3});
  CHECK(maj.method == synth_method::primitive);
  CHECK(to_string(maj.e) == "M(A,B,C)");

  const synth_result xo = synth.run(truth_table::from_binary("01101001"));
  CHECK(xo.c.depth == 2);
  CHECK(xo.method == synth_method::m2);

  std::vector<claimed_result> claims;
  claims.reserve(256);
  for (uint32_t bits = 0; bits < 256; ++bits) {
    const truth_table f(3, bits);
    const synth_result r = synth.run(f);
    CHECK(truth_table_of(r.e, 3) == f);
    claims.push_back({f, r.c});
  }
  const oracle reference(search_bound{});
  const optimality_report report = reference.verify_optimal(claims);
  CHECK(report.num_checked == 256);
  CHECK(report.ok());
}

TEST_CASE("four variable staging is sound and deterministic") {
  const table_set tables = table_set::build(4);
  splitmix64 rng{7};
  for (int i = 0; i < 30; ++i) {
    const truth_table f(4, uint32_t(rng.next() & 0xFFFF));
    CAPTURE(f.to_binary());
    synthesizer synth(tables);
    const synth_result r = synth.run(f);
    CHECK(truth_table_of(r.e, 4) == f);
    CHECK(r.c == cost_of(r.e));
    CHECK(r.c.depth <= 4);
    switch (r.method) {
      case synth_method::primitive:
        CHECK(r.c.depth <= 1);
        break;
      case synth_method::m2:
        CHECK(r.c.depth == 2);
        break;
      case synth_method::loop1:
        CHECK(r.c.depth == 3);
        CHECK(primitive_child_count(r.e) >= 2);
        break;
      case synth_method::loop2:
        CHECK(r.c.depth == 3);
        CHECK(primitive_child_count(r.e) <= 1);
        break;
      case synth_method::level4:
        CHECK(r.c.depth == 4);
        break;
      default:
        FAIL("unexpected method for four variables");
    }

    synthesizer again(tables);
    const synth_result r2 = again.run(f);
    CHECK(r2.c == r.c);
    CHECK(r2.method == r.method);
    CHECK(to_string(r2.e) == to_string(r.e));
  }
}

TEST_CASE("parity needs the deepest four variable stage") {
  const table_set tables = table_set::build(4);
  synthesizer synth(tables);
  const truth_table parity = truth_table::from_binary("0110100110010110");
  const synth_result r = synth.run(parity);
  CHECK(truth_table_of(r.e, 4) == parity);
  CHECK(r.method == synth_method::level4);
  CHECK(r.c == cost{4, 8, 5, 21});
}

TEST_CASE("the cofactor split rebuilds five variable functions") {
  const table_set tables4 = table_set::build(4);
  const table_set tables5 = table_set::build(5);
  synthesizer synth(tables5, &tables4);

  const truth_table f =
      truth_table::from_binary("01110001100010100000111001010101");
  synthesizer::shannon_split split = synth.shannon_detail(f);

  const expr low = shift_variables(synth.arena(), split.low.e, -1);
  const expr high = shift_variables(synth.arena(), split.high.e, -1);
  CHECK(truth_table_of(low, 4) == truth_table::from_binary("0111000110001010"));
  CHECK(truth_table_of(high, 4) == truth_table::from_binary("0000111001010101"));

  CHECK(truth_table_of(split.assembled.e, 5) == f);
  CHECK(split.assembled.method == synth_method::shannon);
  CHECK(split.assembled.c == cost_of(split.assembled.e));
  CHECK(split.assembled.c.depth ==
        2 + std::max(split.low.c.depth, split.high.c.depth));

  std::set<const expr_node*> child_gates;
  for (const expr_node* g : collect_gates(split.low.e)) child_gates.insert(g);
  for (const expr_node* g : collect_gates(split.high.e)) child_gates.insert(g);
  CHECK(split.assembled.c.gates == 3 + child_gates.size());

  const synth_result forced = synth.run(f, synth_options{.force_shannon = true});
  CHECK(forced.method == synth_method::shannon);
  CHECK(forced.c == split.assembled.c);
}

TEST_CASE("the greedy search covers constructed depth-three functions") {
  const table_set tables4 = table_set::build(4);
  const table_set tables5 = table_set::build(5);
  synthesizer synth(tables5, &tables4);

  expr_arena work(&tables5.arena());
  const std::vector<uint32_t>& m2 = tables5.m2_rank();
  REQUIRE(m2.size() > 9000);
  const table_entry& e1 = tables5.entries()[m2[0]];
  const table_entry& e2 = tables5.entries()[m2[4000]];
  const table_entry& e3 = tables5.entries()[m2[9000]];
  const truth_table f = truth_table_of(work.make_gate(e1.e, e2.e, e3.e), 5);

  const synth_result r = synth.run(f);
  CHECK(truth_table_of(r.e, 5) == f);
  CHECK(r.c.depth <= 3);
  CHECK(r.c == cost_of(r.e));
}

TEST_CASE("synthesis rejects mismatched inputs") {
  const table_set tables3 = table_set::build(3);
  synthesizer synth(tables3);
  CHECK_THROWS_AS(synth.run(truth_table::from_binary("0110100110010110")),
                  std::invalid_argument);
  const table_set tables5 = table_set::build(5);
  CHECK_THROWS_AS(synthesizer(tables5, nullptr), std::invalid_argument);
  CHECK_THROWS_AS(synthesizer(tables5, &tables3), std::invalid_argument);
}
