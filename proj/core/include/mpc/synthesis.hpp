#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mpc/cost.hpp"
#include "mpc/expr.hpp"
#include "mpc/tables.hpp"
#include "mpc/ternary_pattern.hpp"
#include "mpc/truth_table.hpp"

namespace mpc {

enum class synth_method : uint8_t {
  primitive,  // direct hit in the single-gate catalog
  m2,         // direct hit in the depth-2 catalog
  loop1,      // two single-gate children plus a searched third child
  loop2,      // one seed child plus two searched children
  level4,     // seed child plus two synthesized depth-3 children
  greedy3,    // cheapest-first three-child search (5 variables)
  shannon,    // cofactor split on the first variable (5 variables)
};

const char* to_string(synth_method m);

struct synth_result {
  expr e;
  cost c;
  synth_method method;
};

struct synth_options {
  /// For 5 variables: skip the depth-3 search and go straight to the
  /// cofactor split. Used to exercise and measure the split path.
  bool force_shannon = false;
};

/// Per-minterm count (0, 1 or 2) of how many of the two children cover it.
std::vector<uint8_t> coverage_vector(const truth_table& x1, const truth_table& x2);

/// Requirements on a second child once x1 is fixed: it must cover what f
/// still misses (One on f minus x1) and must not touch what x1 already covers
/// outside f (Zero on x1 minus f).
ternary_pattern second_child_pattern(const truth_table& f, const truth_table& x1);

/// Requirements on the third child once two children are fixed: minterms
/// covered exactly once must be covered again when inside f (One) and must
/// not be covered again when outside f (Zero); everything else is free. A
/// majority root over x1, x2 and any matching third child reproduces f
/// exactly, provided f's minterms are all covered at least once and no
/// outside minterm is covered twice.
ternary_pattern third_child_pattern(const truth_table& f, const truth_table& x1,
                                    const truth_table& x2);

/// Number of root children realizable with at most one gate.
int primitive_child_count(const expr& e);

/// Majority-expression synthesis over prebuilt tables. Exact lookup covers
/// everything at up to 3 variables; 4 variables adds a three-stage
/// combination search; 5 variables adds a greedy depth-3 search with a
/// cofactor-split fallback, which also needs the 4-variable tables.
///
/// A synthesizer owns a work arena chained on the shared tables and is not
/// thread safe; give each worker thread its own instance over the same
/// tables. Every stage verifies its result against the input truth table and
/// throws internal_error on mismatch.
class synthesizer {
 public:
  explicit synthesizer(const table_set& tables, const table_set* lower = nullptr);

  synth_result run(const truth_table& f, const synth_options& opts = {});

  /// Individual stages, exposed for tests and measurements. Preconditions
  /// follow the dispatch order of run(): each stage assumes the previous
  /// stages found nothing.
  std::optional<synth_result> try_exact(const truth_table& f);
  std::optional<synth_result> loop1(const truth_table& f);
  std::optional<synth_result> loop2(const truth_table& f);
  synth_result level4(const truth_table& f);
  std::optional<synth_result> greedy3(const truth_table& f);
  synth_result shannon(const truth_table& f);

  struct shannon_split {
    synth_result low;   // cofactor for first variable = 0, remapped to B..E
    synth_result high;  // cofactor for first variable = 1, remapped to B..E
    synth_result assembled;
  };
  shannon_split shannon_detail(const truth_table& f);

  const table_set& tables() const { return tables_; }
  expr_arena& arena() { return arena_; }

 private:
  struct match;
  std::optional<match> cheapest_match(const ternary_pattern& pattern,
                                      std::span<const expr_node* const> discount,
                                      const expr_node* exclude0,
                                      const expr_node* exclude1,
                                      bool exclude_constants, int pool,
                                      const std::vector<uint64_t>* useful) const;
  std::optional<synth_result> assemble(const expr& x1, const expr& x2, const expr& x3,
                                       const truth_table& f, synth_method method);
  std::optional<synth_result> loop2_phase(const truth_table& f,
                                          const std::vector<uint32_t>& seeds);

  const table_set& tables_;
  const table_set* lower_;
  expr_arena arena_;
};

}  // namespace mpc
