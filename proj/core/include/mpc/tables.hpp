#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mpc/cost.hpp"
#include "mpc/cover_index.hpp"
#include "mpc/expr.hpp"
#include "mpc/ternary_pattern.hpp"
#include "mpc/truth_table.hpp"

namespace mpc {

/// One catalog row: a truth table, its cheapest known expression, the cost of
/// that expression, and the expression's distinct gate nodes (used to grant
/// sharing discounts during candidate selection).
struct table_entry {
  truth_table tt;
  expr e;
  cost c;
  std::array<const expr_node*, 4> gates{};
  uint8_t num_gates = 0;
};

/// All functions realizable with at most one majority gate: the constants,
/// the 2n literals, every AND/OR of two literals (the gate ties one input to
/// a constant), and every majority of three distinct variables. Complements
/// are placed so each gate carries at most one complemented input plus an
/// optional complemented output. Truth tables are pairwise distinct and the
/// count is 2 + 2n + 8*C(n,2) + 8*C(n,3).
std::vector<table_entry> gen_primitives(unsigned num_vars, expr_arena& arena);

/// Exhaustive catalog of depth-2 functions: every unordered triple of
/// distinct single-gate-or-leaf entries combined under one root gate, keeping
/// the cheapest expression per truth table. Triples that collapse by the
/// majority reductions and truth tables already realizable at depth <= 1 are
/// excluded, so every entry has depth exactly 2. Ties keep the first triple
/// in enumeration order (ascending entry rank), making output deterministic.
std::vector<table_entry> gen_m2(unsigned num_vars,
                                const std::vector<table_entry>& primitives,
                                expr_arena& arena);

/// The two catalogs for one variable count, in the rank orders the synthesis
/// search needs, plus exact and pattern lookup structures. Immutable after
/// construction; safe to share across threads. Chain per-worker expr_arenas
/// on arena() to build on top of the stored expressions.
class table_set {
 public:
  static table_set build(unsigned num_vars);

  table_set(table_set&&) = default;
  table_set& operator=(table_set&&) = default;

  unsigned num_vars() const { return num_vars_; }
  const expr_arena& arena() const { return arena_; }

  /// All entries, sorted ascending by (cost, truth table value). This is the
  /// candidate rank order: scanning it visits cheaper functions first.
  const std::vector<table_entry>& entries() const { return entries_; }

  std::size_t num_primitives() const { return prim_rank_.size(); }
  std::size_t num_m2() const { return m2_rank_.size(); }

  /// Positions into entries() restricted to one catalog, in rank order.
  const std::vector<uint32_t>& primitive_rank() const { return prim_rank_; }
  const std::vector<uint32_t>& m2_rank() const { return m2_rank_; }

  /// Primitive positions in ascending truth-table value order.
  const std::vector<uint32_t>& primitives_by_value() const { return prim_by_value_; }

  /// Positions of depth-2 entries with exactly `gate_count` gates, in
  /// ascending truth-table value order. Empty when out of range.
  const std::vector<uint32_t>& m2_by_gate_count(unsigned gate_count) const;
  unsigned max_m2_gate_count() const { return unsigned(m2_by_gates_.size()) - 1; }

  /// Entry-rank cover index over entries(), for pattern queries.
  const cover_index& index() const { return *index_; }

  /// Exact lookup across both catalogs; null when the truth table needs more
  /// than two levels.
  const table_entry* find(const truth_table& tt) const;

 private:
  table_set() = default;
  void finalize(std::vector<table_entry>&& primitives, std::vector<table_entry>&& m2);

  friend table_set load_tables(const std::string& path);

  unsigned num_vars_ = 0;
  expr_arena arena_;
  std::vector<table_entry> entries_;
  std::vector<uint32_t> prim_rank_;
  std::vector<uint32_t> m2_rank_;
  std::vector<uint32_t> prim_by_value_;
  std::vector<std::vector<uint32_t>> m2_by_gates_;
  std::unordered_map<uint32_t, uint32_t> by_tt_;
  std::optional<cover_index> index_;
};

/// Entry cost after the sharing discount: one gate less per distinct gate of
/// the entry that already exists in `shared_gates`. Only the gate component
/// changes.
cost discounted_cost(const table_entry& entry,
                     std::span<const expr_node* const> shared_gates);

struct pattern_match {
  const table_entry* entry;
  cost adjusted;
};

/// All entries whose truth table matches the pattern, with costs discounted
/// against `shared_gates`, sorted ascending by (adjusted cost, truth table
/// value).
std::vector<pattern_match> query_pattern(const table_set& tables,
                                         const ternary_pattern& pattern,
                                         std::span<const expr_node* const> shared_gates);

}  // namespace mpc
