#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mpc/cost.hpp"
#include "mpc/synthesis.hpp"
#include "mpc/tables.hpp"

namespace mpc {

/// Outcome of synthesizing one function during a batch run. Expressions are
/// not retained; everything needed for reports is summarized here.
struct enum_record {
  uint32_t tt_bits = 0;
  cost c;
  synth_method method = synth_method::primitive;
  /// Root children realizable with at most one gate, for attributing
  /// combination-search results.
  int8_t primitive_children = 0;
  bool verified = false;
};

/// Batch-run aggregates: totals by depth, by method, and by minterm count.
struct enum_summary {
  static constexpr std::size_t max_depth = 8;

  std::size_t total = 0;
  std::size_t num_verified = 0;
  std::array<std::size_t, max_depth> by_depth{};
  std::array<std::size_t, 7> by_method{};
  /// Depth-3 search results that went through the seeded second stage, split
  /// by how many root children are primitives.
  std::array<std::size_t, 4> loop2_by_primitive_children{};
  /// Row per minterm count: [popcount][depth].
  std::vector<std::array<std::size_t, max_depth>> by_popcount;

  std::size_t depth_at_most(std::size_t d) const {
    std::size_t s = 0;
    for (std::size_t i = 0; i <= d && i < max_depth; ++i) s += by_depth[i];
    return s;
  }
};

enum_summary summarize(unsigned num_vars, std::span<const enum_record> records);

/// Synthesizes each listed function, fanned out over `num_threads` workers
/// (0 = hardware concurrency). Records come back in input order regardless
/// of scheduling. Worker exceptions propagate to the caller.
std::vector<enum_record> enumerate_functions(const table_set& tables,
                                             const table_set* lower,
                                             std::span<const uint32_t> tt_bits,
                                             unsigned num_threads,
                                             const synth_options& opts = {});

/// All 2^2^n functions in ascending bit-pattern order; n at most 4.
std::vector<enum_record> enumerate_all(const table_set& tables, unsigned num_threads);

}  // namespace mpc
