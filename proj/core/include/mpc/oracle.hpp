#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "mpc/cost.hpp"
#include "mpc/expr.hpp"
#include "mpc/truth_table.hpp"

namespace mpc {

/// Limits for the brute-force search. Feasible combinations: up to 3
/// variables with any depth (the space saturates at depth 2), or 4 variables
/// with max_depth at most 2.
struct search_bound {
  int max_depth = 2;
  int max_gates = 4;
  unsigned num_vars = 3;
};

struct oracle_result {
  expr e;
  cost c;
};

/// A synthesis outcome to check against the brute-force optimum.
struct claimed_result {
  truth_table tt;
  cost c;
};

struct optimality_report {
  struct mismatch {
    truth_table tt;
    cost claimed;
    /// Empty when the search found no realization at all within the bound.
    std::optional<cost> optimal;
  };

  std::size_t num_checked = 0;
  std::vector<mismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Brute-force reference synthesizer, independent of the table machinery.
/// Construction enumerates every majority expression within the bound
/// (children sorted, degenerate gates collapsed away, every placement of
/// input and output complements) and keeps the cheapest expression per
/// truth table. All placements matter: restricting gates to at most one
/// complemented input misses minima where a complemented signal is shared
/// between levels. Enumeration stops early once every function of the given
/// width has been reached, so wide depth limits are safe for small variable
/// counts.
class oracle {
 public:
  explicit oracle(const search_bound& bound);

  oracle(const oracle&) = delete;
  oracle& operator=(const oracle&) = delete;

  const search_bound& bound() const { return bound_; }

  /// Cheapest expression for f within the bound, or empty if the search
  /// space contains no realization of f.
  std::optional<oracle_result> exact_optimum(const truth_table& f) const;

  /// Compares each claimed cost against the brute-force optimum.
  optimality_report verify_optimal(std::span<const claimed_result> results) const;

 private:
  void enumerate();
  void record(const expr& e);

  search_bound bound_;
  expr_arena arena_;
  std::unordered_map<uint32_t, oracle_result> minima_;
};

}  // namespace mpc
