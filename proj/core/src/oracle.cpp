#include "mpc/oracle.hpp"

#include <stdexcept>

#include "mpc/errors.hpp"

namespace mpc {

oracle::oracle(const search_bound& bound) : bound_(bound), arena_() {
  if (bound_.num_vars < 1 || bound_.num_vars > 4)
    throw std::invalid_argument("exhaustive search supports 1 to 4 variables");
  if (bound_.num_vars == 4 && bound_.max_depth > 2)
    throw std::invalid_argument(
        "exhaustive search at 4 variables is only feasible up to depth 2");
  if (bound_.max_depth < 0 || bound_.max_gates < 0)
    throw std::invalid_argument("search bound must be non-negative");
  enumerate();
}

void oracle::record(const expr& e) {
  const cost c = cost_of(e);
  if (int(c.gates) > bound_.max_gates) return;
  const uint32_t key = truth_table_of(e, bound_.num_vars).bits();
  auto it = minima_.find(key);
  if (it == minima_.end())
    minima_.emplace(key, oracle_result{e, c});
  else if (c < it->second.c)
    it->second = oracle_result{e, c};
}

void oracle::enumerate() {
  const std::size_t num_functions = std::size_t(1)
                                    << (std::size_t(1) << bound_.num_vars);

  // Distinct signal nodes usable as gate children, grouped by the tier
  // (depth) at which they first appear.
  std::vector<expr> pool;
  std::vector<std::size_t> tier_start;

  tier_start.push_back(0);
  pool.push_back(expr::constant(false));
  pool.push_back(expr::constant(true));
  for (unsigned v = 0; v < bound_.num_vars; ++v) pool.push_back(expr::variable(v));

  record(expr::constant(false));
  record(expr::constant(true));
  for (unsigned v = 0; v < bound_.num_vars; ++v) {
    record(expr::variable(v));
    record(!expr::variable(v));
  }

  for (int tier = 1; tier <= bound_.max_depth; ++tier) {
    if (minima_.size() == num_functions) return;
    tier_start.push_back(pool.size());
    const std::size_t prev_begin = tier_start[tier - 1];
    const std::size_t prev_end = tier_start[tier];

    // Each new gate takes three distinct signals, at least one from the
    // previous tier so every structural shape is built exactly once.
    for (std::size_t k = prev_begin; k < prev_end; ++k)
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          const std::array<expr, 3> base{pool[i], pool[j], pool[k]};
          for (unsigned flags = 0; flags < 8; ++flags) {
            std::array<expr, 3> ch = base;
            bool skip = false;
            for (unsigned b = 0; b < 3; ++b) {
              if (!(flags & (1u << b))) continue;
              if (ch[b].is_constant()) { skip = true; break; }
              ch[b] = !ch[b];
            }
            if (skip) continue;
            const expr g = arena_.make_gate(ch[0], ch[1], ch[2]);
            if (!g.is_gate() || int(g.node->depth) != tier) continue;
            record(g);
            record(!g);
            pool.push_back(expr{g.node, false});
          }
        }
  }
}

std::optional<oracle_result> oracle::exact_optimum(const truth_table& f) const {
  if (f.num_vars() != bound_.num_vars)
    throw std::invalid_argument("truth table width does not match the search bound");
  const auto it = minima_.find(f.bits());
  if (it == minima_.end()) return std::nullopt;
  return it->second;
}

optimality_report oracle::verify_optimal(std::span<const claimed_result> results) const {
  optimality_report report;
  report.num_checked = results.size();
  for (const claimed_result& r : results) {
    const auto opt = exact_optimum(r.tt);
    if (!opt)
      report.mismatches.push_back({r.tt, r.c, std::nullopt});
    else if (opt->c != r.c)
      report.mismatches.push_back({r.tt, r.c, opt->c});
  }
  return report;
}

}  // namespace mpc
