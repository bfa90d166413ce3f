#include "mpc/synthesis.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "mpc/errors.hpp"

namespace mpc {

namespace {

constexpr int pool_combined = 0;
constexpr int pool_primitives = 1;
constexpr int pool_m2 = 2;

std::span<const expr_node* const> gate_span(const table_entry& e) {
  return {e.gates.data(), e.num_gates};
}

// Union of the distinct gate nodes of up to two entries, for discount sets.
struct gate_union {
  std::array<const expr_node*, 8> v{};
  std::size_t n = 0;
  void add(const table_entry& e) {
    for (int i = 0; i < e.num_gates; ++i) {
      bool dup = false;
      for (std::size_t t = 0; t < n && !dup; ++t) dup = v[t] == e.gates[i];
      if (!dup) v[n++] = e.gates[i];
    }
  }
  std::span<const expr_node* const> span() const { return {v.data(), n}; }
};

bool mask_bit(const std::vector<uint64_t>& mask, std::size_t pos) {
  return (mask[pos >> 6] >> (pos & 63)) & 1;
}

std::tuple<int, int, int, int> as_tuple(const cost& c) {
  return {c.depth, c.gates, c.inverters, c.gate_inputs};
}

}  // namespace

const char* to_string(synth_method m) {
  switch (m) {
    case synth_method::primitive: return "primitive";
    case synth_method::m2: return "m2";
    case synth_method::loop1: return "loop1";
    case synth_method::loop2: return "loop2";
    case synth_method::level4: return "level4";
    case synth_method::greedy3: return "greedy3";
    case synth_method::shannon: return "shannon";
  }
  return "unknown";
}

std::vector<uint8_t> coverage_vector(const truth_table& x1, const truth_table& x2) {
  if (x1.num_vars() != x2.num_vars())
    throw std::invalid_argument("coverage_vector needs equal-size tables");
  std::vector<uint8_t> v(x1.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = uint8_t(int(x1.bit(uint32_t(i))) + int(x2.bit(uint32_t(i))));
  return v;
}

ternary_pattern second_child_pattern(const truth_table& f, const truth_table& x1) {
  const uint32_t ones = f.bits() & ~x1.bits();
  const uint32_t zeros = x1.bits() & ~f.bits();
  return ternary_pattern(f.num_vars(), ones, zeros);
}

ternary_pattern third_child_pattern(const truth_table& f, const truth_table& x1,
                                    const truth_table& x2) {
  const uint32_t once = x1.bits() ^ x2.bits();
  return ternary_pattern(f.num_vars(), once & f.bits(), once & ~f.bits());
}

int primitive_child_count(const expr& e) {
  if (!e.is_gate()) return 0;
  int count = 0;
  for (const expr& ch : e.node->child)
    if (ch.node->depth <= 1) ++count;
  return count;
}

struct synthesizer::match {
  const table_entry* entry;
  cost adjusted;
};

synthesizer::synthesizer(const table_set& tables, const table_set* lower)
    : tables_(tables), lower_(lower), arena_(&tables.arena()) {
  if (tables_.num_vars() == 5) {
    if (lower_ == nullptr || lower_->num_vars() != 4)
      throw std::invalid_argument(
          "5-variable synthesis needs the 4-variable tables for the cofactor split");
  }
}

std::optional<synthesizer::match> synthesizer::cheapest_match(
    const ternary_pattern& pattern, std::span<const expr_node* const> discount,
    const expr_node* exclude0, const expr_node* exclude1, bool exclude_constants,
    int pool, const std::vector<uint64_t>* useful) const {
  // Entries stream in ascending (cost, value) order, so once even the largest
  // possible discount cannot bring an entry below the current best, nothing
  // later can either.
  const int max_discount = int(std::min<std::size_t>(discount.size(), 4));
  std::optional<match> best;
  tables_.index().for_each_match(pattern, [&](std::size_t pos) {
    const table_entry& e = tables_.entries()[pos];
    if (best) {
      const std::tuple<int, int, int, int> floor{e.c.depth, int(e.c.gates) - max_discount,
                                                 e.c.inverters, e.c.gate_inputs};
      if (floor > as_tuple(best->adjusted)) return false;
    }
    if (useful && !mask_bit(*useful, pos)) return true;
    if (pool == pool_primitives && e.c.depth > 1) return true;
    if (pool == pool_m2 && e.c.depth <= 1) return true;
    if (e.e.node == exclude0 || e.e.node == exclude1) return true;
    if (exclude_constants && e.e.is_constant()) return true;
    const cost adj = discounted_cost(e, discount);
    if (!best || adj < best->adjusted ||
        (adj == best->adjusted && e.tt.value() < best->entry->tt.value()))
      best = match{&e, adj};
    return true;
  });
  return best;
}

std::optional<synth_result> synthesizer::assemble(const expr& x1, const expr& x2,
                                                  const expr& x3, const truth_table& f,
                                                  synth_method method) {
  const expr g = arena_.make_gate(x1, x2, x3);
  if (g.node == x1.node || g.node == x2.node || g.node == x3.node)
    return std::nullopt;  // degenerate combination collapsed to a child
  const expr e = normalize_inverters(arena_, g);
  if (truth_table_of(e, f.num_vars()) != f)
    throw internal_error("assembled expression does not reproduce the input");
  return synth_result{e, cost_of(e), method};
}

std::optional<synth_result> synthesizer::try_exact(const truth_table& f) {
  const table_entry* entry = tables_.find(f);
  if (entry == nullptr) return std::nullopt;
  return synth_result{entry->e, entry->c,
                      entry->c.depth <= 1 ? synth_method::primitive : synth_method::m2};
}

std::optional<synth_result> synthesizer::loop1(const truth_table& f) {
  const uint32_t fb = f.bits();
  const std::vector<uint64_t> useful = tables_.index().entries_covering_any(fb);

  std::vector<uint32_t> prims;
  prims.reserve(tables_.num_primitives());
  for (uint32_t pos : tables_.primitives_by_value())
    if (mask_bit(useful, pos)) prims.push_back(pos);

  std::optional<synth_result> best;
  for (std::size_t ia = 0; ia < prims.size(); ++ia) {
    const table_entry& a = tables_.entries()[prims[ia]];
    for (std::size_t ib = ia + 1; ib < prims.size(); ++ib) {
      const table_entry& b = tables_.entries()[prims[ib]];
      if (a.e.node == b.e.node) continue;
      if (a.e.is_constant() && b.e.is_constant()) continue;
      if (((a.tt.bits() | b.tt.bits()) & fb) != fb) continue;  // leaves f uncovered
      if (a.tt.bits() & b.tt.bits() & ~fb) continue;           // double cover outside f

      if (best) {
        const cost floor{uint16_t(std::max(a.c.depth, b.c.depth) + 1),
                         uint16_t(a.c.gates + b.c.gates + 1), 0, 0};
        if (!(floor < best->c)) continue;
      }

      gate_union shared;
      shared.add(a);
      shared.add(b);
      const auto x3 = cheapest_match(third_child_pattern(f, a.tt, b.tt), shared.span(),
                                     a.e.node, b.e.node,
                                     a.e.is_constant() || b.e.is_constant(),
                                     pool_combined, &useful);
      if (!x3) continue;
      auto r = assemble(a.e, b.e, x3->entry->e, f, synth_method::loop1);
      if (r && (!best || r->c < best->c)) best = r;
    }
  }
  return best;
}

std::optional<synth_result> synthesizer::loop2_phase(const truth_table& f,
                                                     const std::vector<uint32_t>& seeds) {
  std::optional<synth_result> best;
  for (uint32_t pos : seeds) {
    const table_entry& x1 = tables_.entries()[pos];
    if (best) {
      const cost floor{uint16_t(x1.c.depth + 1), uint16_t(x1.c.gates + 1), 0, 0};
      if (!(floor < best->c)) continue;
    }
    const auto x2_matches = query_pattern(tables_, second_child_pattern(f, x1.tt),
                                          gate_span(x1));
    for (const pattern_match& x2 : x2_matches) {
      if (x2.entry->e.node == x1.e.node) continue;
      if (x2.entry->e.is_constant() && x1.e.is_constant()) continue;
      gate_union shared;
      shared.add(x1);
      shared.add(*x2.entry);
      const auto x3 = cheapest_match(
          third_child_pattern(f, x1.tt, x2.entry->tt), shared.span(), x1.e.node,
          x2.entry->e.node, x1.e.is_constant() || x2.entry->e.is_constant(),
          pool_combined, nullptr);
      if (!x3) continue;
      auto r = assemble(x1.e, x2.entry->e, x3->entry->e, f, synth_method::loop2);
      if (!r) continue;
      if (!best || r->c < best->c) best = r;
      break;  // first success for this seed; move to the next one
    }
  }
  return best;
}

std::optional<synth_result> synthesizer::loop2(const truth_table& f) {
  if (auto r = loop2_phase(f, tables_.primitives_by_value())) return r;
  for (unsigned r = 2; r <= tables_.max_m2_gate_count(); ++r)
    if (auto res = loop2_phase(f, tables_.m2_by_gate_count(r))) return res;
  return std::nullopt;
}

synth_result synthesizer::level4(const truth_table& f) {
  const uint32_t fb = f.bits();
  const uint32_t mask = f.table_mask();

  // Depth-limited synthesis of the child residuals, memoized per truth table.
  std::unordered_map<uint32_t, std::optional<synth_result>> cache;
  auto child = [&](uint32_t bits) -> const std::optional<synth_result>& {
    auto it = cache.find(bits);
    if (it == cache.end()) {
      const truth_table t(f.num_vars(), bits);
      std::optional<synth_result> r = try_exact(t);
      if (!r) r = loop1(t);
      if (!r) r = loop2(t);
      it = cache.emplace(bits, std::move(r)).first;
    }
    return it->second;
  };

  std::optional<synth_result> best;
  for (uint32_t pos : tables_.primitives_by_value()) {
    const table_entry& x1 = tables_.entries()[pos];
    const uint32_t ones = fb & ~x1.tt.bits();
    const uint32_t zeros = x1.tt.bits() & ~fb;
    const uint32_t dc = mask & ~(ones | zeros);

    // All second-child candidates compatible with the residual pattern, in
    // ascending truth-table value order.
    std::vector<truth_table> completions;
    uint32_t sub = 0;
    do {
      completions.emplace_back(f.num_vars(), ones | sub);
      sub = (sub - dc) & dc;
    } while (sub != 0);
    std::sort(completions.begin(), completions.end(),
              [](const truth_table& x, const truth_table& y) {
                return x.value() < y.value();
              });

    for (const truth_table& x2tt : completions) {
      if (x2tt.bits() == x1.tt.bits()) continue;
      const auto& r2 = child(x2tt.bits());
      if (!r2) continue;
      if (best && uint16_t(std::max(x1.c.depth, r2->c.depth) + 1) > best->c.depth)
        continue;
      const uint32_t x3bits = (x1.tt.bits() ^ x2tt.bits()) & fb;
      if (x3bits == x1.tt.bits() || x3bits == x2tt.bits()) continue;
      const auto& r3 = child(x3bits);
      if (!r3) continue;
      auto r = assemble(x1.e, r2->e, r3->e, f, synth_method::level4);
      if (r && (!best || r->c < best->c)) best = r;
    }
  }
  if (!best)
    throw internal_error("four-level synthesis exhausted without a result");
  return *best;
}

std::optional<synth_result> synthesizer::greedy3(const truth_table& f) {
  for (const table_entry& x1 : tables_.entries()) {
    const ternary_pattern p2 = second_child_pattern(f, x1.tt);

    // Second children: all matches, single-gate candidates before depth-2
    // ones, each group cheapest first.
    std::vector<match> x2s[2];
    tables_.index().for_each_match(p2, [&](std::size_t pos) {
      const table_entry& e = tables_.entries()[pos];
      if (e.e.node == x1.e.node) return true;
      if (e.e.is_constant() && x1.e.is_constant()) return true;
      x2s[e.c.depth <= 1 ? 0 : 1].push_back({&e, discounted_cost(e, gate_span(x1))});
      return true;
    });
    for (auto& group : x2s)
      std::sort(group.begin(), group.end(), [](const match& x, const match& y) {
        return std::make_tuple(x.adjusted, x.entry->tt.value()) <
               std::make_tuple(y.adjusted, y.entry->tt.value());
      });

    for (const auto& group : x2s)
      for (const match& x2 : group) {
        gate_union shared;
        shared.add(x1);
        shared.add(*x2.entry);
        const ternary_pattern p3 = third_child_pattern(f, x1.tt, x2.entry->tt);
        const bool no_const = x1.e.is_constant() || x2.entry->e.is_constant();
        auto x3 = cheapest_match(p3, shared.span(), x1.e.node, x2.entry->e.node,
                                 no_const, pool_primitives, nullptr);
        if (!x3)
          x3 = cheapest_match(p3, shared.span(), x1.e.node, x2.entry->e.node,
                              no_const, pool_m2, nullptr);
        if (!x3) continue;
        auto r = assemble(x1.e, x2.entry->e, x3->entry->e, f, synth_method::greedy3);
        if (r) return r;
      }
  }
  return std::nullopt;
}

synthesizer::shannon_split synthesizer::shannon_detail(const truth_table& f) {
  const truth_table f_low(4, f.bits() & 0xFFFFu);
  const truth_table f_high(4, f.bits() >> 16);

  synthesizer sub(*lower_);
  synth_result low = sub.run(f_low);
  synth_result high = sub.run(f_high);
  low.e = shift_variables(arena_, low.e, 1);
  high.e = shift_variables(arena_, high.e, 1);

  // Select the low cofactor when the first variable is 0 and the high one
  // when it is 1, then merge with an OR-shaped root.
  const expr a = expr::variable(0);
  const expr pick_low = arena_.make_gate(low.e, expr::constant(false), !a);
  const expr pick_high = arena_.make_gate(high.e, expr::constant(false), a);
  const expr root = arena_.make_gate(pick_low, pick_high, expr::constant(true));
  const expr e = normalize_inverters(arena_, root);
  if (truth_table_of(e, 5) != f)
    throw internal_error("cofactor recombination does not reproduce the input");

  return shannon_split{low, high, synth_result{e, cost_of(e), synth_method::shannon}};
}

synth_result synthesizer::shannon(const truth_table& f) {
  return shannon_detail(f).assembled;
}

synth_result synthesizer::run(const truth_table& f, const synth_options& opts) {
  if (f.num_vars() != tables_.num_vars())
    throw std::invalid_argument("truth table size does not match the tables");

  if (auto r = try_exact(f)) return *r;

  switch (tables_.num_vars()) {
    case 4: {
      if (auto r = loop1(f)) return *r;
      if (auto r = loop2(f)) return *r;
      return level4(f);
    }
    case 5: {
      if (!opts.force_shannon)
        if (auto r = greedy3(f)) return *r;
      return shannon(f);
    }
    default:
      // The tables are complete below 4 variables, so lookup cannot miss.
      throw internal_error("exact lookup missed with complete tables");
  }
}

}  // namespace mpc
