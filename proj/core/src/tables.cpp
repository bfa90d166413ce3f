#include "mpc/tables.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_set>

#include "mpc/errors.hpp"

namespace mpc {

namespace {

table_entry make_entry(unsigned num_vars, const expr& e) {
  table_entry entry;
  entry.tt = truth_table_of(e, num_vars);
  entry.e = e;
  entry.c = cost_of(e);
  const auto gates = collect_gates(e);
  if (gates.size() > entry.gates.size())
    throw internal_error("table entry exceeds the gate slot limit");
  entry.num_gates = uint8_t(gates.size());
  std::copy(gates.begin(), gates.end(), entry.gates.begin());
  return entry;
}

bool rank_less(const table_entry& a, const table_entry& b) {
  return std::make_tuple(a.c, a.tt.value()) < std::make_tuple(b.c, b.tt.value());
}

// Bounded pointer set for the inverter census: an expression over three
// catalog children has at most seven complemented signals.
struct tiny_node_set {
  std::array<const expr_node*, 8> v{};
  int n = 0;
  void add(const expr_node* p) {
    for (int i = 0; i < n; ++i)
      if (v[i] == p) return;
    v[n++] = p;
  }
};

}  // namespace

std::vector<table_entry> gen_primitives(unsigned num_vars, expr_arena& arena) {
  if (num_vars < 1 || num_vars > truth_table::max_vars)
    throw std::invalid_argument("gen_primitives supports 1 to 5 variables");

  std::vector<table_entry> out;
  const expr zero = expr::constant(false);
  const expr one = expr::constant(true);
  auto add = [&](const expr& e) { out.push_back(make_entry(num_vars, e)); };

  add(zero);
  add(one);

  for (unsigned i = 0; i < num_vars; ++i) {
    add(expr::variable(i));
    add(!expr::variable(i));
  }

  // AND/OR of two literals. The doubly complemented forms come out of the
  // complemented dual gate, keeping every gate at one complemented input at
  // most: !x&!y = !(x|y) and !x|!y = !(x&y).
  for (unsigned i = 0; i < num_vars; ++i)
    for (unsigned j = i + 1; j < num_vars; ++j) {
      const expr x = expr::variable(i);
      const expr y = expr::variable(j);
      for (const expr& tie : {zero, one}) {
        add(arena.make_gate(x, y, tie));
        add(arena.make_gate(!x, y, tie));
        add(arena.make_gate(x, !y, tie));
        add(!arena.make_gate(x, y, tie == zero ? one : zero));
      }
    }

  // Majority of three distinct variables: complement at most one input,
  // optionally the output.
  for (unsigned i = 0; i < num_vars; ++i)
    for (unsigned j = i + 1; j < num_vars; ++j)
      for (unsigned k = j + 1; k < num_vars; ++k) {
        const expr x = expr::variable(i);
        const expr y = expr::variable(j);
        const expr z = expr::variable(k);
        for (const expr& base : {arena.make_gate(x, y, z), arena.make_gate(!x, y, z),
                                 arena.make_gate(x, !y, z), arena.make_gate(x, y, !z)}) {
          add(base);
          add(!base);
        }
      }

  std::unordered_set<uint32_t> seen;
  for (const table_entry& e : out)
    if (!seen.insert(e.tt.bits()).second)
      throw internal_error("single-gate catalog produced a duplicate truth table");

  std::sort(out.begin(), out.end(), rank_less);
  return out;
}

std::vector<table_entry> gen_m2(unsigned num_vars,
                                const std::vector<table_entry>& primitives,
                                expr_arena& arena) {
  // A single-gate child has two interchangeable shapes, the stored one and
  // the one with every input and the connecting edge complemented. Both are
  // kept so the census can pick whichever shares complemented variables with
  // the rest of the triple.
  struct child_info {
    uint32_t bits;
    const expr_node* node;
    bool edge_neg;
    bool is_gate;
    bool is_const;
    uint16_t depth;
    uint16_t gate_inputs;
    std::array<const expr_node*, 3> inner[2]{};
    int num_inner[2] = {0, 0};
  };

  std::vector<child_info> info(primitives.size());
  std::unordered_set<uint32_t> prim_bits;
  for (std::size_t i = 0; i < primitives.size(); ++i) {
    const table_entry& p = primitives[i];
    child_info& ci = info[i];
    ci.bits = p.tt.bits();
    ci.node = p.e.node;
    ci.edge_neg = p.e.neg;
    ci.is_gate = p.e.is_gate();
    ci.is_const = p.e.is_constant();
    ci.depth = uint16_t(p.e.depth());
    ci.gate_inputs = p.c.gate_inputs;
    if (ci.is_gate)
      for (const expr& ch : ci.node->child) {
        if (ch.node->kind == node_kind::constant) continue;
        const int shape = ch.neg ? 0 : 1;
        ci.inner[shape][ci.num_inner[shape]++] = ch.node;
      }
    prim_bits.insert(ci.bits);
  }

  // Pass 1: cost census per triple without building expressions, keeping the
  // per-truth-table winner. Each triple is scored with the root both plain
  // and complemented, since the complemented root reaches truth tables whose
  // cheapest form shares a complemented signal across levels. Strict
  // improvement replaces, so ties keep the first candidate in (i,j,k)
  // enumeration order over the rank-sorted input.
  struct winner {
    cost c;
    uint32_t i, j, k;
    uint8_t shapes;
    bool root_flip;
    bool negated;
  };
  std::unordered_map<uint32_t, winner> best;
  best.reserve(num_vars >= 5 ? 300'000 : 16'384);

  const uint32_t mask = truth_table::zeros(num_vars).table_mask();
  const std::size_t count = primitives.size();
  for (uint32_t i = 0; i < count; ++i)
    for (uint32_t j = i + 1; j < count; ++j) {
      const child_info& a = info[i];
      const child_info& b = info[j];
      if (a.node == b.node || (a.is_const && b.is_const)) continue;
      for (uint32_t k = j + 1; k < count; ++k) {
        const child_info& c = info[k];
        if (c.node == a.node || c.node == b.node) continue;
        if (c.is_const && (a.is_const || b.is_const)) continue;

        const uint32_t bits = (a.bits & b.bits) | (a.bits & c.bits) | (b.bits & c.bits);

        const uint16_t depth =
            uint16_t(1 + std::max({a.depth, b.depth, c.depth}));
        const uint16_t gates =
            uint16_t(1 + int(a.is_gate) + int(b.is_gate) + int(c.is_gate));
        const uint16_t gate_inputs = uint16_t(
            (3 - int(a.is_const) - int(b.is_const) - int(c.is_const)) +
            a.gate_inputs + b.gate_inputs + c.gate_inputs);

        // Depth, gates, and gate inputs are fixed by the triple; only the
        // inverter count depends on which shape each gate child takes and
        // whether the root pushes a complement through its edges. Scan every
        // combination, counting a complemented variable once however many
        // edges share it.
        const child_info* tri[3] = {&a, &b, &c};
        int child_shape_mask = 0;
        for (int t = 0; t < 3; ++t)
          if (tri[t]->is_gate) child_shape_mask |= 1 << t;

        int best_inv[2] = {64, 64};
        uint8_t best_shapes[2] = {0, 0};
        bool best_root[2] = {false, false};
        for (int root_flip = 0; root_flip < 2; ++root_flip)
          for (int shapes = 0; shapes < 8; ++shapes) {
            if (shapes & ~child_shape_mask) continue;
            tiny_node_set vars;
            int gate_edges = 0;
            for (int t = 0; t < 3; ++t) {
              const child_info* ci = tri[t];
              if (ci->is_const) continue;
              const bool flip = (shapes >> t) & 1;
              if (!ci->is_gate) {
                if (ci->edge_neg != (root_flip != 0)) vars.add(ci->node);
                continue;
              }
              const int shape = flip ? 1 : 0;
              for (int q = 0; q < ci->num_inner[shape]; ++q)
                vars.add(ci->inner[shape][q]);
              if ((ci->edge_neg != flip) != (root_flip != 0)) ++gate_edges;
            }
            const int base = vars.n + gate_edges;
            for (int p = 0; p < 2; ++p) {
              const int inv = base + ((p ^ root_flip) & 1);
              if (inv < best_inv[p]) {
                best_inv[p] = inv;
                best_shapes[p] = uint8_t(shapes);
                best_root[p] = root_flip != 0;
              }
            }
          }

        const auto consider = [&](uint32_t key, int p) {
          if (prim_bits.contains(key)) return;
          const cost cand{depth, gates, uint16_t(best_inv[p]), gate_inputs};
          const winner w{cand, i, j, k, best_shapes[p], best_root[p], p != 0};
          auto [it, inserted] = best.try_emplace(key, w);
          if (!inserted && cand < it->second.c) it->second = w;
        };
        consider(bits, 0);
        consider(~bits & mask, 1);
      }
    }

  // Pass 2: materialize the winners and cross-check the census against the
  // built expression.
  std::vector<std::pair<uint32_t, winner>> ranked(best.begin(), best.end());
  std::sort(ranked.begin(), ranked.end(), [&](const auto& x, const auto& y) {
    return std::make_tuple(x.second.c, truth_table(num_vars, x.first).value()) <
           std::make_tuple(y.second.c, truth_table(num_vars, y.first).value());
  });

  std::vector<table_entry> out;
  out.reserve(ranked.size());
  const auto child_shape = [&](uint32_t idx, bool flip) {
    const expr& stored = primitives[idx].e;
    if (!flip) return stored;
    const expr_node* nd = stored.node;
    const expr rebuilt =
        arena.make_gate(!nd->child[0], !nd->child[1], !nd->child[2]);
    return stored.neg ? rebuilt : !rebuilt;
  };

  for (const auto& [bits, w] : ranked) {
    std::array<expr, 3> ch = {child_shape(w.i, w.shapes & 1),
                              child_shape(w.j, w.shapes & 2),
                              child_shape(w.k, w.shapes & 4)};
    if (w.root_flip)
      for (expr& x : ch) x = !x;
    expr e = arena.make_gate(ch[0], ch[1], ch[2]);
    if (w.negated != w.root_flip) e = !e;
    table_entry entry = make_entry(num_vars, e);
    if (entry.tt.bits() != bits)
      throw internal_error("depth-2 census disagrees with the built truth table");
    if (entry.c != w.c)
      throw internal_error("depth-2 census disagrees with the built cost");
    out.push_back(entry);
  }
  return out;
}

table_set table_set::build(unsigned num_vars) {
  table_set ts;
  ts.num_vars_ = num_vars;
  auto prims = gen_primitives(num_vars, ts.arena_);
  auto m2 = gen_m2(num_vars, prims, ts.arena_);
  ts.finalize(std::move(prims), std::move(m2));
  return ts;
}

void table_set::finalize(std::vector<table_entry>&& primitives,
                         std::vector<table_entry>&& m2) {
  entries_ = std::move(primitives);
  entries_.insert(entries_.end(), m2.begin(), m2.end());
  std::sort(entries_.begin(), entries_.end(), rank_less);

  by_tt_.reserve(entries_.size());
  unsigned max_gates = 0;
  for (uint32_t pos = 0; pos < entries_.size(); ++pos) {
    const table_entry& e = entries_[pos];
    if (!by_tt_.emplace(e.tt.bits(), pos).second)
      throw internal_error("catalog truth tables must be distinct");
    if (e.c.depth <= 1)
      prim_rank_.push_back(pos);
    else
      m2_rank_.push_back(pos);
    max_gates = std::max(max_gates, unsigned(e.c.gates));
  }

  prim_by_value_ = prim_rank_;
  auto by_value = [this](uint32_t x, uint32_t y) {
    return entries_[x].tt.value() < entries_[y].tt.value();
  };
  std::sort(prim_by_value_.begin(), prim_by_value_.end(), by_value);

  m2_by_gates_.assign(max_gates + 1, {});
  for (uint32_t pos : m2_rank_) m2_by_gates_[entries_[pos].c.gates].push_back(pos);
  for (auto& group : m2_by_gates_) std::sort(group.begin(), group.end(), by_value);

  std::vector<truth_table> tts;
  tts.reserve(entries_.size());
  for (const table_entry& e : entries_) tts.push_back(e.tt);
  index_.emplace(num_vars_, tts);
}

const std::vector<uint32_t>& table_set::m2_by_gate_count(unsigned gate_count) const {
  static const std::vector<uint32_t> empty;
  if (gate_count >= m2_by_gates_.size()) return empty;
  return m2_by_gates_[gate_count];
}

const table_entry* table_set::find(const truth_table& tt) const {
  if (tt.num_vars() != num_vars_)
    throw std::invalid_argument("truth table size does not match the tables");
  auto it = by_tt_.find(tt.bits());
  return it == by_tt_.end() ? nullptr : &entries_[it->second];
}

cost discounted_cost(const table_entry& entry,
                     std::span<const expr_node* const> shared_gates) {
  cost adjusted = entry.c;
  for (int i = 0; i < entry.num_gates; ++i)
    for (const expr_node* g : shared_gates)
      if (entry.gates[i] == g) {
        --adjusted.gates;
        break;
      }
  return adjusted;
}

std::vector<pattern_match> query_pattern(const table_set& tables,
                                         const ternary_pattern& pattern,
                                         std::span<const expr_node* const> shared_gates) {
  std::vector<pattern_match> out;
  tables.index().for_each_match(pattern, [&](std::size_t pos) {
    const table_entry& e = tables.entries()[pos];
    out.push_back({&e, discounted_cost(e, shared_gates)});
    return true;
  });
  std::sort(out.begin(), out.end(), [](const pattern_match& x, const pattern_match& y) {
    return std::make_tuple(x.adjusted, x.entry->tt.value()) <
           std::make_tuple(y.adjusted, y.entry->tt.value());
  });
  return out;
}

}  // namespace mpc
