#include "mpc/expr.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace mpc {

namespace {

const expr_node k_const_nodes[2] = {
    {node_kind::constant, 0, 0, {}},
    {node_kind::constant, 1, 0, {}},
};

const expr_node k_var_nodes[truth_table::max_vars] = {
    {node_kind::variable, 0, 0, {}}, {node_kind::variable, 1, 0, {}},
    {node_kind::variable, 2, 0, {}}, {node_kind::variable, 3, 0, {}},
    {node_kind::variable, 4, 0, {}},
};

}  // namespace

expr expr::constant(bool value) { return {&k_const_nodes[value ? 1 : 0], false}; }

expr expr::variable(unsigned index) {
  if (index >= truth_table::max_vars)
    throw std::invalid_argument("variable index out of range");
  return {&k_var_nodes[index], false};
}

bool expr::is_constant() const { return node->kind == node_kind::constant; }
bool expr::is_variable() const { return node->kind == node_kind::variable; }
bool expr::is_gate() const { return node->kind == node_kind::gate; }
bool expr::constant_value() const { return node->value != 0; }
unsigned expr::variable_index() const { return node->value; }
unsigned expr::depth() const { return node->depth; }

expr expr::operator!() const {
  if (is_constant()) return constant(!constant_value());
  return {node, !neg};
}

int compare(const expr& a, const expr& b) {
  if (a.node == b.node) return int(a.neg) - int(b.neg);
  const auto ka = static_cast<int>(a.node->kind);
  const auto kb = static_cast<int>(b.node->kind);
  if (ka != kb) return ka < kb ? -1 : 1;
  if (a.node->value != b.node->value) return a.node->value < b.node->value ? -1 : 1;
  for (int i = 0; i < 3; ++i) {
    const int c = compare(a.node->child[i], b.node->child[i]);
    if (c != 0) return c;
  }
  return int(a.neg) - int(b.neg);
}

std::size_t expr_arena::gate_key_hash::operator()(const gate_key& k) const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const expr& c : k.child) {
    h ^= std::hash<const void*>{}(c.node) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::size_t(c.neg) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

const expr_node* expr_arena::find(const gate_key& key) const {
  for (const expr_arena* a = this; a != nullptr; a = a->base_) {
    auto it = a->interned_.find(key);
    if (it != a->interned_.end()) return it->second;
  }
  return nullptr;
}

expr expr_arena::make_gate(expr a, expr b, expr c) {
  std::array<expr, 3> ch = {a, b, c};

  // M(X,X,Y) = X and M(X,!X,Y) = Y. Interning makes both checks pointer
  // comparisons; the constant pair {0,1} is complementary through two
  // distinct nodes and needs its own check.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const int k = 3 - i - j;
      if (ch[i].node == ch[j].node)
        return ch[i].neg == ch[j].neg ? ch[i] : ch[k];
      if (ch[i].is_constant() && ch[j].is_constant()) return ch[k];
    }

  std::sort(ch.begin(), ch.end(), expr_less);

  gate_key key{ch};
  if (const expr_node* existing = find(key)) return {existing, false};

  uint16_t depth = 0;
  for (const expr& x : ch) depth = std::max(depth, uint16_t(x.node->depth));
  nodes_.push_back(expr_node{node_kind::gate, 0, uint16_t(depth + 1), ch});
  const expr_node* node = &nodes_.back();
  interned_.emplace(key, node);
  return {node, false};
}

bool evaluate(const expr& e, uint32_t assignment, unsigned num_vars) {
  bool v = false;
  switch (e.node->kind) {
    case node_kind::constant:
      v = e.node->value != 0;
      break;
    case node_kind::variable:
      if (e.node->value >= num_vars)
        throw std::invalid_argument("expression uses a variable beyond num_vars");
      v = (assignment >> (num_vars - 1 - e.node->value)) & 1u;
      break;
    case node_kind::gate: {
      const int sum = int(evaluate(e.node->child[0], assignment, num_vars)) +
                      int(evaluate(e.node->child[1], assignment, num_vars)) +
                      int(evaluate(e.node->child[2], assignment, num_vars));
      v = sum >= 2;
      break;
    }
  }
  return e.neg ? !v : v;
}

namespace {

uint32_t table_bits(const expr_node* node, unsigned num_vars,
                    std::unordered_map<const expr_node*, uint32_t>& memo) {
  auto it = memo.find(node);
  if (it != memo.end()) return it->second;
  uint32_t bits = 0;
  switch (node->kind) {
    case node_kind::constant:
      bits = node->value ? truth_table::ones(num_vars).bits() : 0;
      break;
    case node_kind::variable:
      if (node->value >= num_vars)
        throw std::invalid_argument("expression uses a variable beyond num_vars");
      bits = truth_table::var(num_vars, node->value).bits();
      break;
    case node_kind::gate: {
      uint32_t c[3];
      for (int i = 0; i < 3; ++i) {
        const expr& ch = node->child[i];
        c[i] = table_bits(ch.node, num_vars, memo);
        if (ch.neg) c[i] = ~c[i];
      }
      bits = (c[0] & c[1]) | (c[0] & c[2]) | (c[1] & c[2]);
      break;
    }
  }
  memo.emplace(node, bits);
  return bits;
}

}  // namespace

truth_table truth_table_of(const expr& e, unsigned num_vars) {
  std::unordered_map<const expr_node*, uint32_t> memo;
  uint32_t bits = table_bits(e.node, num_vars, memo);
  if (e.neg) bits = ~bits;
  const uint32_t mask =
      num_vars == 5 ? 0xffffffffu : (1u << (1u << num_vars)) - 1;
  return truth_table(num_vars, bits & mask);
}

cost cost_of(const expr& e) {
  std::unordered_set<const expr_node*> gates;
  std::unordered_set<const expr_node*> complemented;
  std::function<void(const expr_node*)> visit = [&](const expr_node* node) {
    if (node->kind != node_kind::gate || !gates.insert(node).second) return;
    for (const expr& ch : node->child) {
      if (ch.neg) complemented.insert(ch.node);
      visit(ch.node);
    }
  };
  if (e.neg) complemented.insert(e.node);
  visit(e.node);

  uint16_t gate_inputs = 0;
  for (const expr_node* g : gates)
    for (const expr& ch : g->child)
      if (ch.node->kind != node_kind::constant) ++gate_inputs;

  return cost{uint16_t(e.node->depth), uint16_t(gates.size()),
              uint16_t(complemented.size()), gate_inputs};
}

std::vector<const expr_node*> collect_gates(const expr& e) {
  std::unordered_set<const expr_node*> seen;
  std::vector<const expr_node*> out;
  std::function<void(const expr_node*)> visit = [&](const expr_node* node) {
    if (node->kind != node_kind::gate || !seen.insert(node).second) return;
    for (const expr& ch : node->child) visit(ch.node);
    out.push_back(node);
  };
  visit(e.node);
  std::sort(out.begin(), out.end(), [](const expr_node* a, const expr_node* b) {
    return compare({a, false}, {b, false}) < 0;
  });
  return out;
}

namespace {

// Self-duality: !M(X,Y,Z) = M(!X,!Y,!Z). Pushes complements so each rebuilt
// gate keeps at most one complemented input, absorbing pairs along the way.
expr normalize_node(expr_arena& arena, const expr_node* node,
                    std::unordered_map<const expr_node*, expr>& memo) {
  if (node->kind != node_kind::gate) return {node, false};
  auto it = memo.find(node);
  if (it != memo.end()) return it->second;

  std::array<expr, 3> ch;
  int flagged = 0;
  for (int i = 0; i < 3; ++i) {
    expr c = normalize_node(arena, node->child[i].node, memo);
    if (node->child[i].neg) c = !c;
    ch[i] = c;
    if (ch[i].neg) ++flagged;
  }
  expr result;
  if (flagged >= 2) {
    result = !arena.make_gate(!ch[0], !ch[1], !ch[2]);
  } else {
    result = arena.make_gate(ch[0], ch[1], ch[2]);
  }
  memo.emplace(node, result);
  return result;
}

}  // namespace

expr normalize_inverters(expr_arena& arena, const expr& e) {
  if (!e.is_gate()) return e;
  std::unordered_map<const expr_node*, expr> memo;

  // Inner gates get the pattern-directed rewrite. The root representation is
  // chosen by measured cost instead: a complemented signal shared between
  // the root and a deeper gate can make either representation cheaper, and
  // with a complemented root the cheaper side can have fewer than two
  // complemented children. Ties go to the flipped form.
  std::array<expr, 3> ch;
  for (int i = 0; i < 3; ++i) {
    expr c = normalize_node(arena, e.node->child[i].node, memo);
    if (e.node->child[i].neg) c = !c;
    ch[i] = c;
  }
  expr as_is = arena.make_gate(ch[0], ch[1], ch[2]);
  expr flipped = !arena.make_gate(!ch[0], !ch[1], !ch[2]);
  if (e.neg) {
    as_is = !as_is;
    flipped = !flipped;
  }

  expr best = e;
  cost best_cost = cost_of(e);
  for (const expr& cand : {as_is, flipped}) {
    const cost c = cost_of(cand);
    if (c <= best_cost) {
      best = cand;
      best_cost = c;
    }
  }
  return best;
}

expr shift_variables(expr_arena& arena, const expr& e, int shift) {
  std::function<expr(const expr_node*)> rebuild = [&](const expr_node* node) -> expr {
    switch (node->kind) {
      case node_kind::constant:
        return expr::constant(node->value != 0);
      case node_kind::variable: {
        const int idx = int(node->value) + shift;
        if (idx < 0 || idx >= int(truth_table::max_vars))
          throw std::invalid_argument("variable shift out of range");
        return expr::variable(unsigned(idx));
      }
      case node_kind::gate: {
        expr c[3];
        for (int i = 0; i < 3; ++i) {
          c[i] = rebuild(node->child[i].node);
          if (node->child[i].neg) c[i] = !c[i];
        }
        return arena.make_gate(c[0], c[1], c[2]);
      }
    }
    throw std::logic_error("unreachable");
  };
  expr out = rebuild(e.node);
  return e.neg ? !out : out;
}

}  // namespace mpc
