#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <unordered_map>
#include <vector>

#include "mpc/cost.hpp"
#include "mpc/truth_table.hpp"

namespace mpc {

struct expr_node;
class expr_arena;

/// A signal: an expression node plus an optional complement on its output.
/// Copies are cheap. Nodes are interned, so within one arena chain two
/// signals are functionally identical iff they compare equal. Constant and
/// variable nodes are process-wide singletons; complementing a constant folds
/// to the other constant, so a complement flag never rests on a constant.
struct expr {
  const expr_node* node = nullptr;
  bool neg = false;

  static expr constant(bool value);
  static expr variable(unsigned index);  // 0 = A .. 4 = E

  bool valid() const { return node != nullptr; }
  bool is_constant() const;
  bool is_variable() const;
  bool is_gate() const;
  bool constant_value() const;      // pre: is_constant()
  unsigned variable_index() const;  // pre: is_variable()
  unsigned depth() const;

  expr operator!() const;

  friend bool operator==(const expr&, const expr&) = default;
};

enum class node_kind : uint8_t { constant, variable, gate };

struct expr_node {
  node_kind kind;
  uint8_t value = 0;            // constant value or variable index
  uint16_t depth = 0;
  std::array<expr, 3> child{};  // gate children, in canonical order
};

/// Total structural order: constants before variables before gates, then by
/// value, then children recursively, complement flag last. Canonical child
/// order and all deterministic sorts use it.
int compare(const expr& a, const expr& b);

inline bool expr_less(const expr& a, const expr& b) { return compare(a, b) < 0; }

/// Interning store for gate nodes. An arena may chain to a frozen base arena:
/// lookups see base nodes and new nodes are created locally, so expressions
/// built on top of shared tables keep pointer-level structural identity.
/// Arenas are not thread safe; give each worker its own arena chained on the
/// shared frozen one.
class expr_arena {
 public:
  explicit expr_arena(const expr_arena* base = nullptr) : base_(base) {}
  expr_arena(const expr_arena&) = delete;
  expr_arena& operator=(const expr_arena&) = delete;
  expr_arena(expr_arena&&) = default;
  expr_arena& operator=(expr_arena&&) = default;

  /// Builds the majority gate M(a,b,c) with construction-time reductions:
  /// a complemented constant folds to the other constant, two identical
  /// children collapse the gate to that child, two complementary children
  /// collapse it to the third, and surviving children are stored in canonical
  /// order. The result is therefore not necessarily a gate.
  expr make_gate(expr a, expr b, expr c);

  std::size_t num_gate_nodes() const { return nodes_.size(); }
  const expr_arena* base() const { return base_; }

 private:
  struct gate_key {
    std::array<expr, 3> child;
    bool operator==(const gate_key&) const = default;
  };
  struct gate_key_hash {
    std::size_t operator()(const gate_key& k) const;
  };

  const expr_node* find(const gate_key& key) const;

  const expr_arena* base_ = nullptr;
  std::deque<expr_node> nodes_;
  std::unordered_map<gate_key, const expr_node*, gate_key_hash> interned_;
};

/// Evaluates at one input assignment, given as a minterm index (first
/// variable in the most significant bit). Throws std::invalid_argument if the
/// expression uses a variable index >= num_vars.
bool evaluate(const expr& e, uint32_t assignment, unsigned num_vars);

/// Full truth table by bit-parallel evaluation over all 2^num_vars minterms.
truth_table truth_table_of(const expr& e, unsigned num_vars);

/// Cost of the expression as a DAG: shared gates count once, inverters count
/// one per distinct complemented signal (the root complement included), gate
/// inputs count non-constant fan-ins over distinct gates.
cost cost_of(const expr& e);

/// Distinct gate nodes of the DAG, in structural order.
std::vector<const expr_node*> collect_gates(const expr& e);

/// Rewrites inner gates bottom-up, complementing all children and the output
/// whenever two or more child edges carry complements, then picks the root
/// representation (as rewritten, or with a pushed-through root complement) by
/// measured cost, the complemented-root form on ties. Preserves the truth
/// table and never returns anything costlier than the input.
expr normalize_inverters(expr_arena& arena, const expr& e);

/// Rebuilds the expression with every variable index shifted by `shift`.
expr shift_variables(expr_arena& arena, const expr& e, int shift);

}  // namespace mpc
