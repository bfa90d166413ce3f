#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace mpc {

/// Expression cost, compared lexicographically: depth dominates, then gate
/// count, inverter count and gate input count. Gates shared between branches
/// of a DAG count once, inverters count one per distinct complemented signal,
/// and gate inputs count the non-constant fan-ins of each distinct gate.
struct cost {
  uint16_t depth = 0;
  uint16_t gates = 0;
  uint16_t inverters = 0;
  uint16_t gate_inputs = 0;

  auto operator<=>(const cost&) const = default;

  std::string to_string() const {
    return "(" + std::to_string(depth) + "," + std::to_string(gates) + "," +
           std::to_string(inverters) + "," + std::to_string(gate_inputs) + ")";
  }
};

}  // namespace mpc
