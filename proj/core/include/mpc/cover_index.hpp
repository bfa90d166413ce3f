#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "mpc/ternary_pattern.hpp"
#include "mpc/truth_table.hpp"

namespace mpc {

/// Bit-transposed view of a list of truth tables, for fast ternary pattern
/// queries. Row m holds one bit per entry: whether that entry's table covers
/// minterm m. A pattern match is then an AND of rows over the pattern's One
/// cells and of complemented rows over its Zero cells, evaluated 64 entries
/// at a time. Entries keep their insertion order, so when the caller inserts
/// in ascending cost order, matches stream out cost-ascending and a search
/// can stop early once costs pass a bound.
class cover_index {
 public:
  cover_index(unsigned num_vars, const std::vector<truth_table>& tables);

  std::size_t size() const { return size_; }
  unsigned num_vars() const { return num_vars_; }

  /// Calls visit(entry_index) for every entry matching the pattern, in
  /// ascending index order. visit returns false to stop the scan.
  template <typename Visit>
  void for_each_match(const ternary_pattern& p, Visit&& visit) const {
    for (std::size_t b = 0; b < num_blocks_; ++b) {
      uint64_t word = block_mask(b);
      const uint64_t* rows = data_.data() + b * num_minterms_;
      for (uint32_t m = p.ones(); word && m; m &= m - 1)
        word &= rows[std::countr_zero(m)];
      for (uint32_t m = p.zeros(); word && m; m &= m - 1)
        word &= ~rows[std::countr_zero(m)];
      while (word) {
        const unsigned bit = unsigned(std::countr_zero(word));
        word &= word - 1;
        if (!visit(b * 64 + bit)) return;
      }
    }
  }

  /// Bitmask over entries (64 per word, entry e at word e/64 bit e%64) whose
  /// table covers at least one minterm of `minterm_mask`.
  std::vector<uint64_t> entries_covering_any(uint32_t minterm_mask) const;

 private:
  uint64_t block_mask(std::size_t b) const {
    const std::size_t remaining = size_ - b * 64;
    return remaining >= 64 ? ~uint64_t(0) : (uint64_t(1) << remaining) - 1;
  }

  unsigned num_vars_;
  std::size_t size_;
  std::size_t num_minterms_;
  std::size_t num_blocks_;
  std::vector<uint64_t> data_;  // [block * num_minterms + minterm]
};

}  // namespace mpc
