#include "mpc/cover_index.hpp"

#include <stdexcept>

namespace mpc {

cover_index::cover_index(unsigned num_vars, const std::vector<truth_table>& tables)
    : num_vars_(num_vars),
      size_(tables.size()),
      num_minterms_(std::size_t(1) << num_vars),
      num_blocks_((size_ + 63) / 64),
      data_(num_blocks_ * num_minterms_, 0) {
  for (std::size_t e = 0; e < tables.size(); ++e) {
    if (tables[e].num_vars() != num_vars)
      throw std::invalid_argument("cover_index tables must share num_vars");
    const uint64_t bit = uint64_t(1) << (e % 64);
    uint64_t* rows = data_.data() + (e / 64) * num_minterms_;
    for (uint32_t m = tables[e].bits(); m; m &= m - 1)
      rows[std::countr_zero(m)] |= bit;
  }
}

std::vector<uint64_t> cover_index::entries_covering_any(uint32_t minterm_mask) const {
  std::vector<uint64_t> out(num_blocks_, 0);
  for (std::size_t b = 0; b < num_blocks_; ++b) {
    uint64_t word = 0;
    const uint64_t* rows = data_.data() + b * num_minterms_;
    for (uint32_t m = minterm_mask; m; m &= m - 1)
      word |= rows[std::countr_zero(m)];
    out[b] = word & block_mask(b);
  }
  return out;
}

}  // namespace mpc
