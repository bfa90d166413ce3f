#include "mpc/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <stdexcept>
#include <thread>

namespace mpc {

enum_summary summarize(unsigned num_vars, std::span<const enum_record> records) {
  enum_summary s;
  s.by_popcount.resize((1u << num_vars) + 1);
  for (const enum_record& r : records) {
    ++s.total;
    if (r.verified) ++s.num_verified;
    const std::size_t depth = std::min<std::size_t>(r.c.depth, enum_summary::max_depth - 1);
    ++s.by_depth[depth];
    ++s.by_method[std::size_t(r.method)];
    if (r.method == synth_method::loop2 && r.primitive_children >= 0 &&
        r.primitive_children < 4)
      ++s.loop2_by_primitive_children[std::size_t(r.primitive_children)];
    ++s.by_popcount[std::size_t(std::popcount(r.tt_bits))][depth];
  }
  return s;
}

std::vector<enum_record> enumerate_functions(const table_set& tables,
                                             const table_set* lower,
                                             std::span<const uint32_t> tt_bits,
                                             unsigned num_threads,
                                             const synth_options& opts) {
  if (num_threads == 0)
    num_threads = std::max(1u, std::thread::hardware_concurrency());
  num_threads = std::min<unsigned>(num_threads,
                                   std::max<std::size_t>(tt_bits.size(), 1));

  std::vector<enum_record> records(tt_bits.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(num_threads);

  auto worker = [&](unsigned worker_id) {
    try {
      constexpr std::size_t chunk = 16;
      for (;;) {
        const std::size_t begin = next.fetch_add(chunk);
        if (begin >= tt_bits.size()) return;
        const std::size_t end = std::min(begin + chunk, tt_bits.size());
        for (std::size_t i = begin; i < end; ++i) {
          const truth_table f(tables.num_vars(), tt_bits[i]);
          synthesizer synth(tables, lower);
          const synth_result r = synth.run(f, opts);
          records[i] = enum_record{
              f.bits(), r.c, r.method,
              int8_t(primitive_child_count(r.e)),
              truth_table_of(r.e, f.num_vars()) == f};
        }
      }
    } catch (...) {
      failures[worker_id] = std::current_exception();
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(num_threads);
  for (unsigned t = 0; t < num_threads; ++t) threads.emplace_back(worker, t);
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& p : failures)
    if (p) std::rethrow_exception(p);
  return records;
}

std::vector<enum_record> enumerate_all(const table_set& tables, unsigned num_threads) {
  if (tables.num_vars() > 4)
    throw std::invalid_argument("exhaustive enumeration is limited to 4 variables");
  const std::size_t count = std::size_t(1) << (1u << tables.num_vars());
  std::vector<uint32_t> bits(count);
  for (std::size_t i = 0; i < count; ++i) bits[i] = uint32_t(i);
  return enumerate_functions(tables, nullptr, bits, num_threads);
}

}  // namespace mpc
