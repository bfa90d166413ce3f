// Command line front end: synthesize single functions, manage table caches,
// enumerate function ranges in parallel, and check results against the
// exhaustive baseline.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mpc/enumeration.hpp"
#include "mpc/errors.hpp"
#include "mpc/expr_io.hpp"
#include "mpc/oracle.hpp"
#include "mpc/synthesis.hpp"
#include "mpc/table_io.hpp"
#include "mpc/tables.hpp"
#include "mpc/truth_table.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;

struct splitmix64 {
  uint64_t state;
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

std::string resolve_table_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MPC_TABLE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::string(xdg) + "/mpc-tables";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::string(home) + "/.cache/mpc-tables";
  return "mpc-tables";
}

std::filesystem::path table_file(const std::string& dir, unsigned n) {
  return std::filesystem::path(dir) / ("tables-n" + std::to_string(n) + ".bin");
}

mpc::table_set acquire_tables(unsigned n, const std::string& dir) {
  const std::filesystem::path path = table_file(dir, n);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) return mpc::load_tables(path.string());

  mpc::table_set tables = mpc::table_set::build(n);
  std::filesystem::create_directories(dir, ec);
  try {
    mpc::save_tables(tables, path.string());
  } catch (const mpc::io_error& e) {
    std::cerr << "warning: could not cache tables: " << e.what() << "\n";
  }
  return tables;
}

mpc::truth_table parse_tt(unsigned n, const std::string& text,
                          const std::string& format) {
  const std::size_t rows = std::size_t{1} << n;
  if (format == "bin" || (format == "auto" && text.size() == rows)) {
    const mpc::truth_table t = mpc::truth_table::from_binary(text);
    if (t.num_vars() != n)
      throw std::invalid_argument("truth table has " + std::to_string(text.size()) +
                                  " rows but --n is " + std::to_string(n));
    return t;
  }
  if (format == "hex" || (format == "auto" && n >= 2 && text.size() == rows / 4))
    return mpc::truth_table::from_hex(text, n);
  throw std::invalid_argument(
      "truth table text matches neither the binary nor the hex length for n=" +
      std::to_string(n));
}

std::string tt_text(const mpc::truth_table& tt) {
  return tt.num_vars() >= 2 ? tt.to_hex() : tt.to_binary();
}

void write_report(std::ostream& os, unsigned n,
                  std::span<const mpc::enum_record> records) {
  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return mpc::truth_table(n, records[x].tt_bits).value() <
           mpc::truth_table(n, records[y].tt_bits).value();
  });
  for (std::size_t idx : order) {
    const mpc::enum_record& r = records[idx];
    nlohmann::ordered_json line;
    line["tt"] = tt_text(mpc::truth_table(n, r.tt_bits));
    line["depth"] = r.c.depth;
    line["gates"] = r.c.gates;
    line["inverters"] = r.c.inverters;
    line["gate_inputs"] = r.c.gate_inputs;
    line["method"] = mpc::to_string(r.method);
    line["verified"] = r.verified;
    os << line.dump() << "\n";
  }
}

void print_summary(std::ostream& os, const mpc::enum_summary& s) {
  os << "functions=" << s.total << " verified=" << s.num_verified << "\n";

  os << "depth: <=1=" << s.depth_at_most(1);
  for (std::size_t d = 2; d < mpc::enum_summary::max_depth; ++d)
    if (s.by_depth[d] != 0) os << " " << d << "=" << s.by_depth[d];
  os << "\n";

  os << "method:";
  for (int m = 0; m < 7; ++m)
    os << " " << mpc::to_string(mpc::synth_method(m)) << "="
       << s.by_method[std::size_t(m)];
  os << "\n";

  os << "loop2_children: all_m2=" << s.loop2_by_primitive_children[0]
     << " one_primitive=" << s.loop2_by_primitive_children[1]
     << " two_primitive=" << s.loop2_by_primitive_children[2]
     << " three_primitive=" << s.loop2_by_primitive_children[3] << "\n";

  for (std::size_t i = 0; i < s.by_popcount.size(); ++i) {
    const auto& row = s.by_popcount[i];
    const std::size_t total = std::accumulate(row.begin(), row.end(), std::size_t{0});
    if (total == 0) continue;
    os << "S" << i << ": total=" << total << " <=1=" << row[0] + row[1];
    for (std::size_t d = 2; d < row.size(); ++d)
      if (row[d] != 0) os << " " << d << "=" << row[d];
    os << "\n";
  }
}

int run_synth(unsigned n, const std::string& tt, const std::string& format,
              bool json_out, bool force_shannon, const std::string& dir_flag) {
  const mpc::truth_table f = parse_tt(n, tt, format);
  const std::string dir = resolve_table_dir(dir_flag);
  const mpc::table_set tables = acquire_tables(n, dir);
  std::optional<mpc::table_set> lower;
  if (n == 5) lower.emplace(acquire_tables(4, dir));

  mpc::synthesizer synth(tables, lower ? &*lower : nullptr);
  mpc::synth_options opts;
  opts.force_shannon = force_shannon;
  const mpc::synth_result result = synth.run(f, opts);
  const bool ok = truth_table_of(result.e, n) == f;

  if (json_out) {
    nlohmann::ordered_json line;
    line["tt"] = tt_text(f);
    line["expr"] = to_string(result.e);
    line["depth"] = result.c.depth;
    line["gates"] = result.c.gates;
    line["inverters"] = result.c.inverters;
    line["gate_inputs"] = result.c.gate_inputs;
    line["method"] = mpc::to_string(result.method);
    line["verified"] = ok;
    std::cout << line.dump() << "\n";
  } else {
    std::cout << to_string(result.e) << " cost=" << result.c.to_string()
              << " method=" << mpc::to_string(result.method) << "\n";
  }
  if (!ok) {
    std::cerr << "error: synthesized expression does not reproduce the input\n";
    return exit_mismatch;
  }
  return exit_ok;
}

int run_tables(unsigned n, const std::string& out, const std::string& dir_flag) {
  const mpc::table_set tables = acquire_tables(n, resolve_table_dir(dir_flag));
  if (!out.empty()) mpc::save_tables(tables, out);
  std::size_t prims = 0;
  std::size_t m2 = 0;
  for (const mpc::table_entry& e : tables.entries()) (e.c.depth <= 1 ? prims : m2)++;
  std::cout << "primitives=" << prims << " m2=" << m2 << "\n";
  return exit_ok;
}

std::vector<uint32_t> sample_bits(unsigned n, std::size_t count, uint64_t seed) {
  const uint32_t mask = mpc::truth_table::zeros(n).table_mask();
  const std::size_t space = n == 5 ? std::size_t{1} << 32 : std::size_t(mask) + 1;
  if (count > space)
    throw std::invalid_argument("--sample exceeds the number of distinct functions");
  splitmix64 rng{seed};
  std::vector<uint32_t> out;
  std::unordered_set<uint32_t> seen;
  out.reserve(count);
  while (out.size() < count) {
    const uint32_t v = uint32_t(rng.next()) & mask;
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

std::vector<uint32_t> file_bits(unsigned n, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw mpc::io_error("cannot open --tt-file " + path);
  std::vector<uint32_t> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_tt(n, line, "auto").bits());
  }
  return out;
}

int run_enumerate(unsigned n, unsigned jobs, std::size_t sample, uint64_t seed,
                  const std::string& tt_file, const std::string& report,
                  bool force_shannon, const std::string& dir_flag) {
  if (n == 5 && sample == 0 && tt_file.empty())
    throw std::invalid_argument("--n 5 needs --sample or --tt-file");

  std::vector<uint32_t> bits;
  if (!tt_file.empty()) {
    bits = file_bits(n, tt_file);
  } else if (sample > 0) {
    bits = sample_bits(n, sample, seed);
  } else {
    const std::size_t space = std::size_t{1} << (1u << n);
    bits.resize(space);
    std::iota(bits.begin(), bits.end(), uint32_t{0});
  }

  const std::string dir = resolve_table_dir(dir_flag);
  const mpc::table_set tables = acquire_tables(n, dir);
  std::optional<mpc::table_set> lower;
  if (n == 5) lower.emplace(acquire_tables(4, dir));

  mpc::synth_options opts;
  opts.force_shannon = force_shannon;
  const std::vector<mpc::enum_record> records = mpc::enumerate_functions(
      tables, lower ? &*lower : nullptr, bits, jobs, opts);

  if (!report.empty()) {
    if (report == "-") {
      write_report(std::cout, n, records);
    } else {
      std::ofstream out(report);
      if (!out) throw mpc::io_error("cannot open --report " + report);
      write_report(out, n, records);
      if (!out.good()) throw mpc::io_error("failed writing --report " + report);
    }
  }

  const mpc::enum_summary summary = mpc::summarize(n, records);
  print_summary(report == "-" ? std::cerr : std::cout, summary);

  if (summary.num_verified != summary.total) {
    std::cerr << "error: " << summary.total - summary.num_verified
              << " functions failed verification\n";
    return exit_mismatch;
  }
  return exit_ok;
}

int run_verify(unsigned n, int bound_depth, int max_gates, unsigned jobs,
               bool inject, const std::string& dir_flag) {
  const mpc::oracle baseline(
      {.max_depth = bound_depth, .max_gates = max_gates, .num_vars = n});

  const std::string dir = resolve_table_dir(dir_flag);
  const mpc::table_set tables = acquire_tables(n, dir);

  std::vector<uint32_t> bits;
  if (n <= 3) {
    bits.resize(std::size_t{1} << (1u << n));
    std::iota(bits.begin(), bits.end(), uint32_t{0});
  } else {
    for (const mpc::table_entry& e : tables.entries())
      if (e.c.depth <= bound_depth) bits.push_back(e.tt.bits());
  }

  const std::vector<mpc::enum_record> records =
      mpc::enumerate_functions(tables, nullptr, bits, jobs);

  std::vector<mpc::claimed_result> claimed;
  claimed.reserve(records.size());
  for (const mpc::enum_record& r : records)
    claimed.push_back({mpc::truth_table(n, r.tt_bits), r.c});
  if (inject && !claimed.empty()) claimed.front().c.gates++;

  const mpc::optimality_report report = baseline.verify_optimal(claimed);
  std::cout << report.mismatches.size() << " mismatches / " << report.num_checked
            << "\n";
  std::size_t shown = 0;
  for (const auto& m : report.mismatches) {
    if (++shown > 10) {
      std::cerr << "  ... " << report.mismatches.size() - 10 << " more\n";
      break;
    }
    std::cerr << "  tt=" << tt_text(m.tt) << " claimed=" << m.claimed.to_string()
              << " optimal=" << (m.optimal ? m.optimal->to_string() : "none")
              << "\n";
  }
  return report.mismatches.empty() ? exit_ok : exit_mismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majority-gate synthesis for functions of up to five variables"};
  app.require_subcommand(1);

  std::string table_dir;
  app.add_option("--table-dir", table_dir,
                 "Table cache directory (default: $MPC_TABLE_DIR, then the user cache)")
      ->envname("MPC_TABLE_DIR");

  int rc = exit_ok;

  auto* synth = app.add_subcommand("synth", "Synthesize one truth table");
  {
    static unsigned n = 0;
    static std::string tt, format{"auto"};
    static bool json_out = false, force_shannon = false;
    synth->add_option("--n", n, "Number of variables")->required()->check(CLI::Range(1, 5));
    synth->add_option("--tt", tt, "Truth table, binary or hex, first row first")->required();
    synth->add_option("--format", format, "Input format")
        ->check(CLI::IsMember({"auto", "bin", "hex"}));
    synth->add_flag("--json", json_out, "Emit a JSON record instead of plain text");
    synth->add_flag("--force-shannon", force_shannon,
                    "For --n 5: skip the depth-3 search and split on the first variable");
    synth->callback([&] {
      if (force_shannon && n != 5)
        throw CLI::ValidationError("--force-shannon requires --n 5");
      rc = run_synth(n, tt, format, json_out, force_shannon, table_dir);
    });
  }

  auto* tables_cmd = app.add_subcommand("tables", "Build or load tables and print counts");
  {
    static unsigned n = 0;
    static std::string out;
    tables_cmd->add_option("--n", n, "Number of variables")->required()->check(CLI::Range(1, 5));
    tables_cmd->add_option("--out", out, "Also write the tables to this file");
    tables_cmd->callback([&] { rc = run_tables(n, out, table_dir); });
  }

  auto* enumerate = app.add_subcommand(
      "enumerate", "Synthesize every function (or a sample) and report aggregates");
  {
    static unsigned n = 0, jobs = 0;
    static std::size_t sample = 0;
    static uint64_t seed = 42;
    static std::string tt_file, report;
    static bool force_shannon = false;
    enumerate->add_option("--n", n, "Number of variables")->required()->check(CLI::Range(3, 5));
    enumerate->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
    enumerate->add_option("--sample", sample, "Synthesize this many distinct seeded functions");
    enumerate->add_option("--seed", seed, "Sample seed");
    enumerate->add_option("--tt-file", tt_file, "Synthesize the truth tables listed in this file");
    enumerate->add_option("--report", report, "Write one JSON line per function here ('-' = stdout)");
    enumerate->add_flag("--force-shannon", force_shannon,
                        "For --n 5: skip the depth-3 search and split on the first variable");
    enumerate->callback([&] {
      if (force_shannon && n != 5)
        throw CLI::ValidationError("--force-shannon requires --n 5");
      rc = run_enumerate(n, jobs, sample, seed, tt_file, report, force_shannon, table_dir);
    });
  }

  auto* verify = app.add_subcommand(
      "verify", "Check synthesized costs against the exhaustive baseline");
  {
    static unsigned n = 0, jobs = 0;
    static int bound_depth = -1, max_gates = 4;
    static bool inject = false;
    verify->add_option("--n", n, "Number of variables")->required()->check(CLI::Range(1, 4));
    verify->add_option("--bound-depth", bound_depth,
                       "Baseline depth bound (default: 2 for --n 4, unbounded below)");
    verify->add_option("--max-gates", max_gates, "Baseline gate bound");
    verify->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
    verify->add_flag("--inject-mismatch", inject, "Corrupt one claimed cost (self test)")
        ->group("");
    verify->callback([&] {
      const int bound = bound_depth >= 0 ? bound_depth : (n == 4 ? 2 : 8);
      rc = run_verify(n, bound, max_gates, jobs, inject, table_dir);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  } catch (const mpc::internal_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_mismatch;
  } catch (const mpc::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  } catch (const mpc::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  }
  return rc;
}
