#include "mpc/table_io.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <vector>

#include "mpc/errors.hpp"

namespace mpc {

namespace {

constexpr std::array<char, 4> k_magic = {'M', 'P', 'C', '2'};
constexpr uint16_t k_version = 1;

enum opcode : uint8_t {
  op_const0 = 0x00,
  op_const1 = 0x01,
  op_var = 0x10,  // op_var + variable index
  op_not = 0x20,
  op_maj = 0x30,
};

uint32_t crc32(const uint8_t* data, std::size_t size) {
  static const auto table = [] {
    std::array<uint32_t, 256> t{};
    for (uint32_t i = 0; i < 256; ++i) {
      uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  uint32_t crc = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < size; ++i)
    crc = table[(crc ^ data[i]) & 0xFF] ^ (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(uint8_t(v));
  out.push_back(uint8_t(v >> 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(uint8_t(v >> (8 * i)));
}

void encode_expr(const expr& e, std::vector<uint8_t>& out) {
  switch (e.node->kind) {
    case node_kind::constant:
      out.push_back(e.node->value ? op_const1 : op_const0);
      break;
    case node_kind::variable:
      out.push_back(uint8_t(op_var + e.node->value));
      break;
    case node_kind::gate:
      for (const expr& ch : e.node->child) encode_expr(ch, out);
      out.push_back(op_maj);
      break;
  }
  if (e.neg) out.push_back(op_not);
}

class reader {
 public:
  explicit reader(const std::vector<uint8_t>& data) : data_(data) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }

  const uint8_t* take(std::size_t count) {
    if (remaining() < count) throw format_error("table file is truncated");
    const uint8_t* p = data_.data() + pos_;
    pos_ += count;
    return p;
  }

  uint8_t u8() { return *take(1); }

  uint16_t u16() {
    const uint8_t* p = take(2);
    return uint16_t(p[0] | (p[1] << 8));
  }

  uint32_t u32() {
    const uint8_t* p = take(4);
    return uint32_t(p[0]) | uint32_t(p[1]) << 8 | uint32_t(p[2]) << 16 |
           uint32_t(p[3]) << 24;
  }

 private:
  const std::vector<uint8_t>& data_;
  std::size_t pos_ = 0;
};

expr decode_expr(expr_arena& arena, const uint8_t* code, std::size_t length,
                 unsigned num_vars) {
  std::vector<expr> stack;
  for (std::size_t i = 0; i < length; ++i) {
    const uint8_t op = code[i];
    if (op == op_const0 || op == op_const1) {
      stack.push_back(expr::constant(op == op_const1));
    } else if (op >= op_var && op < op_var + truth_table::max_vars) {
      const unsigned index = op - op_var;
      if (index >= num_vars)
        throw format_error("expression uses a variable beyond the declared count");
      stack.push_back(expr::variable(index));
    } else if (op == op_not) {
      if (stack.empty()) throw format_error("complement with no operand");
      stack.back() = !stack.back();
    } else if (op == op_maj) {
      if (stack.size() < 3) throw format_error("gate with missing operands");
      const expr c = stack.back();
      stack.pop_back();
      const expr b = stack.back();
      stack.pop_back();
      const expr a = stack.back();
      stack.pop_back();
      stack.push_back(arena.make_gate(a, b, c));
    } else {
      throw format_error("unknown expression opcode");
    }
  }
  if (stack.size() != 1) throw format_error("expression does not reduce to one value");
  return stack.front();
}

void append_entry(std::vector<uint8_t>& out, const table_entry& entry,
                  std::size_t tt_bytes) {
  const uint32_t bits = entry.tt.bits();
  for (std::size_t b = 0; b < tt_bytes; ++b) out.push_back(uint8_t(bits >> (8 * b)));

  std::vector<uint8_t> code;
  encode_expr(entry.e, code);
  if (code.size() > 0xFF) throw internal_error("expression encoding exceeds 255 bytes");
  out.push_back(uint8_t(code.size()));
  out.insert(out.end(), code.begin(), code.end());

  put_u16(out, entry.c.depth);
  put_u16(out, entry.c.gates);
  put_u16(out, entry.c.inverters);
  put_u16(out, entry.c.gate_inputs);
}

}  // namespace

void save_tables(const table_set& tables, const std::string& path) {
  const unsigned n = tables.num_vars();
  const std::size_t tt_bytes = ((std::size_t(1) << n) + 7) / 8;

  std::vector<uint8_t> out;
  out.insert(out.end(), k_magic.begin(), k_magic.end());
  put_u16(out, k_version);
  out.push_back(uint8_t(n));
  put_u32(out, uint32_t(tables.num_primitives()));
  put_u32(out, uint32_t(tables.num_m2()));

  for (uint32_t pos : tables.primitive_rank())
    append_entry(out, tables.entries()[pos], tt_bytes);
  for (uint32_t pos : tables.m2_rank())
    append_entry(out, tables.entries()[pos], tt_bytes);

  put_u32(out, crc32(out.data(), out.size()));

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw io_error("cannot open " + path + " for writing");
  file.write(reinterpret_cast<const char*>(out.data()),
             std::streamsize(out.size()));
  if (!file) throw io_error("write failed for " + path);
}

table_set load_tables(const std::string& path) {
  std::ifstream file(path, std::ios::binary | std::ios::ate);
  if (!file) throw io_error("cannot open " + path);
  const auto size = file.tellg();
  file.seekg(0);
  std::vector<uint8_t> data(static_cast<std::size_t>(size));
  file.read(reinterpret_cast<char*>(data.data()), size);
  if (!file) throw io_error("read failed for " + path);

  if (data.size() < k_magic.size() + 2 + 1 + 4 + 4 + 4)
    throw format_error("table file is truncated");
  const uint32_t stored_crc = uint32_t(data[data.size() - 4]) |
                              uint32_t(data[data.size() - 3]) << 8 |
                              uint32_t(data[data.size() - 2]) << 16 |
                              uint32_t(data[data.size() - 1]) << 24;
  if (crc32(data.data(), data.size() - 4) != stored_crc)
    throw format_error("table file checksum mismatch");

  reader r(data);
  const uint8_t* magic = r.take(k_magic.size());
  if (!std::equal(k_magic.begin(), k_magic.end(), magic))
    throw format_error("not a table file");
  if (r.u16() != k_version) throw format_error("unsupported table file version");
  const unsigned n = r.u8();
  if (n < 1 || n > truth_table::max_vars)
    throw format_error("table file declares an unsupported variable count");
  const uint32_t prim_count = r.u32();
  const uint32_t m2_count = r.u32();
  const std::size_t tt_bytes = ((std::size_t(1) << n) + 7) / 8;

  table_set ts;
  ts.num_vars_ = n;
  auto read_entries = [&](uint32_t count) {
    std::vector<table_entry> out;
    out.reserve(count);
    for (uint32_t i = 0; i < count; ++i) {
      const uint8_t* tt_data = r.take(tt_bytes);
      uint32_t bits = 0;
      for (std::size_t b = 0; b < tt_bytes; ++b) bits |= uint32_t(tt_data[b]) << (8 * b);

      const uint8_t code_len = r.u8();
      const uint8_t* code = r.take(code_len);
      const expr e = decode_expr(ts.arena_, code, code_len, n);

      cost c;
      c.depth = r.u16();
      c.gates = r.u16();
      c.inverters = r.u16();
      c.gate_inputs = r.u16();

      table_entry entry;
      entry.tt = truth_table(n, bits);
      entry.e = e;
      entry.c = c;
      const auto gates = collect_gates(e);
      if (gates.size() > entry.gates.size())
        throw format_error("entry expression has too many gates");
      entry.num_gates = uint8_t(gates.size());
      std::copy(gates.begin(), gates.end(), entry.gates.begin());

      if (truth_table_of(e, n) != entry.tt)
        throw format_error("entry expression does not reproduce its truth table");
      if (cost_of(e) != c)
        throw format_error("entry expression does not reproduce its cost");
      out.push_back(entry);
    }
    return out;
  };

  auto prims = read_entries(prim_count);
  auto m2 = read_entries(m2_count);
  if (r.remaining() != 4) throw format_error("table file has trailing data");

  for (const table_entry& e : prims)
    if (e.c.depth > 1)
      throw format_error("primitive section contains a multi-level entry");
  for (const table_entry& e : m2)
    if (e.c.depth != 2)
      throw format_error("depth-2 section contains a wrong-depth entry");

  ts.finalize(std::move(prims), std::move(m2));
  return ts;
}

}  // namespace mpc
