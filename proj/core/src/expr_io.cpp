#include "mpc/expr_io.hpp"

#include <cctype>

#include "mpc/errors.hpp"

namespace mpc {

namespace {

void print(const expr& e, std::string& out) {
  if (e.neg) out.push_back('!');
  switch (e.node->kind) {
    case node_kind::constant:
      out.push_back(e.node->value ? '1' : '0');
      break;
    case node_kind::variable:
      out.push_back(char('A' + e.node->value));
      break;
    case node_kind::gate:
      out += "M(";
      for (int i = 0; i < 3; ++i) {
        if (i) out.push_back(',');
        print(e.node->child[i], out);
      }
      out.push_back(')');
      break;
  }
}

class parser {
 public:
  parser(expr_arena& arena, std::string_view text) : arena_(arena), text_(text) {}

  expr run() {
    expr e = parse();
    skip_ws();
    if (pos_ != text_.size()) throw parse_error("trailing characters", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  char peek() {
    if (pos_ >= text_.size()) throw parse_error("unexpected end of input", pos_);
    return text_[pos_];
  }

  void expect(char c) {
    if (peek() != c)
      throw parse_error(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  expr parse() {
    skip_ws();
    const char c = peek();
    if (c == '!') {
      ++pos_;
      return !parse();
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return expr::constant(c == '1');
    }
    if (c >= 'A' && c <= 'E') {
      ++pos_;
      return expr::variable(unsigned(c - 'A'));
    }
    if (c == 'M') {
      ++pos_;
      skip_ws();
      expect('(');
      expr a = parse();
      skip_ws();
      expect(',');
      expr b = parse();
      skip_ws();
      expect(',');
      expr x = parse();
      skip_ws();
      expect(')');
      return arena_.make_gate(a, b, x);
    }
    throw parse_error("expected '!', '0', '1', a variable A..E, or 'M('", pos_);
  }

  expr_arena& arena_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const expr& e) {
  std::string out;
  print(e, out);
  return out;
}

expr parse_expr(expr_arena& arena, std::string_view text) {
  return parser(arena, text).run();
}

}  // namespace mpc
