#include "octoroot/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <utility>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace octoroot::expr {

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 5> kFunctions{{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"exp", Func::exp},
    {"ln", Func::ln},
    {"sqrt", Func::sqrt},
}};

std::shared_ptr<const Node> make_leaf(Op op, std::size_t offset) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->offset = offset;
  n->depends_on_x = (op == Op::variable);
  return n;
}

std::shared_ptr<const Node> make_number(std::string literal, std::size_t offset) {
  auto n = std::make_shared<Node>();
  n->op = Op::number;
  n->offset = offset;
  n->literal_value = std::strtod(literal.c_str(), nullptr);
  if (literal.find_first_not_of("0123456789") == std::string::npos) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), v);
    if (ec == std::errc() && ptr == literal.data() + literal.size()) n->integer_value = v;
  }
  n->literal = std::move(literal);
  return n;
}

std::shared_ptr<const Node> make_unary(Op op, std::shared_ptr<const Node> a, std::size_t offset,
                                       Func f = Func::sin) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->offset = offset;
  n->func = f;
  n->depends_on_x = a->depends_on_x;
  n->lhs = std::move(a);
  return n;
}

std::shared_ptr<const Node> make_binary(Op op, std::shared_ptr<const Node> a,
                                        std::shared_ptr<const Node> b, std::size_t offset) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->offset = offset;
  n->depends_on_x = a->depends_on_x || b->depends_on_x;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t offset = 0;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::end) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    Token t;
    t.offset = pos_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    const auto uc = static_cast<unsigned char>(c);
    if (std::isdigit(uc) || (c == '.' && pos_ + 1 < src_.size() &&
                             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      return lex_number();
    }
    if (std::isalpha(uc) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_')) {
        ++pos_;
      }
      t.kind = Tok::ident;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    ++pos_;
    t.text = std::string(1, c);
    switch (c) {
      case '+': t.kind = Tok::plus; return t;
      case '-': t.kind = Tok::minus; return t;
      case '*': t.kind = Tok::star; return t;
      case '/': t.kind = Tok::slash; return t;
      case '^': t.kind = Tok::caret; return t;
      case '(': t.kind = Tok::lparen; return t;
      case ')': t.kind = Tok::rparen; return t;
      default:
        throw SyntaxError(t.offset, {"number", "identifier", "'('", "'-'"},
                          uc < 0x80 ? "'" + t.text + "'" : "non-ASCII byte");
    }
  }

 private:
  Token lex_number() {
    Token t;
    t.kind = Tok::number;
    t.offset = pos_;
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        digits();
      }
    }
    t.text = std::string(src_.substr(start, pos_ - start));
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// expr  := term (('+'|'-') term)*
// term  := unary (('*'|'/') unary)*
// unary := '-' unary | power
// power := atom ('^' unary)?
// atom  := number | 'i' | 'pi' | 'x' | func '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  std::shared_ptr<const Node> parse_all() {
    auto e = parse_expr();
    if (cur_.kind != Tok::end) {
      throw SyntaxError(cur_.offset, {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"},
                        describe(cur_));
    }
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  std::shared_ptr<const Node> parse_expr() {
    auto lhs = parse_term();
    while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      const Op op = cur_.kind == Tok::plus ? Op::add : Op::sub;
      const std::size_t at = lhs->offset;
      advance();
      lhs = make_binary(op, lhs, parse_term(), at);
    }
    return lhs;
  }

  std::shared_ptr<const Node> parse_term() {
    auto lhs = parse_unary();
    while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
      const Op op = cur_.kind == Tok::star ? Op::mul : Op::div;
      const std::size_t at = lhs->offset;
      advance();
      lhs = make_binary(op, lhs, parse_unary(), at);
    }
    return lhs;
  }

  std::shared_ptr<const Node> parse_unary() {
    if (cur_.kind == Tok::minus) {
      const std::size_t at = cur_.offset;
      advance();
      return make_unary(Op::negate, parse_unary(), at);
    }
    return parse_power();
  }

  std::shared_ptr<const Node> parse_power() {
    auto base = parse_atom();
    if (cur_.kind == Tok::caret) {
      advance();
      return make_binary(Op::pow, base, parse_unary(), base->offset);
    }
    return base;
  }

  std::shared_ptr<const Node> parse_atom() {
    const Token t = cur_;
    switch (t.kind) {
      case Tok::number:
        advance();
        return make_number(t.text, t.offset);
      case Tok::lparen: {
        advance();
        auto inner = parse_expr();
        expect(Tok::rparen, "')'");
        return inner;
      }
      case Tok::ident: {
        advance();
        if (t.text == "x") return make_leaf(Op::variable, t.offset);
        if (t.text == "i") return make_leaf(Op::imaginary_unit, t.offset);
        if (t.text == "pi") return make_leaf(Op::pi, t.offset);
        for (const auto& [name, f] : kFunctions) {
          if (t.text == name) {
            expect(Tok::lparen, "'('");
            auto arg = parse_expr();
            expect(Tok::rparen, "')'");
            return make_unary(Op::call, std::move(arg), t.offset, f);
          }
        }
        throw UnknownIdentifierError(t.offset, t.text);
      }
      default:
        throw SyntaxError(t.offset, {"number", "'x'", "'i'", "'pi'", "function", "'('", "'-'"},
                          describe(t));
    }
  }

  void expect(Tok kind, const char* label) {
    if (cur_.kind != kind) throw SyntaxError(cur_.offset, {label}, describe(cur_));
    advance();
  }

  Lexer lexer_;
  Token cur_;
};

// Binding strength used by the printer; mirrors the grammar levels.
int precedence(Op op) {
  switch (op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::negate: return 3;
    case Op::pow: return 4;
    default: return 5;
  }
}

void print(const Node& n, std::string& out);

void print_wrapped(const Node& n, bool wrap, std::string& out) {
  if (wrap) out += '(';
  print(n, out);
  if (wrap) out += ')';
}

void print(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::number: out += n.literal; return;
    case Op::imaginary_unit: out += 'i'; return;
    case Op::variable: out += 'x'; return;
    case Op::pi: out += "pi"; return;
    case Op::negate:
      out += '-';
      print_wrapped(*n.lhs, precedence(n.lhs->op) < precedence(Op::negate), out);
      return;
    case Op::call:
      out += func_name(n.func);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
    case Op::pow:
      print_wrapped(*n.lhs, precedence(n.lhs->op) <= precedence(Op::pow), out);
      out += '^';
      print_wrapped(*n.rhs, precedence(n.rhs->op) < precedence(Op::negate), out);
      return;
    default: {
      const int p = precedence(n.op);
      print_wrapped(*n.lhs, precedence(n.lhs->op) < p, out);
      switch (n.op) {
        case Op::add: out += '+'; break;
        case Op::sub: out += '-'; break;
        case Op::mul: out += '*'; break;
        default: out += '/'; break;
      }
      // Left-associative: an equal-precedence right operand needs parentheses.
      print_wrapped(*n.rhs, precedence(n.rhs->op) <= p, out);
      return;
    }
  }
}

bool equal_nodes(const Node* a, const Node* b) {
  if (a == b) return true;
  if (a == nullptr || b == nullptr) return false;
  if (a->op != b->op) return false;
  if (a->op == Op::number && a->literal != b->literal) return false;
  if (a->op == Op::call && a->func != b->func) return false;
  return equal_nodes(a->lhs.get(), b->lhs.get()) && equal_nodes(a->rhs.get(), b->rhs.get());
}

}  // namespace

std::string_view func_name(Func f) {
  for (const auto& [name, fn] : kFunctions) {
    if (fn == f) return name;
  }
  return "?";
}

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found)
    : ExprError(fmt::format("syntax error at offset {}: expected {}, found {}", offset,
                            fmt::join(expected, " or "), found),
                offset),
      expected_(std::move(expected)) {}

UnknownIdentifierError::UnknownIdentifierError(std::size_t offset, std::string name)
    : ExprError(fmt::format("unknown identifier '{}' at offset {}", name, offset), offset),
      name_(std::move(name)) {}

std::string Expr::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  return equal_nodes(a.root_.get(), b.root_.get());
}

Expr parse(std::string_view source) {
  Parser p(source);
  return Expr(p.parse_all());
}

namespace detail {

std::optional<long> integer_exponent(const Node& n) {
  if (n.op == Op::number) return n.integer_value;
  if (n.op == Op::negate && n.lhs->op == Op::number && n.lhs->integer_value) {
    return -*n.lhs->integer_value;
  }
  return std::nullopt;
}

}  // namespace detail

namespace build {

namespace {
std::shared_ptr<const Node> root_of(const Expr& e) {
  // Expr has value semantics over an immutable tree; share the subtree.
  return std::shared_ptr<const Node>(std::make_shared<Node>(e.root()));
}
}  // namespace

Expr number(std::string_view literal) { return Expr(make_number(std::string(literal), 0)); }
Expr imaginary_unit() { return Expr(make_leaf(Op::imaginary_unit, 0)); }
Expr variable() { return Expr(make_leaf(Op::variable, 0)); }
Expr pi() { return Expr(make_leaf(Op::pi, 0)); }
Expr negate(const Expr& a) { return Expr(make_unary(Op::negate, root_of(a), 0)); }
Expr add(const Expr& a, const Expr& b) { return Expr(make_binary(Op::add, root_of(a), root_of(b), 0)); }
Expr sub(const Expr& a, const Expr& b) { return Expr(make_binary(Op::sub, root_of(a), root_of(b), 0)); }
Expr mul(const Expr& a, const Expr& b) { return Expr(make_binary(Op::mul, root_of(a), root_of(b), 0)); }
Expr div(const Expr& a, const Expr& b) { return Expr(make_binary(Op::div, root_of(a), root_of(b), 0)); }
Expr pow(const Expr& a, const Expr& b) { return Expr(make_binary(Op::pow, root_of(a), root_of(b), 0)); }
Expr call(Func f, const Expr& a) { return Expr(make_unary(Op::call, root_of(a), 0, f)); }

}  // namespace build

}  // namespace octoroot::expr
