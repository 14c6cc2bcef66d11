#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "octoroot/jet.hpp"
#include "octoroot/scalar.hpp"

namespace octoroot::expr {

enum class Op { number, imaginary_unit, variable, pi, negate, add, sub, mul, div, pow, call };

enum class Func { sin, cos, exp, ln, sqrt };

std::string_view func_name(Func f);

struct Node {
  Op op = Op::number;
  std::size_t offset = 0;  // byte offset of the node's first token in the source
  std::string literal;     // Op::number only
  double literal_value = 0.0;
  std::optional<long> integer_value;  // Op::number with an integral literal
  Func func = Func::sin;              // Op::call only
  std::shared_ptr<const Node> lhs;    // operand of unary/call nodes, left of binary
  std::shared_ptr<const Node> rhs;
  bool depends_on_x = false;
};

/// Base for all parse-time failures.
class ExprError : public std::runtime_error {
 public:
  ExprError(const std::string& what, std::size_t offset)
      : std::runtime_error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class SyntaxError : public ExprError {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found);
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::vector<std::string> expected_;
};

class UnknownIdentifierError : public ExprError {
 public:
  UnknownIdentifierError(std::size_t offset, std::string name);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Evaluation failure (logarithm of zero, division by zero, ...) at a node.
class EvalDomainError : public DomainError {
 public:
  EvalDomainError(const std::string& what, std::string value, std::size_t offset)
      : DomainError(what + " at offset " + std::to_string(offset), std::move(value)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Immutable expression tree in one complex variable x.
class Expr {
 public:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }

  /// Minimal-parenthesis rendering that parses back to an equal tree.
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> root_;
};

Expr parse(std::string_view source);

/// Tree builders, mainly for tests and the builtin registry.
namespace build {
Expr number(std::string_view literal);
Expr imaginary_unit();
Expr variable();
Expr pi();
Expr negate(const Expr& a);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);
Expr pow(const Expr& a, const Expr& b);
Expr call(Func f, const Expr& a);
}  // namespace build

namespace detail {

template <Scalar T>
struct ScalarLane {
  using Value = T;
  const T& like;

  T number(const Node& n) const {
    if constexpr (std::is_same_v<T, Complex>) {
      return {n.literal_value, 0.0};
    } else {
      return ScalarTraits<T>::from_literal(like, n.literal);
    }
  }
  T imaginary_unit() const { return ScalarTraits<T>::constant(like, 0.0, 1.0); }
  T pi() const { return ScalarTraits<T>::pi(like); }
  static const T& lead(const T& v) { return v; }
  static T sin(const T& v) { return ScalarTraits<T>::sin(v); }
  static T cos(const T& v) { return ScalarTraits<T>::cos(v); }
  static T exp(const T& v) { return ScalarTraits<T>::exp(v); }
  static T ln(const T& v) { return ScalarTraits<T>::log(v); }
  static T sqrt(const T& v) { return ScalarTraits<T>::sqrt(v); }
  static T pow_int(const T& v, long n) { return ScalarTraits<T>::pow(v, n); }
  static T pow_scalar(const T& v, const T& p) { return ScalarTraits<T>::pow(v, p); }
  static T pow_general(const T& v, const T& p) { return ScalarTraits<T>::pow(v, p); }
};

template <Scalar T, std::size_t N>
struct JetLane {
  using Value = Jet<T, N>;
  const T& like;

  Value lift(const T& v) const { return Value::constant(v); }
  Value number(const Node& n) const { return lift(ScalarLane<T>{like}.number(n)); }
  Value imaginary_unit() const { return lift(ScalarLane<T>{like}.imaginary_unit()); }
  Value pi() const { return lift(ScalarTraits<T>::pi(like)); }
  static const T& lead(const Value& v) { return v.value(); }
  static Value sin(const Value& v) { return octoroot::sin(v); }
  static Value cos(const Value& v) { return octoroot::cos(v); }
  static Value exp(const Value& v) { return octoroot::exp(v); }
  static Value ln(const Value& v) { return octoroot::log(v); }
  static Value sqrt(const Value& v) { return octoroot::sqrt(v); }
  static Value pow_int(const Value& v, long n) { return octoroot::pow(v, n); }
  static Value pow_scalar(const Value& v, const T& p) { return octoroot::pow(v, p); }
  static Value pow_general(const Value& v, const Value& p) { return octoroot::pow(v, p); }
};

std::optional<long> integer_exponent(const Node& n);

template <class Lane, class V = typename Lane::Value>
V eval_node(const Node& n, const V& x, const Lane& lane);

template <class Lane, class V>
[[noreturn]] void fail(const Node& n, const char* what, const V& at) {
  using T = std::remove_cvref_t<decltype(Lane::lead(at))>;
  throw EvalDomainError(what, ScalarTraits<T>::describe(Lane::lead(at)), n.offset);
}

template <class Lane, class V>
V eval_node(const Node& n, const V& x, const Lane& lane) {
  switch (n.op) {
    case Op::number: return lane.number(n);
    case Op::imaginary_unit: return lane.imaginary_unit();
    case Op::variable: return x;
    case Op::pi: return lane.pi();
    case Op::negate: return -eval_node(*n.lhs, x, lane);
    case Op::add: return eval_node(*n.lhs, x, lane) + eval_node(*n.rhs, x, lane);
    case Op::sub: return eval_node(*n.lhs, x, lane) - eval_node(*n.rhs, x, lane);
    case Op::mul: return eval_node(*n.lhs, x, lane) * eval_node(*n.rhs, x, lane);
    case Op::div: {
      V num = eval_node(*n.lhs, x, lane);
      V den = eval_node(*n.rhs, x, lane);
      if (is_exact_zero(Lane::lead(den))) fail<Lane>(n, "division by zero", den);
      return num / den;
    }
    case Op::pow: {
      V base = eval_node(*n.lhs, x, lane);
      if (auto k = integer_exponent(*n.rhs)) {
        if (*k < 0 && is_exact_zero(Lane::lead(base))) {
          fail<Lane>(n, "negative power of zero", base);
        }
        return Lane::pow_int(base, *k);
      }
      if (is_exact_zero(Lane::lead(base))) fail<Lane>(n, "non-integer power at zero", base);
      if (!n.rhs->depends_on_x) {
        using T = std::remove_cvref_t<decltype(Lane::lead(base))>;
        const T& like = Lane::lead(base);
        T exponent = eval_node(*n.rhs, like, ScalarLane<T>{like});
        return Lane::pow_scalar(base, exponent);
      }
      return Lane::pow_general(base, eval_node(*n.rhs, x, lane));
    }
    case Op::call: {
      V arg = eval_node(*n.lhs, x, lane);
      switch (n.func) {
        case Func::sin: return Lane::sin(arg);
        case Func::cos: return Lane::cos(arg);
        case Func::exp: return Lane::exp(arg);
        case Func::ln:
          if (is_exact_zero(Lane::lead(arg))) fail<Lane>(n, "logarithm of zero", arg);
          return Lane::ln(arg);
        case Func::sqrt:
          if constexpr (!std::is_same_v<V, std::remove_cvref_t<decltype(Lane::lead(arg))>>) {
            if (is_exact_zero(Lane::lead(arg))) fail<Lane>(n, "square root branch point", arg);
          }
          return Lane::sqrt(arg);
      }
    }
  }
  throw std::logic_error("unreachable expression node");
}

}  // namespace detail

/// Value of the expression at x, computed at x's precision.
template <Scalar T>
T eval_value(const Expr& e, const T& x) {
  return detail::eval_node(e.root(), x, detail::ScalarLane<T>{x});
}

/// Truncated Taylor expansion about x: coefficient k is f^(k)(x)/k!.
template <std::size_t N, Scalar T>
Jet<T, N> eval_jet(const Expr& e, const T& x) {
  const detail::JetLane<T, N> lane{x};
  return detail::eval_node(e.root(), Jet<T, N>::variable(x), lane);
}

/// [f(x), f'(x), ..., f^(order)(x)] with order in [0, 4].
template <Scalar T>
std::vector<T> eval_derivatives(const Expr& e, const T& x, int order) {
  if (order < 0 || order > 4) throw std::invalid_argument("derivative order must be in [0, 4]");
  const auto jet = eval_jet<5>(e, x);
  std::vector<T> out;
  double factorial = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 1) factorial *= k;
    out.push_back(jet[static_cast<std::size_t>(k)] * factorial);
  }
  return out;
}

}  // namespace octoroot::expr
