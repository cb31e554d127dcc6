#include "fracdisc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>

namespace fracdisc::expr {

namespace {

using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Kind k, std::size_t pos, std::vector<NodePtr> kids = {}, cplx value = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->value = value;
  n->kids = std::move(kids);
  n->pos = pos;
  return n;
}

bool mentions(const Node& n, Kind k) {
  if (n.kind == k) return true;
  for (const auto& c : n.kids)
    if (mentions(*c, k)) return true;
  return false;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string print_node(const Node& n) {
  switch (n.kind) {
    case Kind::literal: {
      const double re = n.value.real(), im = n.value.imag();
      if (im == 0.0) {
        if (re < 0.0) return "(-" + fmt_double(-re) + ")";
        return fmt_double(re);
      }
      if (re == 0.0 && im == 1.0) return "i";
      return "(" + fmt_double(re) + " + " + fmt_double(im) + "*i)";
    }
    case Kind::var_z: return "z";
    case Kind::var_t: return "t";
    case Kind::param_q: return "q";
    case Kind::param_b: return "b";
    case Kind::negate: return "(-" + print_node(*n.kids[0]) + ")";
    case Kind::add: return "(" + print_node(*n.kids[0]) + " + " + print_node(*n.kids[1]) + ")";
    case Kind::sub: return "(" + print_node(*n.kids[0]) + " - " + print_node(*n.kids[1]) + ")";
    case Kind::mul: return "(" + print_node(*n.kids[0]) + "*" + print_node(*n.kids[1]) + ")";
    case Kind::div: return "(" + print_node(*n.kids[0]) + "/" + print_node(*n.kids[1]) + ")";
    case Kind::pow: return "(" + print_node(*n.kids[0]) + "^" + print_node(*n.kids[1]) + ")";
    case Kind::exp_fn: return "exp(" + print_node(*n.kids[0]) + ")";
    case Kind::gamma_fn: return "gamma(" + print_node(*n.kids[0]) + ")";
  }
  return "?";
}

[[noreturn]] void eval_fail(const std::string& what, const Node& n) {
  throw EvalError(what, print_node(n));
}

cplx eval_node(const Node& n, const Env& env) {
  switch (n.kind) {
    case Kind::literal: return n.value;
    case Kind::var_z: return env.z;
    case Kind::var_t: return env.t;
    case Kind::param_q: return {env.q, 0.0};
    case Kind::param_b: return env.b;
    case Kind::negate: return -eval_node(*n.kids[0], env);
    case Kind::add: return eval_node(*n.kids[0], env) + eval_node(*n.kids[1], env);
    case Kind::sub: return eval_node(*n.kids[0], env) - eval_node(*n.kids[1], env);
    case Kind::mul: return eval_node(*n.kids[0], env) * eval_node(*n.kids[1], env);
    case Kind::div: {
      cplx num = eval_node(*n.kids[0], env);
      cplx den = eval_node(*n.kids[1], env);
      if (den == cplx(0.0, 0.0)) eval_fail("division by zero", n);
      return num / den;
    }
    case Kind::pow: {
      cplx base = eval_node(*n.kids[0], env);
      cplx expo = eval_node(*n.kids[1], env);
      if (std::abs(expo.imag()) <= 1e-14 * std::max(1.0, std::abs(expo))) {
        try {
          return ppow(base, expo.real());
        } catch (const std::domain_error&) {
          eval_fail("zero base raised to a non-positive power", n);
        }
      }
      if (base == cplx(0.0, 0.0)) eval_fail("zero base with complex exponent", n);
      return std::exp(expo * plog(base));
    }
    case Kind::exp_fn: return std::exp(eval_node(*n.kids[0], env));
    case Kind::gamma_fn: {
      cplx a = eval_node(*n.kids[0], env);
      if (std::abs(a.imag()) > 1e-12 * std::max(1.0, std::abs(a.real())) || !(a.real() > 0.0))
        eval_fail("gamma of a non-positive or non-real argument", n);
      return {fracdisc::gamma(a.real()), 0.0};
    }
  }
  eval_fail("malformed node", n);
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr run() {
    skip_ws();
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ < src_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> open_parens_;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    if (pos_ >= src_.size() && !open_parens_.empty())
      throw ParseError("unclosed parenthesis", open_parens_.back());
    throw ParseError(what, std::min(pos_, src_.size()));
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      std::size_t at = pos_;
      if (eat('+')) {
        lhs = make(Kind::add, at, {lhs, parse_term()});
      } else if (eat('-')) {
        lhs = make(Kind::sub, at, {lhs, parse_term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      std::size_t at = pos_;
      if (eat('*')) {
        lhs = make(Kind::mul, at, {lhs, parse_factor()});
      } else if (eat('/')) {
        lhs = make(Kind::div, at, {lhs, parse_factor()});
      } else {
        return lhs;
      }
    }
  }

  // factor := base ('^' factor)?   with right-associative '^';
  // unary minus binds tighter than the base of a power.
  NodePtr parse_factor() {
    NodePtr base = parse_base();
    std::size_t at = pos_;
    if (eat('^')) return make(Kind::pow, at, {base, parse_factor()});
    return base;
  }

  NodePtr parse_base() {
    std::size_t at = pos_;
    if (eat('-')) return make(Kind::negate, at, {parse_base()});
    return parse_atom();
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("expected expression");
    const char c = src_[pos_];
    if (c == '(') {
      open_parens_.push_back(pos_);
      ++pos_;
      NodePtr inner = parse_expr();
      if (!eat(')')) fail("expected ')'");
      open_parens_.pop_back();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && src_[start] == '.'))
      fail("malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t mark = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        pos_ = mark;  // 'e' belongs to something else; stop the number here
      } else {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double v = std::strtod(std::string(src_.substr(start, pos_ - start)).c_str(), nullptr);
    return make(Kind::literal, start, {}, cplx(v, 0.0));
  }

  NodePtr parse_name() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    std::string_view name = src_.substr(start, pos_ - start);
    if (name == "z") return make(Kind::var_z, start);
    if (name == "t") return make(Kind::var_t, start);
    if (name == "q") return make(Kind::param_q, start);
    if (name == "b") return make(Kind::param_b, start);
    if (name == "i") return make(Kind::literal, start, {}, cplx(0.0, 1.0));
    if (name == "exp" || name == "gamma") {
      if (!eat('(')) fail("expected '(' after function name");
      open_parens_.push_back(pos_ - 1);
      NodePtr arg = parse_expr();
      if (!eat(')')) fail("expected ')'");
      open_parens_.pop_back();
      if (name == "exp") return make(Kind::exp_fn, start, {arg});
      return finish_gamma(arg, start);
    }
    fail("unknown identifier '" + std::string(name) + "'");
  }

  // gamma arguments must not involve z or t; literal-only arguments fold
  // to a constant immediately.
  NodePtr finish_gamma(const NodePtr& arg, std::size_t start) {
    if (mentions(*arg, Kind::var_z) || mentions(*arg, Kind::var_t))
      throw ParseError("gamma applied to a non-constant argument", start);
    if (!mentions(*arg, Kind::param_q) && !mentions(*arg, Kind::param_b)) {
      cplx v = eval_node(*arg, Env{});
      if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())) || !(v.real() > 0.0))
        throw ParseError("gamma of a non-positive or non-real constant", start);
      return make(Kind::literal, start, {}, cplx(fracdisc::gamma(v.real()), 0.0));
    }
    return make(Kind::gamma_fn, start, {arg});
  }
};

}  // namespace

const Node& Ast::root() const {
  if (!root_) throw std::logic_error("empty expression");
  return *root_;
}

Ast parse(std::string_view text) { return Ast::from_node(Parser(text).run()); }

cplx eval(const Ast& ast, const Env& env) { return eval_node(ast.root(), env); }

std::string print(const Ast& ast) { return print_node(ast.root()); }

bool references(const Ast& ast, char symbol) {
  switch (symbol) {
    case 'z': return mentions(ast.root(), Kind::var_z);
    case 't': return mentions(ast.root(), Kind::var_t);
    case 'q': return mentions(ast.root(), Kind::param_q);
    case 'b': return mentions(ast.root(), Kind::param_b);
    default: throw std::invalid_argument("references: unknown symbol");
  }
}

Ast z_pow_q_times(const Ast& f) {
  auto zq = make(Kind::pow, 0, {make(Kind::var_z, 0), make(Kind::param_q, 0)});
  return Ast::from_node(make(Kind::mul, 0, {zq, f.node()}));
}

}  // namespace fracdisc::expr
