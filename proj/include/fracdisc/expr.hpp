#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracdisc/special_functions.hpp"

namespace fracdisc::expr {

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"),
        position(pos) {}
};

struct EvalError : std::runtime_error {
  std::string subexpression;
  EvalError(const std::string& what, std::string sub)
      : std::runtime_error(what + " in `" + sub + "`"), subexpression(std::move(sub)) {}
};

/// Values bound at evaluation time.
struct Env {
  cplx z{0.0, 0.0};
  cplx t{0.0, 0.0};
  double q = 0.5;
  cplx b{0.0, 0.0};
};

enum class Kind {
  literal,
  var_z,
  var_t,
  param_q,
  param_b,
  negate,
  add,
  sub,
  mul,
  div,
  pow,
  exp_fn,
  gamma_fn
};

struct Node {
  Kind kind = Kind::literal;
  cplx value{0.0, 0.0};  // literal payload
  std::vector<std::shared_ptr<const Node>> kids;
  std::size_t pos = 0;  // source offset, for diagnostics
};

/// Immutable expression tree over z, t and the parameters q, b.
/// Grammar: + - * / ^ (right-assoc, principal branch), unary minus
/// (binds tighter than a power's base), exp(...), gamma(...) with a
/// z/t-free argument, decimal literals with optional exponent, and the
/// imaginary unit `i`.
class Ast {
 public:
  Ast() = default;
  bool empty() const { return !root_; }
  const Node& root() const;

  static Ast from_node(std::shared_ptr<const Node> n) { return Ast(std::move(n)); }
  std::shared_ptr<const Node> node() const { return root_; }

 private:
  explicit Ast(std::shared_ptr<const Node> r) : root_(std::move(r)) {}
  std::shared_ptr<const Node> root_;
};

Ast parse(std::string_view text);
cplx eval(const Ast& ast, const Env& env);
std::string print(const Ast& ast);

/// True when the tree mentions the given symbol ('z', 't', 'q' or 'b').
bool references(const Ast& ast, char symbol);

/// Builds the tree for (z^q) * (f) without a round trip through text.
Ast z_pow_q_times(const Ast& f);

}  // namespace fracdisc::expr
