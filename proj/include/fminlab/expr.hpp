#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

namespace fminlab {

// Immutable one-variable expression tree.
//
// Nodes are shared between copies; an Expr is cheap to copy and safe to read
// from any number of threads. The exponent of `^` is always a constant
// subtree, which keeps the grammar closed under differentiation.
class Expr {
 public:
  enum class Kind { Constant, Variable, Negate, Binary, Function };
  enum class Op { Add, Sub, Mul, Div, Pow };
  enum class Fn { Exp, Log, Sin, Cos, Tan, Sinh, Cosh, Tanh, Sqrt };

  // Constant 0.
  Expr();

  static Expr constant(double value);
  static Expr variable(std::string name);
  static Expr negate(Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);
  static Expr apply(Fn fn, Expr argument);

  Kind kind() const noexcept;
  double value() const noexcept;             // Constant only
  const std::string& name() const noexcept;  // Variable only
  Op op() const noexcept;                    // Binary only
  Fn fn() const noexcept;                    // Function only
  const Expr& child(std::size_t i) const;    // 0 for unary nodes, 0/1 for binary

  bool is_constant() const noexcept { return kind() == Kind::Constant; }
  bool is_constant(double v) const noexcept { return is_constant() && value() == v; }
  // True when no Variable node occurs in the tree.
  bool is_closed() const noexcept;
  // Name of the variable occurring in the tree, or "" when closed.
  std::string variable_name() const;

  double eval(double x) const;

  friend bool structurally_equal(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

Expr operator-(Expr e);
Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr pow(Expr base, double exponent);

// Parses infix text. Precedence: ^ (right assoc) > unary minus > * / > + -.
// `variable` is the only identifier accepted besides the function names and
// the constant `pi`.
Expr parse(std::string_view text, std::string_view variable);

// Infix text that parses back to a structurally equal tree.
std::string render(const Expr& e);

Expr simplify(const Expr& e);
Expr differentiate(const Expr& e);

// Replaces every Variable node by `replacement`.
Expr substitute(const Expr& e, const Expr& replacement);

std::string_view function_name(Expr::Fn fn);

}  // namespace fminlab
