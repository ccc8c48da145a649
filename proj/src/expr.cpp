#include "fminlab/expr.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "fminlab/error.hpp"

namespace fminlab {

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& what)
    : Error(what + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

EvalDomainError::EvalDomainError(const std::string& subexpression, const std::string& reason)
    : Error("domain error in '" + subexpression + "': " + reason), subexpression_(subexpression) {}

struct Expr::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  std::string name;
  Op op = Op::Add;
  Fn fn = Fn::Exp;
  std::vector<Expr> children;
  bool closed = true;
};

Expr::Expr() : Expr(constant(0.0)) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  n->closed = false;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->closed = operand.is_closed();
  n->children.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  if (op == Op::Pow && !rhs.is_closed()) {
    throw PreconditionError("exponent of '^' must be constant");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->op = op;
  n->closed = lhs.is_closed() && rhs.is_closed();
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return Expr(std::move(n));
}

Expr Expr::apply(Fn fn, Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Function;
  n->fn = fn;
  n->closed = argument.is_closed();
  n->children.push_back(std::move(argument));
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
const std::string& Expr::name() const noexcept { return node_->name; }
Expr::Op Expr::op() const noexcept { return node_->op; }
Expr::Fn Expr::fn() const noexcept { return node_->fn; }
const Expr& Expr::child(std::size_t i) const { return node_->children.at(i); }
bool Expr::is_closed() const noexcept { return node_->closed; }

std::string Expr::variable_name() const {
  switch (kind()) {
    case Kind::Constant:
      return {};
    case Kind::Variable:
      return name();
    case Kind::Negate:
    case Kind::Function:
      return child(0).variable_name();
    case Kind::Binary: {
      auto lhs = child(0).variable_name();
      return lhs.empty() ? child(1).variable_name() : lhs;
    }
  }
  return {};
}

std::string_view function_name(Expr::Fn fn) {
  switch (fn) {
    case Expr::Fn::Exp: return "exp";
    case Expr::Fn::Log: return "log";
    case Expr::Fn::Sin: return "sin";
    case Expr::Fn::Cos: return "cos";
    case Expr::Fn::Tan: return "tan";
    case Expr::Fn::Sinh: return "sinh";
    case Expr::Fn::Cosh: return "cosh";
    case Expr::Fn::Tanh: return "tanh";
    case Expr::Fn::Sqrt: return "sqrt";
  }
  return "?";
}

namespace {

std::optional<Expr::Fn> function_from_name(std::string_view name) {
  static constexpr std::array<Expr::Fn, 9> all = {
      Expr::Fn::Exp,  Expr::Fn::Log,  Expr::Fn::Sin,  Expr::Fn::Cos, Expr::Fn::Tan,
      Expr::Fn::Sinh, Expr::Fn::Cosh, Expr::Fn::Tanh, Expr::Fn::Sqrt};
  for (auto fn : all) {
    if (function_name(fn) == name) return fn;
  }
  return std::nullopt;
}

bool is_integer(double v) { return std::isfinite(v) && std::floor(v) == v; }

}  // namespace

double Expr::eval(double x) const {
  switch (kind()) {
    case Kind::Constant:
      return value();
    case Kind::Variable:
      return x;
    case Kind::Negate:
      return -child(0).eval(x);
    case Kind::Binary: {
      const double a = child(0).eval(x);
      const double b = child(1).eval(x);
      switch (op()) {
        case Op::Add: return a + b;
        case Op::Sub: return a - b;
        case Op::Mul: return a * b;
        case Op::Div:
          if (b == 0.0) throw EvalDomainError(render(*this), "division by zero");
          return a / b;
        case Op::Pow:
          if (a == 0.0 && b < 0.0) throw EvalDomainError(render(*this), "zero to a negative power");
          if (a < 0.0 && !is_integer(b)) {
            throw EvalDomainError(render(*this), "negative base with non-integer exponent");
          }
          return std::pow(a, b);
      }
      break;
    }
    case Kind::Function: {
      const double a = child(0).eval(x);
      switch (fn()) {
        case Fn::Exp: return std::exp(a);
        case Fn::Log:
          if (!(a > 0.0)) throw EvalDomainError(render(*this), "log of non-positive argument");
          return std::log(a);
        case Fn::Sin: return std::sin(a);
        case Fn::Cos: return std::cos(a);
        case Fn::Tan: return std::tan(a);
        case Fn::Sinh: return std::sinh(a);
        case Fn::Cosh: return std::cosh(a);
        case Fn::Tanh: return std::tanh(a);
        case Fn::Sqrt:
          if (a < 0.0) throw EvalDomainError(render(*this), "sqrt of negative argument");
          return std::sqrt(a);
      }
      break;
    }
  }
  return 0.0;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Constant:
      return a.value() == b.value();
    case Expr::Kind::Variable:
      return a.name() == b.name();
    case Expr::Kind::Negate:
      return structurally_equal(a.child(0), b.child(0));
    case Expr::Kind::Binary:
      return a.op() == b.op() && structurally_equal(a.child(0), b.child(0)) &&
             structurally_equal(a.child(1), b.child(1));
    case Expr::Kind::Function:
      return a.fn() == b.fn() && structurally_equal(a.child(0), b.child(0));
  }
  return false;
}

Expr operator-(Expr e) { return Expr::negate(std::move(e)); }
Expr operator+(Expr a, Expr b) { return Expr::binary(Expr::Op::Add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(Expr::Op::Sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(Expr::Op::Mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::binary(Expr::Op::Div, std::move(a), std::move(b)); }
Expr pow(Expr base, double exponent) {
  return Expr::binary(Expr::Op::Pow, std::move(base), Expr::constant(exponent));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
  enum class Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type = Type::End;
  std::size_t offset = 0;
  double number = 0.0;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto isdigit = [](char c) { return c >= '0' && c <= '9'; };
  auto isalpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  while (i < s.size()) {
    const char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    Token tok;
    tok.offset = i;
    if (isdigit(c) || (c == '.' && i + 1 < s.size() && isdigit(s[i + 1]))) {
      std::size_t j = i;
      while (j < s.size() && isdigit(s[j])) ++j;
      if (j < s.size() && s[j] == '.') {
        ++j;
        while (j < s.size() && isdigit(s[j])) ++j;
      }
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && isdigit(s[k])) {
          while (k < s.size() && isdigit(s[k])) ++k;
          j = k;
        }
      }
      double v = 0.0;
      auto res = std::from_chars(s.data() + i, s.data() + j, v);
      if (res.ec != std::errc() || res.ptr != s.data() + j) {
        throw ParseError(ParseError::Kind::Syntax, i, "malformed number");
      }
      tok.type = Token::Type::Number;
      tok.number = v;
      i = j;
    } else if (isalpha(c)) {
      std::size_t j = i;
      while (j < s.size() && (isalpha(s[j]) || isdigit(s[j]))) ++j;
      tok.type = Token::Type::Ident;
      tok.text = std::string(s.substr(i, j - i));
      i = j;
    } else {
      switch (c) {
        case '+': tok.type = Token::Type::Plus; break;
        case '-': tok.type = Token::Type::Minus; break;
        case '*': tok.type = Token::Type::Star; break;
        case '/': tok.type = Token::Type::Slash; break;
        case '^': tok.type = Token::Type::Caret; break;
        case '(': tok.type = Token::Type::LParen; break;
        case ')': tok.type = Token::Type::RParen; break;
        default:
          throw ParseError(ParseError::Kind::Syntax, i, std::string("unexpected character '") + c + "'");
      }
      ++i;
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.type = Token::Type::End;
  end.offset = s.size();
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view variable)
      : tokens_(tokenize(text)), variable_(variable) {}

  Expr parse_all() {
    if (peek().type == Token::Type::End) {
      throw ParseError(ParseError::Kind::Syntax, 0, "empty expression");
    }
    Expr e = additive();
    if (peek().type != Token::Type::End) {
      throw ParseError(ParseError::Kind::Syntax, peek().offset, "unexpected token");
    }
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() { return tokens_[pos_++]; }

  Expr additive() {
    Expr lhs = term();
    while (peek().type == Token::Type::Plus || peek().type == Token::Type::Minus) {
      const bool plus = next().type == Token::Type::Plus;
      Expr rhs = term();
      lhs = Expr::binary(plus ? Expr::Op::Add : Expr::Op::Sub, lhs, rhs);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (peek().type == Token::Type::Star || peek().type == Token::Type::Slash) {
      const bool mul = next().type == Token::Type::Star;
      Expr rhs = unary();
      lhs = Expr::binary(mul ? Expr::Op::Mul : Expr::Op::Div, lhs, rhs);
    }
    return lhs;
  }

  Expr unary() {
    if (peek().type == Token::Type::Minus) {
      next();
      // A minus sign directly in front of a literal is part of the literal,
      // unless the literal is the base of a power (-2^2 is -(2^2)).
      if (peek().type == Token::Type::Number && peek(1).type != Token::Type::Caret) {
        return Expr::constant(-next().number);
      }
      return Expr::negate(unary());
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (peek().type == Token::Type::Caret) {
      next();
      const std::size_t at = peek().offset;
      Expr exponent = unary();
      if (!exponent.is_closed()) {
        throw ParseError(ParseError::Kind::NonConstantExponent, at, "exponent must be a constant");
      }
      return Expr::binary(Expr::Op::Pow, base, exponent);
    }
    return base;
  }

  Expr primary() {
    const Token& tok = peek();
    switch (tok.type) {
      case Token::Type::Number:
        next();
        return Expr::constant(tok.number);
      case Token::Type::LParen: {
        next();
        Expr inner = additive();
        expect(Token::Type::RParen, "expected ')'");
        return inner;
      }
      case Token::Type::Ident: {
        next();
        if (peek().type == Token::Type::LParen) {
          auto fn = function_from_name(tok.text);
          if (!fn) {
            throw ParseError(ParseError::Kind::UnknownIdentifier, tok.offset,
                             "unknown function '" + tok.text + "'");
          }
          next();
          Expr arg = additive();
          expect(Token::Type::RParen, "expected ')'");
          return Expr::apply(*fn, arg);
        }
        if (tok.text == variable_) return Expr::variable(tok.text);
        if (tok.text == "pi") return Expr::constant(std::numbers::pi);
        if (function_from_name(tok.text)) {
          throw ParseError(ParseError::Kind::Syntax, peek().offset,
                           "expected '(' after function '" + tok.text + "'");
        }
        throw ParseError(ParseError::Kind::WrongVariable, tok.offset,
                         "identifier '" + tok.text + "' is not the declared variable '" +
                             std::string(variable_) + "'");
      }
      default:
        throw ParseError(ParseError::Kind::Syntax, tok.offset, "expected an operand");
    }
  }

  void expect(Token::Type type, const char* message) {
    if (peek().type != type) throw ParseError(ParseError::Kind::Syntax, peek().offset, message);
    next();
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string variable_;
};

}  // namespace

Expr parse(std::string_view text, std::string_view variable) {
  return Parser(text, variable).parse_all();
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool is_additive(const Expr& e) {
  return e.kind() == Expr::Kind::Binary && (e.op() == Expr::Op::Add || e.op() == Expr::Op::Sub);
}

bool is_multiplicative(const Expr& e) {
  return e.kind() == Expr::Kind::Binary && (e.op() == Expr::Op::Mul || e.op() == Expr::Op::Div);
}

std::string wrap(const std::string& s) { return "(" + s + ")"; }

void render_into(const Expr& e, std::string& out);

std::string rendered(const Expr& e) {
  std::string s;
  render_into(e, s);
  return s;
}

// Operand of unary minus or exponent of '^': a unary-level expression.
std::string render_unary_operand(const Expr& e) {
  if (is_additive(e) || is_multiplicative(e) || e.is_constant()) return wrap(rendered(e));
  return rendered(e);
}

void render_into(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      out += format_number(e.value());
      return;
    case Expr::Kind::Variable:
      out += e.name();
      return;
    case Expr::Kind::Negate:
      out += "-";
      out += render_unary_operand(e.child(0));
      return;
    case Expr::Kind::Function:
      out += function_name(e.fn());
      out += wrap(rendered(e.child(0)));
      return;
    case Expr::Kind::Binary:
      break;
  }
  const Expr& lhs = e.child(0);
  const Expr& rhs = e.child(1);
  switch (e.op()) {
    case Expr::Op::Add:
    case Expr::Op::Sub:
      out += rendered(lhs);
      out += e.op() == Expr::Op::Add ? "+" : "-";
      out += is_additive(rhs) ? wrap(rendered(rhs)) : rendered(rhs);
      return;
    case Expr::Op::Mul:
    case Expr::Op::Div:
      out += is_additive(lhs) ? wrap(rendered(lhs)) : rendered(lhs);
      out += e.op() == Expr::Op::Mul ? "*" : "/";
      out += (is_additive(rhs) || is_multiplicative(rhs)) ? wrap(rendered(rhs)) : rendered(rhs);
      return;
    case Expr::Op::Pow: {
      const bool bare_base = lhs.kind() == Expr::Kind::Variable ||
                             lhs.kind() == Expr::Kind::Function ||
                             (lhs.is_constant() && !std::signbit(lhs.value()));
      out += bare_base ? rendered(lhs) : wrap(rendered(lhs));
      out += "^";
      if (rhs.is_constant() || rhs.kind() == Expr::Kind::Negate ||
          (rhs.kind() == Expr::Kind::Binary && rhs.op() == Expr::Op::Pow)) {
        // Negative literals re-lex as a folded constant after '^'.
        out += rendered(rhs);
      } else {
        out += render_unary_operand(rhs);
      }
      return;
    }
  }
}

}  // namespace

std::string render(const Expr& e) { return rendered(e); }

// ---------------------------------------------------------------------------
// Simplification and differentiation

namespace {

// Folds a closed subtree to a constant when it evaluates cleanly.
std::optional<double> try_fold(const Expr& e) {
  if (!e.is_closed()) return std::nullopt;
  try {
    const double v = e.eval(0.0);
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const EvalDomainError&) {
    return std::nullopt;
  }
}

Expr simplify_negate(const Expr& operand) {
  if (operand.is_constant()) return Expr::constant(-operand.value());
  if (operand.kind() == Expr::Kind::Negate) return operand.child(0);
  if (operand.kind() == Expr::Kind::Binary && operand.op() == Expr::Op::Mul &&
      operand.child(0).is_constant()) {
    return Expr::binary(Expr::Op::Mul, Expr::constant(-operand.child(0).value()), operand.child(1));
  }
  return Expr::negate(operand);
}

Expr simplify_binary(Expr::Op op, const Expr& a, const Expr& b) {
  Expr candidate = Expr::binary(op, a, b);
  if (a.is_constant() && b.is_constant()) {
    if (auto v = try_fold(candidate)) return Expr::constant(*v);
    return candidate;
  }
  switch (op) {
    case Expr::Op::Add:
      if (a.is_constant(0.0)) return b;
      if (b.is_constant(0.0)) return a;
      break;
    case Expr::Op::Sub:
      if (b.is_constant(0.0)) return a;
      if (a.is_constant(0.0)) return simplify_negate(b);
      break;
    case Expr::Op::Mul:
      if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
      if (a.is_constant(1.0)) return b;
      if (b.is_constant(1.0)) return a;
      if (a.is_constant(-1.0)) return simplify_negate(b);
      if (a.is_constant() && b.kind() == Expr::Kind::Binary && b.op() == Expr::Op::Mul &&
          b.child(0).is_constant()) {
        return simplify_binary(Expr::Op::Mul, Expr::constant(a.value() * b.child(0).value()),
                               b.child(1));
      }
      break;
    case Expr::Op::Div:
      if (b.is_constant(1.0)) return a;
      if (a.is_constant(0.0) && !b.is_constant()) return Expr::constant(0.0);
      break;
    case Expr::Op::Pow:
      if (b.is_constant(1.0)) return a;
      if (b.is_constant(0.0)) return Expr::constant(1.0);
      break;
  }
  return candidate;
}

}  // namespace

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Variable:
      return e;
    case Expr::Kind::Negate:
      return simplify_negate(simplify(e.child(0)));
    case Expr::Kind::Binary: {
      Expr a = simplify(e.child(0));
      Expr b = simplify(e.child(1));
      if (e.op() == Expr::Op::Pow) {
        if (auto v = try_fold(b)) b = Expr::constant(*v);
      }
      return simplify_binary(e.op(), a, b);
    }
    case Expr::Kind::Function: {
      Expr arg = simplify(e.child(0));
      Expr candidate = Expr::apply(e.fn(), arg);
      if (arg.is_constant()) {
        if (auto v = try_fold(candidate)) return Expr::constant(*v);
      }
      return candidate;
    }
  }
  return e;
}

namespace {

Expr c(double v) { return Expr::constant(v); }

Expr derive(const Expr& e) {
  using Fn = Expr::Fn;
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return c(0.0);
    case Expr::Kind::Variable:
      return c(1.0);
    case Expr::Kind::Negate:
      return -derive(e.child(0));
    case Expr::Kind::Binary: {
      const Expr& u = e.child(0);
      const Expr& v = e.child(1);
      switch (e.op()) {
        case Expr::Op::Add: return derive(u) + derive(v);
        case Expr::Op::Sub: return derive(u) - derive(v);
        case Expr::Op::Mul: return derive(u) * v + u * derive(v);
        case Expr::Op::Div: return (derive(u) * v - u * derive(v)) / pow(v, 2.0);
        case Expr::Op::Pow: {
          const double n = v.eval(0.0);
          return (c(n) * pow(u, n - 1.0)) * derive(u);
        }
      }
      break;
    }
    case Expr::Kind::Function: {
      const Expr& u = e.child(0);
      const Expr du = derive(u);
      switch (e.fn()) {
        case Fn::Exp: return e * du;
        case Fn::Log: return du / u;
        case Fn::Sin: return Expr::apply(Fn::Cos, u) * du;
        case Fn::Cos: return -(Expr::apply(Fn::Sin, u) * du);
        case Fn::Tan: return du / pow(Expr::apply(Fn::Cos, u), 2.0);
        case Fn::Sinh: return Expr::apply(Fn::Cosh, u) * du;
        case Fn::Cosh: return Expr::apply(Fn::Sinh, u) * du;
        case Fn::Tanh: return du / pow(Expr::apply(Fn::Cosh, u), 2.0);
        case Fn::Sqrt: return du / (c(2.0) * e);
      }
      break;
    }
  }
  return c(0.0);
}

}  // namespace

Expr differentiate(const Expr& e) { return simplify(derive(e)); }

Expr substitute(const Expr& e, const Expr& replacement) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return e;
    case Expr::Kind::Variable:
      return replacement;
    case Expr::Kind::Negate:
      return Expr::negate(substitute(e.child(0), replacement));
    case Expr::Kind::Binary:
      return Expr::binary(e.op(), substitute(e.child(0), replacement),
                          substitute(e.child(1), replacement));
    case Expr::Kind::Function:
      return Expr::apply(e.fn(), substitute(e.child(0), replacement));
  }
  return e;
}

}  // namespace fminlab
