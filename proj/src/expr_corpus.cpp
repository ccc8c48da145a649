#include "fminlab/expr_corpus.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fminlab/error.hpp"

namespace fminlab {

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const char* var) : rng_(seed), var_(var) {}

  Expr tree(int depth) {
    if (depth == 0 || unit() < 0.2) return leaf();
    const double pick = unit();
    if (pick < 0.1) return Expr::negate(tree(depth - 1));
    if (pick < 0.55) {
      static constexpr Expr::Op ops[] = {Expr::Op::Add, Expr::Op::Sub, Expr::Op::Mul, Expr::Op::Div};
      return Expr::binary(ops[index(4)], tree(depth - 1), tree(depth - 1));
    }
    if (pick < 0.7) {
      static constexpr double exponents[] = {2.0, 3.0, 0.5, -1.0, -2.0, 1.5};
      return Expr::binary(Expr::Op::Pow, tree(depth - 1), Expr::constant(exponents[index(6)]));
    }
    static constexpr Expr::Fn fns[] = {Expr::Fn::Exp,  Expr::Fn::Log,  Expr::Fn::Sin,
                                       Expr::Fn::Cos,  Expr::Fn::Tan,  Expr::Fn::Sinh,
                                       Expr::Fn::Cosh, Expr::Fn::Tanh, Expr::Fn::Sqrt};
    return Expr::apply(fns[index(9)], tree(depth - 1));
  }

  double point() { return -1.0 + 2.0 * unit(); }

 private:
  Expr leaf() {
    if (unit() < 0.6) return Expr::variable(var_);
    // Quarter-integers in [-4, 4]: exact in binary and in decimal text.
    return Expr::constant(static_cast<double>(static_cast<int>(index(33)) - 16) / 4.0);
  }

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  std::mt19937_64 rng_;
  const char* var_;
};

// Largest |value| over all subtrees at x.
double max_subtree_magnitude(const Expr& e, double x) {
  double m = std::abs(e.eval(x));
  switch (e.kind()) {
    case Expr::Kind::Constant:
    case Expr::Kind::Variable:
      break;
    case Expr::Kind::Negate:
    case Expr::Kind::Function:
      m = std::max(m, max_subtree_magnitude(e.child(0), x));
      break;
    case Expr::Kind::Binary:
      m = std::max({m, max_subtree_magnitude(e.child(0), x), max_subtree_magnitude(e.child(1), x)});
      break;
  }
  return m;
}

bool admissible(const Expr& e, const Expr& de, const Expr& dde, const Expr& ddde,
                double x) {
  const double h = 1e-4 * (std::abs(x) + 1.0);
  try {
    for (int k = -8; k <= 8; ++k) {
      const double y = x + 0.5 * k * h;
      const double v = e.eval(y);
      const double d = de.eval(y);
      const double dd = dde.eval(y);
      const double ddd = ddde.eval(y);
      if (!std::isfinite(v) || !std::isfinite(d) || !std::isfinite(dd) || !std::isfinite(ddd) ||
          std::abs(v) > 1e4 || std::abs(d) > 1e3 || std::abs(dd) > 1e4 || std::abs(ddd) > 1e4) {
        return false;
      }
    }
    if (!(max_subtree_magnitude(e, x) <= 1e4)) return false;
  } catch (const EvalDomainError&) {
    return false;
  }
  return true;
}

}  // namespace

double central_difference(const Expr& e, double x, double h) {
  return (e.eval(x - 2 * h) - 8 * e.eval(x - h) + 8 * e.eval(x + h) - e.eval(x + 2 * h)) / (12 * h);
}

std::vector<CorpusEntry> expr_corpus(std::size_t count, int max_depth, std::uint64_t seed,
                                     int points_per_tree, const char* var) {
  Generator gen(seed, var);
  std::vector<CorpusEntry> corpus;
  corpus.reserve(count);
  while (corpus.size() < count) {
    CorpusEntry entry{gen.tree(max_depth), {}};
    const Expr de = differentiate(entry.expr);
    const Expr dde = differentiate(de);
    const Expr ddde = differentiate(dde);
    for (int attempt = 0; attempt < 200 && static_cast<int>(entry.points.size()) < points_per_tree;
         ++attempt) {
      const double x = gen.point();
      if (admissible(entry.expr, de, dde, ddde, x)) entry.points.push_back(x);
    }
    if (static_cast<int>(entry.points.size()) == points_per_tree) corpus.push_back(std::move(entry));
  }
  return corpus;
}

}  // namespace fminlab
