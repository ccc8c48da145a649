#pragma once

#include <cstdint>
#include <vector>

#include "fminlab/expr.hpp"

namespace fminlab {

// A random tree together with points where it and its neighbourhood
// evaluate to moderate finite values.
struct CorpusEntry {
  Expr expr;
  std::vector<double> points;
};

// Deterministic corpus of `count` random trees of depth <= max_depth in
// variable `var`, each with `points_per_tree` admissible points in [-1, 1].
// A point x is admissible when e evaluates on [x - 4h, x + 4h] with
// h = 1e-4 (|x| + 1) and |e| <= 1e4, |e'| <= 1e3, |e''| <= 1e4,
// |e'''| <= 1e4 there, with every
// subtree of e bounded by 1e4 at x.
std::vector<CorpusEntry> expr_corpus(std::size_t count, int max_depth, std::uint64_t seed,
                                     int points_per_tree = 10, const char* var = "x");

// 4th-order central difference with step h.
double central_difference(const Expr& e, double x, double h);

}  // namespace fminlab
