#pragma once

// Point-evaluation oracle: polynomials are compared through their values at
// random rational points, computed term by term without touching the
// substitution or multiplication kernels under test.

#include "confalg/matpoly.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using confalg::MatPoly;
using confalg::MPoly;
using confalg::Rat;
using Point = std::array<Rat, confalg::kNumVars>;
using NumMat = std::vector<std::vector<Rat>>;

inline Rat ipow(const Rat& b, int e) {
  Rat r(1);
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline Rat eval(const MPoly& p, const Point& pt) {
  Rat s(0);
  for (const auto& [m, c] : p.terms()) {
    Rat t = c;
    for (int v = 0; v < confalg::kNumVars; ++v) t *= ipow(pt[v], m.exp(confalg::Var(v)));
    s += t;
  }
  return s;
}

inline NumMat eval(const MatPoly& a, const Point& pt) {
  NumMat r(a.rows(), std::vector<Rat>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r[i][j] = eval(a(i, j), pt);
  return r;
}

inline NumMat matmul(const NumMat& a, const NumMat& b) {
  NumMat r(a.size(), std::vector<Rat>(b.empty() ? 0 : b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

inline std::int64_t uniform(std::mt19937_64& g, std::int64_t lo, std::int64_t hi) {
  return lo + std::int64_t(g() % std::uint64_t(hi - lo + 1));
}

inline Point random_point(std::mt19937_64& g) {
  Point p;
  for (auto& r : p) r = Rat(uniform(g, -9, 9), uniform(g, 1, 4));
  return p;
}

// Point with (d, x, l, m, n2) given.
inline Point pt(Rat d, Rat x, Rat l = 0, Rat m = 0, Rat n = 0) { return {d, x, l, m, n}; }

}  // namespace oracle
