#pragma once

#include "confalg/cochain.hpp"

#include <memory>
#include <optional>

namespace confalg {

struct SolverStats {
  int generators = 0;  // generators of C with x-degree <= D
  int pairs = 0;
  int unknowns = 0;
  long equations = 0;  // nonzero coefficient equations assembled
  int rank = 0;
  int components = 0;  // connected components of the unknown graph
};

struct SolveResult {
  Certificate cert;  // pass (with τ) or no-solution-up-to-bound
  std::optional<Cochain1> tau;
};

// The linear system d₁τ = φ on all generator pairs with x-degree <= D, in the
// unknown coefficients of τ(g) = Σ c ∂^s q_i x^k E_ij with s + k <= solver_deg,
// for every generator g the equations touch. The coefficient matrix depends
// only on (C, M, D, solver_deg) and is factored once.
class CoboundarySolver {
 public:
  CoboundarySolver(AlgPtr alg, BimodPtr mod, int deg_bound, int solver_deg);
  SolveResult solve(const Cochain2& phi) const;
  const SolverStats& stats() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Uses a shared solver per (C, M, D, solver_deg).
SolveResult coboundary_solve(const Cochain2& phi, int deg_bound, int solver_deg);

}  // namespace confalg
