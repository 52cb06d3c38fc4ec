#pragma once

#include "confalg/extension.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace confalg {

// The four explicit cocycle families.
//   ex41:            C = Cend_{1,x} ⊕ Cend_{1,x}, M = z²k[∂,z]
//   rect(n,m):       C = Cend_{n,Q} ⊕ Cend_{m,Q'}, M = n×m matrices, n <= m
//   diag(Q,i,j):     C = M = Cend_{n,Q}, 0 < deg f_i <= deg f_j, i < j (1-based)
//   twist1(f):       C = Cend_{1,f}, M = Cend_1 with θ-twisted left action
struct PaperCase {
  enum class Kind { Ex41, Rect, Diag, Twist1 };
  Kind kind = Kind::Ex41;
  int n = 0, m = 0;
  std::vector<MPoly> q;
  int i = 0, j = 0;
  MPoly f;

  static PaperCase ex41();
  static PaperCase rect(int n, int m);
  static PaperCase diag(std::vector<MPoly> q, int i, int j);
  static PaperCase twist1(const MPoly& f);
  std::string to_string() const;
};

// ex41 | rect:<n>:<m> | diag:[f1,...,fn]:<i>:<j> | twist1:<f>
PaperCase parse_case(std::string_view text);

struct PaperCocycle {
  AlgPtr alg;
  BimodPtr mod;
  Cochain2 phi;
};

PaperCocycle paper_cocycle(const PaperCase& c);

// Degree-independent certificate that φ is not d₁ψ for any ψ. `bound` only
// sizes auxiliary exhaustive checks (the explicit coboundary for rect with
// n < m, the d₁ψ = 0 conclusion for twist1).
Certificate obstruction_check(const PaperCase& c, int bound = 3);

// The case's matrix model of the extension inside Cend_N.
struct Realization {
  int N = 0;
  std::function<MatPoly(const ExtElem&)> rho;
  // Parameters of the displayed matrix family, or nullopt when the matrix is
  // not of the displayed form.
  std::function<std::optional<ExtElem>(const MatPoly&)> preimage;
};

Realization realization(const PaperCase& c);

// Closure of the displayed family under the Cend_N λ-product and the
// homomorphism property, on all pairs of extension generators up to bound.
Certificate realization_check(const PaperCase& c, int bound);

}  // namespace confalg
