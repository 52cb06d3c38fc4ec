#pragma once

#include "confalg/cochain.hpp"

#include <stdexcept>

namespace confalg {

// E = C ⊕ M with (a + u) ∘̂_λ (b + v) = a∘_λb + φ_λ(a,b) + a∘_λv + u∘_λb and
// M ∘̂ M = 0. With φ = 0 this is the semidirect product C ⋉ M.
struct ExtensionAlg {
  AlgPtr base;
  BimodPtr kernel;
  Cochain2 cocycle;
};

struct ExtElem {
  Blocks c;  // base algebra layout
  Blocks m;  // module layout
};

bool operator==(const ExtElem& a, const ExtElem& b);

struct ExtensionRejected : std::invalid_argument {
  Certificate cert;
  explicit ExtensionRejected(Certificate c)
      : std::invalid_argument("extension rejected: cochain is not a 2-cocycle"), cert(std::move(c)) {}
};

// Runs cocycle_check at the given bound first; throws ExtensionRejected with
// its failing certificate.
ExtensionAlg extension_build(const Cochain2& phi, int bound);
// No cocycle check; for demonstrating what goes wrong with a non-cocycle.
ExtensionAlg extension_unchecked(const Cochain2& phi);

ExtElem hat_product(const ExtensionAlg& e, const ExtElem& a, const ExtElem& b, const MPoly& lam = kLambda);

// Generators of C and of M with x-degree <= bound, as elements of E.
std::vector<ExtElem> extension_generators(const ExtensionAlg& e, int bound);

// λ-associativity of ∘̂ on all generator triples of E up to the bound, plus
// sesquilinearity on generator pairs.
Certificate extension_axioms(const ExtensionAlg& e, int bound);

}  // namespace confalg
