#pragma once

#include "confalg/cochain.hpp"

#include <vector>

namespace confalg {

// Normal form of a 2-cocycle on C = Cend_{n,Q}, Q = diag(1,...,1,x), n >= 2,
// reached by subtracting explicit coboundaries. Notation: e_ij = E_ij (i < n),
// x_n1 = xE_n1, e = e_11 + ... + e_{n-1,n-1}, C₀ = upper left (n-1)-block.
//
// The input must already vanish on C₀ × C₀; that is checked on generators up
// to `bound` and reported as an error verdict otherwise.
//
//   step 1: τ(e_1n) = φ_{-∂}(e_11, e_1n) - (e_11 ∘_λ φ_{-∂}(e_1n, e))|_{λ=-∂},  φ += d₁τ
//   step 2: τ(x_n1) = φ_0(x_n1, e_11) - φ_0(e, x_n1) ∘_0 e_11,                 φ += d₁τ
//   step 3: while m = deg_λ φ_λ(e_1n, x_n1) > 0:
//             τ(x_n1) = (1/m) x_n1 ∘_0 φ_1(e_1n, x_n1),                       φ -= d₁τ
struct Normalized {
  Cochain2 phi;
  Certificate cert;
  std::vector<int> step3_degrees;  // deg_λ φ(e_1n, x_n1) before each pass, then the final value
};

Normalized normalize_cend_nq(const Cochain2& phi, int bound = 2);

// The vanishing conditions of the normal form, each evaluated exactly.
nlohmann::json normal_form_conditions(const Cochain2& phi, int bound);

}  // namespace confalg
