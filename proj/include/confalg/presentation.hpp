#pragma once

#include "confalg/certificate.hpp"
#include "confalg/conformal.hpp"

#include <string>
#include <vector>

namespace confalg {

// Generators of C = Cend_{n,Q}, Q = diag(1,...,1,x): e_ij = E_ij for i < n and
// x_ij = xE_ij. Indices are 1-based throughout this header.
struct GeneratorMap {
  int n = 0;
  AlgPtr alg;

  explicit GeneratorMap(int n);
  ConfElem e(int i, int j) const;
  ConfElem x(int i, int j) const;
};

// Relation families. R1..R6 present C on all of X = {e_ij, x_ij}; S1..S6 on the
// smaller set X' = {e_ij (i,j < n), e_1n, x_n1}.
//   R1 e_ij ∘λ e_kl = δ_jk e_il          S1 e_ij ∘λ e_kl = δ_jk e_il (i,j,k,l < n)
//   R2 x_ij ∘λ e_kl = δ_jk x_il          S2 e_1n ∘λ e_ij = 0
//   R3 e_ij ∘λ x_kl = δ_jk(x_il + λe_il) S3 e_11 ∘λ e_1n = e_1n
//   R4 x_ij ∘_1 x_jl = x_il              S4 e_ij ∘λ x_n1 = 0
//   R5 x_ij ∘λ x_kl = 0, j != k          S5 x_n1 ∘λ e_11 = x_n1
//   R6 x_ij ∘_0 x_jl = x_ik ∘_0 x_kl     S6 e_1n ∘_1 x_n1 = e_11, e_1n ∘_m x_n1 = 0 (m > 1)
// R4 and S6 are compared on every m-product at once through the full λ-product.
Certificate verify_relations(int n);

// Rebuilds X from X' by e_in = e_i1 ∘_0 e_1n, x_nj = x_n1 ∘_0 e_1j,
// x_ij = e_in ∘_0 x_nj, then checks x_ij ∘_m x_jl (x_il for m = 1, else 0)
// and x_n1 ∘_m e_1l = 0 for m > 0 on the rebuilt elements.
Certificate verify_derived_generators(int n);

struct ReducedWord {
  enum class Kind { DerE, DerX, DerChain };
  Kind kind = Kind::DerE;
  int s = 0;
  int a = 1, b = 1;  // (i,j) or (k,l)
  int t = 1;         // DerChain only

  static ReducedWord der_e(int s, int i, int j) { return {Kind::DerE, s, i, j, 1}; }
  static ReducedWord der_x(int s, int k, int l) { return {Kind::DerX, s, k, l, 1}; }
  // ∂^s (x_k1 ∘_0 x_11 ∘_0 ... ∘_0 x_11 ∘_0 x_1l), t-1 middle factors
  static ReducedWord der_chain(int s, int k, int t, int l) { return {Kind::DerChain, s, k, l, t}; }
  std::string to_string() const;
};

ConfElem reduced_word_eval(const ReducedWord& w, int n);

std::vector<ReducedWord> reduced_words(int n, int s_max, int t_max);

// Exact rank of the coefficient matrix of the evaluated words (plus `extra`).
Certificate independence_check(int n, int s_max, int t_max, const std::vector<ReducedWord>& extra = {});

}  // namespace confalg
