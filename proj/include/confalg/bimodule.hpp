#pragma once

#include "confalg/conformal.hpp"

namespace confalg {

class BimodDesc {
 public:
  // Regular(C): C over itself.
  // Z2Sum: z^2 k[∂,z] over Cend_{1,x} ⊕ Cend_{1,x}; the first summand (x)
  //   acts on the left only, the second (y) on the right only.
  // Rect(n,m): n×m matrices over Cend_{n,Q} ⊕ Cend_{m,Q'} with
  //   Q = diag(1,...,1,x) of size n and Q' likewise of size m.
  // Twist1(f): Cend_1 over Cend_{1,f}, left action twisted by θ.
  enum class Kind { Regular, Z2Sum, Rect, Twist1 };

  static BimodDesc regular(const AlgebraDesc& alg);
  static BimodDesc z2sum();
  static BimodDesc rect(int n, int m);
  static BimodDesc twist1(const MPoly& f);

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  int m() const { return m_; }
  const MPoly& f() const { return f_; }
  const AlgebraDesc& base() const { return base_; }
  Shape shape() const;
  std::string to_string() const;
  friend bool operator==(const BimodDesc& a, const BimodDesc& b);

 private:
  Kind kind_ = Kind::Regular;
  int n_ = 0;
  int m_ = 0;
  MPoly f_;
  AlgebraDesc base_ = AlgebraDesc::cend(1);
};

// bimod:regular:<alg>, bimod:z2sum, bimod:rect:<n>:<m>, bimod:twist1:<f>
BimodDesc parse_bimodule(std::string_view text);

// diag(1, ..., 1, x) of size n.
std::vector<MPoly> corner_q(int n);

// Exact division of row i (column j) by q[i] (q[j]). The divisors must have a
// constant leading coefficient in x. InvariantError when not divisible.
MatPoly row_divide(const MatPoly& a, const std::vector<MPoly>& q);
MatPoly col_divide(const MatPoly& a, const std::vector<MPoly>& q);

class Bimodule {
 public:
  explicit Bimodule(BimodDesc d);
  const BimodDesc& desc() const { return desc_; }
  const AlgPtr& base() const { return base_; }
  const Shape& shape() const { return shape_; }

  // a ∘_lam u and u ∘_lam a on raw values; a in the base algebra layout,
  // u in the module layout. Either may carry parameters other than lam's.
  Blocks left(const Blocks& a, const Blocks& u, const MPoly& lam) const;
  Blocks right(const Blocks& u, const Blocks& a, const MPoly& lam) const;

  // Split forms for callers that act with the same operands many times:
  //   left(a, u, lam)  == left_apply(left_factor(a, lam), shift(u, lam), lam)
  //   right(u, a, lam) == right_apply(negate(u, lam), right_factor(a, lam))
  static Blocks shift(const Blocks& u, const MPoly& lam);   // u(∂+lam, x+lam)
  static Blocks negate(const Blocks& u, const MPoly& lam);  // u(-lam, x)
  Blocks left_factor(const Blocks& a, const MPoly& lam) const;
  Blocks left_apply(const Blocks& fa, const Blocks& su, const MPoly& lam) const;
  Blocks right_factor(const Blocks& a, const MPoly& lam) const;
  Blocks right_apply(const Blocks& nu, const Blocks& fa) const;

 private:
  BimodDesc desc_;
  AlgPtr base_;
  Shape shape_;
  std::vector<MPoly> q_, qp_;  // Rect: the two corner matrices
};

using BimodPtr = std::shared_ptr<const Bimodule>;
BimodPtr make_bimodule(const BimodDesc& d);

struct BimodElem {
  BimodPtr mod;
  Blocks value;
};

BimodElem make_bimod_elem(const BimodPtr& mod, Blocks value);
BimodElem left_action(const ConfElem& a, const BimodElem& u, const MPoly& lam = kLambda);
BimodElem right_action(const BimodElem& u, const ConfElem& a, const MPoly& lam = kLambda);

// A ↦ (A 0): append m-n zero columns. B ↦ first n rows of B.
MatPoly embed_flat(const MatPoly& a, int m);
MatPoly truncate(const MatPoly& b, int n);

struct BimodSample {
  Blocks a, b, u;
};
std::vector<BimodSample> random_bimod_samples(const BimodPtr& mod, Rng& rng, int count, int deg);

// The three λ-associativity identities mixing two algebra elements and one
// module element, plus sesquilinearity of both actions.
Certificate check_bimodule_axioms(const BimodPtr& mod, const std::vector<BimodSample>& samples);

}  // namespace confalg
