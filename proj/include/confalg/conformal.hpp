#pragma once

#include "confalg/algebra.hpp"
#include "confalg/certificate.hpp"
#include "confalg/random.hpp"

#include <array>
#include <functional>
#include <vector>

namespace confalg {

inline const MPoly kLambda = MPoly::var(Var::L);
inline const MPoly kMu = MPoly::var(Var::M);

// A(-lam, x): the left factor of every product formula.
MatPoly at_minus(const MatPoly& a, const MPoly& lam);
// B(∂+lam, x+lam): the right factor.
MatPoly shifted(const MatPoly& b, const MPoly& lam);
// B(∂+lam, x): shift of ∂ only (current-algebra right factor, x-free anyway).
MatPoly shifted_d(const MatPoly& b, const MPoly& lam);

// A ∘_lam B = A(-lam, x) B(∂+lam, x+lam), blockwise. lam is any polynomial in
// the parameters (λ, μ, λ+μ, ...); formal λ is never substituted afterwards.
MatPoly cend_product(const MatPoly& a, const MatPoly& b, const MPoly& lam);
Blocks product(const Blocks& a, const Blocks& b, const MPoly& lam);
Blocks translate(const Blocks& a);  // ∂a
Blocks scale(const MPoly& c, const Blocks& a);
Blocks add(const Blocks& a, const Blocks& b);
Blocks sub(const Blocks& a, const Blocks& b);
Blocks subst(const Blocks& a, const Subst& s);
bool is_zero(const Blocks& a);
int degree(const Blocks& a, Var v);
std::string to_string(const Blocks& a);
nlohmann::json blocks_json(const Blocks& a);

// Checked products: operands must share the algebra; the result is checked
// against the module layout and row divisibility.
ConfElem lambda_product(const ConfElem& a, const ConfElem& b, const MPoly& lam = kLambda);
ConfElem n_product(const ConfElem& a, const ConfElem& b, int n);
// Least N with a (n) b = 0 for all n >= N.
int locality(const ConfElem& a, const ConfElem& b);
// {a ∘_λ b}: the λ-product with λ replaced by -∂-λ.
ConfElem curly_product(const ConfElem& a, const ConfElem& b);
ConfElem translate(const ConfElem& a);

using ProductFn = std::function<Blocks(const Blocks&, const Blocks&, const MPoly&)>;
using Triple = std::array<Blocks, 3>;

// Sesquilinearity in both arguments and λ-associativity, exactly, on every
// sample; an empty product function means the algebra's own product.
Certificate check_axioms(const AlgPtr& alg, const std::vector<Triple>& samples, const ProductFn& prod = {});

// Cofactor entries of total (∂, x)-degree <= deg, times the row factors.
Blocks random_value(const Shape& shape, Rng& rng, int deg, int density = 50);
ConfElem random_element(const AlgPtr& alg, Rng& rng, int deg);
std::vector<Triple> random_triples(const AlgPtr& alg, Rng& rng, int count, int deg);

// θ(Q(x)A(∂,x)) = A(∂,x) Q(x-∂), from Cend_{n,Q} into Cend_n.
ConfElem theta(const ConfElem& a);
// Left inverse of θ; throws InvariantError when b is not in the image.
ConfElem theta_inverse(const ConfElem& b, const AlgPtr& cendq);

enum class IdentityClass { Unit, Idempotent, Neither };
const char* identity_class_name(IdentityClass c);
IdentityClass classify_identity(const ConfElem& e, int bound);
// Pass iff e is a conformal unit; the witness records the classification.
Certificate identity_check(const ConfElem& e, int bound);

}  // namespace confalg
