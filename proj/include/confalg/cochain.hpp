#pragma once

#include "confalg/bimodule.hpp"
#include "confalg/certificate.hpp"
#include "confalg/conformal.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace confalg {

// H-linear map C -> M, given by its values on the H-generators of C. Values
// are module-layout polynomials in ∂ and x; τ(∂a) = ∂τ(a) is implicit.
class Cochain1 {
 public:
  using GenFn = std::function<Blocks(const GenIndex&)>;

  Cochain1() = default;
  // Table with x-degree bound; generators within the bound that are missing
  // from the table map to zero.
  Cochain1(AlgPtr alg, BimodPtr mod, std::map<GenIndex, Blocks> table, int bound);
  // Values produced on demand (and cached); no bound unless given.
  static Cochain1 from_generators(AlgPtr alg, BimodPtr mod, GenFn fn, std::optional<int> bound = {});
  static Cochain1 zero(AlgPtr alg, BimodPtr mod);

  const AlgPtr& alg() const;
  const BimodPtr& mod() const;
  std::optional<int> bound() const;

  Blocks at(const GenIndex& g) const;  // BoundError beyond the bound
  Blocks apply(const Blocks& a) const;  // a may carry λ, μ
  std::map<GenIndex, Blocks> table(int max_k) const;

 private:
  struct State;
  std::shared_ptr<State> s_;
};

// Random values of cofactor degree <= deg, fixed per generator by (seed, generator).
Cochain1 random_cochain1(const AlgPtr& alg, const BimodPtr& mod, std::uint64_t seed, int deg, int density = 40);

// Sesquilinear map C x C -> M[λ]. The data is φ_λ(g, h) on generator pairs;
// everything else follows from
//   φ_λ(∂a, b) = -λ φ_λ(a, b),   φ_λ(a, ∂b) = (∂+λ) φ_λ(a, b).
// A closed form, when present, evaluates arbitrary elements directly.
class Cochain2 {
 public:
  using PairFn = std::function<Blocks(const GenIndex&, const GenIndex&)>;
  using ElemFn = std::function<Blocks(const Blocks&, const Blocks&, const MPoly& lam)>;

  Cochain2() = default;
  static Cochain2 table(AlgPtr alg, BimodPtr mod, std::map<std::pair<GenIndex, GenIndex>, Blocks> t, int bound,
                        std::string name = "table");
  static Cochain2 from_pairs(AlgPtr alg, BimodPtr mod, PairFn fn, std::string name, std::optional<int> bound = {});
  static Cochain2 closed(AlgPtr alg, BimodPtr mod, ElemFn fn, std::string name);
  static Cochain2 zero(AlgPtr alg, BimodPtr mod);

  const AlgPtr& alg() const;
  const BimodPtr& mod() const;
  const std::string& name() const;
  bool has_closed_form() const;
  std::optional<int> bound() const;

  // φ_λ(g, h) at the formal λ; cached.
  const Blocks& at(const GenIndex& g, const GenIndex& h) const;
  // φ_lam(g, h), i.e. at(g, h) with λ replaced by lam; cached per lam.
  const Blocks& at(const GenIndex& g, const GenIndex& h, const MPoly& lam) const;
  // Closed form when available, otherwise the generator expansion.
  Blocks eval(const Blocks& a, const Blocks& b, const MPoly& lam = kLambda) const;
  Blocks eval_expanded(const Blocks& a, const Blocks& b, const MPoly& lam = kLambda) const;

  // this + c·other, on the same (alg, mod).
  Cochain2 plus(const Cochain2& other, const Rat& c = Rat(1)) const;
  std::map<std::pair<GenIndex, GenIndex>, Blocks> tabulate(int max_k) const;

 private:
  struct State;
  std::shared_ptr<State> s_;
};

// Checked single evaluation: a, b must be elements of the cochain's algebra.
Blocks eval_cochain2(const Cochain2& phi, const ConfElem& a, const ConfElem& b);

// (d₁τ)_λ(a, b) = a ∘_λ τ(b) - τ(a ∘_λ b) + τ(a) ∘_λ b
Cochain2 d1(const Cochain1& tau);

// a₁∘_λ φ_μ(a₂,a₃) - φ_{λ+μ}(a₁∘_λ a₂, a₃) + φ_λ(a₁, a₂∘_μ a₃) - φ_λ(a₁,a₂)∘_{λ+μ} a₃
Blocks cocycle_residual(const Cochain2& phi, const Blocks& a1, const Blocks& a2, const Blocks& a3);

// Exhaustive over generator triples with x-degree <= bound.
Certificate cocycle_check(const Cochain2& phi, int bound);
// Over supplied samples, using eval (closed form when present).
Certificate cocycle_check(const Cochain2& phi, const std::vector<Triple>& samples);

nlohmann::json gen_json(const GenIndex& g);

}  // namespace confalg
