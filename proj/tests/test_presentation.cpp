#include "confalg/parse.hpp"
#include "confalg/presentation.hpp"
#include "doctest.h"

using namespace confalg;

namespace {

const MPoly x = MPoly::var(Var::X), d = MPoly::var(Var::D), l = MPoly::var(Var::L);

}  // namespace

TEST_CASE("generator images") {
  GeneratorMap G(3);
  CHECK(G.e(1, 3).value[0] == MatPoly::unit(3, 3, 0, 2));
  CHECK(G.x(3, 1).value[0] == MatPoly::unit(3, 3, 2, 0, x));
  CHECK_THROWS(G.e(3, 1));
  CHECK_THROWS(G.x(0, 1));
  CHECK_THROWS(GeneratorMap(1));
}

TEST_CASE("relations by hand") {
  GeneratorMap G(2);
  auto prod = [](const ConfElem& a, const ConfElem& b) { return lambda_product(a, b).value[0]; };
  // A(-λ,x) B(∂+λ,x+λ) with A = E_11, B = x E_12
  CHECK(prod(G.e(1, 1), G.x(1, 2)) == MatPoly::unit(2, 2, 0, 1, x + l));
  // x E_21 ∘ x E_12 = x (x+λ) E_22
  CHECK(prod(G.x(2, 1), G.x(1, 2)) == MatPoly::unit(2, 2, 1, 1, x * (x + l)));
  CHECK(n_product(G.x(2, 1), G.x(1, 2), 1).value[0] == MatPoly::unit(2, 2, 1, 1, x));
  CHECK(prod(G.e(1, 2), G.e(1, 1)).is_zero());
}

TEST_CASE("relation families hold") {
  for (int n : {2, 3}) {
    CAPTURE(n);
    auto r = verify_relations(n);
    CHECK(r.passed());
    for (const char* rel : {"R1", "R2", "R3", "R4", "R5", "R6", "S1", "S2", "S3", "S4", "S5", "S6"})
      CHECK(r.witness["checked"].contains(rel));
    CHECK(verify_derived_generators(n).passed());
  }
}

TEST_CASE("reduced words") {
  // x_11 ∘_0 x_11 ∘_0 x_11 = x^3 E_11
  auto w = ReducedWord::der_chain(0, 1, 2, 1);
  CHECK(reduced_word_eval(w, 2).value[0] == MatPoly::unit(2, 2, 0, 0, x * x * x));
  CHECK(reduced_word_eval(ReducedWord::der_chain(2, 2, 1, 1), 2).value[0] == MatPoly::unit(2, 2, 1, 0, d * d * x * x));
  CHECK(reduced_word_eval(ReducedWord::der_e(1, 1, 2), 2).value[0] == MatPoly::unit(2, 2, 0, 1, d));
  CHECK(w.to_string() == "d^0 (x11 o0 (x11 o0)^1 x11)");

  // (s_max+1) * ((n-1)n + n^2 + t_max n^2)
  CHECK(reduced_words(2, 3, 3).size() == 4 * (2 + 4 + 12));
}

TEST_CASE("independence") {
  auto a = independence_check(2, 3, 3);
  CHECK(a.passed());
  CHECK(a.witness["words"] == 72);
  CHECK(a.witness["rank"] == 72);
  CHECK(independence_check(3, 2, 2).passed());

  auto dup = independence_check(2, 3, 3, {ReducedWord::der_x(1, 2, 1)});
  CHECK(dup.verdict == Verdict::Fail);
  CHECK(dup.witness["rank"] == 72);
  CHECK(dup.witness["words"] == 73);
  CHECK_THROWS(independence_check(2, 0, 3));
}
