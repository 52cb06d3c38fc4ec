#include "confalg/paper_cases.hpp"
#include "confalg/parse.hpp"
#include "confalg/solver.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace confalg;

namespace {

MatPoly M(const char* s) { return parse_matrix(s); }
const MPoly x = MPoly::var(Var::X), d = MPoly::var(Var::D), l = MPoly::var(Var::L);

// z^k f(-λ,z) g(∂+λ,z+λ) on x f ⊕ y g, the ex41 shape with another prefactor
Cochain2 z_power_cochain(const PaperCocycle& pc, int k) {
  return Cochain2::closed(
      pc.alg, pc.mod,
      [k](const Blocks& a, const Blocks& b, const MPoly& lam) {
        MatPoly out(1, 1);
        if (a[0].is_zero() || b[1].is_zero()) return Blocks{out};
        auto f = a[0](0, 0).div_monomial(Monomial::of(Var::X));
        auto g = b[1](0, 0).div_monomial(Monomial::of(Var::X));
        out(0, 0) = pow(x, k) * substitute(*f, Subst().bind(Var::D, -lam)) *
                    substitute(*g, Subst().bind(Var::D, d + lam).bind(Var::X, x + lam));
        return Blocks{out};
      },
      "z^" + std::to_string(k));
}

// Compares two cochains on all generator pairs up to the bound at random points.
bool agree_on_pairs(const Cochain2& a, const Cochain2& b, int bound, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  const auto gens = a.alg()->shape().generators(bound);
  for (const auto& p : gens)
    for (const auto& q : gens) {
      const Blocks &u = a.at(p, q), &v = b.at(p, q);
      for (int t = 0; t < 2; ++t) {
        auto pt = oracle::random_point(g);
        for (std::size_t blk = 0; blk < u.size(); ++blk)
          if (oracle::eval(u[blk], pt) != oracle::eval(v[blk], pt)) return false;
      }
    }
  return true;
}

}  // namespace

TEST_CASE("d1 of zero and of trivial cochains") {
  auto C = make_algebra(AlgebraDesc::cendq(corner_q(2)));
  auto R = make_bimodule(BimodDesc::regular(C->desc()));
  auto z = d1(Cochain1::zero(C, R));
  for (const auto& g : C->shape().generators(2))
    for (const auto& h : C->shape().generators(2)) CHECK(is_zero(z.at(g, h)));

  const Shape sh = C->shape();
  auto id = Cochain1::from_generators(C, R, [sh](const GenIndex& g) { return sh.gen(g); });
  auto dtr = Cochain1::from_generators(C, R, [sh](const GenIndex& g) { return translate(sh.gen(g)); });
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    auto a = random_element(C, rng, 2), b = random_element(C, rng, 2);
    // identity: a∘τ(b) - τ(a∘b) + τ(a)∘b collapses to a∘b
    CHECK(d1(id).eval(a.value, b.value) == product(a.value, b.value, l));
    // τ = ∂: (∂+λ) - ∂ - λ
    CHECK(is_zero(d1(dtr).eval(a.value, b.value)));
  }
}

TEST_CASE("ex41 values") {
  auto pc = paper_cocycle(PaperCase::ex41());
  auto xe = make_elem(pc.alg, Blocks{M("[[x]]"), M("[[0]]")});
  auto ye = make_elem(pc.alg, Blocks{M("[[0]]"), M("[[x]]")});
  CHECK(eval_cochain2(pc.phi, xe, ye)[0] == M("[[x^2]]"));
  CHECK(eval_cochain2(pc.phi, translate(xe), ye)[0] == M("[[-l*x^2]]"));
  CHECK(is_zero(eval_cochain2(pc.phi, xe, xe)));
  CHECK(is_zero(eval_cochain2(pc.phi, ye, xe)));
  // closed form against the generator expansion
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    auto a = random_element(pc.alg, rng, 2), b = random_element(pc.alg, rng, 2);
    CHECK(pc.phi.eval(a.value, b.value) == pc.phi.eval_expanded(a.value, b.value));
  }
}

TEST_CASE("paper cocycle values") {
  auto dg = paper_cocycle(PaperCase::diag({x, x}, 1, 2));
  CHECK(eval_cochain2(dg.phi, make_elem(dg.alg, M("[[x,0],[0,0]]")), make_elem(dg.alg, M("[[0,0],[0,x]]")))[0] ==
        M("[[0,x],[0,0]]"));

  auto rc = paper_cocycle(PaperCase::rect(1, 2));
  auto Q = make_elem(rc.alg, Blocks{M("[[x]]"), MatPoly(2, 2)});
  auto Qe12 = make_elem(rc.alg, Blocks{MatPoly(1, 1), M("[[0,1],[0,0]]")});
  CHECK(eval_cochain2(rc.phi, Q, Qe12)[0] == M("[[0,1]]"));

  auto tw = paper_cocycle(PaperCase::twist1(x * x));
  auto f = make_elem(tw.alg, M("[[x^2]]"));
  CHECK(eval_cochain2(tw.phi, f, f)[0] == M("[[1]]"));
}

TEST_CASE("paper cocycles pass, perturbations fail") {
  for (const char* s : {"ex41", "rect:1:2", "diag:[x,x]:1:2", "twist1:x^2"}) {
    CAPTURE(s);
    CHECK(cocycle_check(paper_cocycle(parse_case(s)).phi, 2).passed());
  }
  auto pc = paper_cocycle(PaperCase::ex41());
  CHECK(agree_on_pairs(z_power_cochain(pc, 2), pc.phi, 2, 3));
  auto bad = cocycle_check(z_power_cochain(pc, 3), 2);
  CHECK(bad.verdict == Verdict::Fail);
  CHECK(bad.witness.contains("triple"));
  CHECK(bad.witness.contains("residual"));
}

TEST_CASE("coboundaries are cocycles") {
  for (const char* s : {"bimod:z2sum", "bimod:rect:1:2", "bimod:twist1:x^2", "bimod:regular:cendq:2:[1,x]"}) {
    CAPTURE(s);
    auto m = make_bimodule(parse_bimodule(s));
    for (std::uint64_t seed : {1u, 2u}) CHECK(cocycle_check(d1(random_cochain1(m->base(), m, seed, 2)), 2).passed());
  }
}

TEST_CASE("diag parameters are validated") {
  CHECK_THROWS(PaperCase::diag({x, x}, 2, 1));
  CHECK_THROWS(PaperCase::diag({MPoly(1), x}, 1, 2));
  CHECK_THROWS(parse_case("rect:3:2"));
  CHECK_THROWS(parse_case("nosuch"));
}

TEST_CASE("solver recovers random coboundaries") {
  for (const char* s : {"bimod:z2sum", "bimod:rect:1:2", "bimod:regular:cend:2"}) {
    CAPTURE(s);
    auto m = make_bimodule(parse_bimodule(s));
    CoboundarySolver S(m->base(), m, 2, 4);
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      auto phi = d1(random_cochain1(m->base(), m, seed, 2));
      auto r = S.solve(phi);
      REQUIRE(r.cert.passed());
      REQUIRE(r.tau);
      CHECK(agree_on_pairs(d1(*r.tau), phi, 2, seed));
    }
    auto r0 = S.solve(Cochain2::zero(m->base(), m));
    REQUIRE(r0.tau);
    CHECK(agree_on_pairs(d1(*r0.tau), Cochain2::zero(m->base(), m), 2, 1));
  }
}

TEST_CASE("solver finds no primitive for ex41") {
  auto r = coboundary_solve(paper_cocycle(PaperCase::ex41()).phi, 4, 6);
  CHECK(r.cert.verdict == Verdict::NoSolution);
  CHECK(r.cert.evidence == Evidence::Bounded);
  CHECK_FALSE(r.tau);
}

TEST_CASE("obstructions") {
  auto ex = obstruction_check(PaperCase::ex41());
  CHECK(ex.passed());
  CHECK(ex.evidence == Evidence::Proof);
  CHECK(ex.witness["summary"].get<std::string>() == "residue 1 at z=−λ");

  auto dg = obstruction_check(PaperCase::diag({x, x}, 1, 2));
  CHECK(dg.passed());
  CHECK(dg.witness["summary"].get<std::string>().find("= -λ") != std::string::npos);

  CHECK(obstruction_check(PaperCase::rect(1, 1)).passed());
  CHECK(obstruction_check(PaperCase::rect(2, 2)).passed());

  auto tw = obstruction_check(PaperCase::twist1(x * x));
  CHECK(tw.passed());
  CHECK(tw.witness["kernel_dim"] == 8);
}

// φ(QA₁+Q'B₁, QA₂+Q'B₂) = A₁(-λ,x) B₂^⊥(∂+λ,x+λ) is d₁ of QA + Q'B ↦ A padded with zero columns.
TEST_CASE("rect with n < m is a coboundary") {
  for (auto [n, m] : {std::pair{1, 2}, std::pair{2, 3}}) {
    CAPTURE(n);
    auto pc = paper_cocycle(PaperCase::rect(n, m));
    const int mm = m;
    const Shape sh = pc.alg->shape(), ms = pc.mod->shape();
    const auto q = corner_q(n);
    auto psi = Cochain1::from_generators(pc.alg, pc.mod, [sh, ms, q, mm](const GenIndex& g) {
      if (g.block != 0) return ms.zero();
      return Blocks{embed_flat(row_divide(sh.gen(g)[0], q), mm)};
    });
    CHECK(agree_on_pairs(d1(psi), pc.phi, 2, 17));
    auto ob = obstruction_check(PaperCase::rect(n, m), 2);
    CHECK(ob.verdict == Verdict::Fail);
    CHECK(ob.witness["coboundary_verified"] == true);
  }
}

TEST_CASE("extensions") {
  auto pc = paper_cocycle(PaperCase::ex41());
  auto semi = extension_build(Cochain2::zero(pc.alg, pc.mod), 2);
  CHECK(extension_axioms(semi, 2).passed());
  auto E = extension_build(pc.phi, 2);
  CHECK(extension_axioms(E, 2).passed());

  // x ∘̂ y picks up φ(x, y) = z²
  ExtElem xe{Blocks{M("[[x]]"), M("[[0]]")}, pc.mod->shape().zero()};
  ExtElem ye{Blocks{M("[[0]]"), M("[[x]]")}, pc.mod->shape().zero()};
  CHECK(hat_product(E, xe, ye).m[0] == M("[[x^2]]"));
  CHECK(is_zero(hat_product(E, xe, ye).c));

  try {
    extension_build(z_power_cochain(pc, 3), 2);
    FAIL("non-cocycle accepted");
  } catch (const ExtensionRejected& e) {
    CHECK(e.cert.verdict == Verdict::Fail);
  }
  CHECK_FALSE(extension_axioms(extension_unchecked(z_power_cochain(pc, 3)), 2).passed());
}

TEST_CASE("realizations") {
  for (const char* s : {"ex41", "rect:1:2", "twist1:x^2"}) {
    CAPTURE(s);
    CHECK(realization_check(parse_case(s), 2).passed());
  }
  // h ↦ f(x) h f(x-∂) e_12 squares to zero
  auto R = realization(PaperCase::twist1(x * x));
  auto pc = paper_cocycle(PaperCase::twist1(x * x));
  ExtElem h{pc.alg->shape().zero(), Blocks{M("[[x*d + 1]]")}};
  MatPoly img = R.rho(h);
  CHECK(img(1, 0).is_zero());
  CHECK(cend_product(img, img, l) == MatPoly(2, 2));
}
