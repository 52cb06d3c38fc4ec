#include "confalg/conformal.hpp"
#include "confalg/parse.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace confalg;

namespace {

MPoly P(const char* s) { return parse_poly(s); }
MatPoly M(const char* s) { return parse_matrix(s); }
const MPoly x = MPoly::var(Var::X), l = MPoly::var(Var::L), d = MPoly::var(Var::D);

AlgPtr cend(int n) { return make_algebra(AlgebraDesc::cend(n)); }
AlgPtr cendq(const char* desc) { return make_algebra(parse_algebra(desc)); }

}  // namespace

TEST_CASE("descriptor grammar") {
  CHECK(parse_algebra("cur:2") == AlgebraDesc::cur(2));
  CHECK(parse_algebra(" cend:3 ") == AlgebraDesc::cend(3));
  auto q = parse_algebra("cendq:2:[1,x]");
  CHECK(q.kind() == AlgebraDesc::Kind::CendQ);
  CHECK(q.q()[1] == x);
  auto s = parse_algebra("sum(cendq:1:[x],sum(cend:1,cur:2))");
  CHECK(s.summands().size() == 3);
  CHECK(parse_algebra(s.to_string()) == s);
  CHECK_THROWS_AS(parse_algebra("cendq:2:[x,1]"), DescriptorError);
  CHECK_THROWS_AS(parse_algebra("cendq:2:[x]"), DescriptorError);
  CHECK_THROWS_AS(parse_algebra("cendq:1:[d]"), DescriptorError);
  CHECK_THROWS_AS(parse_algebra("frob:2"), DescriptorError);
  CHECK_THROWS_AS(parse_algebra("cend:0"), DescriptorError);
}

TEST_CASE("element invariants") {
  auto q = cendq("cendq:2:[1,x]");
  CHECK_NOTHROW(make_elem(q, M("[[d, 1], [x, x*d]]")));
  CHECK_THROWS_AS(make_elem(q, M("[[d, 1], [1, x]]")), InvariantError);
  CHECK_THROWS_AS(make_elem(make_algebra(AlgebraDesc::cur(1)), M("[[x]]")), InvariantError);
  CHECK_THROWS_AS(make_elem(cend(1), M("[[l]]")), InvariantError);
  CHECK_THROWS_AS(make_elem(cend(2), M("[[1]]")), DimensionError);
}

TEST_CASE("lambda product examples") {
  auto c1 = cend(1);
  CHECK(lambda_product(make_elem(c1, M("[[1]]")), make_elem(c1, M("[[1]]"))).value[0] == M("[[1]]"));
  CHECK(lambda_product(make_elem(c1, M("[[x]]")), make_elem(c1, M("[[x]]"))).value[0] == M("[[x^2 + l*x]]"));
  auto q = cendq("cendq:2:[1,x]");
  auto e11 = make_elem(q, MatPoly::unit(2, 2, 0, 0));
  auto xe12 = make_elem(q, MatPoly::unit(2, 2, 0, 1, x));
  CHECK(lambda_product(e11, xe12).value[0] == MatPoly::unit(2, 2, 0, 1, x + l));
  CHECK_THROWS_AS(lambda_product(e11, make_elem(c1, M("[[1]]"))), DescriptorError);
}

TEST_CASE("product agrees with the evaluation oracle") {
  std::mt19937_64 g(7);
  for (const char* desc : {"cend:2", "cendq:2:[1,x]", "cur:2", "cendq:2:[x,x^2+x]"}) {
    auto alg = cendq(desc);
    Rng rng(1, desc);
    for (int i = 0; i < 30; ++i) {
      auto a = random_element(alg, rng, 3), b = random_element(alg, rng, 3);
      auto p = lambda_product(a, b).value[0];
      auto pt = oracle::random_point(g);
      auto lhs = oracle::eval(a.value[0], oracle::pt(-pt[2], pt[1]));
      auto rhs = oracle::eval(b.value[0], oracle::pt(pt[0] + pt[2], pt[1] + pt[2]));
      CHECK(oracle::eval(p, pt) == oracle::matmul(lhs, rhs));
    }
  }
}

TEST_CASE("n-products and locality") {
  auto q = cendq("cendq:2:[1,x]");
  auto e11 = make_elem(q, MatPoly::unit(2, 2, 0, 0));
  auto e12 = make_elem(q, MatPoly::unit(2, 2, 0, 1));
  auto x21 = make_elem(q, MatPoly::unit(2, 2, 1, 0, x));
  CHECK(n_product(e11, e11, 0) == e11);
  CHECK(is_zero(n_product(e11, e11, 1).value));
  CHECK(n_product(e12, x21, 1) == e11);
  for (int m = 2; m < 5; ++m) CHECK(is_zero(n_product(e12, x21, m).value));
  CHECK(locality(e12, x21) == 2);
  auto c1 = cend(1);
  auto xx = make_elem(c1, M("[[x]]"));
  CHECK(locality(xx, xx) == 2);
  CHECK(locality(xx, make_elem(c1, M("[[0]]"))) == 0);
  // x_ij o_1 x_jl = x_il in Cend_{3,Q}
  auto q3 = cendq("cendq:3:[1,1,x]");
  auto x12 = make_elem(q3, MatPoly::unit(3, 3, 0, 1, x));
  auto x23 = make_elem(q3, MatPoly::unit(3, 3, 1, 2, x));
  CHECK(n_product(x12, x23, 1) == make_elem(q3, MatPoly::unit(3, 3, 0, 2, x)));
}

TEST_CASE("locality equals one plus the lambda degree") {
  Rng rng(3);
  auto alg = cend(2);
  for (int i = 0; i < 30; ++i) {
    auto a = random_element(alg, rng, 3), b = random_element(alg, rng, 3);
    int N = locality(a, b);
    CHECK(N == degree(lambda_product(a, b).value, Var::L) + 1);
    for (int n = N; n < N + 3; ++n) CHECK(is_zero(n_product(a, b, n).value));
    if (N > 0) CHECK_FALSE(is_zero(n_product(a, b, N - 1).value));
  }
}

TEST_CASE("curly product") {
  auto c1 = cend(1);
  auto xx = make_elem(c1, M("[[x]]"));
  CHECK(curly_product(xx, xx).value[0] == M("[[x^2 - x*d - x*l]]"));
  auto one = make_elem(c1, M("[[1]]"));
  CHECK(curly_product(one, one).value[0] == M("[[1]]"));
}

TEST_CASE("right multiplication relation with curly products") {
  auto alg = cend(2);
  Rng rng(5);
  const MPoly m = MPoly::var(Var::M);
  auto curly = [&](const Blocks& v, Var outer) {
    MPoly o = MPoly::var(outer);
    return subst(v, Subst().bind(outer, -d - o));
  };
  for (int i = 0; i < 30; ++i) {
    auto a = random_value(alg->shape(), rng, 2), b = random_value(alg->shape(), rng, 2),
         c = random_value(alg->shape(), rng, 2);
    Blocks lhs = product(a, curly(product(b, c, m), Var::M), l);
    Blocks rhs = curly(product(product(a, b, l), c, m), Var::M);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("axioms hold on the concrete algebras") {
  for (const char* desc : {"cur:2", "cend:1", "cend:2", "cendq:2:[1,x]", "sum(cendq:1:[x],cendq:1:[x])"}) {
    auto alg = make_algebra(parse_algebra(desc));
    Rng rng(9, desc);
    auto cert = check_axioms(alg, random_triples(alg, rng, 40, 3));
    INFO(desc << " " << cert.to_json().dump());
    CHECK(cert.passed());
  }
}

TEST_CASE("direct sum cross products vanish") {
  auto alg = make_algebra(parse_algebra("sum(cend:1,cendq:1:[x])"));
  Blocks a = {M("[[x + d]]"), MatPoly(1, 1)};
  Blocks b = {MatPoly(1, 1), M("[[x^2]]")};
  CHECK(is_zero(product(a, b, l)));
  CHECK(is_zero(product(b, a, l)));
}

TEST_CASE("corrupted products") {
  auto alg = cend(2);
  Rng rng(13);
  auto triples = random_triples(alg, rng, 20, 2);
  // Dropping the x-shift leaves the current algebra over k[x]; that product is
  // still sesquilinear and associative, so the checker must accept it.
  ProductFn no_shift = [](const Blocks& a, const Blocks& b, const MPoly& lam) {
    Blocks r;
    for (std::size_t i = 0; i < a.size(); ++i) r.push_back(at_minus(a[i], lam) * shifted_d(b[i], lam));
    return r;
  };
  CHECK(check_axioms(alg, triples, no_shift).passed());
  // λ·(a o_λ b) keeps sesquilinearity but breaks associativity.
  ProductFn scaled = [](const Blocks& a, const Blocks& b, const MPoly& lam) { return scale(lam, product(a, b, lam)); };
  auto cert = check_axioms(alg, triples, scaled);
  CHECK(cert.verdict == Verdict::Fail);
  CHECK(cert.witness["law"] == "a o_l (b o_m c) = (a o_l b) o_{l+m} c");
  // Dropping the ∂-shift breaks sesquilinearity in the second argument.
  ProductFn no_d = [](const Blocks& a, const Blocks& b, const MPoly& lam) {
    Blocks r;
    for (std::size_t i = 0; i < a.size(); ++i)
      r.push_back(at_minus(a[i], lam) * substitute(b[i], Subst().bind(Var::X, x + lam)));
    return r;
  };
  auto cert2 = check_axioms(alg, triples, no_d);
  CHECK(cert2.verdict == Verdict::Fail);
  CHECK(cert2.witness["law"] == "a o_l (db) = (d+l)(a o_l b)");
}

TEST_CASE("theta") {
  auto q1 = cendq("cendq:1:[x]");
  CHECK(theta(make_elem(q1, M("[[x]]"))).value[0] == M("[[x - d]]"));
  auto q = cendq("cendq:2:[x,x]");
  auto qi = make_elem(q, M("[[x,0],[0,x]]"));
  CHECK(product(theta(qi).value, theta(qi).value, l) == theta(lambda_product(qi, qi)).value);
  CHECK(is_zero(theta(make_elem(q, MatPoly(2, 2))).value));
  for (const char* desc : {"cendq:2:[1,x]", "cendq:2:[x,x]"}) {
    auto alg = cendq(desc);
    Rng rng(17, desc);
    for (int i = 0; i < 25; ++i) {
      auto a = random_element(alg, rng, 3), b = random_element(alg, rng, 3);
      CHECK(product(theta(a).value, theta(b).value, l) == theta(lambda_product(a, b)).value);
      CHECK(theta_inverse(theta(a), alg) == a);
    }
  }
  CHECK_THROWS_AS(theta_inverse(make_elem(cend(1), M("[[1]]")), q1), InvariantError);
}

TEST_CASE("identity classification") {
  CHECK(identity_check(make_elem(cend(2), MatPoly::identity(2)), 3).passed());
  CHECK(identity_check(make_elem(make_algebra(AlgebraDesc::cur(2)), MatPoly::identity(2)), 0).passed());
  auto q1 = cendq("cendq:1:[x]");
  auto c = identity_check(make_elem(q1, M("[[x]]")), 3);
  CHECK(c.verdict == Verdict::Fail);
  CHECK(c.witness["classification"] == "neither");
  CHECK(classify_identity(make_elem(cend(2), MatPoly(2, 2)), 3) != IdentityClass::Unit);
  auto sum = make_algebra(parse_algebra("sum(cend:1,cend:1)"));
  CHECK(classify_identity(make_elem(sum, Blocks{M("[[1]]"), M("[[0]]")}), 2) == IdentityClass::Idempotent);
  CHECK(classify_identity(make_elem(sum, Blocks{M("[[1]]"), M("[[1]]")}), 2) == IdentityClass::Unit);
  CHECK(classify_identity(make_elem(cend(2), MatPoly::unit(2, 2, 0, 0)), 2) == IdentityClass::Idempotent);
}
