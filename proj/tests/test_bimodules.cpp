#include "confalg/bimodule.hpp"
#include "confalg/parse.hpp"
#include "doctest.h"

using namespace confalg;

namespace {

MPoly P(const char* s) { return parse_poly(s); }
MatPoly M(const char* s) { return parse_matrix(s); }
const MPoly x = MPoly::var(Var::X), l = MPoly::var(Var::L);

}  // namespace

TEST_CASE("bimodule grammar") {
  CHECK(parse_bimodule("bimod:z2sum") == BimodDesc::z2sum());
  CHECK(parse_bimodule("bimod:rect:1:2") == BimodDesc::rect(1, 2));
  CHECK(parse_bimodule("bimod:twist1:x^2") == BimodDesc::twist1(x * x));
  CHECK(parse_bimodule("bimod:regular:cend:2") == BimodDesc::regular(AlgebraDesc::cend(2)));
  for (const char* s : {"bimod:z2sum", "bimod:rect:2:3", "bimod:twist1:x^3 + x", "bimod:regular:cendq:2:[1,x]"})
    CHECK(parse_bimodule(parse_bimodule(s).to_string()) == parse_bimodule(s));
  CHECK_THROWS_AS(parse_bimodule("bimod:rect:3:2"), DescriptorError);
  CHECK_THROWS_AS(parse_bimodule("bimod:twist1:x"), DescriptorError);
  CHECK_THROWS_AS(parse_bimodule("bimod:rect:a:2"), DescriptorError);
  CHECK_THROWS_AS(parse_bimodule("rect:1:2"), DescriptorError);
}

TEST_CASE("z2sum actions") {
  auto mod = make_bimodule(BimodDesc::z2sum());
  auto& C = mod->base();
  auto xe = make_elem(C, Blocks{M("[[x]]"), M("[[0]]")});
  auto ye = make_elem(C, Blocks{M("[[0]]"), M("[[x]]")});
  auto z2 = make_bimod_elem(mod, {M("[[x^2]]")});
  CHECK(left_action(xe, z2).value[0] == M("[[x^3 + l*x^2]]"));
  CHECK(is_zero(left_action(ye, z2).value));
  CHECK(is_zero(right_action(z2, xe).value));
  CHECK(right_action(z2, ye).value[0] == M("[[x^3 + l*x^2]]"));
  CHECK_THROWS_AS(make_bimod_elem(mod, {M("[[x]]")}), InvariantError);
  // f = d, g = x: z^2 (z+λ) (-λ) (z+λ)
  auto xf = make_elem(C, Blocks{M("[[x*d]]"), M("[[0]]")});
  auto zg = make_bimod_elem(mod, {M("[[x^3]]")});
  CHECK(left_action(xf, zg).value[0](0, 0) == -(x * x * (x + l) * l * (x + l)));
}

TEST_CASE("twisted Cend_1 actions") {
  auto mod = make_bimodule(BimodDesc::twist1(x * x));
  auto f1 = make_elem(mod->base(), M("[[x^2]]"));
  auto one = make_bimod_elem(mod, {M("[[1]]")});
  CHECK(left_action(f1, one).value[0] == M("[[x^2 + 2*l*x + l^2]]"));
  CHECK(right_action(one, f1).value[0] == M("[[x^2 + 2*l*x + l^2]]"));
  // The left action is the θ-twisted regular action.
  Rng rng(21);
  for (int i = 0; i < 25; ++i) {
    auto a = random_element(mod->base(), rng, 3);
    Blocks h = random_value(mod->shape(), rng, 3);
    CHECK(mod->left(a.value, h, l) == product(theta(a).value, h, l));
  }
}

TEST_CASE("rect actions see one summand each") {
  auto mod = make_bimodule(BimodDesc::rect(1, 2));
  auto& C = mod->base();
  auto q = make_elem(C, Blocks{M("[[x]]"), MatPoly(2, 2)});
  auto qp = make_elem(C, Blocks{MatPoly(1, 1), M("[[1,0],[0,x]]")});
  auto X = make_bimod_elem(mod, {M("[[1, 0]]")});
  CHECK(is_zero(right_action(X, q).value));
  CHECK(is_zero(left_action(qp, X).value));
  CHECK(left_action(q, X).value[0] == M("[[x + l, 0]]"));
  CHECK(right_action(X, qp).value[0] == M("[[1, 0]]"));
  Rng rng(22);
  auto mod23 = make_bimodule(BimodDesc::rect(2, 3));
  for (int i = 0; i < 20; ++i) {
    Blocks a = random_value(mod23->base()->shape(), rng, 3);
    Blocks u = random_value(mod23->shape(), rng, 3);
    Blocks only_b = a, only_a = a;
    only_b[0] = MatPoly(2, 2);
    only_a[1] = MatPoly(3, 3);
    CHECK(mod23->left(a, u, l) == mod23->left(only_a, u, l));
    CHECK(mod23->right(u, a, l) == mod23->right(u, only_b, l));
  }
}

TEST_CASE("flat embedding and truncation") {
  CHECK(embed_flat(MatPoly::identity(1), 2) == M("[[1, 0]]"));
  CHECK(truncate(MatPoly::unit(2, 2, 0, 1), 1) == M("[[0, 1]]"));
  CHECK(MatPoly::identity(2) * truncate(MatPoly::unit(3, 3, 1, 2), 2) == MatPoly::unit(2, 3, 1, 2));
  CHECK_THROWS_AS(truncate(MatPoly::identity(2), 3), DimensionError);
  Rng rng(23);
  Shape s2({BlockShape{2, 2, {}, false}}), s3({BlockShape{3, 3, {}, false}});
  for (int i = 0; i < 20; ++i) {
    MatPoly a1 = random_value(s2, rng, 2)[0], a2 = random_value(s2, rng, 2)[0];
    MatPoly b1 = random_value(s3, rng, 2)[0], b2 = random_value(s3, rng, 2)[0];
    CHECK(embed_flat(a1, 3) * b1 == a1 * truncate(b1, 2));
    CHECK(a1 * embed_flat(a2, 3) == embed_flat(a1 * a2, 3));
    CHECK(truncate(b1, 2) * b2 == truncate(b1 * b2, 2));
  }
}

TEST_CASE("bimodule axioms on every descriptor") {
  for (const char* s : {"bimod:regular:cend:2", "bimod:z2sum", "bimod:rect:1:2", "bimod:rect:2:3", "bimod:twist1:x^2",
                        "bimod:twist1:x^3 - 2x + 1", "bimod:regular:cendq:2:[1,x]"}) {
    auto mod = make_bimodule(parse_bimodule(s));
    Rng rng(29, s);
    auto cert = check_bimodule_axioms(mod, random_bimod_samples(mod, rng, 30, 3));
    INFO(s << " " << cert.to_json().dump());
    CHECK(cert.passed());
  }
}
