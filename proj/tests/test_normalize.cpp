#include "confalg/normalize.hpp"
#include "doctest.h"

using namespace confalg;

namespace {

struct Setup {
  int n;
  AlgPtr C;
  BimodPtr R;
  explicit Setup(int n_) : n(n_) {
    C = make_algebra(AlgebraDesc::cendq(corner_q(n)));
    R = make_bimodule(BimodDesc::regular(C->desc()));
  }
  // d₁σ with σ zero on C₀, so it vanishes on C₀ × C₀
  Cochain2 coboundary(std::uint64_t seed) const {
    Cochain1 r = random_cochain1(C, R, seed, 2);
    const Shape ms = R->shape();
    const int k = n;
    return d1(Cochain1::from_generators(
        C, R, [r, ms, k](const GenIndex& g) { return (g.i < k - 1 && g.j < k - 1) ? ms.zero() : r.at(g); }));
  }
};

bool all_true(const nlohmann::json& j) {
  for (const auto& [k, v] : j.items())
    if (!v.get<bool>()) return false;
  return true;
}

}  // namespace

TEST_CASE("zero is already normal") {
  Setup s(2);
  auto out = normalize_cend_nq(Cochain2::zero(s.C, s.R));
  CHECK(out.cert.passed());
  CHECK(out.step3_degrees.size() == 1);
  CHECK(all_true(normal_form_conditions(out.phi, 2)));
}

TEST_CASE("random coboundaries normalize") {
  Setup s(2);
  for (std::uint64_t seed = 40; seed < 45; ++seed) {
    CAPTURE(seed);
    auto phi = s.coboundary(seed);
    CHECK(normal_form_conditions(phi, 2)["phi(C0,C0)=0"] == true);
    auto out = normalize_cend_nq(phi);
    REQUIRE(out.cert.passed());
    CHECK(all_true(out.cert.witness["conditions"]));
    const auto& deg = out.step3_degrees;
    for (std::size_t i = 1; i < deg.size(); ++i) CHECK(deg[i] < deg[i - 1]);
    CHECK(deg.back() <= 0);
    // still cohomologous to the input: the difference is a coboundary, so a cocycle
    CHECK(cocycle_check(out.phi.plus(phi, Rat(-1)), 1).passed());
  }
}

TEST_CASE("n = 3") {
  Setup s(3);
  CHECK(normalize_cend_nq(s.coboundary(7)).cert.passed());
}

TEST_CASE("preconditions") {
  Setup s(2);
  // a coboundary not vanishing on C₀ × C₀
  auto phi = d1(random_cochain1(s.C, s.R, 3, 2));
  auto out = normalize_cend_nq(phi);
  CHECK(out.cert.verdict == Verdict::Error);

  auto other = make_algebra(AlgebraDesc::cendq({MPoly::var(Var::X), MPoly::var(Var::X)}));
  auto R = make_bimodule(BimodDesc::regular(other->desc()));
  CHECK_THROWS_AS(normalize_cend_nq(Cochain2::zero(other, R)), std::invalid_argument);
}
