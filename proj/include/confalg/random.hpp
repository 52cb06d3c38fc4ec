#pragma once

#include "confalg/mpoly.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace confalg {

// Deterministic across platforms: mt19937_64 output is fixed by the standard,
// and bounded draws avoid the implementation-defined distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  Rng(std::uint64_t seed, std::string_view salt) : g_(seed ^ fnv1a(salt)) {}

  std::uint64_t next() { return g_(); }
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return lo + std::int64_t(g_() % std::uint64_t(hi - lo + 1));
  }
  bool chance(int percent) { return uniform(0, 99) < percent; }

  static std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  std::mt19937_64 g_;
};

// Random polynomial in the given variables with total degree <= deg; each
// monomial appears with probability density% and a coefficient in [-3, 3].
inline MPoly random_poly(Rng& rng, std::initializer_list<Var> vars, int deg, int density = 50) {
  std::vector<MPoly::Term> terms;
  std::vector<Var> vs(vars);
  std::array<int, kNumVars> e{};
  auto rec = [&](auto&& self, std::size_t k, int left) -> void {
    if (k == vs.size()) {
      if (rng.chance(density)) {
        std::int64_t c = rng.uniform(-3, 3);
        if (c != 0) terms.emplace_back(Monomial::from_exponents(e), Rat(c));
      }
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[std::size_t(vs[k])] = d;
      self(self, k + 1, left - d);
    }
    e[std::size_t(vs[k])] = 0;
  };
  rec(rec, 0, deg);
  return MPoly::from_terms(std::move(terms));
}

}  // namespace confalg
