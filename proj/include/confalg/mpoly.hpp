#pragma once

#include "confalg/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace confalg {

// The fixed alphabet: ∂, x, λ, μ, ν.
enum class Var : std::uint8_t { D = 0, X = 1, L = 2, M = 3, N = 4 };
inline constexpr int kNumVars = 5;

const char* var_name(Var v);

// Exponent vector packed into 12-bit fields. Bit 11 of each field is a guard:
// exponents must stay below 2048, which keeps field sums from carrying.
class Monomial {
 public:
  static constexpr int kBits = 12;
  static constexpr std::uint64_t kField = (1u << kBits) - 1;
  static constexpr int kMaxExp = (1 << (kBits - 1)) - 1;

  constexpr Monomial() = default;
  static Monomial of(Var v, int e = 1);
  static Monomial from_exponents(const std::array<int, kNumVars>& e);

  int exp(Var v) const { return int((bits_ >> (kBits * int(v))) & kField); }
  Monomial with(Var v, int e) const;
  Monomial without(Var v) const { return with(v, 0); }
  std::array<int, kNumVars> exponents() const;
  int total_degree() const;
  bool is_one() const { return bits_ == 0; }
  std::uint64_t key() const { return bits_; }
  bool divides(Monomial other) const;

  friend Monomial operator*(Monomial a, Monomial b);
  // requires b | a
  friend Monomial operator/(Monomial a, Monomial b);
  friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
  friend bool operator<(Monomial a, Monomial b) { return a.bits_ < b.bits_; }

 private:
  std::uint64_t bits_ = 0;
};

class MPoly {
 public:
  using Term = std::pair<Monomial, Rat>;

  MPoly() = default;
  MPoly(const Rat& c);  // NOLINT(google-explicit-constructor)
  MPoly(std::int64_t c) : MPoly(Rat(c)) {}  // NOLINT(google-explicit-constructor)
  static MPoly var(Var v) { return monomial(Monomial::of(v)); }
  static MPoly monomial(Monomial m, const Rat& c = Rat(1));
  // Terms in any order, duplicates and zeros allowed.
  static MPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<Rat> constant_value() const;
  Rat constant_term() const;
  // -1 for the zero polynomial.
  int degree(Var v) const;
  int total_degree() const;
  bool involves(Var v) const { return degree(v) > 0; }
  // Coefficient of v^k, as a polynomial free of v.
  MPoly coeff(Var v, int k) const;
  // Leading term under the packed-key order.
  const Term& lead() const { return terms_.back(); }

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b);

  MPoly mul_monomial(Monomial m, const Rat& c = Rat(1)) const;
  // Exact division by a monomial; nullopt when some term is not divisible.
  std::optional<MPoly> div_monomial(Monomial m) const;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::vector<Term> terms_;  // strictly increasing keys, nonzero coefficients
};

MPoly pow(const MPoly& p, int e);

// Simultaneous substitution. Unbound variables are left alone.
class Subst {
 public:
  Subst& bind(Var v, MPoly p) {
    to_[std::size_t(v)] = std::move(p);
    return *this;
  }
  const std::optional<MPoly>& get(Var v) const { return to_[std::size_t(v)]; }
  bool empty() const;

 private:
  std::array<std::optional<MPoly>, kNumVars> to_;
};

MPoly substitute(const MPoly& p, const Subst& s);

// result[n] = n! * coefficient of v^n, so that p = Σ v^n/n! result[n].
std::vector<MPoly> divided_coeffs(const MPoly& p, Var v);
MPoly from_divided_coeffs(const std::vector<MPoly>& c, Var v);

MPoly derivative(const MPoly& p, Var v, int times = 1);

// Division with remainder in the variable v. The leading coefficient of f in v
// must be a nonzero constant.
std::pair<MPoly, MPoly> divmod(const MPoly& p, const MPoly& f, Var v);
std::optional<MPoly> exact_div(const MPoly& p, const MPoly& f, Var v);

}  // namespace confalg
