#include "confalg/mpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace confalg {

namespace {

constexpr std::uint64_t guard_mask() {
  std::uint64_t m = 0;
  for (int i = 0; i < kNumVars; ++i) m |= std::uint64_t(1) << (Monomial::kBits * i + Monomial::kBits - 1);
  return m;
}

// Sort by key and merge equal keys, dropping zeros.
std::vector<MPoly::Term> normalize(std::vector<MPoly::Term> v) {
  if (v.empty()) return v;
  bool sorted = !v[0].second.is_zero();
  for (std::size_t i = 1; sorted && i < v.size(); ++i)
    sorted = v[i - 1].first < v[i].first && !v[i].second.is_zero();
  if (sorted) return v;
  std::sort(v.begin(), v.end(), [](const MPoly::Term& a, const MPoly::Term& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    Monomial m = v[i].first;
    Rat c = std::move(v[i].second);
    std::size_t j = i + 1;
    for (; j < v.size() && v[j].first == m; ++j) c += v[j].second;
    if (!c.is_zero()) v[out++] = {m, std::move(c)};
    i = j;
  }
  v.resize(out);
  return v;
}

}  // namespace

const char* var_name(Var v) {
  switch (v) {
    case Var::D: return "d";
    case Var::X: return "x";
    case Var::L: return "l";
    case Var::M: return "m";
    case Var::N: return "n2";
  }
  return "?";
}

Monomial Monomial::of(Var v, int e) { return Monomial().with(v, e); }

Monomial Monomial::from_exponents(const std::array<int, kNumVars>& e) {
  Monomial m;
  for (int i = 0; i < kNumVars; ++i) m = m.with(Var(i), e[i]);
  return m;
}

Monomial Monomial::with(Var v, int e) const {
  if (e < 0 || e > kMaxExp) throw std::overflow_error("exponent out of range");
  int sh = kBits * int(v);
  Monomial m;
  m.bits_ = (bits_ & ~(kField << sh)) | (std::uint64_t(e) << sh);
  return m;
}

std::array<int, kNumVars> Monomial::exponents() const {
  std::array<int, kNumVars> e{};
  for (int i = 0; i < kNumVars; ++i) e[i] = exp(Var(i));
  return e;
}

int Monomial::total_degree() const {
  int s = 0;
  for (int i = 0; i < kNumVars; ++i) s += exp(Var(i));
  return s;
}

bool Monomial::divides(Monomial other) const {
  for (int i = 0; i < kNumVars; ++i)
    if (exp(Var(i)) > other.exp(Var(i))) return false;
  return true;
}

Monomial operator*(Monomial a, Monomial b) {
  Monomial m;
  m.bits_ = a.bits_ + b.bits_;
  if (m.bits_ & guard_mask()) throw std::overflow_error("exponent overflow in monomial product");
  return m;
}

Monomial operator/(Monomial a, Monomial b) {
  if (!b.divides(a)) throw std::domain_error("monomial not divisible");
  Monomial m;
  m.bits_ = a.bits_ - b.bits_;
  return m;
}

MPoly::MPoly(const Rat& c) {
  if (!c.is_zero()) terms_.emplace_back(Monomial(), c);
}

MPoly MPoly::monomial(Monomial m, const Rat& c) {
  MPoly p;
  if (!c.is_zero()) p.terms_.emplace_back(m, c);
  return p;
}

MPoly MPoly::from_terms(std::vector<Term> terms) {
  MPoly p;
  p.terms_ = normalize(std::move(terms));
  return p;
}

bool MPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

std::optional<Rat> MPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (is_constant()) return terms_[0].second;
  return std::nullopt;
}

Rat MPoly::constant_term() const {
  if (!terms_.empty() && terms_[0].first.is_one()) return terms_[0].second;
  return Rat(0);
}

int MPoly::degree(Var v) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exp(v));
  return d;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

MPoly MPoly::coeff(Var v, int k) const {
  std::vector<Term> out;
  for (const auto& [m, c] : terms_)
    if (m.exp(v) == k) out.emplace_back(m.without(v), c);
  // Clearing one field keeps the relative order of the surviving keys.
  MPoly p;
  p.terms_ = std::move(out);
  return p;
}

MPoly MPoly::operator-() const {
  MPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

MPoly& MPoly::operator+=(const MPoly& o) { return *this = *this + o; }
MPoly& MPoly::operator-=(const MPoly& o) { return *this = *this - o; }

namespace {

template <bool Negate>
MPoly merge(const std::vector<MPoly::Term>& a, const std::vector<MPoly::Term>& b) {
  std::vector<MPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, Negate ? -b[j].second : b[j].second);
      ++j;
    } else {
      Rat c = Negate ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return MPoly::from_terms(std::move(out));
}

}  // namespace

MPoly operator+(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return merge<false>(a.terms_, b.terms_);
}

MPoly operator-(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) return a;
  return merge<true>(a.terms_, b.terms_);
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly();
  if (a.terms_.size() == 1) return b.mul_monomial(a.terms_[0].first, a.terms_[0].second);
  if (b.terms_.size() == 1) return a.mul_monomial(b.terms_[0].first, b.terms_[0].second);
  std::vector<MPoly::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.emplace_back(ma * mb, ca * cb);
  return MPoly::from_terms(std::move(out));
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].first == b.terms_[i].first) || !(a.terms_[i].second == b.terms_[i].second)) return false;
  return true;
}

MPoly MPoly::mul_monomial(Monomial m, const Rat& c) const {
  if (c.is_zero()) return MPoly();
  MPoly p;
  p.terms_.reserve(terms_.size());
  bool unit = c.is_one();
  // Multiplying every key by the same monomial preserves their order.
  for (const auto& [mm, cc] : terms_) p.terms_.emplace_back(mm * m, unit ? cc : cc * c);
  return p;
}

std::optional<MPoly> MPoly::div_monomial(Monomial m) const {
  MPoly p;
  p.terms_.reserve(terms_.size());
  for (const auto& [mm, cc] : terms_) {
    if (!m.divides(mm)) return std::nullopt;
    p.terms_.emplace_back(mm / m, cc);
  }
  return p;
}

std::size_t MPoly::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& [m, c] : terms_) {
    h ^= m.key() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= c.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Term*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
    int da = a->first.total_degree(), db = b->first.total_degree();
    if (da != db) return da > db;
    return a->first.exponents() > b->first.exponents();
  });
  std::string s;
  bool first = true;
  for (const Term* t : order) {
    Rat c = t->second;
    bool neg = c.sign() < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string mon;
    for (int i = 0; i < kNumVars; ++i) {
      int e = t->first.exp(Var(i));
      if (e == 0) continue;
      if (!mon.empty()) mon += "*";
      mon += var_name(Var(i));
      if (e > 1) mon += "^" + std::to_string(e);
    }
    if (mon.empty()) {
      s += c.to_string();
    } else if (c.is_one()) {
      s += mon;
    } else {
      s += c.to_string() + "*" + mon;
    }
  }
  return s;
}

MPoly pow(const MPoly& p, int e) {
  if (e < 0) throw std::domain_error("negative exponent");
  MPoly r(1), b = p;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool Subst::empty() const {
  for (const auto& t : to_)
    if (t) return false;
  return true;
}

MPoly substitute(const MPoly& p, const Subst& s) {
  if (p.is_zero() || s.empty()) return p;
  std::array<int, kNumVars> maxe{};
  for (const auto& [m, c] : p.terms())
    for (int i = 0; i < kNumVars; ++i)
      if (s.get(Var(i))) maxe[i] = std::max(maxe[i], m.exp(Var(i)));
  std::array<std::vector<MPoly>, kNumVars> powers;
  for (int i = 0; i < kNumVars; ++i) {
    if (!s.get(Var(i))) continue;
    powers[i].reserve(maxe[i] + 1);
    powers[i].emplace_back(1);
    for (int e = 1; e <= maxe[i]; ++e) powers[i].push_back(powers[i].back() * *s.get(Var(i)));
  }
  std::vector<MPoly::Term> acc;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    MPoly factor(c);
    for (int i = 0; i < kNumVars; ++i) {
      if (!s.get(Var(i))) continue;
      int e = m.exp(Var(i));
      rest = rest.without(Var(i));
      if (e > 0) factor = factor * powers[i][e];
    }
    for (const auto& [fm, fc] : factor.terms()) acc.emplace_back(fm * rest, fc);
  }
  return MPoly::from_terms(std::move(acc));
}

std::vector<MPoly> divided_coeffs(const MPoly& p, Var v) {
  int d = std::max(0, p.degree(v));
  std::vector<MPoly> out;
  out.reserve(d + 1);
  for (int n = 0; n <= d; ++n) out.push_back(factorial(n) * p.coeff(v, n));
  return out;
}

MPoly from_divided_coeffs(const std::vector<MPoly>& c, Var v) {
  MPoly r;
  for (std::size_t n = 0; n < c.size(); ++n)
    r += (Rat(1) / factorial(int(n))) * c[n].mul_monomial(Monomial::of(v, int(n)));
  return r;
}

MPoly derivative(const MPoly& p, Var v, int times) {
  std::vector<MPoly::Term> out;
  for (const auto& [m, c] : p.terms()) {
    int e = m.exp(v);
    if (e < times) continue;
    Rat f(1);
    for (int k = 0; k < times; ++k) f *= Rat(e - k);
    out.emplace_back(m.with(v, e - times), c * f);
  }
  return MPoly::from_terms(std::move(out));
}

std::pair<MPoly, MPoly> divmod(const MPoly& p, const MPoly& f, Var v) {
  int df = f.degree(v);
  if (df < 0) throw std::domain_error("division by zero polynomial");
  auto lc = f.coeff(v, df).constant_value();
  if (!lc || lc->is_zero()) throw std::domain_error("divisor leading coefficient is not a constant");
  Rat inv = Rat(1) / *lc;
  MPoly q, r = p;
  int dr;
  while ((dr = r.degree(v)) >= df) {
    MPoly t = inv * r.coeff(v, dr).mul_monomial(Monomial::of(v, dr - df));
    q += t;
    r -= t * f;
  }
  return {q, r};
}

std::optional<MPoly> exact_div(const MPoly& p, const MPoly& f, Var v) {
  auto [q, r] = divmod(p, f, v);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

}  // namespace confalg
