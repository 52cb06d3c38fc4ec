#include "confalg/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace confalg {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 uabs(i128 v) { return v < 0 ? u128(-v) : u128(v); }

u128 gcd128(u128 a, u128 b) {
  if ((a >> 64) == 0 && (b >> 64) == 0) return std::gcd(std::uint64_t(a), std::uint64_t(b));
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) { return v > i128(INT64_MIN) && v <= i128(INT64_MAX); }

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(std::uint64_t(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(std::uint64_t(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rat::Rat(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("zero denominator");
  *this = from_i128(n, d);
}

Rat Rat::from_i128(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 g = gcd128(uabs(n), u128(d));
  if (g > 1) {
    n /= i128(g);
    d /= i128(g);
  }
  if (fits64(n) && fits64(d)) {
    Rat r;
    r.num_ = std::int64_t(n);
    r.den_ = std::int64_t(d);
    return r;
  }
  mpq_class q(to_mpz(n), to_mpz(d));
  Rat r;
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rat Rat::from_mpq(mpq_class q) {
  q.canonicalize();
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != INT64_MIN) {
    Rat r;
    r.num_ = n.get_si();
    r.den_ = d.get_si();
    return r;
  }
  Rat r;
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rat Rat::parse(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(str, 10) != 0) throw std::invalid_argument("bad rational literal: " + str);
  if (q.get_den() == 0) throw std::domain_error("zero denominator");
  return from_mpq(q);
}

bool Rat::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rat::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rat::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Rat::num_str() const { return big_ ? big_->get_num().get_str() : std::to_string(num_); }
std::string Rat::den_str() const { return big_ ? big_->get_den().get_str() : std::to_string(den_); }

std::string Rat::to_string() const {
  if (is_integer()) return num_str();
  return num_str() + "/" + den_str();
}

Rat Rat::operator-() const {
  if (big_) return from_mpq(-*big_);
  Rat r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rat operator+(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(a.num_, b.num_, &s) && s != INT64_MIN) {
        Rat r;
        r.num_ = s;
        return r;
      }
    }
    return Rat::from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  return Rat::from_mpq(a.to_mpq() + b.to_mpq());
}

Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }

Rat operator*(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      std::int64_t p;
      if (!__builtin_mul_overflow(a.num_, b.num_, &p) && p != INT64_MIN) {
        Rat r;
        r.num_ = p;
        return r;
      }
    }
    return Rat::from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  return Rat::from_mpq(a.to_mpq() * b.to_mpq());
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_) return Rat::from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  return Rat::from_mpq(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

bool operator<(const Rat& a, const Rat& b) {
  if (!a.big_ && !b.big_) return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  return a.to_mpq() < b.to_mpq();
}

std::size_t Rat::hash() const {
  if (!big_) return std::hash<std::int64_t>()(num_) * 31 + std::hash<std::int64_t>()(den_);
  return std::hash<std::string>()(to_string());
}

Rat factorial(int n) {
  Rat r(1);
  for (int i = 2; i <= n; ++i) r *= Rat(i);
  return r;
}

Rat binomial(int n, int k) {
  if (k < 0 || k > n) return Rat(0);
  Rat r(1);
  for (int i = 1; i <= k; ++i) r = r * Rat(n - k + i) / Rat(i);
  return r;
}

}  // namespace confalg
