#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace confalg {

// Exact rational. Values that fit in int64 num/den stay inline; anything
// larger is promoted to a shared immutable mpq_class. A value is always held
// in its smallest form, so equality never has to compare across the two.
class Rat {
 public:
  Rat() = default;
  Rat(std::int64_t n) {  // NOLINT(google-explicit-constructor)
    if (n != INT64_MIN) num_ = n; else *this = from_mpq(mpq_class(static_cast<long>(n)));
  }
  Rat(std::int64_t n, std::int64_t d);
  explicit Rat(const mpq_class& q) { *this = from_mpq(q); }

  // "n" or "n/d" with optional leading sign.
  static Rat parse(std::string_view s);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  mpq_class to_mpq() const;
  // Inline numerator and denominator, meaningful only when !is_big().
  bool is_big() const { return bool(big_); }
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }
  std::string num_str() const;
  std::string den_str() const;
  std::string to_string() const;

  Rat operator-() const;
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  friend bool operator==(const Rat& a, const Rat& b);
  friend bool operator<(const Rat& a, const Rat& b);

  std::size_t hash() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;

  static Rat from_i128(__int128 n, __int128 d);
  static Rat from_mpq(mpq_class q);
};

Rat factorial(int n);
Rat binomial(int n, int k);

}  // namespace confalg
