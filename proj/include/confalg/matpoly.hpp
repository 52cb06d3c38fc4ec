#pragma once

#include "confalg/mpoly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace confalg {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class MatPoly {
 public:
  MatPoly() = default;
  MatPoly(int rows, int cols);
  static MatPoly identity(int n);
  // Matrix unit e_ij, 0-based indices, optionally scaled.
  static MatPoly unit(int rows, int cols, int i, int j, const MPoly& c = MPoly(1));
  static MatPoly diag(const std::vector<MPoly>& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const MPoly& operator()(int i, int j) const { return e_[std::size_t(i) * cols_ + j]; }
  MPoly& operator()(int i, int j) { return e_[std::size_t(i) * cols_ + j]; }
  const std::vector<MPoly>& entries() const { return e_; }

  bool is_zero() const;
  int degree(Var v) const;

  MatPoly& operator+=(const MatPoly& o);
  MatPoly& operator-=(const MatPoly& o);
  MatPoly operator-() const;
  friend MatPoly operator+(const MatPoly& a, const MatPoly& b);
  friend MatPoly operator-(const MatPoly& a, const MatPoly& b);
  friend MatPoly operator*(const MatPoly& a, const MatPoly& b);
  friend MatPoly operator*(const MPoly& c, const MatPoly& a);
  friend bool operator==(const MatPoly& a, const MatPoly& b);

  MatPoly block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const MatPoly& b);

  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<MPoly> e_;
};

MatPoly substitute(const MatPoly& a, const Subst& s);

}  // namespace confalg
