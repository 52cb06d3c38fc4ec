#include "confalg/matpoly.hpp"

namespace confalg {

namespace {

void same_shape(const MatPoly& a, const MatPoly& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("shape mismatch: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

}  // namespace

MatPoly::MatPoly(int rows, int cols) : rows_(rows), cols_(cols), e_(std::size_t(rows) * cols) {
  if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

MatPoly MatPoly::identity(int n) {
  MatPoly m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = MPoly(1);
  return m;
}

MatPoly MatPoly::unit(int rows, int cols, int i, int j, const MPoly& c) {
  if (i < 0 || i >= rows || j < 0 || j >= cols) throw DimensionError("matrix unit index out of range");
  MatPoly m(rows, cols);
  m(i, j) = c;
  return m;
}

MatPoly MatPoly::diag(const std::vector<MPoly>& d) {
  MatPoly m(int(d.size()), int(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i];
  return m;
}

bool MatPoly::is_zero() const {
  for (const auto& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

int MatPoly::degree(Var v) const {
  int d = -1;
  for (const auto& p : e_) d = std::max(d, p.degree(v));
  return d;
}

MatPoly& MatPoly::operator+=(const MatPoly& o) {
  same_shape(*this, o);
  for (std::size_t k = 0; k < e_.size(); ++k)
    if (!o.e_[k].is_zero()) e_[k] += o.e_[k];
  return *this;
}

MatPoly& MatPoly::operator-=(const MatPoly& o) {
  same_shape(*this, o);
  for (std::size_t k = 0; k < e_.size(); ++k)
    if (!o.e_[k].is_zero()) e_[k] -= o.e_[k];
  return *this;
}

MatPoly MatPoly::operator-() const {
  MatPoly m = *this;
  for (auto& p : m.e_) p = -p;
  return m;
}

MatPoly operator+(const MatPoly& a, const MatPoly& b) {
  MatPoly m = a;
  m += b;
  return m;
}

MatPoly operator-(const MatPoly& a, const MatPoly& b) {
  MatPoly m = a;
  m -= b;
  return m;
}

MatPoly operator*(const MatPoly& a, const MatPoly& b) {
  if (a.cols_ != b.rows_)
    throw DimensionError("cannot multiply " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " by " +
                         std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  MatPoly m(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const MPoly& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const MPoly& bkj = b(k, j);
        if (!bkj.is_zero()) m(i, j) += aik * bkj;
      }
    }
  return m;
}

MatPoly operator*(const MPoly& c, const MatPoly& a) {
  MatPoly m = a;
  for (auto& p : m.e_)
    if (!p.is_zero()) p = c * p;
  return m;
}

bool operator==(const MatPoly& a, const MatPoly& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

MatPoly MatPoly::block(int r0, int c0, int nr, int nc) const {
  if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  MatPoly m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void MatPoly::set_block(int r0, int c0, const MatPoly& b) {
  if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("block out of range");
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

std::string MatPoly::to_string() const {
  std::string s = "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) s += ",";
    s += "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) s += ",";
      s += (*this)(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

MatPoly substitute(const MatPoly& a, const Subst& s) {
  MatPoly m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) m(i, j) = substitute(a(i, j), s);
  return m;
}

}  // namespace confalg
