#pragma once

#include "confalg/matpoly.hpp"

#include <compare>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace confalg {

struct DescriptorError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvariantError : std::domain_error {
  using std::domain_error::domain_error;
};
struct BoundError : std::range_error {
  using std::range_error::range_error;
};

// Every algebra and bimodule in scope is a free k[∂]-module of matrices, one
// block per direct summand, whose row i is divisible by a fixed polynomial
// q_i(x). Current-algebra blocks additionally have x-free entries.
using Blocks = std::vector<MatPoly>;

struct BlockShape {
  int rows = 0;
  int cols = 0;
  std::vector<MPoly> row_factor;  // one per row, polynomials in x
  bool x_free = false;
};

// H-generator q_i(x) x^k E_ij of block `block` (0-based indices).
struct GenIndex {
  int block = 0;
  int i = 0;
  int j = 0;
  int k = 0;
  friend auto operator<=>(const GenIndex&, const GenIndex&) = default;
  std::string to_string() const;
};

using Decomposition = std::vector<std::pair<GenIndex, MPoly>>;

class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<BlockShape> blocks);

  const std::vector<BlockShape>& blocks() const { return blocks_; }
  std::size_t num_blocks() const { return blocks_.size(); }

  Blocks zero() const;
  Blocks gen(const GenIndex& g) const;
  // Generators with x-exponent k <= max_k (only k = 0 for x-free blocks).
  std::vector<GenIndex> generators(int max_k) const;
  // value = Σ coeff · gen with coeff free of x. Throws InvariantError when a
  // row is not divisible by its factor or an x-free block contains x.
  Decomposition decompose(const Blocks& value) const;
  Blocks recompose(const Decomposition& d) const;
  // Shape and divisibility check; when `params` is false, λ, μ, ν must not occur.
  void validate(const Blocks& value, bool params = false) const;
  bool same_layout(const Blocks& value) const;

 private:
  std::vector<BlockShape> blocks_;
};

class AlgebraDesc {
 public:
  enum class Kind { Cur, Cend, CendQ, Sum };

  static AlgebraDesc cur(int n);
  static AlgebraDesc cend(int n);
  // Q = diag(f_1, ..., f_n) with f_1 | f_2 | ... | f_n, polynomials in x.
  static AlgebraDesc cendq(std::vector<MPoly> q);
  // Nested sums are flattened.
  static AlgebraDesc sum(const std::vector<AlgebraDesc>& parts);

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  const std::vector<MPoly>& q() const { return q_; }
  const std::vector<AlgebraDesc>& summands() const { return summands_; }
  // The simple (non-sum) algebras making up the blocks, in order.
  std::vector<AlgebraDesc> parts() const;

  Shape shape() const;
  std::string to_string() const;
  friend bool operator==(const AlgebraDesc& a, const AlgebraDesc& b);

 private:
  Kind kind_ = Kind::Cend;
  int n_ = 1;
  std::vector<MPoly> q_;
  std::vector<AlgebraDesc> summands_;
};

// cur:n, cend:n, cendq:n:[f1,...,fn], sum(desc,desc,...)
AlgebraDesc parse_algebra(std::string_view text);

// Descriptor plus its precomputed shape; shared by every element.
class Algebra {
 public:
  explicit Algebra(AlgebraDesc d) : desc_(std::move(d)), shape_(desc_.shape()) {}
  const AlgebraDesc& desc() const { return desc_; }
  const Shape& shape() const { return shape_; }

 private:
  AlgebraDesc desc_;
  Shape shape_;
};

using AlgPtr = std::shared_ptr<const Algebra>;
AlgPtr make_algebra(const AlgebraDesc& d);

// Element of a conformal algebra. Values returned by products may carry the
// formal parameters λ, μ; elements built with make_elem may not.
struct ConfElem {
  AlgPtr alg;
  Blocks value;
};

ConfElem make_elem(const AlgPtr& alg, Blocks value);
ConfElem make_elem(const AlgPtr& alg, const MatPoly& value);
bool operator==(const ConfElem& a, const ConfElem& b);

}  // namespace confalg
