#pragma once

#include "confalg/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace confalg {

using SparseRow = std::vector<std::pair<int, Rat>>;  // strictly increasing columns

struct AugmentedResult;

// Row echelon form over Q, built one row at a time. Each stored row keeps the
// combination of inserted rows it came from, so a right-hand side given per
// inserted row can be carried through afterwards.
class ExactEchelon {
 public:
  explicit ExactEchelon(int ncols);

  // Adds a row named `id`; true when the rank grew.
  bool add(const SparseRow& row, int id);
  int rank() const { return int(rows_.size()); }
  int ncols() const { return ncols_; }

  // Solution of the inserted system with free columns set to zero. Rows that
  // did not raise the rank are ignored, so the caller must verify.
  SparseRow solve(const std::function<Rat(int id)>& rhs) const;

 private:
  friend AugmentedResult solve_augmented(int, const std::vector<SparseRow>&, const std::vector<Rat>&);

  struct Pivot {
    SparseRow row;    // leading entry 1 at column `lead`
    SparseRow combo;  // over inserted row ids
    int lead;
  };
  int ncols_;
  std::vector<int> pivot_of_col_;
  std::vector<Pivot> rows_;
  // scratch
  std::vector<Rat> acc_;
  std::vector<char> live_;
};

struct AugmentedResult {
  bool consistent = true;
  SparseRow solution;              // when consistent, free columns zero
  std::optional<int> witness_row;  // when inconsistent: an inserted row id reducing to 0 = c
  SparseRow certificate;           // combination of row ids giving 0 = residue
  Rat residue;
};

// Exact solve of A x = b, deciding consistency.
AugmentedResult solve_augmented(int ncols, const std::vector<SparseRow>& rows, const std::vector<Rat>& rhs);

int exact_rank(int ncols, const std::vector<SparseRow>& rows);

// Row echelon form modulo the prime 2^61 - 1, used to pick independent rows
// quickly. Rows independent modulo p are independent over Q.
class ModpEchelon {
 public:
  static constexpr std::uint64_t kP = (std::uint64_t(1) << 61) - 1;
  explicit ModpEchelon(int ncols);
  static std::uint64_t reduce(const Rat& r);  // throws if the denominator vanishes mod p
  bool add(const std::vector<std::pair<int, std::uint64_t>>& row);
  int rank() const { return int(rows_.size()); }

 private:
  struct Pivot {
    std::vector<std::pair<int, std::uint64_t>> row;
  };
  int ncols_;
  std::vector<int> pivot_of_col_;
  std::vector<Pivot> rows_;
  std::vector<std::uint64_t> acc_;
  std::vector<char> live_;
};

}  // namespace confalg
