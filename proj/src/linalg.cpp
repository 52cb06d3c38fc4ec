#include "confalg/linalg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

namespace confalg {

namespace {

using MinHeap = std::priority_queue<int, std::vector<int>, std::greater<int>>;

using u64 = std::uint64_t;
constexpr u64 P = ModpEchelon::kP;

u64 mulmod(u64 a, u64 b) {
  unsigned __int128 z = (unsigned __int128)a * b;
  u64 r = u64(z & P) + u64(z >> 61);
  return r >= P ? r - P : r;
}
u64 addmod(u64 a, u64 b) {
  u64 r = a + b;
  return r >= P ? r - P : r;
}
u64 submod(u64 a, u64 b) { return a >= b ? a - b : a + P - b; }
u64 powmod(u64 a, u64 e) {
  u64 r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}
u64 invmod(u64 a) { return powmod(a, P - 2); }

u64 int_mod(std::int64_t v) {
  __int128 r = v % (__int128)P;
  if (r < 0) r += P;
  return u64(r);
}

}  // namespace

ExactEchelon::ExactEchelon(int ncols) : ncols_(ncols), pivot_of_col_(std::size_t(ncols), -1), acc_(std::size_t(ncols)), live_(std::size_t(ncols), 0) {}

bool ExactEchelon::add(const SparseRow& row, int id) {
  MinHeap heap;
  for (const auto& [c, v] : row) {
    if (c < 0 || c >= ncols_) throw std::out_of_range("ExactEchelon: column out of range");
    if (!live_[c]) {
      live_[c] = 1;
      heap.push(c);
    }
    acc_[c] += v;
  }
  std::map<int, Rat> combo{{id, Rat(1)}};
  bool grew = false;
  while (!heap.empty()) {
    int c = heap.top();
    heap.pop();
    live_[c] = 0;
    if (acc_[c].is_zero()) continue;
    int p = pivot_of_col_[c];
    if (p < 0) {
      Rat inv = Rat(1) / acc_[c];
      Pivot piv;
      piv.lead = c;
      piv.row.emplace_back(c, Rat(1));
      acc_[c] = Rat();
      while (!heap.empty()) {
        int d = heap.top();
        heap.pop();
        live_[d] = 0;
        if (!acc_[d].is_zero()) piv.row.emplace_back(d, acc_[d] * inv);
        acc_[d] = Rat();
      }
      for (auto& [rid, v] : combo)
        if (!v.is_zero()) piv.combo.emplace_back(rid, v * inv);
      pivot_of_col_[c] = int(rows_.size());
      rows_.push_back(std::move(piv));
      grew = true;
      break;
    }
    Rat f = acc_[c];
    acc_[c] = Rat();
    const Pivot& piv = rows_[std::size_t(p)];
    for (std::size_t t = 1; t < piv.row.size(); ++t) {
      int d = piv.row[t].first;
      acc_[d] -= f * piv.row[t].second;
      if (!live_[d]) {
        live_[d] = 1;
        heap.push(d);
      }
    }
    for (const auto& [rid, v] : piv.combo) combo[rid] -= f * v;
  }
  return grew;
}

SparseRow ExactEchelon::solve(const std::function<Rat(int)>& rhs) const {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows_[a].lead > rows_[b].lead; });
  std::map<int, Rat> x;
  std::map<int, Rat> rhs_cache;
  auto b_of = [&](int rid) -> const Rat& {
    auto it = rhs_cache.find(rid);
    if (it == rhs_cache.end()) it = rhs_cache.emplace(rid, rhs(rid)).first;
    return it->second;
  };
  for (std::size_t t : order) {
    const Pivot& piv = rows_[t];
    Rat v;
    for (const auto& [rid, c] : piv.combo) v += c * b_of(rid);
    for (std::size_t k = 1; k < piv.row.size(); ++k) {
      auto it = x.find(piv.row[k].first);
      if (it != x.end()) v -= piv.row[k].second * it->second;
    }
    if (!v.is_zero()) x[piv.lead] = v;
  }
  return SparseRow(x.begin(), x.end());
}

AugmentedResult solve_augmented(int ncols, const std::vector<SparseRow>& rows, const std::vector<Rat>& rhs) {
  ExactEchelon ech(ncols + 1);
  AugmentedResult res;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    SparseRow row = rows[r];
    if (!rhs[r].is_zero()) row.emplace_back(ncols, rhs[r]);
    ech.add(row, int(r));
    int p = ech.pivot_of_col_[std::size_t(ncols)];
    if (p >= 0) {
      const auto& piv = ech.rows_[std::size_t(p)];
      res.consistent = false;
      res.witness_row = int(r);
      res.certificate = piv.combo;
      // The pivot is normalized, so the combination reads 0 = 1.
      res.residue = Rat(1);
      return res;
    }
  }
  // Back substitution with the augmented column as the right-hand side.
  std::vector<std::size_t> order(ech.rows_.size());
  for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ech.rows_[a].lead > ech.rows_[b].lead; });
  std::map<int, Rat> x;
  for (std::size_t t : order) {
    const auto& piv = ech.rows_[t];
    Rat v;
    for (std::size_t k = 1; k < piv.row.size(); ++k) {
      int c = piv.row[k].first;
      if (c == ncols) {
        v += piv.row[k].second;
        continue;
      }
      auto it = x.find(c);
      if (it != x.end()) v -= piv.row[k].second * it->second;
    }
    if (!v.is_zero()) x[piv.lead] = v;
  }
  res.solution.assign(x.begin(), x.end());
  return res;
}

int exact_rank(int ncols, const std::vector<SparseRow>& rows) {
  ExactEchelon ech(ncols);
  for (std::size_t r = 0; r < rows.size(); ++r) ech.add(rows[r], int(r));
  return ech.rank();
}

ModpEchelon::ModpEchelon(int ncols) : ncols_(ncols), pivot_of_col_(std::size_t(ncols), -1), acc_(std::size_t(ncols), 0), live_(std::size_t(ncols), 0) {}

std::uint64_t ModpEchelon::reduce(const Rat& r) {
  u64 num, den;
  if (!r.is_big()) {
    num = int_mod(r.small_num());
    den = int_mod(r.small_den());
  } else {
    mpq_class q = r.to_mpq();
    mpz_class m(std::to_string(P));
    mpz_class a = q.get_num() % m, b = q.get_den() % m;
    if (a < 0) a += m;
    num = std::stoull(a.get_str());
    den = std::stoull(b.get_str());
  }
  if (den == 0) throw std::domain_error("denominator divisible by the modulus");
  return den == 1 ? num : mulmod(num, invmod(den));
}

bool ModpEchelon::add(const std::vector<std::pair<int, std::uint64_t>>& row) {
  MinHeap heap;
  for (const auto& [c, v] : row) {
    if (c < 0 || c >= ncols_) throw std::out_of_range("ModpEchelon: column out of range");
    if (!live_[c]) {
      live_[c] = 1;
      heap.push(c);
    }
    acc_[c] = addmod(acc_[c], v);
  }
  bool grew = false;
  while (!heap.empty()) {
    int c = heap.top();
    heap.pop();
    live_[c] = 0;
    if (acc_[c] == 0) continue;
    int p = pivot_of_col_[c];
    if (p < 0) {
      u64 inv = invmod(acc_[c]);
      Pivot piv;
      piv.row.emplace_back(c, 1);
      acc_[c] = 0;
      while (!heap.empty()) {
        int d = heap.top();
        heap.pop();
        live_[d] = 0;
        if (acc_[d]) piv.row.emplace_back(d, mulmod(acc_[d], inv));
        acc_[d] = 0;
      }
      pivot_of_col_[c] = int(rows_.size());
      rows_.push_back(std::move(piv));
      grew = true;
      break;
    }
    u64 f = acc_[c];
    acc_[c] = 0;
    const Pivot& piv = rows_[std::size_t(p)];
    for (std::size_t t = 1; t < piv.row.size(); ++t) {
      int d = piv.row[t].first;
      acc_[d] = submod(acc_[d], mulmod(f, piv.row[t].second));
      if (!live_[d]) {
        live_[d] = 1;
        heap.push(d);
      }
    }
  }
  return grew;
}

}  // namespace confalg
