#include "confalg/presentation.hpp"

#include "confalg/linalg.hpp"

#include <map>

namespace confalg {

namespace {

std::vector<MPoly> corner(int n) {
  std::vector<MPoly> q(std::size_t(n), MPoly(1));
  q.back() = MPoly::var(Var::X);
  return q;
}

Blocks nth(const Blocks& v, int m) {
  Blocks out = v;
  for (auto& mat : out)
    for (int i = 0; i < mat.rows(); ++i)
      for (int j = 0; j < mat.cols(); ++j) {
        auto c = divided_coeffs(mat(i, j), Var::L);
        mat(i, j) = std::size_t(m) < c.size() ? c[std::size_t(m)] : MPoly();
      }
  return out;
}

Blocks prod(const ConfElem& a, const ConfElem& b) { return product(a.value, b.value, kLambda); }
Blocks prod0(const ConfElem& a, const ConfElem& b) { return nth(prod(a, b), 0); }

// Tally per relation, first failure wins.
struct Tally {
  Certificate& cert;
  nlohmann::json counts = nlohmann::json::object();
  bool failed = false;

  void record(const std::string& rel, const std::vector<int>& idx, const Blocks& lhs, const Blocks& rhs) {
    if (!counts.contains(rel)) counts[rel] = 0;
    counts[rel] = counts[rel].get<int>() + 1;
    if (failed || lhs == rhs) return;
    failed = true;
    cert.verdict = Verdict::Fail;
    cert.witness = {{"relation", rel}, {"indices", idx}, {"lhs", blocks_json(lhs)}, {"rhs", blocks_json(rhs)}};
  }
  void finish() {
    if (!failed) cert.witness = {{"checked", counts}};
  }
};

Certificate cert_for(const char* check, int n) {
  Certificate c;
  c.check = check;
  c.params = {{"n", n}};
  c.evidence = Evidence::Exhaustive;
  return c;
}

}  // namespace

GeneratorMap::GeneratorMap(int n_) : n(n_) {
  if (n < 2) throw std::invalid_argument("presentation: n must be at least 2");
  alg = make_algebra(AlgebraDesc::cendq(corner(n)));
}

ConfElem GeneratorMap::e(int i, int j) const {
  if (i < 1 || i >= n || j < 1 || j > n) throw std::out_of_range("e_ij needs 1 <= i < n, 1 <= j <= n");
  return make_elem(alg, MatPoly::unit(n, n, i - 1, j - 1));
}

ConfElem GeneratorMap::x(int i, int j) const {
  if (i < 1 || i > n || j < 1 || j > n) throw std::out_of_range("x_ij needs 1 <= i, j <= n");
  return make_elem(alg, MatPoly::unit(n, n, i - 1, j - 1, MPoly::var(Var::X)));
}

Certificate verify_relations(int n) {
  GeneratorMap G(n);
  Certificate cert = cert_for("verify_relations", n);
  Tally T{cert};
  const Blocks zero = G.alg->shape().zero();
  auto d = [](int a, int b) { return a == b; };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) {
          std::vector<int> idx{i, j, k, l};
          if (i < n && k < n) T.record("R1", idx, prod(G.e(i, j), G.e(k, l)), d(j, k) ? G.e(i, l).value : zero);
          if (k < n) T.record("R2", idx, prod(G.x(i, j), G.e(k, l)), d(j, k) ? G.x(i, l).value : zero);
          if (i < n)
            T.record("R3", idx, prod(G.e(i, j), G.x(k, l)),
                     d(j, k) ? add(G.x(i, l).value, scale(kLambda, G.e(i, l).value)) : zero);
          if (j == k) T.record("R4", idx, nth(prod(G.x(i, j), G.x(j, l)), 1), G.x(i, l).value);
          if (j != k) T.record("R5", idx, prod(G.x(i, j), G.x(k, l)), zero);
          // R6 with (i, j, l) fixed against every middle index k
          if (l == 1)
            for (int m = 1; m <= n; ++m)
              T.record("R6", {i, j, k, m}, prod0(G.x(i, j), G.x(j, m)), prod0(G.x(i, k), G.x(k, m)));
        }
  // locality bound 2 on all generator pairs
  std::vector<ConfElem> X;
  for (int i = 1; i < n; ++i)
    for (int j = 1; j <= n; ++j) X.push_back(G.e(i, j));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) X.push_back(G.x(i, j));
  for (std::size_t a = 0; a < X.size(); ++a)
    for (std::size_t b = 0; b < X.size(); ++b)
      T.record("N2", {int(a), int(b)}, nth(prod(X[a], X[b]), 2), zero);

  const int m = n - 1;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) {
      for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l)
          T.record("S1", {i, j, k, l}, prod(G.e(i, j), G.e(k, l)), d(j, k) ? G.e(i, l).value : zero);
      T.record("S2", {i, j}, prod(G.e(1, n), G.e(i, j)), zero);
      T.record("S4", {i, j}, prod(G.e(i, j), G.x(n, 1)), zero);
    }
  T.record("S3", {}, prod(G.e(1, 1), G.e(1, n)), G.e(1, n).value);
  T.record("S5", {}, prod(G.x(n, 1), G.e(1, 1)), G.x(n, 1).value);
  // S6 for every m at once: e_1n ∘λ x_n1 = e_1n ∘_0 x_n1 + λ e_11
  Blocks p = prod(G.e(1, n), G.x(n, 1));
  T.record("S6", {}, sub(p, nth(p, 0)), scale(kLambda, G.e(1, 1).value));
  T.finish();
  return cert;
}

Certificate verify_derived_generators(int n) {
  GeneratorMap G(n);
  Certificate cert = cert_for("verify_derived_generators", n);
  Tally T{cert};
  const Blocks zero = G.alg->shape().zero();
  auto el = [&](const Blocks& v) { return make_elem(G.alg, v); };

  std::map<int, ConfElem> e_in;  // by i
  e_in.emplace(1, G.e(1, n));
  for (int i = 2; i < n; ++i) {
    Blocks v = prod0(G.e(i, 1), G.e(1, n));
    T.record("e_in", {i, n}, v, G.e(i, n).value);
    e_in.emplace(i, el(v));
  }
  std::map<int, ConfElem> x_nj;
  x_nj.emplace(1, G.x(n, 1));
  for (int j = 2; j <= n; ++j) {
    Blocks v = prod0(G.x(n, 1), G.e(1, j));
    T.record("x_nj", {n, j}, v, G.x(n, j).value);
    x_nj.emplace(j, el(v));
  }
  std::map<std::pair<int, int>, ConfElem> xs;
  for (int j = 1; j <= n; ++j) xs.emplace(std::pair{n, j}, x_nj.at(j));
  for (int i = 1; i < n; ++i)
    for (int j = 1; j <= n; ++j) {
      Blocks v = prod0(e_in.at(i), x_nj.at(j));
      T.record("x_ij", {i, j}, v, G.x(i, j).value);
      xs.emplace(std::pair{i, j}, el(v));
    }
  for (int l = 1; l <= n; ++l) {
    Blocks p = prod(G.x(n, 1), G.e(1, l));
    T.record("x_n1 o_m e_1l", {n, l}, sub(p, nth(p, 0)), zero);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int l = 1; l <= n; ++l) {
        Blocks p = prod(xs.at({i, j}), xs.at({j, l}));
        T.record("x_ij o_1 x_jl", {i, j, l}, nth(p, 1), G.x(i, l).value);
        // every m > 1 at once
        T.record("x_ij o_m x_jl", {i, j, l}, sub(sub(p, nth(p, 0)), scale(kLambda, nth(p, 1))), zero);
      }
  T.finish();
  return cert;
}

std::string ReducedWord::to_string() const {
  auto s_ = std::to_string(s);
  switch (kind) {
    case Kind::DerE: return "d^" + s_ + " e" + std::to_string(a) + std::to_string(b);
    case Kind::DerX: return "d^" + s_ + " x" + std::to_string(a) + std::to_string(b);
    case Kind::DerChain:
      return "d^" + s_ + " (x" + std::to_string(a) + "1 o0 (x11 o0)^" + std::to_string(t - 1) + " x1" + std::to_string(b) + ")";
  }
  return {};
}

ConfElem reduced_word_eval(const ReducedWord& w, int n) {
  GeneratorMap G(n);
  if (w.s < 0 || w.t < 1) throw std::out_of_range("reduced word needs s >= 0, t >= 1");
  ConfElem v;
  switch (w.kind) {
    case ReducedWord::Kind::DerE: v = G.e(w.a, w.b); break;
    case ReducedWord::Kind::DerX: v = G.x(w.a, w.b); break;
    case ReducedWord::Kind::DerChain: {
      v = G.x(w.a, 1);
      for (int r = 0; r + 1 < w.t; ++r) v = make_elem(G.alg, prod0(v, G.x(1, 1)));
      v = make_elem(G.alg, prod0(v, G.x(1, w.b)));
      break;
    }
  }
  return make_elem(G.alg, scale(pow(MPoly::var(Var::D), w.s), v.value));
}

std::vector<ReducedWord> reduced_words(int n, int s_max, int t_max) {
  std::vector<ReducedWord> out;
  for (int s = 0; s <= s_max; ++s) {
    for (int i = 1; i < n; ++i)
      for (int j = 1; j <= n; ++j) out.push_back(ReducedWord::der_e(s, i, j));
    for (int k = 1; k <= n; ++k)
      for (int l = 1; l <= n; ++l) out.push_back(ReducedWord::der_x(s, k, l));
    for (int t = 1; t <= t_max; ++t)
      for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l) out.push_back(ReducedWord::der_chain(s, k, t, l));
  }
  return out;
}

Certificate independence_check(int n, int s_max, int t_max, const std::vector<ReducedWord>& extra) {
  if (s_max < 1 || t_max < 1) throw std::out_of_range("independence_check needs bounds >= 1");
  Certificate cert = cert_for("independence_check", n);
  cert.params["s_max"] = s_max;
  cert.params["t_max"] = t_max;
  auto words = reduced_words(n, s_max, t_max);
  words.insert(words.end(), extra.begin(), extra.end());
  std::map<std::pair<int, std::uint64_t>, int> col;
  std::vector<SparseRow> rows;
  for (const auto& w : words) {
    const Blocks v = reduced_word_eval(w, n).value;
    SparseRow row;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& [mono, c] : v[0](i, j).terms()) {
          auto it = col.emplace(std::pair{i * n + j, mono.key()}, int(col.size())).first;
          row.emplace_back(it->second, c);
        }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    rows.push_back(std::move(row));
  }
  const int rank = exact_rank(int(col.size()), rows);
  cert.verdict = rank == int(words.size()) ? Verdict::Pass : Verdict::Fail;
  cert.witness = {{"words", words.size()}, {"rank", rank}, {"monomials", col.size()}};
  return cert;
}

}  // namespace confalg
