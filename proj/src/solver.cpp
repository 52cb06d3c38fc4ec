#include "confalg/solver.hpp"

#include "confalg/linalg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace confalg {

namespace {

const MPoly kD = MPoly::var(Var::D);

struct KeyHash {
  std::size_t operator()(const std::pair<int, std::uint64_t>& k) const {
    return std::hash<std::uint64_t>()(k.second * 1000003u + std::uint64_t(k.first));
  }
};

using RowMap = std::unordered_map<std::pair<int, std::uint64_t>, SparseRow, KeyHash>;

Rat coeff_of(const MPoly& p, std::uint64_t key) {
  const auto& t = p.terms();
  auto it = std::lower_bound(t.begin(), t.end(), key, [](const MPoly::Term& a, std::uint64_t k) { return a.first.key() < k; });
  return it != t.end() && it->first.key() == key ? it->second : Rat();
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(std::size_t(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[std::size_t(a)] != a) a = parent[std::size_t(a)] = parent[std::size_t(parent[std::size_t(a)])];
    return a;
  }
  void unite(int a, int b) { parent[std::size_t(find(a))] = find(b); }
};

}  // namespace

struct CoboundarySolver::Impl {
  AlgPtr alg;
  BimodPtr mod;
  int D = 0, deg = 0;
  SolverStats stats;

  std::vector<GenIndex> gens;      // G: x-degree <= D
  std::vector<GenIndex> needed;    // G plus everything products of G decompose into
  std::map<GenIndex, int> needed_index;
  std::vector<Blocks> gen_val;     // values of G
  std::vector<Decomposition> pair_dec;  // |G|^2, decomposition of g o_λ h

  // Module basis ∂^s m with m = q_i x^k E_ij, s + k <= deg.
  std::vector<Blocks> mvals;
  std::vector<std::pair<int, int>> uslot;  // slot -> (module generator, s)
  int slots = 0;

  // Module entry flattening.
  std::vector<std::array<int, 3>> entries;  // (block, i, j)
  std::vector<int> block_offset;

  std::vector<std::vector<Blocks>> left_s;   // [a][slot] = a o_λ ∂^s m
  std::vector<std::vector<Blocks>> right_s;  // [slot][b] = ∂^s m o_λ b
  std::vector<MPoly> dpow;

  struct Origin {
    int pair;
    int entry;
    std::uint64_t mono;
  };
  std::vector<Origin> origins;  // exact rows kept from the mod-p pass
  std::unique_ptr<ExactEchelon> echelon;
  mutable UnionFind uf{0};

  int uid(int n, int slot) const { return n * slots + slot; }

  template <class F>
  void for_terms(const Blocks& v, F&& f) const {
    for (std::size_t b = 0; b < v.size(); ++b) {
      const MatPoly& m = v[b];
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          for (const auto& [mono, c] : m(i, j).terms()) f(block_offset[b] + i * m.cols() + j, mono.key(), c);
    }
  }

  // Coefficient rows of d₁τ(g_a, g_b) in the unknowns.
  RowMap assemble(int p) const {
    const int n = int(gens.size());
    const int a = p / n, b = p % n;
    RowMap rows;
    auto push = [&](int u, const Blocks& v, const Rat& scale) {
      for_terms(v, [&](int e, std::uint64_t mono, const Rat& c) { rows[{e, mono}].emplace_back(u, c * scale); });
    };
    const int na = needed_index.at(gens[std::size_t(a)]), nb = needed_index.at(gens[std::size_t(b)]);
    for (int s = 0; s < slots; ++s) {
      push(uid(nb, s), left_s[std::size_t(a)][std::size_t(s)], Rat(1));
      push(uid(na, s), right_s[std::size_t(s)][std::size_t(b)], Rat(1));
    }
    for (const auto& [g, c] : pair_dec[std::size_t(p)]) {
      const int ng = needed_index.at(g);
      for (int s = 0; s < slots; ++s) {
        const auto [mg, sp] = uslot[std::size_t(s)];
        push(uid(ng, s), scale(-(c * dpow[std::size_t(sp)]), mvals[std::size_t(mg)]), Rat(1));
      }
    }
    for (auto& [k, row] : rows) {
      std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      SparseRow merged;
      for (auto& [u, c] : row) {
        if (!merged.empty() && merged.back().first == u)
          merged.back().second += c;
        else
          merged.emplace_back(u, c);
      }
      merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& t) { return t.second.is_zero(); }),
                   merged.end());
      row = std::move(merged);
    }
    return rows;
  }

  Impl(AlgPtr alg_, BimodPtr mod_, int D_, int deg_) : alg(std::move(alg_)), mod(std::move(mod_)), D(D_), deg(deg_) {
    const Shape& cs = alg->shape();
    const Shape& ms = mod->shape();
    gens = cs.generators(D);
    const int n = int(gens.size());
    for (const auto& g : gens) gen_val.push_back(cs.gen(g));
    for (const auto& g : gens) needed_index.emplace(g, 0);
    pair_dec.resize(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Blocks pr = product(gen_val[std::size_t(a)], gen_val[std::size_t(b)], kLambda);
        if (is_zero(pr)) continue;
        pair_dec[std::size_t(a * n + b)] = cs.decompose(pr);
        for (const auto& [g, c] : pair_dec[std::size_t(a * n + b)]) needed_index.emplace(g, 0);
      }
    for (auto& [g, idx] : needed_index) {
      idx = int(needed.size());
      needed.push_back(g);
    }

    for (int s = 0; s <= deg; ++s) dpow.push_back(pow(kD, s));
    const auto mgens = ms.generators(deg);
    for (std::size_t m = 0; m < mgens.size(); ++m) {
      mvals.push_back(ms.gen(mgens[m]));
      for (int s = 0; s + mgens[m].k <= deg; ++s) uslot.emplace_back(int(m), s);
    }
    slots = int(uslot.size());
    int off = 0;
    for (std::size_t b = 0; b < ms.num_blocks(); ++b) {
      block_offset.push_back(off);
      const auto& bs = ms.blocks()[b];
      for (int i = 0; i < bs.rows; ++i)
        for (int j = 0; j < bs.cols; ++j) entries.push_back({int(b), i, j});
      off += bs.rows * bs.cols;
    }

    const MPoly dl = kD + kLambda, ml = -kLambda;
    left_s.assign(std::size_t(n), std::vector<Blocks>(std::size_t(slots)));
    right_s.assign(std::size_t(slots), std::vector<Blocks>(std::size_t(n)));
    for (int a = 0; a < n; ++a)
      for (std::size_t m = 0; m < mvals.size(); ++m) {
        Blocks l = mod->left(gen_val[std::size_t(a)], mvals[m], kLambda);
        Blocks r = mod->right(mvals[m], gen_val[std::size_t(a)], kLambda);
        for (int s = 0; s < slots; ++s) {
          if (uslot[std::size_t(s)].first != int(m)) continue;
          const int sp = uslot[std::size_t(s)].second;
          left_s[std::size_t(a)][std::size_t(s)] = is_zero(l) ? l : scale(pow(dl, sp), l);
          right_s[std::size_t(s)][std::size_t(a)] = is_zero(r) ? r : scale(pow(ml, sp), r);
        }
      }

    const int nunk = int(needed.size()) * slots;
    uf = UnionFind(nunk);
    ModpEchelon modp(nunk);
    std::vector<SparseRow> kept;
    for (int p = 0; p < n * n; ++p) {
      RowMap rows = assemble(p);
      // Deterministic order: unordered_map iteration is not.
      std::vector<std::pair<int, std::uint64_t>> keys;
      for (const auto& [k, row] : rows)
        if (!row.empty()) keys.push_back(k);
      std::sort(keys.begin(), keys.end());
      for (const auto& k : keys) {
        const SparseRow& row = rows[k];
        ++stats.equations;
        for (std::size_t t = 1; t < row.size(); ++t) uf.unite(row[0].first, row[t].first);
        std::vector<std::pair<int, std::uint64_t>> rp;
        rp.reserve(row.size());
        for (const auto& [u, c] : row) rp.emplace_back(u, ModpEchelon::reduce(c));
        if (modp.add(rp)) {
          origins.push_back({p, k.first, k.second});
          kept.push_back(row);
        }
      }
    }
    echelon = std::make_unique<ExactEchelon>(nunk);
    for (std::size_t r = 0; r < kept.size(); ++r)
      if (!echelon->add(kept[r], int(r))) throw std::logic_error("solver: rows independent mod p became dependent");

    stats.generators = n;
    stats.pairs = n * n;
    stats.unknowns = nunk;
    stats.rank = echelon->rank();
    std::vector<char> seen(std::size_t(nunk), 0);
    for (int u = 0; u < nunk; ++u) {
      int r = uf.find(u);
      if (!seen[std::size_t(r)]) {
        seen[std::size_t(r)] = 1;
        ++stats.components;
      }
    }
  }

  const MPoly& entry_of(const Blocks& v, int e) const {
    const auto& [b, i, j] = entries[std::size_t(e)];
    return v[std::size_t(b)](i, j);
  }

  void add_solution(std::map<GenIndex, Blocks>& table, int u, const Rat& c) const {
    const int nidx = u / slots, s = u % slots;
    const auto [mg, sp] = uslot[std::size_t(s)];
    const GenIndex& g = needed[std::size_t(nidx)];
    Blocks v = scale(MPoly(c) * dpow[std::size_t(sp)], mvals[std::size_t(mg)]);
    auto it = table.find(g);
    if (it == table.end())
      table.emplace(g, std::move(v));
    else
      it->second = add(it->second, v);
  }

  Cochain1 make_tau(const std::map<int, Rat>& sol) const {
    std::map<GenIndex, Blocks> table;
    for (const auto& [u, c] : sol) add_solution(table, u, c);
    int bound = 0;
    for (const auto& g : needed) bound = std::max(bound, g.k);
    return Cochain1(alg, mod, std::move(table), bound);
  }

  // First pair where d₁τ differs from φ, with the difference.
  std::optional<std::pair<int, Blocks>> first_mismatch(const Cochain1& tau, const Cochain2& phi) const {
    const int n = int(gens.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const int p = a * n + b;
        Blocks v = mod->left(gen_val[std::size_t(a)], tau.at(gens[std::size_t(b)]), kLambda);
        for (const auto& [g, c] : pair_dec[std::size_t(p)]) v = sub(v, scale(c, tau.at(g)));
        v = add(v, mod->right(tau.at(gens[std::size_t(a)]), gen_val[std::size_t(b)], kLambda));
        Blocks diff = sub(v, phi.at(gens[std::size_t(a)], gens[std::size_t(b)]));
        if (!is_zero(diff)) return std::make_pair(p, diff);
      }
    return std::nullopt;
  }

  nlohmann::json bound_json() const {
    return {{"deg_bound", D},
            {"solver_deg", deg},
            {"unknowns", stats.unknowns},
            {"equations", stats.equations},
            {"rank", stats.rank}};
  }
};

CoboundarySolver::CoboundarySolver(AlgPtr alg, BimodPtr mod, int deg_bound, int solver_deg)
    : impl_(std::make_shared<Impl>(std::move(alg), std::move(mod), deg_bound, solver_deg)) {}

const SolverStats& CoboundarySolver::stats() const { return impl_->stats; }

SolveResult CoboundarySolver::solve(const Cochain2& phi) const {
  const Impl& im = *impl_;
  if (!(phi.alg()->desc() == im.alg->desc()) || !(phi.mod()->desc() == im.mod->desc()))
    throw DescriptorError("cochain does not match the solver's algebra and bimodule");
  const int n = int(im.gens.size());
  SolveResult res;
  res.cert.check = "coboundary_solve";
  res.cert.params = {{"algebra", im.alg->desc().to_string()},
                     {"bimodule", im.mod->desc().to_string()},
                     {"cochain", phi.name()}};
  res.cert.evidence = Evidence::Bounded;
  res.cert.bound = im.D;

  auto rhs = [&](int id) {
    const auto& o = im.origins[std::size_t(id)];
    const Blocks& v = phi.at(im.gens[std::size_t(o.pair / n)], im.gens[std::size_t(o.pair % n)]);
    return coeff_of(im.entry_of(v, o.entry), o.mono);
  };
  std::map<int, Rat> sol;
  for (const auto& [u, c] : im.echelon->solve(rhs)) sol[u] = c;

  std::vector<char> fixed_component(std::size_t(im.stats.unknowns), 0);
  for (;;) {
    Cochain1 tau = im.make_tau(sol);
    auto mm = im.first_mismatch(tau, phi);
    if (!mm) {
      res.cert.verdict = Verdict::Pass;
      res.cert.witness = im.bound_json();
      res.cert.witness["tau_generators"] = int(tau.table(*tau.bound()).size());
      res.tau = tau;
      return res;
    }
    // Locate one violated coefficient equation.
    const auto& [p, diff] = *mm;
    int e = -1;
    std::uint64_t mono = 0;
    for (int t = 0; t < int(im.entries.size()) && e < 0; ++t) {
      const MPoly& d = im.entry_of(diff, t);
      if (!d.is_zero()) {
        e = t;
        mono = d.terms().front().first.key();
      }
    }
    nlohmann::json w = im.bound_json();
    w["pair"] = {gen_json(im.gens[std::size_t(p / n)]), gen_json(im.gens[std::size_t(p % n)])};
    const auto& [eb, ei, ej] = im.entries[std::size_t(e)];
    w["entry"] = {eb, ei, ej};
    for (const auto& t : im.entry_of(diff, e).terms())
      if (t.first.key() == mono) w["monomial"] = MPoly::monomial(t.first).to_string();
    RowMap rows = im.assemble(p);
    auto it = rows.find({e, mono});
    if (it == rows.end() || it->second.empty()) {
      res.cert.verdict = Verdict::NoSolution;
      w["reason"] = "no unknown reaches this coefficient, so the equation reads 0 = c with c != 0";
      res.cert.witness = w;
      return res;
    }
    const int root = im.uf.find(it->second.front().first);
    if (fixed_component[std::size_t(root)])
      throw std::logic_error("solver: component solved exactly but equation still violated");
    fixed_component[std::size_t(root)] = 1;

    // Exact augmented elimination over every equation of this component.
    std::vector<int> cols;
    for (int u = 0; u < im.stats.unknowns; ++u)
      if (im.uf.find(u) == root) cols.push_back(u);
    std::unordered_map<int, int> local;
    for (std::size_t t = 0; t < cols.size(); ++t) local.emplace(cols[t], int(t));
    std::vector<SparseRow> sys;
    std::vector<Rat> b;
    for (int q = 0; q < n * n; ++q) {
      RowMap rq = im.assemble(q);
      std::vector<std::pair<int, std::uint64_t>> keys;
      for (const auto& [k, row] : rq)
        if (!row.empty() && im.uf.find(row.front().first) == root) keys.push_back(k);
      std::sort(keys.begin(), keys.end());
      const Blocks& pv = phi.at(im.gens[std::size_t(q / n)], im.gens[std::size_t(q % n)]);
      for (const auto& k : keys) {
        SparseRow lr;
        for (const auto& [u, c] : rq[k]) lr.emplace_back(local.at(u), c);
        sys.push_back(std::move(lr));
        b.push_back(coeff_of(im.entry_of(pv, k.first), k.second));
      }
    }
    AugmentedResult ar = solve_augmented(int(cols.size()), sys, b);
    if (!ar.consistent) {
      res.cert.verdict = Verdict::NoSolution;
      w["reason"] = "a rational combination of the coefficient equations reads 0 = 1";
      w["component_unknowns"] = int(cols.size());
      w["component_equations"] = int(sys.size());
      w["combined_equations"] = int(ar.certificate.size());
      res.cert.witness = w;
      return res;
    }
    for (int u : cols) sol.erase(u);
    for (const auto& [lc, c] : ar.solution) sol[cols[std::size_t(lc)]] = c;
  }
}

SolveResult coboundary_solve(const Cochain2& phi, int deg_bound, int solver_deg) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<CoboundarySolver>> cache;
  if (deg_bound < 0 || solver_deg < 0) throw BoundError("negative bound");
  const std::string key = phi.alg()->desc().to_string() + "|" + phi.mod()->desc().to_string() + "|" +
                          std::to_string(deg_bound) + "|" + std::to_string(solver_deg);
  std::shared_ptr<CoboundarySolver> s;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, std::make_shared<CoboundarySolver>(phi.alg(), phi.mod(), deg_bound, solver_deg)).first;
    s = it->second;
  }
  return s->solve(phi);
}

}  // namespace confalg
