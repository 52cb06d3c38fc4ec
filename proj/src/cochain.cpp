#include "confalg/cochain.hpp"

#include <algorithm>
#include <iterator>

#include <stdexcept>

namespace confalg {

namespace {

const MPoly kD = MPoly::var(Var::D);

Blocks gen_value(const AlgPtr& alg, const GenIndex& g) { return alg->shape().gen(g); }

void check_gen(const Shape& shape, const GenIndex& g) {
  if (g.block < 0 || std::size_t(g.block) >= shape.num_blocks()) throw BoundError("generator block out of range");
  const auto& b = shape.blocks()[std::size_t(g.block)];
  if (g.i < 0 || g.i >= b.rows || g.j < 0 || g.j >= b.cols || g.k < 0 || (b.x_free && g.k > 0))
    throw BoundError("not a generator: " + g.to_string());
}

}  // namespace

nlohmann::json gen_json(const GenIndex& g) { return g.to_string(); }

// ---------------------------------------------------------------- Cochain1

struct Cochain1::State {
  AlgPtr alg;
  BimodPtr mod;
  std::optional<int> bound;
  GenFn fn;
  std::map<GenIndex, Blocks> cache;
};

Cochain1::Cochain1(AlgPtr alg, BimodPtr mod, std::map<GenIndex, Blocks> table, int bound) {
  for (const auto& [g, v] : table) {
    check_gen(alg->shape(), g);
    if (g.k > bound) throw BoundError("table entry beyond bound: " + g.to_string());
    mod->shape().validate(v);
  }
  Blocks zero = mod->shape().zero();
  auto t = std::make_shared<std::map<GenIndex, Blocks>>(std::move(table));
  s_ = std::make_shared<State>();
  s_->alg = std::move(alg);
  s_->mod = std::move(mod);
  s_->bound = bound;
  s_->fn = [t, zero](const GenIndex& g) {
    auto it = t->find(g);
    return it == t->end() ? zero : it->second;
  };
}

Cochain1 Cochain1::from_generators(AlgPtr alg, BimodPtr mod, GenFn fn, std::optional<int> bound) {
  Cochain1 c;
  c.s_ = std::make_shared<State>();
  c.s_->alg = std::move(alg);
  c.s_->mod = std::move(mod);
  c.s_->bound = bound;
  c.s_->fn = std::move(fn);
  return c;
}

Cochain1 Cochain1::zero(AlgPtr alg, BimodPtr mod) {
  Blocks z = mod->shape().zero();
  return from_generators(std::move(alg), std::move(mod), [z](const GenIndex&) { return z; });
}

const AlgPtr& Cochain1::alg() const { return s_->alg; }
const BimodPtr& Cochain1::mod() const { return s_->mod; }
std::optional<int> Cochain1::bound() const { return s_->bound; }

Blocks Cochain1::at(const GenIndex& g) const {
  auto it = s_->cache.find(g);
  if (it != s_->cache.end()) return it->second;
  check_gen(s_->alg->shape(), g);
  if (s_->bound && g.k > *s_->bound)
    throw BoundError("1-cochain evaluated beyond its bound " + std::to_string(*s_->bound) + ": " + g.to_string());
  return s_->cache.emplace(g, s_->fn(g)).first->second;
}

Blocks Cochain1::apply(const Blocks& a) const {
  Blocks r = s_->mod->shape().zero();
  for (const auto& [g, c] : s_->alg->shape().decompose(a)) r = add(r, scale(c, at(g)));
  return r;
}

std::map<GenIndex, Blocks> Cochain1::table(int max_k) const {
  std::map<GenIndex, Blocks> t;
  for (const auto& g : s_->alg->shape().generators(max_k)) {
    Blocks v = at(g);
    if (!is_zero(v)) t.emplace(g, std::move(v));
  }
  return t;
}

Cochain1 random_cochain1(const AlgPtr& alg, const BimodPtr& mod, std::uint64_t seed, int deg, int density) {
  const Shape shape = mod->shape();
  return Cochain1::from_generators(alg, mod, [shape, seed, deg, density](const GenIndex& g) {
    Rng rng(seed, g.to_string());
    return random_value(shape, rng, deg, density);
  });
}

// ---------------------------------------------------------------- Cochain2

struct Cochain2::State {
  AlgPtr alg;
  BimodPtr mod;
  std::string name;
  std::optional<int> bound;
  PairFn pair;
  ElemFn closed;
  std::map<std::pair<GenIndex, GenIndex>, Blocks> cache;
  // few distinct substitutions are ever used, so a list beats hashing
  std::vector<std::pair<MPoly, std::map<std::pair<GenIndex, GenIndex>, Blocks>>> lam_cache;
};

Cochain2 Cochain2::table(AlgPtr alg, BimodPtr mod, std::map<std::pair<GenIndex, GenIndex>, Blocks> t, int bound,
                         std::string name) {
  for (const auto& [k, v] : t) {
    check_gen(alg->shape(), k.first);
    check_gen(alg->shape(), k.second);
    if (k.first.k > bound || k.second.k > bound) throw BoundError("table entry beyond bound");
    mod->shape().validate(v, true);
  }
  Blocks zero = mod->shape().zero();
  auto tp = std::make_shared<std::map<std::pair<GenIndex, GenIndex>, Blocks>>(std::move(t));
  return from_pairs(
      std::move(alg), std::move(mod),
      [tp, zero](const GenIndex& g, const GenIndex& h) {
        auto it = tp->find({g, h});
        return it == tp->end() ? zero : it->second;
      },
      std::move(name), bound);
}

Cochain2 Cochain2::from_pairs(AlgPtr alg, BimodPtr mod, PairFn fn, std::string name, std::optional<int> bound) {
  Cochain2 c;
  c.s_ = std::make_shared<State>();
  c.s_->alg = std::move(alg);
  c.s_->mod = std::move(mod);
  c.s_->name = std::move(name);
  c.s_->bound = bound;
  c.s_->pair = std::move(fn);
  return c;
}

Cochain2 Cochain2::closed(AlgPtr alg, BimodPtr mod, ElemFn fn, std::string name) {
  Cochain2 c;
  c.s_ = std::make_shared<State>();
  AlgPtr a = alg;
  c.s_->alg = std::move(alg);
  c.s_->mod = std::move(mod);
  c.s_->name = std::move(name);
  c.s_->closed = fn;
  c.s_->pair = [a, fn](const GenIndex& g, const GenIndex& h) {
    return fn(gen_value(a, g), gen_value(a, h), kLambda);
  };
  return c;
}

Cochain2 Cochain2::zero(AlgPtr alg, BimodPtr mod) {
  Blocks z = mod->shape().zero();
  return closed(std::move(alg), std::move(mod), [z](const Blocks&, const Blocks&, const MPoly&) { return z; }, "zero");
}

const AlgPtr& Cochain2::alg() const { return s_->alg; }
const BimodPtr& Cochain2::mod() const { return s_->mod; }
const std::string& Cochain2::name() const { return s_->name; }
bool Cochain2::has_closed_form() const { return bool(s_->closed); }
std::optional<int> Cochain2::bound() const { return s_->bound; }

const Blocks& Cochain2::at(const GenIndex& g, const GenIndex& h) const {
  auto key = std::make_pair(g, h);
  auto it = s_->cache.find(key);
  if (it != s_->cache.end()) return it->second;
  check_gen(s_->alg->shape(), g);
  check_gen(s_->alg->shape(), h);
  if (s_->bound && (g.k > *s_->bound || h.k > *s_->bound))
    throw BoundError("2-cochain evaluated beyond its bound " + std::to_string(*s_->bound) + ": (" + g.to_string() +
                     ", " + h.to_string() + ")");
  return s_->cache.emplace(key, s_->pair(g, h)).first->second;
}

const Blocks& Cochain2::at(const GenIndex& g, const GenIndex& h, const MPoly& lam) const {
  if (lam == kLambda) return at(g, h);
  auto slot = std::find_if(s_->lam_cache.begin(), s_->lam_cache.end(), [&](const auto& e) { return e.first == lam; });
  if (slot == s_->lam_cache.end()) {
    s_->lam_cache.emplace_back(lam, std::map<std::pair<GenIndex, GenIndex>, Blocks>{});
    slot = std::prev(s_->lam_cache.end());
  }
  auto& c = slot->second;
  auto key = std::make_pair(g, h);
  auto it = c.find(key);
  if (it != c.end()) return it->second;
  Blocks v = subst(at(g, h), Subst().bind(Var::L, lam));
  return c.emplace(key, std::move(v)).first->second;
}

Blocks Cochain2::eval_expanded(const Blocks& a, const Blocks& b, const MPoly& lam) const {
  const Shape& shape = s_->alg->shape();
  Decomposition da = shape.decompose(a), db = shape.decompose(b);
  Blocks r = s_->mod->shape().zero();
  Subst left = Subst().bind(Var::D, -lam), right = Subst().bind(Var::D, kD + lam);
  for (const auto& [g, c] : da) {
    MPoly cl = substitute(c, left);
    for (const auto& [h, e] : db) r = add(r, scale(cl * substitute(e, right), at(g, h, lam)));
  }
  return r;
}

Blocks Cochain2::eval(const Blocks& a, const Blocks& b, const MPoly& lam) const {
  if (s_->closed) return s_->closed(a, b, lam);
  return eval_expanded(a, b, lam);
}

Cochain2 Cochain2::plus(const Cochain2& other, const Rat& c) const {
  if (!(s_->alg->desc() == other.alg()->desc()) || !(s_->mod->desc() == other.mod()->desc()))
    throw DescriptorError("cochains over different algebras or bimodules");
  Cochain2 a = *this, b = other;
  MPoly cc(c);
  std::string name = s_->name + (c == Rat(1) ? " + " : " + (" + c.to_string() + ")") + other.name();
  Cochain2 r;
  if (a.has_closed_form() && b.has_closed_form()) {
    auto fa = a.s_->closed, fb = b.s_->closed;
    r = closed(s_->alg, s_->mod, [fa, fb, cc](const Blocks& x, const Blocks& y, const MPoly& lam) {
      return add(fa(x, y, lam), scale(cc, fb(x, y, lam)));
    }, name);
  } else {
    std::optional<int> bound = s_->bound;
    if (other.bound()) bound = bound ? std::min(*bound, *other.bound()) : other.bound();
    r = from_pairs(s_->alg, s_->mod, [a, b, cc](const GenIndex& g, const GenIndex& h) {
      return add(a.at(g, h), scale(cc, b.at(g, h)));
    }, name, bound);
  }
  return r;
}

std::map<std::pair<GenIndex, GenIndex>, Blocks> Cochain2::tabulate(int max_k) const {
  std::map<std::pair<GenIndex, GenIndex>, Blocks> t;
  auto gens = s_->alg->shape().generators(max_k);
  for (const auto& g : gens)
    for (const auto& h : gens) {
      const Blocks& v = at(g, h);
      if (!is_zero(v)) t.emplace(std::make_pair(g, h), v);
    }
  return t;
}

Blocks eval_cochain2(const Cochain2& phi, const ConfElem& a, const ConfElem& b) {
  if (!(a.alg->desc() == phi.alg()->desc()) || !(b.alg->desc() == phi.alg()->desc()))
    throw DescriptorError("elements are not in the cochain's algebra");
  return phi.eval(a.value, b.value);
}

// ---------------------------------------------------------------- d₁, d₂

Cochain2 d1(const Cochain1& tau) {
  const BimodPtr mod = tau.mod();
  return Cochain2::closed(tau.alg(), mod, [tau, mod](const Blocks& a, const Blocks& b, const MPoly& lam) {
    Blocks r = mod->left(a, tau.apply(b), lam);
    r = sub(r, tau.apply(product(a, b, lam)));
    return add(r, mod->right(tau.apply(a), b, lam));
  }, "d1(tau)");
}

Blocks cocycle_residual(const Cochain2& phi, const Blocks& a1, const Blocks& a2, const Blocks& a3) {
  const auto& mod = *phi.mod();
  const MPoly lm = kLambda + kMu;
  Blocks r = mod.left(a1, phi.eval(a2, a3, kMu), kLambda);
  r = sub(r, phi.eval(product(a1, a2, kLambda), a3, lm));
  r = add(r, phi.eval(a1, product(a2, a3, kMu), kLambda));
  return sub(r, mod.right(phi.eval(a1, a2, kLambda), a3, lm));
}

namespace {

Certificate cocycle_cert(const Cochain2& phi) {
  Certificate c;
  c.check = "cocycle_check";
  c.params = {{"algebra", phi.alg()->desc().to_string()},
              {"bimodule", phi.mod()->desc().to_string()},
              {"cochain", phi.name()}};
  return c;
}

}  // namespace

Certificate cocycle_check(const Cochain2& phi, int bound) {
  Certificate cert = cocycle_cert(phi);
  cert.evidence = Evidence::Exhaustive;
  cert.bound = bound;
  const auto& shape = phi.alg()->shape();
  const auto& mod = *phi.mod();
  const auto gens = shape.generators(bound);
  const std::size_t n = gens.size();
  const MPoly lm = kLambda + kMu;
  std::vector<Blocks> val(n);
  for (std::size_t i = 0; i < n; ++i) val[i] = shape.gen(gens[i]);

  // Products of generator pairs, decomposed, with the ∂-substitutions the
  // two middle terms need already applied to the coefficients.
  //   φ_{λ+μ}(c(∂,λ) g, h) = c(-λ-μ, λ) φ_{λ+μ}(g, h)
  //   φ_λ(g, c(∂,μ) h)     = c(∂+λ, μ) φ_λ(g, h)
  std::vector<Decomposition> t2(n * n), t3(n * n);
  Subst s2 = Subst().bind(Var::D, -lm);
  Subst s3 = Subst().bind(Var::L, kMu);
  Subst s3d = Subst().bind(Var::D, MPoly::var(Var::D) + kLambda);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Blocks p = product(val[i], val[j], kLambda);
      if (is_zero(p)) continue;
      for (const auto& [g, c] : shape.decompose(p)) {
        t2[i * n + j].emplace_back(g, substitute(c, s2));
        t3[i * n + j].emplace_back(g, substitute(substitute(c, s3), s3d));
      }
    }

  // Dense tables of every φ value the loop reads. Decomposition generators may
  // lie beyond the bound, so they get their own index.
  std::map<GenIndex, std::size_t> extra;
  for (const auto* t : {&t2, &t3})
    for (const auto& dec : *t)
      for (const auto& [g, c] : dec) extra.emplace(g, extra.size());
  std::vector<Blocks> at_mu(n * n), at_l(n * n), ext_lm(extra.size() * n), ext_l(n * extra.size());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      at_l[a * n + b] = phi.at(gens[a], gens[b]);
      at_mu[a * n + b] = phi.at(gens[a], gens[b], kMu);
    }
  for (const auto& [g, e] : extra)
    for (std::size_t b = 0; b < n; ++b) {
      ext_lm[e * n + b] = phi.at(g, gens[b], lm);
      ext_l[b * extra.size() + e] = phi.at(gens[b], g, kLambda);
    }
  // substituted once here instead of inside every left/right action
  std::vector<Blocks> sh_mu(n * n), neg_l(n * n), lf(n), rf(n);
  for (std::size_t i = 0; i < n; ++i) {
    lf[i] = mod.left_factor(val[i], kLambda);
    rf[i] = mod.right_factor(val[i], lm);
  }
  for (std::size_t p = 0; p < n * n; ++p) {
    sh_mu[p] = Bimodule::shift(at_mu[p], kLambda);
    neg_l[p] = Bimodule::negate(at_l[p], lm);
  }
  std::vector<std::vector<std::pair<std::size_t, MPoly>>> u2(n * n), u3(n * n);
  for (std::size_t p = 0; p < n * n; ++p) {
    for (const auto& [g, c] : t2[p]) u2[p].emplace_back(extra.at(g), c);
    for (const auto& [g, c] : t3[p]) u3[p].emplace_back(extra.at(g), c);
  }

  std::size_t checked = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Blocks r = mod.left_apply(lf[i], sh_mu[j * n + k], kLambda);
        for (const auto& [e, c] : u2[i * n + j]) r = sub(r, scale(c, ext_lm[e * n + k]));
        for (const auto& [e, c] : u3[j * n + k]) r = add(r, scale(c, ext_l[i * extra.size() + e]));
        r = sub(r, mod.right_apply(neg_l[i * n + j], rf[k]));
        ++checked;
        if (!is_zero(r)) {
          cert.verdict = Verdict::Fail;
          cert.witness = {{"triple", {gen_json(gens[i]), gen_json(gens[j]), gen_json(gens[k])}},
                          {"residual", blocks_json(r)}};
          return cert;
        }
      }
  cert.witness = {{"triples", checked}};
  return cert;
}

Certificate cocycle_check(const Cochain2& phi, const std::vector<Triple>& samples) {
  Certificate cert = cocycle_cert(phi);
  cert.evidence = Evidence::Sampled;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    Blocks r = cocycle_residual(phi, samples[s][0], samples[s][1], samples[s][2]);
    if (!is_zero(r)) {
      cert.verdict = Verdict::Fail;
      cert.witness = {{"sample", s}, {"residual", blocks_json(r)}};
      return cert;
    }
  }
  cert.witness = {{"samples", samples.size()}};
  return cert;
}

}  // namespace confalg
