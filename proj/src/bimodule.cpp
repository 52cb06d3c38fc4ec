#include "confalg/bimodule.hpp"

#include "confalg/parse.hpp"

namespace confalg {

namespace {

const MPoly kX = MPoly::var(Var::X);

MPoly shift_x(const MPoly& p, const MPoly& lam) { return substitute(p, Subst().bind(Var::X, kX + lam)); }

// diag(q_1(x+lam), ...) applied on the left, i.e. row scaling.
MatPoly scale_rows(const std::vector<MPoly>& q, const MPoly& lam, const MatPoly& a) {
  MatPoly out = a;
  for (int i = 0; i < a.rows(); ++i) {
    const MPoly& f = q[std::size_t(i)];
    if (f == MPoly(1)) continue;
    MPoly s = shift_x(f, lam);
    for (int j = 0; j < a.cols(); ++j)
      if (!out(i, j).is_zero()) out(i, j) = s * out(i, j);
  }
  return out;
}

MPoly entry(const Blocks& v, std::size_t block) { return v.at(block)(0, 0); }

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

namespace {

std::optional<MPoly> divide(const MPoly& p, const MPoly& f) {
  if (f.size() == 1) {
    auto c = p.div_monomial(f.lead().first);
    if (c) c = (Rat(1) / f.lead().second) * *c;
    return c;
  }
  return exact_div(p, f, Var::X);
}

}  // namespace

MatPoly row_divide(const MatPoly& a, const std::vector<MPoly>& q) {
  MatPoly out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      auto c = divide(a(i, j), q[std::size_t(i)]);
      if (!c) throw InvariantError("row " + std::to_string(i + 1) + " not divisible by " + q[std::size_t(i)].to_string());
      out(i, j) = *c;
    }
  return out;
}

MatPoly col_divide(const MatPoly& a, const std::vector<MPoly>& q) {
  MatPoly out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      auto c = divide(a(i, j), q[std::size_t(j)]);
      if (!c) throw InvariantError("column " + std::to_string(j + 1) + " not divisible by " + q[std::size_t(j)].to_string());
      out(i, j) = *c;
    }
  return out;
}

std::vector<MPoly> corner_q(int n) {
  std::vector<MPoly> q(std::size_t(n), MPoly(1));
  q.back() = kX;
  return q;
}

BimodDesc BimodDesc::regular(const AlgebraDesc& alg) {
  BimodDesc d;
  d.kind_ = Kind::Regular;
  d.base_ = alg;
  return d;
}

BimodDesc BimodDesc::z2sum() {
  BimodDesc d;
  d.kind_ = Kind::Z2Sum;
  d.base_ = AlgebraDesc::sum({AlgebraDesc::cendq({kX}), AlgebraDesc::cendq({kX})});
  return d;
}

BimodDesc BimodDesc::rect(int n, int m) {
  if (n < 1 || m < 1) throw DescriptorError("rect sizes must be positive");
  if (n > m) throw DescriptorError("rect requires n <= m");
  BimodDesc d;
  d.kind_ = Kind::Rect;
  d.n_ = n;
  d.m_ = m;
  d.base_ = AlgebraDesc::sum({AlgebraDesc::cendq(corner_q(n)), AlgebraDesc::cendq(corner_q(m))});
  return d;
}

BimodDesc BimodDesc::twist1(const MPoly& f) {
  if (f.degree(Var::D) > 0 || f.degree(Var::L) > 0 || f.degree(Var::M) > 0 || f.degree(Var::N) > 0)
    throw DescriptorError("twist1 polynomial must be in x alone");
  if (f.degree(Var::X) < 2) throw DescriptorError("twist1 requires deg f > 1");
  BimodDesc d;
  d.kind_ = Kind::Twist1;
  d.f_ = f;
  d.base_ = AlgebraDesc::cendq({f});
  return d;
}

Shape BimodDesc::shape() const {
  switch (kind_) {
    case Kind::Regular: return base_.shape();
    case Kind::Z2Sum: return Shape({BlockShape{1, 1, {kX * kX}, false}});
    case Kind::Rect: return Shape({BlockShape{n_, m_, {}, false}});
    case Kind::Twist1: return Shape({BlockShape{1, 1, {}, false}});
  }
  return {};
}

std::string BimodDesc::to_string() const {
  switch (kind_) {
    case Kind::Regular: return "bimod:regular:" + base_.to_string();
    case Kind::Z2Sum: return "bimod:z2sum";
    case Kind::Rect: return "bimod:rect:" + std::to_string(n_) + ":" + std::to_string(m_);
    case Kind::Twist1: return "bimod:twist1:" + f_.to_string();
  }
  return "?";
}

bool operator==(const BimodDesc& a, const BimodDesc& b) {
  return a.kind_ == b.kind_ && a.n_ == b.n_ && a.m_ == b.m_ && a.f_ == b.f_ && a.base_ == b.base_;
}

BimodDesc parse_bimodule(std::string_view text) {
  std::string s = trim(text);
  const std::string pre = "bimod:";
  if (s.rfind(pre, 0) != 0) throw DescriptorError("bimodule descriptor must start with 'bimod:'");
  s = s.substr(pre.size());
  if (s == "z2sum") return BimodDesc::z2sum();
  if (s.rfind("regular:", 0) == 0) return BimodDesc::regular(parse_algebra(s.substr(8)));
  if (s.rfind("rect:", 0) == 0) {
    std::string r = s.substr(5);
    auto c = r.find(':');
    if (c == std::string::npos) throw DescriptorError("rect needs <n>:<m>");
    try {
      std::size_t u1 = 0, u2 = 0;
      std::string a = r.substr(0, c), b = r.substr(c + 1);
      int n = std::stoi(a, &u1), m = std::stoi(b, &u2);
      if (u1 != a.size() || u2 != b.size()) throw DescriptorError("bad rect sizes");
      return BimodDesc::rect(n, m);
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const DescriptorError*>(&e)) throw;
      throw DescriptorError("bad rect sizes '" + r + "'");
    }
  }
  if (s.rfind("twist1:", 0) == 0) {
    try {
      return BimodDesc::twist1(parse_poly(s.substr(7)));
    } catch (const ParseError& e) {
      throw DescriptorError(e.what());
    }
  }
  throw DescriptorError("unknown bimodule descriptor 'bimod:" + s + "'");
}

Bimodule::Bimodule(BimodDesc d) : desc_(std::move(d)), base_(make_algebra(desc_.base())), shape_(desc_.shape()) {
  if (desc_.kind() == BimodDesc::Kind::Rect) {
    q_ = corner_q(desc_.n());
    qp_ = corner_q(desc_.m());
  }
}

Blocks Bimodule::left(const Blocks& a, const Blocks& u, const MPoly& lam) const {
  switch (desc_.kind()) {
    case BimodDesc::Kind::Regular: return product(a, u, lam);
    case BimodDesc::Kind::Z2Sum: {
      // x f ∘ z^2 g = z^2 (z+λ) f(-λ,z) g(∂+λ,z+λ)
      MPoly xf = entry(a, 0), zg = entry(u, 0);
      MatPoly out(1, 1);
      if (!xf.is_zero() && !zg.is_zero()) {
        auto f = xf.div_monomial(Monomial::of(Var::X));
        auto g = zg.div_monomial(Monomial::of(Var::X, 2));
        if (!f || !g) throw InvariantError("z2sum: operand outside x*k[d,x] or z^2 k[d,z]");
        out(0, 0) = (kX * kX * (kX + lam)) * substitute(*f, Subst().bind(Var::D, -lam)) *
                    substitute(*g, Subst().bind(Var::D, MPoly::var(Var::D) + lam).bind(Var::X, kX + lam));
      }
      return {out};
    }
    case BimodDesc::Kind::Rect: {
      // (QA + Q'B) ∘ X = A(-λ,x) Q(x+λ) X(∂+λ,x+λ)
      if (a.at(0).is_zero() || is_zero(u)) return shape_.zero();
      MatPoly A = row_divide(a.at(0), q_);
      MatPoly AQ = at_minus(A, lam);
      for (int j = 0; j < AQ.cols(); ++j) {
        if (q_[std::size_t(j)] == MPoly(1)) continue;
        MPoly s = shift_x(q_[std::size_t(j)], lam);
        for (int i = 0; i < AQ.rows(); ++i)
          if (!AQ(i, j).is_zero()) AQ(i, j) = AQ(i, j) * s;
      }
      return {AQ * shifted(u.at(0), lam)};
    }
    case BimodDesc::Kind::Twist1: {
      // f a ∘ h = a(-λ,x) f(x+λ) h(∂+λ,x+λ)
      if (a.at(0).is_zero() || is_zero(u)) return shape_.zero();
      MatPoly A = row_divide(a.at(0), {desc_.f()});
      return {shift_x(desc_.f(), lam) * (at_minus(A, lam) * shifted(u.at(0), lam))};
    }
  }
  return {};
}

Blocks Bimodule::right(const Blocks& u, const Blocks& a, const MPoly& lam) const {
  switch (desc_.kind()) {
    case BimodDesc::Kind::Regular: return product(u, a, lam);
    case BimodDesc::Kind::Z2Sum: {
      // z^2 g ∘ y f = z^2 (z+λ) g(-λ,z) f(∂+λ,z+λ)
      MPoly zg = entry(u, 0), yf = entry(a, 1);
      MatPoly out(1, 1);
      if (!yf.is_zero() && !zg.is_zero()) {
        auto f = yf.div_monomial(Monomial::of(Var::X));
        auto g = zg.div_monomial(Monomial::of(Var::X, 2));
        if (!f || !g) throw InvariantError("z2sum: operand outside y*k[d,y] or z^2 k[d,z]");
        out(0, 0) = (kX * kX * (kX + lam)) * substitute(*g, Subst().bind(Var::D, -lam)) *
                    substitute(*f, Subst().bind(Var::D, MPoly::var(Var::D) + lam).bind(Var::X, kX + lam));
      }
      return {out};
    }
    case BimodDesc::Kind::Rect: {
      // X ∘ (QA + Q'B) = X(-λ,x) Q'(x+λ) B(∂+λ,x+λ)
      if (a.at(1).is_zero() || is_zero(u)) return shape_.zero();
      MatPoly B = row_divide(a.at(1), qp_);
      return {at_minus(u.at(0), lam) * scale_rows(qp_, lam, shifted(B, lam))};
    }
    case BimodDesc::Kind::Twist1: return {cend_product(u.at(0), a.at(0), lam)};
  }
  return {};
}

Blocks Bimodule::shift(const Blocks& u, const MPoly& lam) {
  Blocks r;
  r.reserve(u.size());
  for (const auto& m : u) r.push_back(shifted(m, lam));
  return r;
}

Blocks Bimodule::negate(const Blocks& u, const MPoly& lam) {
  Blocks r;
  r.reserve(u.size());
  for (const auto& m : u) r.push_back(at_minus(m, lam));
  return r;
}

Blocks Bimodule::left_factor(const Blocks& a, const MPoly& lam) const {
  switch (desc_.kind()) {
    case BimodDesc::Kind::Regular: return negate(a, lam);
    case BimodDesc::Kind::Z2Sum: {
      MPoly xf = entry(a, 0);
      MatPoly out(1, 1);
      if (!xf.is_zero()) {
        auto f = xf.div_monomial(Monomial::of(Var::X));
        if (!f) throw InvariantError("z2sum: operand outside x*k[d,x]");
        out(0, 0) = (kX * kX) * substitute(*f, Subst().bind(Var::D, -lam));
      }
      return {out};
    }
    case BimodDesc::Kind::Rect: {
      MatPoly AQ = at_minus(row_divide(a.at(0), q_), lam);
      for (int j = 0; j < AQ.cols(); ++j) {
        if (q_[std::size_t(j)] == MPoly(1)) continue;
        MPoly s = shift_x(q_[std::size_t(j)], lam);
        for (int i = 0; i < AQ.rows(); ++i)
          if (!AQ(i, j).is_zero()) AQ(i, j) = AQ(i, j) * s;
      }
      return {AQ};
    }
    case BimodDesc::Kind::Twist1: {
      MatPoly A = row_divide(a.at(0), {desc_.f()});
      return {shift_x(desc_.f(), lam) * at_minus(A, lam)};
    }
  }
  return {};
}

Blocks Bimodule::left_apply(const Blocks& fa, const Blocks& su, const MPoly& lam) const {
  if (desc_.kind() == BimodDesc::Kind::Regular) {
    Blocks r;
    r.reserve(fa.size());
    for (std::size_t b = 0; b < fa.size(); ++b)
      r.push_back(fa[b].is_zero() || su[b].is_zero() ? MatPoly(fa[b].rows(), su[b].cols()) : fa[b] * su[b]);
    return r;
  }
  if (fa.at(0).is_zero() || is_zero(su)) return shape_.zero();
  if (desc_.kind() == BimodDesc::Kind::Z2Sum) {
    // su = (z+λ)^2 g(∂+λ,z+λ)
    auto g = exact_div(entry(su, 0), kX + lam, Var::X);
    if (!g) throw InvariantError("z2sum: operand outside z^2 k[d,z]");
    MatPoly out(1, 1);
    out(0, 0) = fa[0](0, 0) * *g;
    return {out};
  }
  return {fa[0] * su.at(0)};
}

Blocks Bimodule::right_factor(const Blocks& a, const MPoly& lam) const {
  switch (desc_.kind()) {
    case BimodDesc::Kind::Regular: return shift(a, lam);
    case BimodDesc::Kind::Z2Sum: {
      MPoly yf = entry(a, 1);
      MatPoly out(1, 1);
      if (!yf.is_zero()) {
        auto f = yf.div_monomial(Monomial::of(Var::X));
        if (!f) throw InvariantError("z2sum: operand outside y*k[d,y]");
        out(0, 0) = (kX + lam) *
                    substitute(*f, Subst().bind(Var::D, MPoly::var(Var::D) + lam).bind(Var::X, kX + lam));
      }
      return {out};
    }
    case BimodDesc::Kind::Rect: return {scale_rows(qp_, lam, shifted(row_divide(a.at(1), qp_), lam))};
    case BimodDesc::Kind::Twist1: return {shifted(a.at(0), lam)};
  }
  return {};
}

Blocks Bimodule::right_apply(const Blocks& nu, const Blocks& fa) const {
  if (desc_.kind() == BimodDesc::Kind::Regular) {
    Blocks r;
    r.reserve(fa.size());
    for (std::size_t b = 0; b < fa.size(); ++b)
      r.push_back(fa[b].is_zero() || nu[b].is_zero() ? MatPoly(nu[b].rows(), fa[b].cols()) : nu[b] * fa[b]);
    return r;
  }
  if (fa.at(0).is_zero() || is_zero(nu)) return shape_.zero();
  return {nu.at(0) * fa[0]};
}

BimodPtr make_bimodule(const BimodDesc& d) { return std::make_shared<const Bimodule>(d); }

BimodElem make_bimod_elem(const BimodPtr& mod, Blocks value) {
  mod->shape().validate(value);
  return {mod, std::move(value)};
}

namespace {

void check_base(const ConfElem& a, const BimodPtr& mod) {
  if (!(a.alg->desc() == mod->desc().base()))
    throw DescriptorError("algebra " + a.alg->desc().to_string() + " does not act on " + mod->desc().to_string());
}

}  // namespace

BimodElem left_action(const ConfElem& a, const BimodElem& u, const MPoly& lam) {
  check_base(a, u.mod);
  Blocks r = u.mod->left(a.value, u.value, lam);
  u.mod->shape().validate(r, true);
  return {u.mod, std::move(r)};
}

BimodElem right_action(const BimodElem& u, const ConfElem& a, const MPoly& lam) {
  check_base(a, u.mod);
  Blocks r = u.mod->right(u.value, a.value, lam);
  u.mod->shape().validate(r, true);
  return {u.mod, std::move(r)};
}

MatPoly embed_flat(const MatPoly& a, int m) {
  if (a.rows() != a.cols() || a.cols() > m) throw DimensionError("embed_flat needs a square n×n matrix with n <= m");
  MatPoly out(a.rows(), m);
  out.set_block(0, 0, a);
  return out;
}

MatPoly truncate(const MatPoly& b, int n) {
  if (b.rows() != b.cols() || n > b.rows()) throw DimensionError("truncate needs a square m×m matrix with n <= m");
  return b.block(0, 0, n, b.cols());
}

std::vector<BimodSample> random_bimod_samples(const BimodPtr& mod, Rng& rng, int count, int deg) {
  std::vector<BimodSample> out;
  for (int i = 0; i < count; ++i) {
    Blocks a = random_value(mod->base()->shape(), rng, deg);
    Blocks b = random_value(mod->base()->shape(), rng, deg);
    Blocks u = random_value(mod->shape(), rng, deg);
    out.push_back({std::move(a), std::move(b), std::move(u)});
  }
  return out;
}

Certificate check_bimodule_axioms(const BimodPtr& mod, const std::vector<BimodSample>& samples) {
  Certificate cert;
  cert.check = "bimodule-axioms";
  cert.anchor = "three lambda-associativity identities of a conformal bimodule";
  cert.params = {{"bimodule", mod->desc().to_string()}, {"samples", samples.size()}};
  cert.evidence = Evidence::Sampled;
  const MPoly lm = kLambda + kMu;
  const MPoly d = MPoly::var(Var::D);
  const Bimodule& M = *mod;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Blocks& a = samples[s].a;
    const Blocks& b = samples[s].b;
    const Blocks& u = samples[s].u;
    auto fail = [&](const char* law, const Blocks& lhs, const Blocks& rhs) {
      cert.verdict = Verdict::Fail;
      cert.witness = {{"sample", s},           {"law", law},           {"a", to_string(a)}, {"b", to_string(b)},
                      {"u", to_string(u)}, {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}};
      return cert;
    };
    Blocks au = M.left(a, u, kLambda), ua = M.right(u, a, kLambda);
    try {
      M.shape().validate(au, true);
      M.shape().validate(ua, true);
    } catch (const InvariantError& e) {
      cert.verdict = Verdict::Fail;
      cert.witness = {{"sample", s}, {"law", "closure"}, {"error", e.what()}};
      return cert;
    }
    Blocks l, r;
    if ((l = M.left(translate(a), u, kLambda)) != (r = scale(-kLambda, au))) return fail("(da) o_l u = -l (a o_l u)", l, r);
    if ((l = M.left(a, translate(u), kLambda)) != (r = scale(d + kLambda, au))) return fail("a o_l (du) = (d+l)(a o_l u)", l, r);
    if ((l = M.right(translate(u), a, kLambda)) != (r = scale(-kLambda, ua))) return fail("(du) o_l a = -l (u o_l a)", l, r);
    if ((l = M.right(u, translate(a), kLambda)) != (r = scale(d + kLambda, ua))) return fail("u o_l (da) = (d+l)(u o_l a)", l, r);
    if ((l = M.left(a, M.left(b, u, kMu), kLambda)) != (r = M.left(product(a, b, kLambda), u, lm)))
      return fail("a o_l (b o_m u) = (a o_l b) o_{l+m} u", l, r);
    if ((l = M.left(a, M.right(u, b, kMu), kLambda)) != (r = M.right(au, b, lm)))
      return fail("a o_l (u o_m b) = (a o_l u) o_{l+m} b", l, r);
    if ((l = M.right(u, product(a, b, kMu), kLambda)) != (r = M.right(ua, b, lm)))
      return fail("u o_l (a o_m b) = (u o_l a) o_{l+m} b", l, r);
  }
  return cert;
}

}  // namespace confalg
