#include "confalg/conformal.hpp"

#include "confalg/parse.hpp"

namespace confalg {

namespace {

const MPoly kD = MPoly::var(Var::D);
const MPoly kX = MPoly::var(Var::X);

void same_algebra(const ConfElem& a, const ConfElem& b) {
  if (a.alg != b.alg && !(a.alg->desc() == b.alg->desc()))
    throw DescriptorError("algebra mismatch: " + a.alg->desc().to_string() + " vs " + b.alg->desc().to_string());
}

ConfElem checked(const AlgPtr& alg, Blocks v) {
  alg->shape().validate(v, true);
  return {alg, std::move(v)};
}

}  // namespace

MatPoly at_minus(const MatPoly& a, const MPoly& lam) { return substitute(a, Subst().bind(Var::D, -lam)); }

MatPoly shifted(const MatPoly& b, const MPoly& lam) {
  return substitute(b, Subst().bind(Var::D, kD + lam).bind(Var::X, kX + lam));
}

MatPoly shifted_d(const MatPoly& b, const MPoly& lam) { return substitute(b, Subst().bind(Var::D, kD + lam)); }

MatPoly cend_product(const MatPoly& a, const MatPoly& b, const MPoly& lam) {
  if (a.is_zero() || b.is_zero()) return MatPoly(a.rows(), b.cols());
  return at_minus(a, lam) * shifted(b, lam);
}

Blocks product(const Blocks& a, const Blocks& b, const MPoly& lam) {
  if (a.size() != b.size()) throw DimensionError("block count mismatch");
  Blocks r;
  r.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(cend_product(a[i], b[i], lam));
  return r;
}

Blocks translate(const Blocks& a) { return scale(kD, a); }

Blocks scale(const MPoly& c, const Blocks& a) {
  Blocks r;
  r.reserve(a.size());
  for (const auto& m : a) r.push_back(c * m);
  return r;
}

Blocks add(const Blocks& a, const Blocks& b) {
  if (a.size() != b.size()) throw DimensionError("block count mismatch");
  Blocks r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

Blocks sub(const Blocks& a, const Blocks& b) {
  if (a.size() != b.size()) throw DimensionError("block count mismatch");
  Blocks r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

Blocks subst(const Blocks& a, const Subst& s) {
  Blocks r;
  r.reserve(a.size());
  for (const auto& m : a) r.push_back(substitute(m, s));
  return r;
}

bool is_zero(const Blocks& a) {
  for (const auto& m : a)
    if (!m.is_zero()) return false;
  return true;
}

int degree(const Blocks& a, Var v) {
  int d = -1;
  for (const auto& m : a) d = std::max(d, m.degree(v));
  return d;
}

std::string to_string(const Blocks& a) {
  if (a.size() == 1) return a[0].to_string();
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + a[i].to_string();
  return s + ")";
}

nlohmann::json blocks_json(const Blocks& a) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& m : a) j.push_back(to_json(m));
  return {{"text", to_string(a)}, {"blocks", j}};
}

ConfElem lambda_product(const ConfElem& a, const ConfElem& b, const MPoly& lam) {
  same_algebra(a, b);
  return checked(a.alg, product(a.value, b.value, lam));
}

ConfElem n_product(const ConfElem& a, const ConfElem& b, int n) {
  if (n < 0) throw std::invalid_argument("n-product index must be nonnegative");
  ConfElem p = lambda_product(a, b);
  Blocks r;
  for (const auto& m : p.value) {
    MatPoly out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        auto c = divided_coeffs(m(i, j), Var::L);
        if (std::size_t(n) < c.size()) out(i, j) = c[std::size_t(n)];
      }
    r.push_back(std::move(out));
  }
  return checked(a.alg, std::move(r));
}

int locality(const ConfElem& a, const ConfElem& b) {
  ConfElem p = lambda_product(a, b);
  return degree(p.value, Var::L) + 1;
}

ConfElem curly_product(const ConfElem& a, const ConfElem& b) {
  ConfElem p = lambda_product(a, b);
  return {a.alg, subst(p.value, Subst().bind(Var::L, -kD - kLambda))};
}

ConfElem translate(const ConfElem& a) { return {a.alg, translate(a.value)}; }

Certificate check_axioms(const AlgPtr& alg, const std::vector<Triple>& samples, const ProductFn& prod) {
  ProductFn p = prod ? prod : ProductFn(product);
  Certificate cert;
  cert.check = "axioms";
  cert.anchor = "sesquilinearity and lambda-associativity of the algebra product";
  cert.params = {{"algebra", alg->desc().to_string()}, {"samples", samples.size()}, {"custom_product", bool(prod)}};
  cert.evidence = Evidence::Sampled;
  const MPoly lm = kLambda + kMu;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& [a, b, c] = samples[s];
    auto fail = [&](const char* law, const Blocks& lhs, const Blocks& rhs) {
      cert.verdict = Verdict::Fail;
      cert.witness = {{"sample", s},   {"law", law},
                      {"a", to_string(a)}, {"b", to_string(b)}, {"c", to_string(c)},
                      {"lhs", to_string(lhs)}, {"rhs", to_string(rhs)}};
      return cert;
    };
    Blocks ab = p(a, b, kLambda);
    try {
      alg->shape().validate(ab, true);
    } catch (const InvariantError& e) {
      cert.verdict = Verdict::Fail;
      cert.witness = {{"sample", s}, {"law", "closure"}, {"error", e.what()}, {"product", to_string(ab)}};
      return cert;
    }
    Blocks l1 = p(translate(a), b, kLambda), r1 = scale(-kLambda, ab);
    if (l1 != r1) return fail("(da) o_l b = -l (a o_l b)", l1, r1);
    Blocks l2 = p(a, translate(b), kLambda), r2 = scale(kD + kLambda, ab);
    if (l2 != r2) return fail("a o_l (db) = (d+l)(a o_l b)", l2, r2);
    Blocks l3 = p(a, p(b, c, kMu), kLambda), r3 = p(ab, c, lm);
    if (l3 != r3) return fail("a o_l (b o_m c) = (a o_l b) o_{l+m} c", l3, r3);
  }
  return cert;
}

Blocks random_value(const Shape& shape, Rng& rng, int deg, int density) {
  Blocks v = shape.zero();
  for (std::size_t bi = 0; bi < shape.blocks().size(); ++bi) {
    const auto& b = shape.blocks()[bi];
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) {
        MPoly c = b.x_free ? random_poly(rng, {Var::D}, deg, density) : random_poly(rng, {Var::D, Var::X}, deg, density);
        v[bi](i, j) = c * b.row_factor[std::size_t(i)];
      }
  }
  return v;
}

ConfElem random_element(const AlgPtr& alg, Rng& rng, int deg) { return {alg, random_value(alg->shape(), rng, deg)}; }

std::vector<Triple> random_triples(const AlgPtr& alg, Rng& rng, int count, int deg) {
  std::vector<Triple> out;
  out.reserve(std::size_t(count));
  for (int i = 0; i < count; ++i) {
    Blocks a = random_value(alg->shape(), rng, deg);
    Blocks b = random_value(alg->shape(), rng, deg);
    Blocks c = random_value(alg->shape(), rng, deg);
    out.push_back({std::move(a), std::move(b), std::move(c)});
  }
  return out;
}

namespace {

const AlgebraDesc& single_part(const ConfElem& a) {
  const auto& d = a.alg->desc();
  if (d.kind() != AlgebraDesc::Kind::CendQ && d.kind() != AlgebraDesc::Kind::Cend)
    throw DescriptorError("theta is defined on Cend_{n,Q} (and Cend_n with Q = I)");
  return d;
}

std::vector<MPoly> q_of(const AlgebraDesc& d) {
  if (d.kind() == AlgebraDesc::Kind::CendQ) return d.q();
  return std::vector<MPoly>(std::size_t(d.n()), MPoly(1));
}

}  // namespace

ConfElem theta(const ConfElem& a) {
  const auto& d = single_part(a);
  auto q = q_of(d);
  int n = d.n();
  const MatPoly& v = a.value.at(0);
  MatPoly out(n, n);
  Subst back = Subst().bind(Var::X, kX - kD);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (v(i, j).is_zero()) continue;
      auto cof = exact_div(v(i, j), q[std::size_t(i)], Var::X);
      if (!cof) throw InvariantError("theta: row " + std::to_string(i + 1) + " not divisible by " + q[std::size_t(i)].to_string());
      out(i, j) = *cof * substitute(q[std::size_t(j)], back);
    }
  }
  return {make_algebra(AlgebraDesc::cend(n)), {out}};
}

ConfElem theta_inverse(const ConfElem& b, const AlgPtr& cendq) {
  const auto& d = cendq->desc();
  if (d.kind() != AlgebraDesc::Kind::CendQ && d.kind() != AlgebraDesc::Kind::Cend)
    throw DescriptorError("theta_inverse target must be Cend_{n,Q}");
  auto q = q_of(d);
  int n = d.n();
  const MatPoly& v = b.value.at(0);
  if (v.rows() != n || v.cols() != n) throw DimensionError("theta_inverse: size mismatch");
  MatPoly out(n, n);
  Subst back = Subst().bind(Var::X, kX - kD);
  for (int j = 0; j < n; ++j) {
    MPoly fj = substitute(q[std::size_t(j)], back);
    for (int i = 0; i < n; ++i) {
      if (v(i, j).is_zero()) continue;
      auto cof = exact_div(v(i, j), fj, Var::X);
      if (!cof) throw InvariantError("theta_inverse: column " + std::to_string(j + 1) + " not divisible by " + fj.to_string());
      out(i, j) = q[std::size_t(i)] * *cof;
    }
  }
  return make_elem(cendq, out);
}

const char* identity_class_name(IdentityClass c) {
  switch (c) {
    case IdentityClass::Unit: return "unit";
    case IdentityClass::Idempotent: return "idempotent";
    case IdentityClass::Neither: return "neither";
  }
  return "?";
}

namespace {

struct IdentityResult {
  IdentityClass cls;
  nlohmann::json detail;
};

IdentityResult classify(const ConfElem& e, int bound) {
  Blocks ee = product(e.value, e.value, kLambda);
  if (ee != e.value) return {IdentityClass::Neither, {{"e o_l e", to_string(ee)}}};
  if (is_zero(e.value)) return {IdentityClass::Idempotent, {{"reason", "e = 0 fixes no nonzero element"}}};
  const Shape& sh = e.alg->shape();
  for (const auto& g : sh.generators(bound)) {
    Blocks gv = sh.gen(g);
    Blocks e0g = subst(product(e.value, gv, kLambda), Subst().bind(Var::L, MPoly()));
    if (e0g != gv)
      return {IdentityClass::Idempotent, {{"generator", g.to_string()}, {"e o_0 g", to_string(e0g)}}};
  }
  return {IdentityClass::Unit, nlohmann::json::object()};
}

}  // namespace

IdentityClass classify_identity(const ConfElem& e, int bound) { return classify(e, bound).cls; }

Certificate identity_check(const ConfElem& e, int bound) {
  Certificate cert;
  cert.check = "identity";
  cert.anchor = "conformal identity: e o_l e = e and e o_0 a = a";
  cert.params = {{"algebra", e.alg->desc().to_string()}, {"e", to_string(e.value)}};
  cert.bound = bound;
  cert.evidence = Evidence::Exhaustive;
  auto r = classify(e, bound);
  cert.verdict = r.cls == IdentityClass::Unit ? Verdict::Pass : Verdict::Fail;
  cert.witness = {{"classification", identity_class_name(r.cls)}, {"detail", r.detail}};
  return cert;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::NoSolution: return "no-solution-up-to-bound";
    case Verdict::Error: return "error";
  }
  return "?";
}

const char* evidence_name(Evidence e) {
  switch (e) {
    case Evidence::Proof: return "proof";
    case Evidence::Exhaustive: return "exhaustive";
    case Evidence::Sampled: return "sampled";
    case Evidence::Bounded: return "bounded";
  }
  return "?";
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json j = {{"check", check}, {"anchor", anchor}, {"params", params}, {"verdict", verdict_name(verdict)},
                      {"evidence", evidence_name(evidence)}};
  j["bound"] = bound ? nlohmann::json(*bound) : nlohmann::json();
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

}  // namespace confalg
