#include "confalg/checks.hpp"

#include "confalg/normalize.hpp"
#include "confalg/paper_cases.hpp"
#include "confalg/presentation.hpp"
#include "confalg/solver.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <functional>
#include <map>
#include <sstream>

namespace confalg {

namespace {

// Checks over generator triples stop at this x-degree whatever D is.
constexpr int kTripleCap = 3;

using CheckFn = std::function<Certificate(const RunConfig&, Rng&)>;

struct Entry {
  CheckInfo info;
  CheckFn fn;
};

int triple_bound(const RunConfig& c) { return std::min(c.deg_bound, kTripleCap); }

// Several certificates under one id: worst verdict, parts kept in order.
Certificate combine(std::vector<Certificate> parts) {
  Certificate out;
  out.evidence = parts.empty() ? Evidence::Exhaustive : parts.front().evidence;
  nlohmann::json w = nlohmann::json::array();
  for (auto& p : parts) {
    if (out.verdict == Verdict::Pass && !p.passed()) out.verdict = p.verdict;
    if (p.verdict == Verdict::Error) out.verdict = Verdict::Error;
    w.push_back(p.to_json());
  }
  out.witness = {{"parts", w}};
  return out;
}

AlgPtr alg(const char* desc) { return make_algebra(parse_algebra(desc)); }
BimodPtr mod(const char* desc) { return make_bimodule(parse_bimodule(desc)); }

CheckFn axioms_algebra(const char* desc) {
  return [desc](const RunConfig& c, Rng& rng) {
    auto a = alg(desc);
    return check_axioms(a, random_triples(a, rng, c.samples, 3));
  };
}

CheckFn axioms_bimodule(std::vector<const char*> descs) {
  return [descs](const RunConfig& c, Rng& rng) {
    std::vector<Certificate> parts;
    for (const char* d : descs) {
      auto m = mod(d);
      parts.push_back(check_bimodule_axioms(m, random_bimod_samples(m, rng, c.samples, 3)));
    }
    return parts.size() == 1 ? parts.front() : combine(std::move(parts));
  };
}

Certificate theta_check(const AlgPtr& a, Rng& rng, int count) {
  Certificate cert;
  cert.check = "theta";
  cert.params = {{"algebra", a->desc().to_string()}, {"pairs", count}};
  cert.evidence = Evidence::Sampled;
  auto fail = [&](int s, const char* what, const Blocks& lhs, const Blocks& rhs) {
    cert.verdict = Verdict::Fail;
    cert.witness = {{"sample", s}, {"property", what}, {"lhs", blocks_json(lhs)}, {"rhs", blocks_json(rhs)}};
  };
  for (int s = 0; s < count; ++s) {
    ConfElem x = random_element(a, rng, 3), y = random_element(a, rng, 3);
    ConfElem tx = theta(x), ty = theta(y);
    Blocks lhs = lambda_product(tx, ty).value;
    Blocks rhs = theta(lambda_product(x, y)).value;
    if (lhs != rhs) return fail(s, "homomorphism", lhs, rhs), cert;
    ConfElem back = theta_inverse(tx, a);
    if (back.value != x.value) return fail(s, "left inverse", back.value, x.value), cert;
    // θ(x) = θ(y) forces x = y
    if ((tx.value == ty.value) != (x.value == y.value)) return fail(s, "injectivity", tx.value, ty.value), cert;
  }
  cert.witness = {{"checked", count}};
  return cert;
}

Certificate identity_expect(const char* desc, const MatPoly& e, IdentityClass want, int bound) {
  auto a = alg(desc);
  ConfElem el = make_elem(a, e);
  Certificate cert = identity_check(el, bound);
  IdentityClass got = classify_identity(el, bound);
  cert.params["expected"] = identity_class_name(want);
  cert.verdict = got == want ? Verdict::Pass : Verdict::Fail;
  return cert;
}

// (algebra, bimodule) pairs exercised by the cochain-level checks
const std::vector<std::pair<std::string, std::string>>& cochain_pairs() {
  static const std::vector<std::pair<std::string, std::string>> p = {
      {"cend2", "bimod:regular:cend:2"},
      {"cendq_1x", "bimod:regular:cendq:2:[1,x]"},
      {"diag_xx", "bimod:regular:cendq:2:[x,x]"},
      {"rect12", "bimod:rect:1:2"},
      {"rect23", "bimod:rect:2:3"},
      {"twist1", "bimod:twist1:x^2"},
      {"z2sum", "bimod:z2sum"},
  };
  return p;
}

// Degree of the random τ values fed to d₁; the triple loop grows quickly in it.
constexpr int kTauDeg = 1;

CheckFn dd_check(std::string desc) {
  return [desc](const RunConfig& c, Rng& rng) {
    auto m = mod(desc.c_str());
    const int count = std::max(1, c.samples / 2), bound = triple_bound(c);
    Certificate cert;
    cert.check = "d1_d2";
    cert.params = {{"bimodule", m->desc().to_string()}, {"cochains", count}, {"tau_degree", kTauDeg}};
    cert.bound = bound;
    cert.evidence = Evidence::Exhaustive;
    long triples = 0;
    for (int s = 0; s < count; ++s) {
      std::uint64_t seed = rng.next();
      Certificate r = cocycle_check(d1(random_cochain1(m->base(), m, seed, kTauDeg)), bound);
      if (!r.passed()) {
        cert.verdict = r.verdict;
        cert.witness = {{"cochain", s}, {"tau_seed", seed}, {"result", r.to_json()}};
        return cert;
      }
      triples += r.witness["triples"].get<long>();
    }
    cert.witness = {{"triples", triples}};
    return cert;
  };
}

CheckFn cocycle_case(std::vector<const char*> cases) {
  return [cases](const RunConfig& c, Rng&) {
    std::vector<Certificate> parts;
    for (const char* s : cases) {
      auto pc = paper_cocycle(parse_case(s));
      Certificate r = cocycle_check(pc.phi, triple_bound(c));
      r.params["case"] = s;
      parts.push_back(std::move(r));
    }
    return parts.size() == 1 ? parts.front() : combine(std::move(parts));
  };
}

CheckFn obstruction_case(std::vector<const char*> cases) {
  return [cases](const RunConfig& c, Rng&) {
    std::vector<Certificate> parts;
    for (const char* s : cases) parts.push_back(obstruction_check(parse_case(s), triple_bound(c)));
    return parts.size() == 1 ? parts.front() : combine(std::move(parts));
  };
}

// Pass when the solver finds nothing; the solver verdict itself is kept.
CheckFn solver_case(std::vector<const char*> cases) {
  return [cases](const RunConfig& c, Rng&) {
    std::vector<Certificate> parts;
    for (const char* s : cases) {
      auto pc = paper_cocycle(parse_case(s));
      SolveResult r = coboundary_solve(pc.phi, c.deg_bound, c.solver_deg);
      Certificate cert;
      cert.check = "coboundary_solve";
      cert.params = {{"case", s}, {"expected", verdict_name(Verdict::NoSolution)}};
      cert.evidence = Evidence::Bounded;
      cert.bound = c.solver_deg;
      cert.verdict = r.cert.verdict == Verdict::NoSolution ? Verdict::Pass
                     : r.cert.verdict == Verdict::Error    ? Verdict::Error
                                                           : Verdict::Fail;
      cert.witness = {{"solver", r.cert.to_json()}};
      parts.push_back(std::move(cert));
    }
    return parts.size() == 1 ? parts.front() : combine(std::move(parts));
  };
}

Certificate solver_coboundaries(const RunConfig& c, Rng& rng) {
  const int count = std::max(1, c.samples / 4);
  Certificate cert;
  cert.check = "coboundary_solve";
  cert.params = {{"coboundaries_per_pair", count}, {"tau_degree", 2}};
  cert.evidence = Evidence::Bounded;
  cert.bound = c.solver_deg;
  nlohmann::json per = nlohmann::json::object();
  for (const auto& [name, desc] : cochain_pairs()) {
    auto m = mod(desc.c_str());
    CoboundarySolver solver(m->base(), m, c.deg_bound, c.solver_deg);
    for (int s = 0; s < count; ++s) {
      std::uint64_t seed = rng.next();
      SolveResult r = solver.solve(d1(random_cochain1(m->base(), m, seed, 2)));
      if (!r.cert.passed()) {
        cert.verdict = r.cert.verdict == Verdict::Error ? Verdict::Error : Verdict::Fail;
        cert.witness = {{"pair", name}, {"tau_seed", seed}, {"solver", r.cert.to_json()}};
        return cert;
      }
    }
    per[name] = {{"solved", count}, {"unknowns", solver.stats().unknowns}, {"rank", solver.stats().rank}};
  }
  cert.witness = {{"pairs", per}};
  return cert;
}

CheckFn realization_case(const char* s) {
  return [s](const RunConfig& c, Rng&) { return realization_check(parse_case(s), triple_bound(c)); };
}

Certificate extension_associativity(const RunConfig& c, Rng&) {
  const int bound = std::min(c.deg_bound, 2);
  std::vector<Certificate> parts;
  for (const char* s : {"ex41", "twist1:x^2"}) {
    auto pc = paper_cocycle(parse_case(s));
    Certificate r = extension_axioms(extension_build(pc.phi, bound), bound);
    r.params["case"] = s;
    parts.push_back(std::move(r));
  }
  // a non-cocycle must be turned away
  auto m = mod("bimod:twist1:x^2");
  const Shape ms = m->shape();
  Cochain2 bad = Cochain2::closed(
      m->base(), m, [ms](const Blocks&, const Blocks&, const MPoly&) { return Blocks{MatPoly::unit(1, 1, 0, 0)}; },
      "constant 1");
  Certificate rej;
  rej.check = "extension_build";
  rej.params = {{"cochain", "constant 1"}, {"expected", "rejected"}};
  try {
    extension_build(bad, bound);
    rej.verdict = Verdict::Fail;
    rej.witness = {{"rejected", false}};
  } catch (const ExtensionRejected& e) {
    rej.witness = {{"rejected", true}, {"cocycle_check", e.cert.to_json()}};
  }
  parts.push_back(std::move(rej));
  return combine(std::move(parts));
}

Certificate normalize_n2(const RunConfig& c, Rng& rng) {
  const int n = 2, count = std::max(1, c.samples / 10), bound = std::min(c.deg_bound, 2);
  auto a = make_algebra(AlgebraDesc::cendq(corner_q(n)));
  auto m = make_bimodule(BimodDesc::regular(a->desc()));
  const Shape ms = m->shape();
  Certificate cert;
  cert.check = "normalize_cend_nq";
  cert.params = {{"n", n}, {"coboundaries", count}};
  cert.bound = bound;
  cert.evidence = Evidence::Exhaustive;
  nlohmann::json degrees = nlohmann::json::array();
  for (int s = 0; s < count; ++s) {
    std::uint64_t seed = rng.next();
    Cochain1 r = random_cochain1(a, m, seed, 2);
    // zero on C₀ generators, so d₁σ vanishes on C₀ × C₀
    Cochain1 sigma = Cochain1::from_generators(
        a, m, [r, ms](const GenIndex& g) { return (g.i < n - 1 && g.j < n - 1) ? ms.zero() : r.at(g); });
    Normalized out = normalize_cend_nq(d1(sigma), bound);
    if (!out.cert.passed()) {
      cert.verdict = out.cert.verdict;
      cert.witness = {{"coboundary", s}, {"tau_seed", seed}, {"result", out.cert.to_json()}};
      return cert;
    }
    degrees.push_back(out.step3_degrees);
  }
  cert.witness = {{"step3_degrees", degrees}};
  return cert;
}

std::vector<Entry> build_registry() {
  std::vector<Entry> r;
  auto add = [&](std::string id, std::string anchor, std::string desc, CheckFn fn) {
    r.push_back({{std::move(id), std::move(anchor), std::move(desc)}, std::move(fn)});
  };
  auto fixed = [](std::function<Certificate(const RunConfig&)> f) {
    return [f](const RunConfig& c, Rng&) { return f(c); };
  };

  add("axioms.algebra.cur_m2", "current algebra over M_2", "sesquilinearity and associativity of Cur M_2 on random triples",
      axioms_algebra("cur:2"));
  add("axioms.algebra.cend1", "Cend_1", "axioms of Cend_1 on random triples", axioms_algebra("cend:1"));
  add("axioms.algebra.cend2", "Cend_2", "axioms of Cend_2 on random triples", axioms_algebra("cend:2"));
  add("axioms.algebra.cendq_1x", "right ideal Cend_{n,Q}", "axioms of Cend_{2,Q}, Q = diag(1,x)",
      axioms_algebra("cendq:2:[1,x]"));
  add("axioms.algebra.sum_1x", "base algebra of the z^2 bimodule", "axioms of Cend_{1,x} + Cend_{1,x}",
      axioms_algebra("sum(cendq:1:[x],cendq:1:[x])"));

  add("axioms.bimodule.z2sum", "z^2 k[d,z] as a bimodule", "three associativity identities for z^2 k[d,z]",
      axioms_bimodule({"bimod:z2sum"}));
  add("axioms.bimodule.rect", "rectangular matrices over Cend_{n,Q} + Cend_{m,Q'}",
      "bimodule identities for n x m matrices, (n,m) = (1,2), (2,3)", axioms_bimodule({"bimod:rect:1:2", "bimod:rect:2:3"}));
  add("axioms.bimodule.diag", "Cend_{n,Q} over itself, Q = diag(x,x)", "bimodule identities for the regular module",
      axioms_bimodule({"bimod:regular:cendq:2:[x,x]"}));
  add("axioms.bimodule.twist1", "Cend_1 with theta-twisted left action", "bimodule identities for the twisted module, f = x^2",
      axioms_bimodule({"bimod:twist1:x^2"}));

  add("conformal.theta.diag_1x", "theta: Cend_{n,Q} to the left ideal of Cend_n",
      "theta is an injective homomorphism, Q = diag(1,x)", [](const RunConfig& c, Rng& rng) {
        return theta_check(alg("cendq:2:[1,x]"), rng, std::max(1, c.samples / 2));
      });
  add("conformal.theta.diag_xx", "theta: Cend_{n,Q} to the left ideal of Cend_n",
      "theta is an injective homomorphism, Q = diag(x,x)", [](const RunConfig& c, Rng& rng) {
        return theta_check(alg("cendq:2:[x,x]"), rng, std::max(1, c.samples / 2));
      });
  add("conformal.identity.cend2", "conformal unit", "the identity matrix is a unit of Cend_2",
      fixed([](const RunConfig& c) {
        return identity_expect("cend:2", MatPoly::identity(2), IdentityClass::Unit, triple_bound(c));
      }));
  add("conformal.identity.idempotent", "idempotents in the Pierce decomposition",
      "E_11 in Cend_2 is an idempotent but not a unit", fixed([](const RunConfig& c) {
        return identity_expect("cend:2", MatPoly::unit(2, 2, 0, 0), IdentityClass::Idempotent, triple_bound(c));
      }));

  for (const auto& [name, desc] : cochain_pairs())
    add("hochschild.dd." + name, "2-cocycle identity in lambda-form",
        "d1 tau is a cocycle for random tau over " + desc + ", all generator triples", dd_check(desc));

  add("hochschild.cocycle.ex41", "cocycle on z^2 k[d,z]", "the z^2 cochain is a 2-cocycle", cocycle_case({"ex41"}));
  add("hochschild.cocycle.rect", "2-cochain on Cend_{n,Q} + Cend_{m,Q'}", "rect(1,2) and rect(2,3) are 2-cocycles",
      cocycle_case({"rect:1:2", "rect:2:3"}));
  add("hochschild.cocycle.diag", "cocycle through unit matrices of diag(f_1..f_n)", "diag(diag(x,x),1,2) is a 2-cocycle",
      cocycle_case({"diag:[x,x]:1:2"}));
  add("hochschild.cocycle.twist1", "sesquilinear map on Cend_{1,f}", "the twisted cochain for f = x^2 is a 2-cocycle",
      cocycle_case({"twist1:x^2"}));

  add("hochschild.obstruction.ex41", "z+lambda cannot divide 1", "the z^2 cocycle is not a coboundary",
      obstruction_case({"ex41"}));
  add("hochschild.obstruction.rect", "multiple of x+lambda forced", "rect(1,2), rect(2,3), rect(2,2) are not coboundaries",
      obstruction_case({"rect:1:2", "rect:2:3", "rect:2:2"}));
  add("hochschild.obstruction.diag", "divisibility f_i | f_j contradicted", "diag(diag(x,x),1,2) is not a coboundary",
      obstruction_case({"diag:[x,x]:1:2"}));
  add("hochschild.obstruction.twist1", "coefficient comparison on Cend_{1,f}", "the twisted cocycle for f = x^2 is not a coboundary",
      obstruction_case({"twist1:x^2"}));

  add("hochschild.solver.ex41", "bounded search for a primitive", "no coboundary solution for the z^2 cocycle",
      solver_case({"ex41"}));
  add("hochschild.solver.rect", "bounded search for a primitive", "no coboundary solution for rect(1,2), rect(2,3)",
      solver_case({"rect:1:2", "rect:2:3"}));
  add("hochschild.solver.diag", "bounded search for a primitive", "no coboundary solution for diag(diag(x,x),1,2)",
      solver_case({"diag:[x,x]:1:2"}));
  add("hochschild.solver.twist1", "bounded search for a primitive", "no coboundary solution for the twisted cocycle",
      solver_case({"twist1:x^2"}));
  add("hochschild.solver.coboundaries", "coboundaries have primitives", "random d1 tau0 are solved and verified on every pair",
      solver_coboundaries);

  add("hochschild.realization.ex41", "matrix model inside Cend_2", "extension by the z^2 cocycle as 2x2 matrices",
      realization_case("ex41"));
  add("hochschild.realization.rect", "matrix model inside Cend_3", "extension by rect(1,2) as 3x3 matrices",
      realization_case("rect:1:2"));
  add("hochschild.realization.diag", "matrix model inside Cend_4", "extension by diag(diag(x,x),1,2) as 4x4 matrices",
      realization_case("diag:[x,x]:1:2"));
  add("hochschild.realization.twist1", "matrix model inside Cend_2", "extension by the twisted cocycle as 2x2 matrices",
      realization_case("twist1:x^2"));
  add("hochschild.extension.associativity", "hat-product on C + M",
      "the extension product is associative for cocycles and rejected for a non-cocycle", extension_associativity);
  add("hochschild.normalize.n2", "normal form of cocycles on Cend_{n,Q}",
      "normalization of random coboundaries vanishing on C0 x C0, n = 2", normalize_n2);

  for (int n : {2, 3}) {
    const std::string s = "n" + std::to_string(n);
    add("presentation.relations." + s, "defining relations of Cend_{n,Q}",
        "relation families on both generating sets, all index tuples", fixed([n](const RunConfig&) {
          return verify_relations(n);
        }));
    add("presentation.derived." + s, "generators recovered from the small set",
        "rebuilt generators and their m-products", fixed([n](const RunConfig&) { return verify_derived_generators(n); }));
    add("presentation.independence." + s, "reduced words are linearly independent",
        n == 2 ? "exact rank of reduced words, s, t <= 3" : "exact rank of reduced words, s, t <= 2",
        fixed([n](const RunConfig&) { return independence_check(n, n == 2 ? 3 : 2, n == 2 ? 3 : 2); }));
  }

  std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.info.id < b.info.id; });
  return r;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = build_registry();
  return r;
}

std::string now_utc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

const std::vector<CheckInfo>& list_checks() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& e : registry()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

std::vector<std::string> select_checks(const std::string& glob) {
  std::vector<std::string> ids;
  for (const auto& e : registry())
    if (fnmatch(glob.c_str(), e.info.id.c_str(), 0) == 0) ids.push_back(e.info.id);
  if (ids.empty()) throw UnknownCheck("unknown check id: " + glob);
  return ids;
}

Certificate run_check(const std::string& id, const RunConfig& cfg) {
  const auto& r = registry();
  auto it = std::find_if(r.begin(), r.end(), [&](const Entry& e) { return e.info.id == id; });
  if (it == r.end()) throw UnknownCheck("unknown check id: " + id);
  Rng rng(cfg.seed, id);
  Certificate cert;
  try {
    cert = it->fn(cfg, rng);
  } catch (const std::exception& e) {
    cert = Certificate{};
    cert.verdict = Verdict::Error;
    cert.witness = {{"error", e.what()}};
  }
  if (!cert.check.empty() && cert.check != id) cert.params["op"] = cert.check;
  cert.check = id;
  cert.anchor = it->info.anchor;
  return cert;
}

int Report::count(Verdict v) const {
  return int(std::count_if(certificates.begin(), certificates.end(), [v](const Certificate& c) { return c.verdict == v; }));
}

bool Report::ok() const { return count(Verdict::Fail) == 0 && count(Verdict::Error) == 0; }

nlohmann::json Report::to_json() const {
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : certificates) certs.push_back(c.to_json());
  return {{"tool", "confalg"},
          {"version", CONFALG_VERSION},
          {"config",
           {{"checks", config.checks},
            {"deg_bound", config.deg_bound},
            {"solver_deg", config.solver_deg},
            {"samples", config.samples},
            {"seed", config.seed}}},
          {"certificates", certs},
          {"summary",
           {{"total", certificates.size()},
            {"pass", count(Verdict::Pass)},
            {"fail", count(Verdict::Fail)},
            {"no-solution-up-to-bound", count(Verdict::NoSolution)},
            {"error", count(Verdict::Error)}}},
          {"metadata", {{"timestamp", timestamp}}}};
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "confalg " << CONFALG_VERSION << "  D=" << config.deg_bound << " solver-deg=" << config.solver_deg
     << " samples=" << config.samples << " seed=" << config.seed << "\n";
  for (const auto& c : certificates) {
    std::string v = verdict_name(c.verdict);
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return char(std::toupper(ch)); });
    os << v << "  " << c.check << "  [" << evidence_name(c.evidence);
    if (c.bound) os << " <= " << *c.bound;
    os << "]";
    if (c.witness.is_object()) {
      if (c.witness.contains("summary")) os << "  " << c.witness["summary"].get<std::string>();
      else if (c.witness.contains("error")) os << "  " << c.witness["error"].get<std::string>();
    }
    os << "\n";
  }
  os << certificates.size() << " checks: " << count(Verdict::Pass) << " pass, " << count(Verdict::Fail) << " fail, "
     << count(Verdict::NoSolution) << " no-solution, " << count(Verdict::Error) << " error\n";
  return os.str();
}

Report run(const RunConfig& cfg) {
  if (cfg.deg_bound < 1 || cfg.solver_deg < 1 || cfg.samples < 1)
    throw std::invalid_argument("bounds and sample count must be at least 1");
  Report rep;
  rep.config = cfg;
  rep.timestamp = now_utc();
  for (const auto& id : select_checks(cfg.checks)) rep.certificates.push_back(run_check(id, cfg));
  return rep;
}

}  // namespace confalg
