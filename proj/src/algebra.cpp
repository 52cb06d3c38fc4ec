#include "confalg/algebra.hpp"

#include "confalg/parse.hpp"

#include <map>

namespace confalg {

namespace {

// p / f for a row factor f in x, or nullopt when not divisible.
std::optional<MPoly> divide_factor(const MPoly& p, const MPoly& f) {
  if (p.is_zero()) return MPoly();
  auto c = f.constant_value();
  if (c) return (Rat(1) / *c) * p;
  if (f.size() == 1) {
    auto q = p.div_monomial(f.lead().first);
    if (!q) return std::nullopt;
    return (Rat(1) / f.lead().second) * *q;
  }
  return exact_div(p, f, Var::X);
}

bool only_x(const MPoly& p) {
  for (const auto& [m, c] : p.terms())
    if (m.exp(Var::D) || m.exp(Var::L) || m.exp(Var::M) || m.exp(Var::N)) return false;
  return true;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\n\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_top(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

int parse_dim(const std::string& s) {
  try {
    std::size_t used = 0;
    int n = std::stoi(s, &used);
    if (used != s.size() || n < 1) throw DescriptorError("bad dimension '" + s + "'");
    return n;
  } catch (const std::logic_error&) {
    throw DescriptorError("bad dimension '" + s + "'");
  }
}

}  // namespace

std::string GenIndex::to_string() const {
  std::string s = "b" + std::to_string(block) + ":e" + std::to_string(i + 1) + std::to_string(j + 1);
  if (k == 1) s += "*x";
  if (k > 1) s += "*x^" + std::to_string(k);
  return s;
}

Shape::Shape(std::vector<BlockShape> blocks) : blocks_(std::move(blocks)) {
  for (auto& b : blocks_)
    if (b.row_factor.empty()) b.row_factor.assign(std::size_t(b.rows), MPoly(1));
}

Blocks Shape::zero() const {
  Blocks z;
  for (const auto& b : blocks_) z.emplace_back(b.rows, b.cols);
  return z;
}

Blocks Shape::gen(const GenIndex& g) const {
  if (g.block < 0 || std::size_t(g.block) >= blocks_.size()) throw DimensionError("generator block out of range");
  const auto& b = blocks_[std::size_t(g.block)];
  if (b.x_free && g.k > 0) throw InvariantError("x-free block has no x-multiple generators");
  Blocks z = zero();
  z[std::size_t(g.block)] = MatPoly::unit(b.rows, b.cols, g.i, g.j, b.row_factor[std::size_t(g.i)].mul_monomial(Monomial::of(Var::X, g.k)));
  return z;
}

std::vector<GenIndex> Shape::generators(int max_k) const {
  std::vector<GenIndex> out;
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    const auto& b = blocks_[bi];
    int kmax = b.x_free ? 0 : max_k;
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j)
        for (int k = 0; k <= kmax; ++k) out.push_back({int(bi), i, j, k});
  }
  return out;
}

bool Shape::same_layout(const Blocks& v) const {
  if (v.size() != blocks_.size()) return false;
  for (std::size_t b = 0; b < v.size(); ++b)
    if (v[b].rows() != blocks_[b].rows || v[b].cols() != blocks_[b].cols) return false;
  return true;
}

Decomposition Shape::decompose(const Blocks& value) const {
  if (!same_layout(value)) throw DimensionError("value does not match module layout");
  Decomposition out;
  for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
    const auto& b = blocks_[bi];
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j) {
        const MPoly& e = value[bi](i, j);
        if (e.is_zero()) continue;
        auto cof = divide_factor(e, b.row_factor[std::size_t(i)]);
        if (!cof) throw InvariantError("row " + std::to_string(i + 1) + " of block " + std::to_string(bi) + " is not divisible by " + b.row_factor[std::size_t(i)].to_string());
        std::map<int, std::vector<MPoly::Term>> by_k;
        for (const auto& [m, c] : cof->terms()) by_k[m.exp(Var::X)].emplace_back(m.without(Var::X), c);
        if (b.x_free && (by_k.size() > 1 || by_k.begin()->first != 0))
          throw InvariantError("current-algebra entry depends on x");
        for (auto& [k, terms] : by_k) out.emplace_back(GenIndex{int(bi), i, j, k}, MPoly::from_terms(std::move(terms)));
      }
  }
  return out;
}

Blocks Shape::recompose(const Decomposition& d) const {
  Blocks v = zero();
  for (const auto& [g, c] : d) {
    const auto& b = blocks_[std::size_t(g.block)];
    v[std::size_t(g.block)](g.i, g.j) += c * b.row_factor[std::size_t(g.i)].mul_monomial(Monomial::of(Var::X, g.k));
  }
  return v;
}

void Shape::validate(const Blocks& value, bool params) const {
  if (!same_layout(value)) throw DimensionError("value does not match module layout");
  if (!params)
    for (const auto& m : value)
      for (const auto& p : m.entries())
        for (const auto& [mon, c] : p.terms())
          if (mon.exp(Var::L) || mon.exp(Var::M) || mon.exp(Var::N))
            throw InvariantError("element entries must be polynomials in d and x only");
  decompose(value);
}

AlgebraDesc AlgebraDesc::cur(int n) {
  if (n < 1) throw DescriptorError("matrix size must be positive");
  AlgebraDesc d;
  d.kind_ = Kind::Cur;
  d.n_ = n;
  return d;
}

AlgebraDesc AlgebraDesc::cend(int n) {
  if (n < 1) throw DescriptorError("matrix size must be positive");
  AlgebraDesc d;
  d.kind_ = Kind::Cend;
  d.n_ = n;
  return d;
}

AlgebraDesc AlgebraDesc::cendq(std::vector<MPoly> q) {
  if (q.empty()) throw DescriptorError("Q must have at least one entry");
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i].is_zero()) throw DescriptorError("Q entries must be nonzero");
    if (!only_x(q[i])) throw DescriptorError("Q entries must be polynomials in x alone");
    if (i > 0 && !exact_div(q[i], q[i - 1], Var::X))
      throw DescriptorError("Q entries must form a divisor chain: " + q[i - 1].to_string() + " does not divide " + q[i].to_string());
  }
  AlgebraDesc d;
  d.kind_ = Kind::CendQ;
  d.n_ = int(q.size());
  d.q_ = std::move(q);
  return d;
}

AlgebraDesc AlgebraDesc::sum(const std::vector<AlgebraDesc>& parts) {
  if (parts.empty()) throw DescriptorError("direct sum needs at least one summand");
  AlgebraDesc d;
  d.kind_ = Kind::Sum;
  for (const auto& p : parts) {
    if (p.kind_ == Kind::Sum) d.summands_.insert(d.summands_.end(), p.summands_.begin(), p.summands_.end());
    else d.summands_.push_back(p);
  }
  d.n_ = 0;
  return d;
}

std::vector<AlgebraDesc> AlgebraDesc::parts() const {
  if (kind_ == Kind::Sum) return summands_;
  return {*this};
}

Shape AlgebraDesc::shape() const {
  std::vector<BlockShape> blocks;
  for (const auto& p : parts()) {
    BlockShape b;
    b.rows = b.cols = p.n_;
    b.x_free = p.kind_ == Kind::Cur;
    if (p.kind_ == Kind::CendQ) b.row_factor = p.q_;
    blocks.push_back(std::move(b));
  }
  return Shape(std::move(blocks));
}

std::string AlgebraDesc::to_string() const {
  switch (kind_) {
    case Kind::Cur: return "cur:" + std::to_string(n_);
    case Kind::Cend: return "cend:" + std::to_string(n_);
    case Kind::CendQ: {
      std::string s = "cendq:" + std::to_string(n_) + ":[";
      for (std::size_t i = 0; i < q_.size(); ++i) s += (i ? "," : "") + q_[i].to_string();
      return s + "]";
    }
    case Kind::Sum: {
      std::string s = "sum(";
      for (std::size_t i = 0; i < summands_.size(); ++i) s += (i ? "," : "") + summands_[i].to_string();
      return s + ")";
    }
  }
  return "?";
}

bool operator==(const AlgebraDesc& a, const AlgebraDesc& b) {
  return a.kind_ == b.kind_ && a.n_ == b.n_ && a.q_ == b.q_ && a.summands_ == b.summands_;
}

AlgebraDesc parse_algebra(std::string_view text) {
  std::string s = trim(text);
  if (s.rfind("sum(", 0) == 0) {
    if (s.back() != ')') throw DescriptorError("unterminated sum(...)");
    std::vector<AlgebraDesc> parts;
    for (const auto& p : split_top(std::string_view(s).substr(4, s.size() - 5))) parts.push_back(parse_algebra(p));
    return AlgebraDesc::sum(parts);
  }
  auto c1 = s.find(':');
  if (c1 == std::string::npos) throw DescriptorError("unknown algebra descriptor '" + s + "'");
  std::string kind = s.substr(0, c1);
  std::string rest = s.substr(c1 + 1);
  if (kind == "cur") return AlgebraDesc::cur(parse_dim(rest));
  if (kind == "cend") return AlgebraDesc::cend(parse_dim(rest));
  if (kind == "cendq") {
    auto c2 = rest.find(':');
    if (c2 == std::string::npos) throw DescriptorError("cendq needs ':[f1,...,fn]'");
    int n = parse_dim(rest.substr(0, c2));
    std::string list = trim(rest.substr(c2 + 1));
    if (list.size() < 2 || list.front() != '[' || list.back() != ']') throw DescriptorError("cendq polynomial list must be bracketed");
    std::vector<MPoly> q;
    try {
      for (const auto& p : split_top(std::string_view(list).substr(1, list.size() - 2))) q.push_back(parse_poly(p));
    } catch (const ParseError& e) {
      throw DescriptorError(e.what());
    }
    if (int(q.size()) != n) throw DescriptorError("cendq:" + std::to_string(n) + " needs " + std::to_string(n) + " polynomials");
    return AlgebraDesc::cendq(std::move(q));
  }
  throw DescriptorError("unknown algebra kind '" + kind + "'");
}

AlgPtr make_algebra(const AlgebraDesc& d) { return std::make_shared<const Algebra>(d); }

ConfElem make_elem(const AlgPtr& alg, Blocks value) {
  alg->shape().validate(value);
  return {alg, std::move(value)};
}

ConfElem make_elem(const AlgPtr& alg, const MatPoly& value) { return make_elem(alg, Blocks{value}); }

bool operator==(const ConfElem& a, const ConfElem& b) {
  return (a.alg == b.alg || a.alg->desc() == b.alg->desc()) && a.value == b.value;
}

}  // namespace confalg
