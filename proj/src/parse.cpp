#include "confalg/parse.hpp"

#include <cctype>
#include <string>

namespace confalg {

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  MPoly parse_all() {
    MPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

  MPoly expr() {
    MPoly acc = term();
    for (;;) {
      skip_ws();
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else return acc;
    }
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  bool starts_factor() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    return std::isdigit(c) || std::isalpha(c) || c == '(' || c >= 0x80;
  }

  MPoly term() {
    MPoly acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        auto c = unary().constant_value();
        if (!c || c->is_zero()) fail("division only by a nonzero constant");
        acc = (Rat(1) / *c) * acc;
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  MPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  MPoly power() {
    MPoly base = primary();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
      return pow(base, e);
    }
    return base;
  }

  MPoly primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      MPoly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    if (std::isdigit(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MPoly(Rat::parse(s_.substr(start, pos_ - start)));
    }
    static const std::pair<std::string_view, Var> kUnicode[] = {
        {"∂", Var::D}, {"λ", Var::L}, {"μ", Var::M}, {"ν", Var::N}};
    for (const auto& [tok, v] : kUnicode)
      if (s_.substr(pos_, tok.size()) == tok) {
        pos_ += tok.size();
        return MPoly::var(v);
      }
    if (std::isalpha(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view id = s_.substr(start, pos_ - start);
      if (id == "d") return MPoly::var(Var::D);
      if (id == "x" || id == "y" || id == "z") return MPoly::var(Var::X);
      if (id == "l") return MPoly::var(Var::L);
      if (id == "m") return MPoly::var(Var::M);
      if (id == "n2") return MPoly::var(Var::N);
      pos_ = start;
      fail("unknown variable '" + std::string(id) + "'");
    }
    fail("unexpected character");
  }
};

// Splits "[a, b, (c, d)]" at top-level commas; returns the pieces and the
// offset just past the closing bracket.
std::vector<std::string> split_bracketed(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos >= s.size() || s[pos] != '[') throw ParseError("expected '[' in matrix literal");
  ++pos;
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if ((c == '[' || c == '(')) ++depth;
    if (depth == 0 && (c == ',' || c == ']')) {
      out.push_back(cur);
      cur.clear();
      if (c == ']') {
        ++pos;
        return out;
      }
      continue;
    }
    if ((c == ']' || c == ')')) --depth;
    cur += c;
  }
  throw ParseError("unterminated '[' in matrix literal");
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

MPoly parse_poly(std::string_view text) { return PolyParser(text).parse_all(); }

MatPoly parse_matrix(std::string_view text) {
  std::size_t pos = 0;
  auto rows = split_bracketed(text, pos);
  if (!trim(std::string(text.substr(pos))).empty()) throw ParseError("trailing input after matrix literal");
  if (rows.empty()) throw ParseError("empty matrix literal");
  std::vector<std::vector<MPoly>> cells;
  for (const auto& r : rows) {
    std::size_t p = 0;
    std::string rt = trim(r);
    auto items = split_bracketed(rt, p);
    if (!trim(rt.substr(p)).empty()) throw ParseError("trailing input after matrix row");
    std::vector<MPoly> row;
    for (const auto& it : items) row.push_back(parse_poly(trim(it)));
    cells.push_back(std::move(row));
  }
  int nr = int(cells.size()), nc = int(cells[0].size());
  MatPoly m(nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (int(cells[i].size()) != nc) throw DimensionError("ragged matrix literal");
    for (int j = 0; j < nc; ++j) m(i, j) = cells[i][j];
  }
  return m;
}

nlohmann::json to_json(const Rat& r) { return {{"num", r.num_str()}, {"den", r.den_str()}}; }

nlohmann::json to_json(const MPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    auto e = m.exponents();
    terms.push_back({{"exponents", std::vector<int>(e.begin(), e.end())}, {"num", c.num_str()}, {"den", c.den_str()}});
  }
  return {{"terms", terms}, {"text", p.to_string()}};
}

nlohmann::json to_json(const MatPoly& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& p : m.entries()) entries.push_back(to_json(p));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

MPoly poly_from_json(const nlohmann::json& j) {
  std::vector<MPoly::Term> terms;
  for (const auto& t : j.at("terms")) {
    const auto& ex = t.at("exponents");
    if (!ex.is_array() || ex.size() != kNumVars) throw ParseError("exponents must have 5 entries");
    std::array<int, kNumVars> e{};
    for (int i = 0; i < kNumVars; ++i) e[i] = ex[i].get<int>();
    auto field = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    Rat c = Rat::parse(field(t.at("num"))) / Rat::parse(field(t.at("den")));
    terms.emplace_back(Monomial::from_exponents(e), c);
  }
  return MPoly::from_terms(std::move(terms));
}

MatPoly matrix_from_json(const nlohmann::json& j) {
  MatPoly m(j.at("rows").get<int>(), j.at("cols").get<int>());
  const auto& e = j.at("entries");
  if (e.size() != std::size_t(m.rows()) * m.cols()) throw DimensionError("entry count does not match shape");
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) m(i, k) = poly_from_json(e[std::size_t(i) * m.cols() + k]);
  return m;
}

}  // namespace confalg
