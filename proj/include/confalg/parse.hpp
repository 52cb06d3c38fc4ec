#pragma once

#include "confalg/matpoly.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <string_view>

namespace confalg {

struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Grammar: integers, variables d x l m n2 (y and z read as x), + - * / ^,
// parentheses. Juxtaposition multiplies: "2x", "(x+1)(x-1)". Division only by
// a constant.
MPoly parse_poly(std::string_view text);
// Bracketed rows: [[p, p], [p, p]].
MatPoly parse_matrix(std::string_view text);

nlohmann::json to_json(const Rat& r);
nlohmann::json to_json(const MPoly& p);
nlohmann::json to_json(const MatPoly& m);
MPoly poly_from_json(const nlohmann::json& j);
MatPoly matrix_from_json(const nlohmann::json& j);

}  // namespace confalg
