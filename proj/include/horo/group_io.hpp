#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "horo/marked_group.hpp"

namespace horo {

/// Group descriptions:
///   {"kind":"abelian","d":2,"generators":[{"label":"x","coords":[1,0]},...]}
///   {"kind":"heisenberg","k":1,"generators":[{"label":"x","word":null,"coords":[1,0,0]},...]}
///   {"kind":"cartan","generators":[{"label":"x","word":"x"},...]}
/// Cartan coords, when given instead of a word, are [x, y, A, Bx, By] with
/// rationals as numbers or "p/q" strings. Omitting "generators" selects the
/// standard set; heisenberg accepts "with_center": true.
MarkedGroup parse_group(std::string_view text);
MarkedGroup load_group(const std::string& path);
MarkedGroup group_from_json(const nlohmann::json& doc);
nlohmann::json group_to_json(const MarkedGroup& G);

/// Parses JSON text, converting syntax errors into ParseError with line/column.
nlohmann::json parse_json(std::string_view text);
std::string read_file(const std::string& path);

Rational rational_from_json(const nlohmann::json& v);
nlohmann::json rational_to_json(const Rational& v);

}  // namespace horo
