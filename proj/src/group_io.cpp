#include "horo/group_io.hpp"

#include <fstream>
#include <sstream>

namespace horo {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    int line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON", line, column);
  }
}

Rational rational_from_json(const json& v) {
  if (v.is_number_integer()) return to_rational(v.get<std::int64_t>());
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError("expected an integer or a \"p/q\" string, got " + v.dump());
}

json rational_to_json(const Rational& v) {
  if (is_integer(v)) {
    const BigInt n(numerator(v));
    if (n <= BigInt(std::numeric_limits<std::int64_t>::max()) &&
        n >= BigInt(std::numeric_limits<std::int64_t>::min()))
      return n.convert_to<std::int64_t>();
  }
  return to_string(v);
}

namespace {

const json& required(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

int positive_int(const json& doc, const char* key) {
  const json& v = required(doc, key);
  if (!v.is_number_integer() || v.get<int>() < 1)
    throw ParseError(std::string("field \"") + key + "\" must be a positive integer");
  return v.get<int>();
}

GroupElement element_from_coords(const GroupShape& shape, const json& coords,
                                 const std::string& label) {
  if (!coords.is_array()) throw ParseError("coords of '" + label + "' must be an array");
  if (shape.kind == GroupKind::Cartan) {
    if (coords.size() != 5) throw ParseError("cartan coords are [x, y, A, Bx, By]");
    CartanParams p;
    p.endpoint << rational_from_json(coords[0]), rational_from_json(coords[1]);
    p.area = rational_from_json(coords[2]);
    p.barycenter << rational_from_json(coords[3]), rational_from_json(coords[4]);
    return cartan_element(p);
  }
  if (static_cast<int>(coords.size()) != shape.coordinate_count())
    throw ParseError("generator '" + label + "' needs " +
                     std::to_string(shape.coordinate_count()) + " coordinates");
  GroupElement::Coords c(shape.coordinate_count());
  for (int i = 0; i < shape.coordinate_count(); ++i) {
    if (!coords[i].is_number_integer())
      throw ParseError("coordinates of '" + label + "' must be integers");
    c(i) = coords[i].get<std::int64_t>();
  }
  return GroupElement(shape, std::move(c));
}

}  // namespace

MarkedGroup group_from_json(const json& doc) {
  const json& kind_field = required(doc, "kind");
  if (!kind_field.is_string()) throw ParseError("field \"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();
  GroupShape shape;
  if (kind == "abelian")
    shape = GroupShape::abelian(positive_int(doc, "d"));
  else if (kind == "heisenberg")
    shape = GroupShape::heisenberg(positive_int(doc, "k"));
  else if (kind == "cartan")
    shape = GroupShape::cartan();
  else
    throw ParseError("unknown group kind '" + kind + "'");
  validate_shape(shape);

  if (!doc.contains("generators")) {
    switch (shape.kind) {
      case GroupKind::Abelian: return MarkedGroup::abelian_standard(shape.rank);
      case GroupKind::Heisenberg:
        return MarkedGroup::heisenberg_standard(shape.rank, doc.value("with_center", false));
      case GroupKind::Cartan: return MarkedGroup::cartan_standard();
    }
  }
  const json& gens = doc.at("generators");
  if (!gens.is_array() || gens.empty()) throw ParseError("\"generators\" must be a nonempty array");
  const MarkedGroup cartan = MarkedGroup::cartan_standard();
  std::vector<std::pair<Label, GroupElement>> positive;
  for (const auto& g : gens) {
    const json& label_field = required(g, "label");
    if (!label_field.is_string()) throw ParseError("generator labels must be strings");
    const Label label = label_field.get<std::string>();
    const bool has_word = g.contains("word") && !g.at("word").is_null();
    GroupElement element;
    if (has_word) {
      if (shape.kind != GroupKind::Cartan)
        throw ParseError("generator words are only supported for cartan groups");
      element = cartan.evaluate(g.at("word").get<std::string>());
    } else {
      element = element_from_coords(shape, required(g, "coords"), label);
    }
    if (!label.empty() && label.back() == '~')
      positive.emplace_back(inverse_label(label), inv(element));
    else
      positive.emplace_back(label, element);
  }
  return MarkedGroup(shape, std::move(positive));
}

MarkedGroup parse_group(std::string_view text) { return group_from_json(parse_json(text)); }

MarkedGroup load_group(const std::string& path) { return parse_group(read_file(path)); }

json group_to_json(const MarkedGroup& G) {
  json doc;
  doc["kind"] = std::string(to_string(G.kind()));
  if (G.kind() == GroupKind::Abelian) doc["d"] = G.shape().rank;
  if (G.kind() == GroupKind::Heisenberg) doc["k"] = G.shape().rank;
  json gens = json::array();
  for (const auto& g : G.generators()) {
    if (!g.label.empty() && g.label.back() == '~') continue;
    json entry;
    entry["label"] = g.label;
    json coords = json::array();
    if (G.kind() == GroupKind::Cartan) {
      const CartanParams p = cartan_params(g.element);
      coords = {rational_to_json(p.endpoint(0)), rational_to_json(p.endpoint(1)),
                rational_to_json(p.area), rational_to_json(p.barycenter(0)),
                rational_to_json(p.barycenter(1))};
    } else {
      for (int i = 0; i < g.element.coords().size(); ++i) coords.push_back(g.element[i]);
    }
    entry["coords"] = coords;
    gens.push_back(entry);
  }
  doc["generators"] = gens;
  return doc;
}

}  // namespace horo
