#include "horo/marked_group.hpp"

#include <cctype>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace horo {

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Abelian: return "abelian";
    case GroupKind::Heisenberg: return "heisenberg";
    case GroupKind::Cartan: return "cartan";
  }
  return "?";
}

void validate_shape(const GroupShape& shape) {
  if (shape.rank < 1) throw DomainError("group rank must be positive");
  if (shape.kind == GroupKind::Cartan && shape.rank != 2)
    throw DomainError("the Cartan lattice has rank 2");
  if (shape.coordinate_count() > kMaxCoords)
    throw DomainError("group too large: at most " + std::to_string(kMaxCoords) + " coordinates");
}

GroupElement abelian_element(std::span<const std::int64_t> v) {
  GroupElement::Coords c(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) c(static_cast<int>(i)) = v[i];
  return GroupElement(GroupShape::abelian(static_cast<int>(v.size())), std::move(c));
}

GroupElement heisenberg_element(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                                std::int64_t c) {
  if (a.size() != b.size()) throw DomainError("heisenberg a and b must have equal length");
  const int k = static_cast<int>(a.size());
  GroupElement::Coords coords(2 * k + 1);
  for (int i = 0; i < k; ++i) {
    coords(i) = a[i];
    coords(k + i) = b[i];
  }
  coords(2 * k) = c;
  return GroupElement(GroupShape::heisenberg(k), std::move(coords));
}

GroupElement cartan_element(const CartanParams& p) {
  const Rational area2 = p.area * 2;
  const Rational bx = p.barycenter(0) * 6;
  const Rational by = p.barycenter(1) * 6;
  if (!is_integer(p.endpoint(0)) || !is_integer(p.endpoint(1)) || !is_integer(area2) ||
      !is_integer(bx) || !is_integer(by))
    throw DomainError("not a Cartan lattice element (need integral endpoint, 2A and 6B)");
  GroupElement::Coords c(5);
  c << to_int64(p.endpoint(0)), to_int64(p.endpoint(1)), to_int64(area2), to_int64(bx),
      to_int64(by);
  return GroupElement(GroupShape::cartan(), std::move(c));
}

RationalVector log_coordinates(const GroupElement& g) {
  const int n = g.shape().coordinate_count();
  RationalVector v(n);
  for (int i = 0; i < n; ++i) v(i) = to_rational(g[i]);
  switch (g.shape().kind) {
    case GroupKind::Abelian: break;
    case GroupKind::Heisenberg: {
      const int k = g.shape().rank;
      Rational dot = 0;
      for (int i = 0; i < k; ++i) dot += to_rational(g[i]) * to_rational(g[k + i]);
      v(2 * k) -= dot / 2;
      break;
    }
    case GroupKind::Cartan:
      throw DomainError("log_coordinates: Cartan elements are not supported");
  }
  return v;
}

// ---------------------------------------------------------------------------

Label inverse_label(std::string_view label) {
  if (!label.empty() && label.back() == '~') return Label(label.substr(0, label.size() - 1));
  return Label(label) + "~";
}

Word split_word(std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) w.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return w;
}

std::string join_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_label(*it));
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  for (const auto& l : w) {
    if (!out.empty() && out.back() == inverse_label(l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word letter_power(const Label& letter, std::int64_t n) {
  const Label l = n < 0 ? inverse_label(letter) : letter;
  return Word(static_cast<std::size_t>(n < 0 ? -n : n), l);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

bool valid_label(std::string_view label) {
  std::string_view base = label;
  if (!base.empty() && base.back() == '~') base.remove_suffix(1);
  if (base.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(base[0])) || base[0] == '_')) return false;
  for (char ch : base)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_')) return false;
  return true;
}

}  // namespace

MarkedGroup::MarkedGroup(GroupShape shape, std::vector<std::pair<Label, GroupElement>> positive)
    : shape_(shape) {
  validate_shape(shape_);
  if (positive.empty()) throw DomainError("generating set is empty");
  auto add = [&](const Label& label, const GroupElement& element) {
    if (!valid_label(label)) throw DomainError("invalid generator label '" + label + "'");
    if (!(element.shape() == shape_))
      throw DomainError("generator '" + label + "' does not belong to the group");
    if (auto it = by_label_.find(label); it != by_label_.end()) {
      if (!(generators_[it->second].element == element))
        throw DomainError("label '" + label + "' assigned two different elements");
      return;
    }
    by_label_.emplace(label, static_cast<int>(generators_.size()));
    generators_.push_back({label, inverse_label(label), element});
  };
  for (const auto& [label, element] : positive) {
    if (element.is_identity()) throw DomainError("generator '" + label + "' is the identity");
    add(label, element);
    add(inverse_label(label), inv(element));
  }
  inverse_index_.resize(generators_.size());
  for (std::size_t i = 0; i < generators_.size(); ++i)
    inverse_index_[i] = by_label_.at(generators_[i].inverse);

  if (shape_.kind == GroupKind::Heisenberg) {
    std::int64_t g = 0;
    for (const auto& s : generators_)
      for (const auto& t : generators_) {
        const GroupElement c = commutator(s.element, t.element);
        g = std::gcd(g, c[2 * shape_.rank]);
      }
    commutator_unit_ = g;
  }
  hash_ = [&] {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_description())));
    return std::string(buf);
  }();
}

MarkedGroup MarkedGroup::abelian_standard(int d) {
  static const char* names[] = {"x", "y", "z", "w"};
  std::vector<std::pair<Label, GroupElement>> gens;
  for (int i = 0; i < d; ++i) {
    std::vector<std::int64_t> v(d, 0);
    v[i] = 1;
    gens.emplace_back(d <= 4 ? Label(names[i]) : "e" + std::to_string(i + 1), abelian_element(v));
  }
  return MarkedGroup(GroupShape::abelian(d), std::move(gens));
}

MarkedGroup MarkedGroup::heisenberg_standard(int k, bool with_center) {
  std::vector<std::pair<Label, GroupElement>> gens;
  for (int i = 0; i < k; ++i) {
    std::vector<std::int64_t> e(k, 0), zero(k, 0);
    e[i] = 1;
    const std::string suffix = k == 1 ? "" : std::to_string(i + 1);
    gens.emplace_back("x" + suffix, heisenberg_element(e, zero, 0));
  }
  for (int i = 0; i < k; ++i) {
    std::vector<std::int64_t> e(k, 0), zero(k, 0);
    e[i] = 1;
    const std::string suffix = k == 1 ? "" : std::to_string(i + 1);
    gens.emplace_back("y" + suffix, heisenberg_element(zero, e, 0));
  }
  if (with_center) {
    std::vector<std::int64_t> zero(k, 0);
    gens.emplace_back("z", heisenberg_element(zero, zero, 1));
  }
  return MarkedGroup(GroupShape::heisenberg(k), std::move(gens));
}

MarkedGroup MarkedGroup::cartan_standard() {
  GroupElement::Coords x(5), y(5);
  x << 1, 0, 0, 0, 0;
  y << 0, 1, 0, 0, 0;
  return MarkedGroup(GroupShape::cartan(),
                     {{"x", GroupElement(GroupShape::cartan(), x)},
                      {"y", GroupElement(GroupShape::cartan(), y)}});
}

MarkedGroup MarkedGroup::cartan_from_words(
    const std::vector<std::pair<Label, std::string>>& words) {
  const MarkedGroup standard = cartan_standard();
  std::vector<std::pair<Label, GroupElement>> gens;
  for (const auto& [label, text] : words) gens.emplace_back(label, standard.evaluate(text));
  return MarkedGroup(GroupShape::cartan(), std::move(gens));
}

std::optional<int> MarkedGroup::find(std::string_view label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

int MarkedGroup::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw DomainError("unknown generator label '" + std::string(label) + "'");
}

std::vector<int> MarkedGroup::indices(const Word& w) const {
  std::vector<int> out;
  out.reserve(w.size());
  for (const auto& l : w) out.push_back(index_of(l));
  return out;
}

GroupElement MarkedGroup::evaluate(const Word& w) const {
  const auto idx = indices(w);
  return evaluate_indices(idx);
}

GroupElement MarkedGroup::evaluate_indices(std::span<const int> w) const {
  GroupElement g = identity();
  for (int i : w) g = mul(g, generators_.at(i).element);
  return g;
}

std::string MarkedGroup::canonical_description() const {
  std::ostringstream out;
  out << to_string(shape_.kind) << ':' << shape_.rank;
  for (const auto& g : generators_) {
    out << ';' << g.label << '=';
    for (int i = 0; i < g.element.coords().size(); ++i) out << (i ? "," : "") << g.element[i];
  }
  return out.str();
}

std::int64_t commutator_z_exponent(const MarkedGroup& G, const GroupElement& g,
                                   const GroupElement& h) {
  if (G.kind() != GroupKind::Heisenberg)
    throw DomainError("commutator_z_exponent: group is not Heisenberg");
  if (!G.cyclic_commutator())
    throw DomainError("commutator_z_exponent: [H,H] is trivial for this generating set");
  if (!(g.shape() == G.shape()) || !(h.shape() == G.shape()))
    throw DomainError("group kind mismatch");
  const GroupElement c = commutator(g, h);
  const std::int64_t central = c[2 * G.shape().rank];
  if (central % G.commutator_unit() != 0)
    throw DomainError("commutator is not a power of the generator of [H,H]");
  return central / G.commutator_unit();
}

}  // namespace horo
