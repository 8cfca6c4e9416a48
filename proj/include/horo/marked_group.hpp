#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "horo/scalar.hpp"

namespace horo {

enum class GroupKind { Abelian, Heisenberg, Cartan };

std::string_view to_string(GroupKind kind);

/// Kind plus its size parameter: d for Z^d, k for H_k(Z), 2 for the Cartan
/// lattice (rank of the free 3-step nilpotent group it models).
struct GroupShape {
  GroupKind kind = GroupKind::Abelian;
  int rank = 0;

  static GroupShape abelian(int d) { return {GroupKind::Abelian, d}; }
  static GroupShape heisenberg(int k) { return {GroupKind::Heisenberg, k}; }
  static GroupShape cartan() { return {GroupKind::Cartan, 2}; }

  int coordinate_count() const {
    switch (kind) {
      case GroupKind::Abelian: return rank;
      case GroupKind::Heisenberg: return 2 * rank + 1;
      case GroupKind::Cartan: return 5;
    }
    return 0;
  }
  /// Dimension of G/[G,G] tensored with R.
  int abelian_rank() const {
    switch (kind) {
      case GroupKind::Abelian: return rank;
      case GroupKind::Heisenberg: return 2 * rank;
      case GroupKind::Cartan: return 2;
    }
    return 0;
  }
  friend bool operator==(const GroupShape&, const GroupShape&) = default;
};

void validate_shape(const GroupShape& shape);

// Coordinate conventions (all integers, so lattice elements are exact in any
// integer scalar):
//   Abelian    (v_1..v_d)
//   Heisenberg (a_1..a_k, b_1..b_k, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b')
//   Cartan     (x, y, 2A, 6B_x, 6B_y): endpoint, doubled signed area and
//              sextupled first moment of the winding-number distribution.
//
// The kernels below operate on raw coordinate spans so the search engines can
// run them over flat buffers.

template <class S>
void multiply_coords(const GroupShape& shape, const S* g, const S* h, S* out) {
  switch (shape.kind) {
    case GroupKind::Abelian:
      for (int i = 0; i < shape.rank; ++i) out[i] = checked_add(g[i], h[i]);
      return;
    case GroupKind::Heisenberg: {
      const int k = shape.rank;
      S cross(0);
      for (int i = 0; i < k; ++i) cross = checked_add(cross, checked_mul(g[i], h[k + i]));
      const S c = checked_add(checked_add(g[2 * k], h[2 * k]), cross);
      for (int i = 0; i < 2 * k; ++i) out[i] = checked_add(g[i], h[i]);
      out[2 * k] = c;
      return;
    }
    case GroupKind::Cartan: {
      const S det = checked_sub(checked_mul(g[0], h[1]), checked_mul(g[1], h[0]));
      const S area2 = checked_add(checked_add(g[2], h[2]), det);
      const S three_ah = checked_mul(S(3), h[2]);
      S bary[2];
      for (int i = 0; i < 2; ++i) {
        const S shift = checked_add(checked_mul(S(2), g[i]), h[i]);
        bary[i] = checked_add(checked_add(g[3 + i], h[3 + i]),
                              checked_add(checked_mul(g[i], three_ah), checked_mul(shift, det)));
      }
      const S x = checked_add(g[0], h[0]);
      const S y = checked_add(g[1], h[1]);
      out[0] = x;
      out[1] = y;
      out[2] = area2;
      out[3] = bary[0];
      out[4] = bary[1];
      return;
    }
  }
}

template <class S>
void invert_coords(const GroupShape& shape, const S* g, S* out) {
  switch (shape.kind) {
    case GroupKind::Abelian:
      for (int i = 0; i < shape.rank; ++i) out[i] = checked_neg(g[i]);
      return;
    case GroupKind::Heisenberg: {
      // (a,b,c)^-1 = (-a, -b, -c + a.b)
      const int k = shape.rank;
      S dot(0);
      for (int i = 0; i < k; ++i) dot = checked_add(dot, checked_mul(g[i], g[k + i]));
      const S c = checked_add(checked_neg(g[2 * k]), dot);
      for (int i = 0; i < 2 * k; ++i) out[i] = checked_neg(g[i]);
      out[2 * k] = c;
      return;
    }
    case GroupKind::Cartan: {
      // (g, A, B)^-1 = (-g, -A, g A - B)
      S bary[2];
      for (int i = 0; i < 2; ++i)
        bary[i] = checked_sub(checked_mul(checked_mul(S(3), g[i]), g[2]), g[3 + i]);
      out[2] = checked_neg(g[2]);
      out[0] = checked_neg(g[0]);
      out[1] = checked_neg(g[1]);
      out[3] = bary[0];
      out[4] = bary[1];
      return;
    }
  }
}

/// Exact endpoint / signed area / barycenter of a Cartan element.
struct CartanParams {
  Vector2<Rational> endpoint = Vector2<Rational>::Zero();
  Rational area = 0;
  Vector2<Rational> barycenter = Vector2<Rational>::Zero();

  friend bool operator==(const CartanParams& a, const CartanParams& b) {
    return a.endpoint == b.endpoint && a.area == b.area && a.barycenter == b.barycenter;
  }
};

/// Element of Z^d, H_k(Z) or the Cartan lattice with coordinates in `Scalar`
/// (std::int64_t for the search engines, BigInt when nothing may overflow).
template <class Scalar>
class BasicElement {
 public:
  using Coords = CoordVector<Scalar>;

  BasicElement() = default;
  BasicElement(const GroupShape& shape, Coords coords) : shape_(shape), coords_(std::move(coords)) {
    if (coords_.size() != shape_.coordinate_count())
      throw DomainError("coordinate count does not match group shape");
  }

  static BasicElement identity(const GroupShape& shape) {
    return BasicElement(shape, Coords::Zero(shape.coordinate_count()));
  }

  const GroupShape& shape() const { return shape_; }
  const Coords& coords() const { return coords_; }
  const Scalar& operator[](int i) const { return coords_(i); }

  bool is_identity() const { return (coords_.array() == Scalar(0)).all(); }

  friend bool operator==(const BasicElement& a, const BasicElement& b) {
    return a.shape_ == b.shape_ && a.coords_ == b.coords_;
  }
  friend bool operator<(const BasicElement& a, const BasicElement& b) {
    return std::lexicographical_compare(a.coords_.data(), a.coords_.data() + a.coords_.size(),
                                        b.coords_.data(), b.coords_.data() + b.coords_.size());
  }

 private:
  GroupShape shape_;
  Coords coords_;
};

using GroupElement = BasicElement<std::int64_t>;
using BigElement = BasicElement<BigInt>;

template <class S>
void require_same_shape(const BasicElement<S>& g, const BasicElement<S>& h) {
  if (!(g.shape() == h.shape())) throw DomainError("group kind mismatch");
}

template <class S>
BasicElement<S> mul(const BasicElement<S>& g, const BasicElement<S>& h) {
  require_same_shape(g, h);
  typename BasicElement<S>::Coords out(g.shape().coordinate_count());
  multiply_coords(g.shape(), g.coords().data(), h.coords().data(), out.data());
  return BasicElement<S>(g.shape(), std::move(out));
}

template <class S>
BasicElement<S> operator*(const BasicElement<S>& g, const BasicElement<S>& h) {
  return mul(g, h);
}

template <class S>
BasicElement<S> inv(const BasicElement<S>& g) {
  typename BasicElement<S>::Coords out(g.shape().coordinate_count());
  invert_coords(g.shape(), g.coords().data(), out.data());
  return BasicElement<S>(g.shape(), std::move(out));
}

template <class S>
BasicElement<S> commutator(const BasicElement<S>& g, const BasicElement<S>& h) {
  return mul(mul(g, h), mul(inv(g), inv(h)));
}

template <class S>
BasicElement<S> power(const BasicElement<S>& g, std::int64_t n) {
  BasicElement<S> base = n < 0 ? inv(g) : g;
  BasicElement<S> result = BasicElement<S>::identity(g.shape());
  for (std::int64_t e = n < 0 ? -n : n; e > 0; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

template <class T, class S>
BasicElement<T> element_cast(const BasicElement<S>& g) {
  typename BasicElement<T>::Coords out(g.coords().size());
  for (int i = 0; i < g.coords().size(); ++i) {
    if constexpr (std::is_same_v<T, std::int64_t> && std::is_same_v<S, BigInt>)
      out(i) = to_int64(g[i]);
    else
      out(i) = T(g[i]);
  }
  return BasicElement<T>(g.shape(), std::move(out));
}

/// Image in G/[G,G]: the vector itself, (a,b) for Heisenberg, the endpoint for Cartan.
template <class S>
VectorX<S> abelianize(const BasicElement<S>& g) {
  const int r = g.shape().abelian_rank();
  return g.coords().head(r);
}

GroupElement abelian_element(std::span<const std::int64_t> v);
GroupElement heisenberg_element(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                                std::int64_t c);

/// Exact Cartan parameters of a Cartan element.
template <class S>
CartanParams cartan_params(const BasicElement<S>& g) {
  if (g.shape().kind != GroupKind::Cartan) throw DomainError("cartan_params: not a Cartan element");
  auto q = [](const S& v, std::int64_t den) {
    if constexpr (std::is_same_v<S, BigInt>) return Rational(v, BigInt(den));
    else return make_rational(v, den);
  };
  CartanParams p;
  p.endpoint << q(g[0], 1), q(g[1], 1);
  p.area = q(g[2], 2);
  p.barycenter << q(g[3], 6), q(g[4], 6);
  return p;
}

/// Inverse of cartan_params. Requires integral endpoint, 2A in Z and 6B in Z^2
/// (every element of the lattice generated by x, y satisfies this).
GroupElement cartan_element(const CartanParams& params);

/// Lie-algebra (exponential) coordinates, used to place generators in the
/// Mal'cev completion: Heisenberg (a, b, c - a.b/2); abelian unchanged.
RationalVector log_coordinates(const GroupElement& g);

// ---------------------------------------------------------------------------
// Marked groups

using Label = std::string;
using Word = std::vector<Label>;

/// "x" <-> "x~".
Label inverse_label(std::string_view label);
/// Whitespace-separated labels; an empty or blank string is the empty word.
Word split_word(std::string_view text);
std::string join_word(const Word& w);
Word inverse_word(const Word& w);
/// Cancels adjacent label/inverse pairs.
Word free_reduce(const Word& w);

struct Generator {
  Label label;
  Label inverse;
  GroupElement element;
};

/// A group together with a labeled, symmetric generating set. Immutable.
class MarkedGroup {
 public:
  /// `positive` lists one element per label; inverses "label~" are added.
  /// Explicitly listed inverse labels must match the computed inverse.
  MarkedGroup(GroupShape shape, std::vector<std::pair<Label, GroupElement>> positive);

  static MarkedGroup abelian_standard(int d);
  /// x_i, y_i (k = 1: x, y); `with_center` adds z = [x_1, y_1].
  static MarkedGroup heisenberg_standard(int k, bool with_center = false);
  static MarkedGroup cartan_standard();
  /// Cartan generating set given by words over the standard {x,y}±.
  static MarkedGroup cartan_from_words(const std::vector<std::pair<Label, std::string>>& words);

  const GroupShape& shape() const { return shape_; }
  GroupKind kind() const { return shape_.kind; }
  int size() const { return static_cast<int>(generators_.size()); }
  const std::vector<Generator>& generators() const { return generators_; }
  const Generator& generator(int i) const { return generators_.at(i); }
  int inverse_index(int i) const { return inverse_index_.at(i); }

  std::optional<int> find(std::string_view label) const;
  int index_of(std::string_view label) const;
  std::vector<int> indices(const Word& w) const;

  GroupElement identity() const { return GroupElement::identity(shape_); }
  GroupElement evaluate(const Word& w) const;
  GroupElement evaluate_indices(std::span<const int> w) const;
  GroupElement evaluate(std::string_view text) const { return evaluate(split_word(text)); }

  /// Nonzero gcd of the central exponents of all generator commutators when
  /// the group is Heisenberg and [H,H] is nontrivial (hence infinite cyclic);
  /// 0 otherwise.
  std::int64_t commutator_unit() const { return commutator_unit_; }
  bool cyclic_commutator() const { return commutator_unit_ != 0; }

  /// Dimension of the abelianization (Z^d, Z^2k, Z^2).
  int abelianization_dimension() const { return shape_.abelian_rank(); }

  /// Canonical text description (kind, rank, generators in order).
  std::string canonical_description() const;
  /// Hex FNV-1a digest of the canonical description.
  const std::string& hash() const { return hash_; }

 private:
  GroupShape shape_;
  std::vector<Generator> generators_;
  std::vector<int> inverse_index_;
  std::map<Label, int, std::less<>> by_label_;
  std::int64_t commutator_unit_ = 0;
  std::string hash_;
};

/// z-exponent a of [g,h] = z^a, z the positive generator of [H,H].
std::int64_t commutator_z_exponent(const MarkedGroup& G, const GroupElement& g,
                                   const GroupElement& h);

/// Word of the standard Cartan alphabet for x^n (n may be negative).
Word letter_power(const Label& letter, std::int64_t n);

std::uint64_t fnv1a(std::string_view text);

}  // namespace horo
