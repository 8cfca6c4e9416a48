#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include "horo/errors.hpp"

namespace horo {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Upper bound on the number of coordinates of any supported group element.
/// Abelian: d, Heisenberg H_k: 2k+1, Cartan: 5.
inline constexpr int kMaxCoords = 9;

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Inline-storage coordinate vector; never touches the heap.
template <class Scalar>
using CoordVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxCoords, 1>;

using RationalVector = VectorX<Rational>;
using RationalMatrix = MatrixX<Rational>;
using IntVector = VectorX<std::int64_t>;

// Overflow-checked arithmetic. The fixed-width instantiation throws instead of
// wrapping; the arbitrary-precision ones are plain operators.

template <class S>
inline S checked_add(const S& a, const S& b) {
  if constexpr (std::is_same_v<S, std::int64_t>) {
    S r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
    return r;
  } else {
    return a + b;
  }
}

template <class S>
inline S checked_sub(const S& a, const S& b) {
  if constexpr (std::is_same_v<S, std::int64_t>) {
    S r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
    return r;
  } else {
    return a - b;
  }
}

template <class S>
inline S checked_mul(const S& a, const S& b) {
  if constexpr (std::is_same_v<S, std::int64_t>) {
    S r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
    return r;
  } else {
    return a * b;
  }
}

template <class S>
inline S checked_neg(const S& a) {
  return checked_sub(S(0), a);
}

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw DomainError("zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

inline Rational to_rational(const BigInt& v) { return Rational(v); }
inline Rational to_rational(std::int64_t v) { return Rational(BigInt(v)); }

/// Exact conversion; throws when the value does not fit.
std::int64_t to_int64(const BigInt& v);
/// Exact conversion of an integral rational; throws otherwise.
std::int64_t to_int64(const Rational& v);

bool is_integer(const Rational& v);
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt ceil_div(const BigInt& a, const BigInt& b);
BigInt ceil(const Rational& v);
BigInt floor(const Rational& v);

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

/// "p/q" in lowest terms, or "p" for integers.
std::string to_string(const Rational& v);
std::string to_string(const BigInt& v);
/// Accepts "p", "-p", "p/q"; result is canonical.
Rational parse_rational(std::string_view text);

}  // namespace horo
