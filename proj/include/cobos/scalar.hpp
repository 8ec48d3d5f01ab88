#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <type_traits>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace cobos {

namespace mp = boost::multiprecision;

template <unsigned Bits>
using BinaryFloat = mp::number<mp::cpp_bin_float<Bits, mp::digit_base_2>, mp::et_off>;

using Float128 = BinaryFloat<128>;
using Float256 = BinaryFloat<256>;
using Float512 = BinaryFloat<512>;
using Float1024 = BinaryFloat<1024>;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Working precisions, named by significand bits.
enum class Precision : unsigned {
  Binary64 = 53,
  Bits128 = 128,
  Bits256 = 256,
  Bits512 = 512,
  Bits1024 = 1024,
};

inline constexpr std::array kPrecisionLadder{Precision::Binary64, Precision::Bits128,
                                             Precision::Bits256, Precision::Bits512,
                                             Precision::Bits1024};

inline constexpr unsigned significand_bits(Precision p) { return static_cast<unsigned>(p); }

inline constexpr std::optional<Precision> next_precision(Precision p) {
  for (std::size_t i = 0; i + 1 < kPrecisionLadder.size(); ++i)
    if (kPrecisionLadder[i] == p) return kPrecisionLadder[i + 1];
  return std::nullopt;
}

/// Calls `f(std::type_identity<Scalar>{})` with the scalar type for `p`.
template <class F>
decltype(auto) with_precision(Precision p, F&& f) {
  switch (p) {
    case Precision::Bits128: return f(std::type_identity<Float128>{});
    case Precision::Bits256: return f(std::type_identity<Float256>{});
    case Precision::Bits512: return f(std::type_identity<Float512>{});
    case Precision::Bits1024: return f(std::type_identity<Float1024>{});
    case Precision::Binary64: break;
  }
  return f(std::type_identity<double>{});
}

template <class Scalar>
Scalar pi() {
  if constexpr (std::is_same_v<Scalar, double>)
    return std::numbers::pi;
  else
    return boost::math::constants::pi<Scalar>();
}

template <class Scalar>
Scalar epsilon() {
  return std::numeric_limits<Scalar>::epsilon();
}

template <class Scalar>
double to_double(const Scalar& x) {
  if constexpr (std::is_same_v<Scalar, double>)
    return x;
  else
    return x.template convert_to<double>();
}

/// Largest tolerated ratio of unit roundoff to the cancellation condition
/// |sum| / sum|terms| before a signed sum is recomputed at higher precision.
inline constexpr double kCancellationTarget = 1e-13;

template <class Scalar>
bool cancellation_acceptable(const Scalar& condition) {
  return epsilon<Scalar>() <= Scalar(kCancellationTarget) * condition;
}

}  // namespace cobos
