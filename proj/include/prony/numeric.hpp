#pragma once

// Scalar plumbing shared by the templated kernels. Every kernel is written
// once against a scalar type T and instantiated for double (the public
// surface) and Quad (deep probing near node collisions, where the map from
// coefficients to nearly coincident roots loses half the working digits).

#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace prony {

using Quad = boost::multiprecision::float128;

template <class T>
struct NumericTraits {
  static T epsilon() { return std::numeric_limits<T>::epsilon(); }
  // Trailing coefficients at or below trim()*max|coeff| are dropped.
  static T trim() { return T(45) * epsilon(); }
  // Root refinement switches from bisection to Newton at this relative width.
  static T bisection_width() { return T(1e-10); }
};

template <>
struct NumericTraits<Quad> {
  static Quad epsilon() { return std::numeric_limits<Quad>::epsilon(); }
  static Quad trim() { return Quad(45) * epsilon(); }
  static Quad bisection_width() { return Quad(1e-20); }
};

template <class T>
T abs_value(const T& x) {
  using std::abs;
  return abs(x);
}

template <class T>
bool is_finite(const T& x) {
  using std::isfinite;
  return isfinite(x);
}

template <class T>
T infinity() {
  return std::numeric_limits<T>::infinity();
}

template <class To, class From>
std::vector<To> convert(const std::vector<From>& v) {
  std::vector<To> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(static_cast<To>(x));
  return out;
}

template <class T>
T max_abs(const std::vector<T>& v) {
  T m(0);
  for (const auto& x : v) {
    const T a = abs_value(x);
    if (a > m) m = a;
  }
  return m;
}

}  // namespace prony
