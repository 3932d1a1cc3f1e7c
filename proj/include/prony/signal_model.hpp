#pragma once

// Spike-train signals, power moments, signed elementary symmetric
// coordinates, the Vieta map and its inverse, and amplitude recovery from
// nodes through the explicit inverse of the Vandermonde matrix.

#include <span>
#include <vector>

#include "prony/error.hpp"
#include "prony/poly.hpp"

namespace prony {

// Default relative tolerance for signal <-> moments <-> nodes round trips.
inline constexpr double kRoundTripTolerance = 1e-9;

// sum_i a_i delta(x - x_i) with strictly increasing nodes.
struct Signal {
  std::vector<double> amplitudes;
  std::vector<double> nodes;

  int dimension() const { return static_cast<int>(nodes.size()); }
  // Throws kInvalidInput on length mismatch, d = 0, non-finite values,
  // non-increasing nodes or an exactly zero amplitude.
  void validate() const;
};

// (mu_0, ..., mu_q).
struct MomentVector {
  std::vector<double> values;

  int order() const { return static_cast<int>(values.size()) - 1; }
  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
  // Throws kInvalidInput when empty or non-finite.
  void validate() const;
  // The leading q + 1 entries.
  MomentVector head(int q) const;
  double max_abs() const;
};

// Coefficients of Q(z) = z^d + sigma_1 z^{d-1} + ... + sigma_d, with the
// sign convention sigma_k = (-1)^k e_k(X) used throughout.
struct SymmetricCoords {
  std::vector<double> sigma;

  int dimension() const { return static_cast<int>(sigma.size()); }
  Poly polynomial() const { return Poly::monic(sigma); }
  // Q has d real distinct roots.
  bool hyperbolic() const;
};

// mu_k = sum_i a_i x_i^k, k = 0..q, summed in index order.
MomentVector compute_moments(const Signal& signal, int q);

// Coefficients of prod_i (z - x_i) below the leading 1: (sigma_1..sigma_d).
template <class T>
std::vector<T> signed_elementary_symmetric(const std::vector<T>& x) {
  std::vector<T> c{T(1)};  // descending: c[0] z^m + c[1] z^{m-1} + ...
  for (const auto& xi : x) {
    c.push_back(T(0));
    for (std::size_t k = c.size() - 1; k > 0; --k) c[k] -= xi * c[k - 1];
  }
  return std::vector<T>(c.begin() + 1, c.end());
}

SymmetricCoords elementary_symmetric(std::span<const double> nodes);

// Sorted strictly increasing roots of Q. Throws kNotHyperbolic.
template <class T>
std::vector<T> vieta_inverse_values(const std::vector<T>& sigma) {
  if (!is_hyperbolic(sigma)) throw Error(ErrorKind::kNotHyperbolic, "Q has complex or repeated roots");
  std::vector<T> roots = real_roots(BasicPoly<T>::monic(sigma));
  if (roots.size() != sigma.size()) throw Error(ErrorKind::kNotHyperbolic, "root count mismatch");
  for (std::size_t i = 1; i < roots.size(); ++i) {
    if (!(roots[i - 1] < roots[i])) throw Error(ErrorKind::kNotHyperbolic, "roots not separated");
  }
  return roots;
}

std::vector<double> vieta_inverse(const SymmetricCoords& sigma);

// a_k = [sum_j rho_{d-1-j}(pi_k X) mu_j] / L_k(X), the k-th row of the
// inverse Vandermonde matrix applied to (mu_0, ..., mu_{d-1}).
template <class T>
std::vector<T> amplitudes_from_node_values(const std::vector<T>& mu, const std::vector<T>& x) {
  const std::size_t d = x.size();
  std::vector<T> a(d);
  std::vector<T> others;
  others.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    others.clear();
    T lk(1);
    for (std::size_t i = 0; i < d; ++i) {
      if (i == k) continue;
      others.push_back(x[i]);
      lk *= x[k] - x[i];
    }
    if (lk == T(0)) throw Error(ErrorKind::kRepeatedNodes, "L_k(X) vanishes");
    const std::vector<T> rho = signed_elementary_symmetric(others);  // rho_1..rho_{d-1}
    T num = mu[d - 1];                                               // rho_0 = 1
    for (std::size_t j = 0; j + 1 < d; ++j) num += rho[d - 2 - j] * mu[j];
    a[k] = num / lk;
  }
  return a;
}

std::vector<double> amplitudes_from_nodes(const MomentVector& mu, std::span<const double> nodes);

bool is_hyperbolic(const SymmetricCoords& sigma);

}  // namespace prony
