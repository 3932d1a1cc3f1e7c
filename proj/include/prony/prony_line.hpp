#pragma once

// Hankel matrix of a moment vector, the affine parametrization of the Prony
// curve in sigma-space by the completing parameter t, the set A_mu of
// parameters where that line stays hyperbolic, and the projected-system
// residuals linking node vectors back to full signals.

#include <optional>
#include <vector>

#include "prony/matrix.hpp"
#include "prony/poly.hpp"
#include "prony/signal_model.hpp"

namespace prony {

// |det M| <= kHankelDegeneracy * max|minor| * max|mu| is treated as singular.
inline constexpr double kHankelDegeneracy = 1e-12;

template <class T>
struct BasicHankel {
  int d = 0;
  Matrix<T> entries;  // entries(i, j) = mu_{i+j}
  T det = T(0);
  Matrix<T> minors;  // minors(i, j) = M_{i+1, j+1}
  T max_abs_minor = T(0);
  T max_abs_entry = T(0);

  // 1-indexed M_{i,j}.
  const T& minor(int i, int j) const { return minors(i - 1, j - 1); }

  bool degenerate() const {
    return !(abs_value(det) > T(kHankelDegeneracy) * max_abs_minor * max_abs_entry);
  }
};

using HankelMatrix = BasicHankel<double>;

template <class T>
BasicHankel<T> make_hankel(const std::vector<T>& mu) {
  if (mu.size() % 2 == 0) throw Error(ErrorKind::kInvalidInput, "Hankel input needs 2d-1 moments");
  const int d = static_cast<int>(mu.size() + 1) / 2;
  BasicHankel<T> h;
  h.d = d;
  h.entries = Matrix<T>(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) h.entries(i, j) = mu[i + j];
  }
  h.det = determinant(h.entries);
  h.minors = Matrix<T>(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      h.minors(i, j) = determinant(h.entries.without(i, j));
      h.max_abs_minor = std::max(h.max_abs_minor, abs_value(h.minors(i, j)));
    }
  }
  h.max_abs_entry = max_abs(mu);
  return h;
}

HankelMatrix hankel(const MomentVector& mu);

// sigma_k(t) = slope[k-1] * t + intercept[k-1], k = 1..d.
template <class T>
struct BasicPronyLine {
  int d = 0;
  std::vector<T> slopes;
  std::vector<T> intercepts;
  T det_m = T(0);
  std::vector<T> source;  // mu_0..mu_{2d-2}

  std::vector<T> sigma_at(const T& t) const {
    std::vector<T> s(d);
    for (int k = 0; k < d; ++k) s[k] = slopes[k] * t + intercepts[k];
    return s;
  }

  // The completing equation's left side mu_{d-1} sigma_d + ... + mu_{2d-2} sigma_1:
  // the parameter t at which the line passes through sigma.
  T parameter_of(const std::vector<T>& sigma) const {
    T t(0);
    for (int j = 0; j < d; ++j) t += source[d - 1 + j] * sigma[d - 1 - j];
    return t;
  }
};

// Cramer's rule on the d-1 projected equations plus the completing one:
//   slope of sigma_{d-k+1}     = (-1)^{d+k} M_{d,k} / det M
//   intercept of sigma_{d-k+1} = (-1)^k / det M * sum_{i<d} (-1)^{i+1} mu_{d+i-1} M_{i,k}
template <class T>
BasicPronyLine<T> make_line(const BasicHankel<T>& h, const std::vector<T>& mu) {
  const int d = h.d;
  BasicPronyLine<T> line;
  line.d = d;
  line.det_m = h.det;
  line.source = mu;
  line.slopes.assign(d, T(0));
  line.intercepts.assign(d, T(0));
  for (int k = 1; k <= d; ++k) {
    const int idx = d - k;  // sigma_{d-k+1} lives at index d-k
    const T sign_dk = ((d + k) % 2 == 0) ? T(1) : T(-1);
    line.slopes[idx] = sign_dk * h.minor(d, k) / h.det;
    T acc(0);
    for (int i = 1; i <= d - 1; ++i) {
      const T term = mu[d + i - 1] * h.minor(i, k);
      acc += (i % 2 == 1) ? term : -term;
    }
    const T sign_k = (k % 2 == 0) ? T(1) : T(-1);
    line.intercepts[idx] = sign_k * acc / h.det;
  }
  return line;
}

struct PronyLine : BasicPronyLine<double> {
  HankelMatrix hankel;
};

// Throws kDegenerateHankel when det M is below the relative threshold.
PronyLine line_params(const MomentVector& mu);

struct Interval {
  double lo;  // may be -infinity
  double hi;  // may be +infinity

  bool bounded() const;
  bool contains(double t) const { return lo < t && t < hi; }
};

enum class EndpointKind {
  kBoundary,  // hyperbolicity is lost across the point
  kPuncture,  // tangency: hyperbolic on both sides, roots collide at the point only
};

struct DomainEndpoint {
  double t;
  EndpointKind kind;
};

struct HyperbolicDomain {
  std::vector<Interval> intervals;        // sorted, disjoint, open
  std::vector<DomainEndpoint> endpoints;  // finite ends of the intervals, ascending
  Poly discriminant_on_line;              // D(t) = Disc(Q_{sigma(t)})

  bool empty() const { return intervals.empty(); }
  bool contains(double t) const;
  bool bounded() const;
  bool has_unbounded_above() const;
  bool has_unbounded_below() const;
  std::optional<Interval> interval_containing(double t) const;
};

// D(t) is interpolated from 2d-1 evaluations (plus one check point); its
// real roots split the line and each piece is probed for hyperbolicity.
// An empty domain is a legal result. Throws kInterpolationInconsistency.
HyperbolicDomain hyperbolic_domain(const PronyLine& line);

// Discriminant of Q along the line, evaluated directly at t.
template <class T>
T line_discriminant(const BasicPronyLine<T>& line, const T& t) {
  return discriminant(BasicPoly<T>::monic(line.sigma_at(t)));
}

// The q-d+1 left sides mu_l + sum_{i=1}^d mu_{l-i} sigma_i(X), l = d..q.
std::vector<double> projection_residuals(const MomentVector& mu, std::span<const double> nodes, int q);

// Nodes on the projected variety lifted to a full solution of the first q+1
// moment equations. Throws kResidualTooLarge when X is off the variety.
Signal lift_to_solution(const MomentVector& mu, std::span<const double> nodes, int q,
                        double tolerance = 1e-8);

}  // namespace prony
