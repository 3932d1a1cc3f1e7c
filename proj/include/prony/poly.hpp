#pragma once

// Real-root machinery on univariate polynomials: derivative towers and
// Budan-Fourier sign variations, Sturm sequences, real root isolation and
// refinement, and the standard discriminant.

#include <algorithm>
#include <utility>
#include <vector>

#include "prony/error.hpp"
#include "prony/matrix.hpp"
#include "prony/numeric.hpp"

namespace prony {

// Polynomial with real coefficients stored in ascending degree order.
template <class T>
class BasicPoly {
 public:
  BasicPoly() : coeffs_{T(0)} {}
  explicit BasicPoly(std::vector<T> ascending) : coeffs_(std::move(ascending)) { trim(); }

  // z^d + sigma_1 z^{d-1} + ... + sigma_d.
  static BasicPoly monic(const std::vector<T>& sigma) {
    const std::size_t d = sigma.size();
    std::vector<T> c(d + 1);
    c[d] = T(1);
    for (std::size_t k = 1; k <= d; ++k) c[d - k] = sigma[k - 1];
    return BasicPoly(std::move(c));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == T(0); }
  const std::vector<T>& coefficients() const { return coeffs_; }
  const T& operator[](int k) const { return coeffs_[k]; }
  const T& leading() const { return coeffs_.back(); }
  T max_abs_coefficient() const { return max_abs(coeffs_); }

  T operator()(const T& x) const {
    T acc = coeffs_.back();
    for (int k = degree() - 1; k >= 0; --k) acc = acc * x + coeffs_[k];
    return acc;
  }

  BasicPoly derivative() const {
    if (degree() == 0) return BasicPoly();
    std::vector<T> c(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) c[k - 1] = T(static_cast<int>(k)) * coeffs_[k];
    return BasicPoly(std::move(c));
  }

  BasicPoly scaled(const T& factor) const {
    std::vector<T> c = coeffs_;
    for (auto& x : c) x *= factor;
    return BasicPoly(std::move(c));
  }

 private:
  void trim() {
    if (coeffs_.empty()) coeffs_.push_back(T(0));
    const T cut = NumericTraits<T>::trim() * max_abs(coeffs_);
    while (coeffs_.size() > 1 && abs_value(coeffs_.back()) <= cut) coeffs_.pop_back();
    if (coeffs_.size() == 1 && coeffs_[0] == T(0)) coeffs_[0] = T(0);  // drop a negative zero
  }

  std::vector<T> coeffs_;
};

using Poly = BasicPoly<double>;

template <class T>
int sign_of(const T& x) {
  return (x > T(0)) - (x < T(0));
}

// Number of sign changes in a sequence, zero entries skipped.
inline int count_sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Sign of p at x, where x may be +-infinity.
template <class T>
int sign_at(const BasicPoly<T>& p, const T& x) {
  if (is_finite(x)) return sign_of(p(x));
  if (p.is_zero()) return 0;
  const int lead = sign_of(p.leading());
  return (x > T(0) || p.degree() % 2 == 0) ? lead : -lead;
}

// [P, P', ..., P^(n)].
template <class T>
std::vector<BasicPoly<T>> derivative_tower(const BasicPoly<T>& p) {
  std::vector<BasicPoly<T>> tower{p};
  while (tower.back().degree() > 0) tower.push_back(tower.back().derivative());
  return tower;
}

// Sign variations of the derivative vector (P(x), P'(x), ..., P^(n)(x)).
template <class T>
int fourier_variations(const std::vector<BasicPoly<T>>& tower, const T& x) {
  std::vector<int> signs;
  signs.reserve(tower.size());
  for (const auto& q : tower) signs.push_back(sign_at(q, x));
  return count_sign_changes(signs);
}

struct SignVariation {
  double x;  // may be +-infinity
  int count;
};

SignVariation sign_variation(const Poly& p, double x);

// nu_P(a) - nu_P(b): an upper bound on the number of roots in (a, b]
// counted with multiplicity, exceeding it by an even integer.
int budan_fourier_bound(const Poly& p, double a, double b);

// Sturm sequence with per-step rescaling to unit max-norm. The chain ends at
// a multiple of gcd(P, P'), so variation differences count distinct roots.
template <class T>
class BasicSturmSequence {
 public:
  explicit BasicSturmSequence(const BasicPoly<T>& p) {
    if (p.is_zero()) throw Error(ErrorKind::kInvalidInput, "Sturm sequence of the zero polynomial");
    chain_.push_back(normalized(p.coefficients()));
    if (p.degree() == 0) return;
    chain_.push_back(normalized(p.derivative().coefficients()));
    while (chain_.back().degree() > 0) {
      const auto& a = chain_[chain_.size() - 2].coefficients();
      const auto& b = chain_.back().coefficients();
      const int da = static_cast<int>(a.size()) - 1;
      const int db = static_cast<int>(b.size()) - 1;
      std::vector<T> r = a;
      T qmax(0);
      for (int k = da - db; k >= 0; --k) {
        const T qk = r[k + db] / b[db];
        if (abs_value(qk) > qmax) qmax = abs_value(qk);
        for (int j = 0; j <= db; ++j) r[k + j] -= qk * b[j];
      }
      r.resize(db);
      for (const auto& x : r) {
        if (!is_finite(x)) throw Error(ErrorKind::kDegenerateSequence, "non-finite Sturm remainder");
      }
      const T noise = T(4 * (da + 1)) * NumericTraits<T>::epsilon() * (max_abs(a) + qmax * max_abs(b));
      if (max_abs(r) <= noise) break;
      for (auto& x : r) x = -x;
      chain_.push_back(normalized(r));
    }
  }

  int variations_at(const T& x) const {
    std::vector<int> signs;
    signs.reserve(chain_.size());
    for (const auto& q : chain_) signs.push_back(sign_at(q, x));
    return count_sign_changes(signs);
  }

  // Distinct real roots in (a, b].
  int count(const T& a, const T& b) const { return variations_at(a) - variations_at(b); }

  int count_all() const { return count(-infinity<T>(), infinity<T>()); }

  // Degree of the terminal element, i.e. of gcd(P, P').
  int gcd_degree() const { return chain_.size() == 1 ? 0 : chain_.back().degree(); }

  const std::vector<BasicPoly<T>>& chain() const { return chain_; }

 private:
  static BasicPoly<T> normalized(std::vector<T> c) {
    const T m = max_abs(c);
    if (m > T(0)) {
      for (auto& x : c) x /= m;
    }
    return BasicPoly<T>(std::move(c));
  }

  std::vector<BasicPoly<T>> chain_;
};

using SturmSequence = BasicSturmSequence<double>;

// Exact count of distinct real roots in (a, b]; a, b may be infinite.
int sturm_count(const Poly& p, double a, double b);

namespace detail {

template <class T>
T refine_root(const BasicPoly<T>& p, const BasicSturmSequence<T>& sturm, T lo, T hi) {
  if (p(hi) == T(0)) return hi;
  T plo = p(lo);
  const T phi = p(hi);
  const bool sign_bracket = plo != T(0) && sign_of(plo) != sign_of(phi);
  const T width = NumericTraits<T>::bisection_width();
  while (true) {
    const T scale = std::max({T(1), abs_value(lo), abs_value(hi)});
    if (hi - lo <= width * scale) break;
    const T mid = (lo + hi) / T(2);
    if (mid <= lo || mid >= hi) break;
    if (sign_bracket) {
      const T pm = p(mid);
      if (pm == T(0)) return mid;
      if (sign_of(pm) == sign_of(plo)) {
        lo = mid;
        plo = pm;
      } else {
        hi = mid;
      }
    } else if (sturm.count(lo, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  T x = (lo + hi) / T(2);
  const BasicPoly<T> dp = p.derivative();
  for (int step = 0; step < 5; ++step) {
    const T fx = p(x);
    if (fx == T(0)) break;
    const T dfx = dp(x);
    if (dfx == T(0)) break;
    const T xn = x - fx / dfx;
    if (!(xn >= lo && xn <= hi)) break;
    if (abs_value(p(xn)) > abs_value(fx)) break;
    x = xn;
  }
  return x;
}

}  // namespace detail

// All real roots, sorted, each isolated by Sturm bisection and refined by
// bisection followed by at most five bracketed Newton steps.
template <class T>
std::vector<T> real_roots(const BasicPoly<T>& p) {
  std::vector<T> roots;
  const int n = p.degree();
  if (n <= 0) return roots;
  const auto& c = p.coefficients();
  if (n == 1) {
    roots.push_back(-c[0] / c[1]);
    return roots;
  }
  T bound(0);
  for (int k = 0; k < n; ++k) bound = std::max(bound, abs_value(c[k] / c[n]));
  bound += T(1);

  const BasicSturmSequence<T> sturm(p);
  struct Piece {
    T lo, hi;
    int vlo, vhi;
  };
  std::vector<Piece> stack{{-bound, bound, sturm.variations_at(-bound), sturm.variations_at(bound)}};
  while (!stack.empty()) {
    Piece piece = stack.back();
    stack.pop_back();
    const int count = piece.vlo - piece.vhi;
    if (count <= 0) continue;
    if (count == 1) {
      roots.push_back(detail::refine_root(p, sturm, piece.lo, piece.hi));
      continue;
    }
    const T mid = (piece.lo + piece.hi) / T(2);
    const T scale = std::max({T(1), abs_value(piece.lo), abs_value(piece.hi)});
    if (piece.hi - piece.lo <= T(4) * NumericTraits<T>::epsilon() * scale || mid <= piece.lo ||
        mid >= piece.hi) {
      // Unresolvable cluster at working precision.
      for (int k = 0; k < count; ++k) roots.push_back(mid);
      continue;
    }
    const int vmid = sturm.variations_at(mid);
    stack.push_back({piece.lo, mid, piece.vlo, vmid});
    stack.push_back({mid, piece.hi, vmid, piece.vhi});
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// True iff z^d + sigma_1 z^{d-1} + ... + sigma_d has d real distinct roots.
template <class T>
bool is_hyperbolic(const std::vector<T>& sigma) {
  if (sigma.empty()) return false;
  for (const auto& s : sigma) {
    if (!is_finite(s)) return false;
  }
  const BasicSturmSequence<T> sturm(BasicPoly<T>::monic(sigma));
  return sturm.gcd_degree() == 0 && sturm.count_all() == static_cast<int>(sigma.size());
}

// Sylvester matrix of f and g (coefficients ascending).
template <class T>
Matrix<T> sylvester_matrix(const BasicPoly<T>& f, const BasicPoly<T>& g) {
  const int m = f.degree();
  const int k = g.degree();
  Matrix<T> s(m + k, m + k);
  for (int row = 0; row < k; ++row) {
    for (int i = 0; i <= m; ++i) s(row, row + i) = f[m - i];
  }
  for (int row = 0; row < m; ++row) {
    for (int i = 0; i <= k; ++i) s(k + row, row + i) = g[k - i];
  }
  return s;
}

// Standard discriminant (-1)^{n(n-1)/2} Res(P, P') / lc(P). Degree <= 1 gives 1.
template <class T>
T discriminant(const BasicPoly<T>& p) {
  const int n = p.degree();
  if (n <= 1) return T(1);
  const T res = determinant(sylvester_matrix(p, p.derivative()));
  const T sign = ((n * (n - 1) / 2) % 2 == 0) ? T(1) : T(-1);
  return sign * res / p.leading();
}

}  // namespace prony
