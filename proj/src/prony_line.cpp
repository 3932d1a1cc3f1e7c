#include "prony/prony_line.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace prony {

HankelMatrix hankel(const MomentVector& mu) {
  mu.validate();
  return make_hankel(mu.values);
}

PronyLine line_params(const MomentVector& mu) {
  PronyLine line;
  line.hankel = hankel(mu);
  if (line.hankel.degenerate()) {
    throw Error(ErrorKind::kDegenerateHankel,
                "det M = " + std::to_string(line.hankel.det) + " is below the degeneracy threshold");
  }
  static_cast<BasicPronyLine<double>&>(line) = make_line(line.hankel, mu.values);
  return line;
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

bool HyperbolicDomain::contains(double t) const {
  return std::any_of(intervals.begin(), intervals.end(), [t](const Interval& iv) { return iv.contains(t); });
}

bool HyperbolicDomain::bounded() const {
  return std::all_of(intervals.begin(), intervals.end(), [](const Interval& iv) { return iv.bounded(); });
}

bool HyperbolicDomain::has_unbounded_above() const {
  return !intervals.empty() && std::isinf(intervals.back().hi);
}

bool HyperbolicDomain::has_unbounded_below() const {
  return !intervals.empty() && std::isinf(intervals.front().lo);
}

std::optional<Interval> HyperbolicDomain::interval_containing(double t) const {
  for (const auto& iv : intervals) {
    if (iv.contains(t)) return iv;
  }
  return std::nullopt;
}

namespace {

BasicPronyLine<Quad> to_quad(const BasicPronyLine<double>& line) {
  BasicPronyLine<Quad> q;
  q.d = line.d;
  q.slopes = convert<Quad>(line.slopes);
  q.intercepts = convert<Quad>(line.intercepts);
  q.det_m = line.det_m;
  q.source = convert<Quad>(line.source);
  return q;
}

bool hyperbolic_at(const PronyLine& line, double t) { return is_hyperbolic(line.sigma_at(t)); }

// Interpolates D(t) through 2d-1 Chebyshev points scaled to [-R, R] in quad
// precision and checks the interpolant at one extra point. The coefficients
// stay in quad: when the roots lie far from the origin relative to R the
// monomial form cancels heavily and double coefficients lose the roots.
BasicPoly<Quad> interpolate_line_discriminant(const BasicPronyLine<Quad>& qline, double radius) {
  const int n = 2 * qline.d - 1;
  Matrix<Quad> vander(n, n);
  std::vector<Quad> values(n);
  for (int j = 0; j < n; ++j) {
    const Quad u = boost::multiprecision::cos(Quad(std::numbers::pi) * (Quad(j) + Quad(0.5)) / Quad(n));
    Quad power(1);
    for (int k = 0; k < n; ++k) {
      vander(j, k) = power;
      power *= u;
    }
    values[j] = line_discriminant(qline, u * Quad(radius));
  }
  if (!lu_solve(vander, values)) {
    throw Error(ErrorKind::kInterpolationInconsistency, "singular interpolation system");
  }
  const Quad check_u("0.3819660112501051517954131656343619");
  Quad interpolated(0), magnitude(0), power(1);
  for (int k = 0; k < n; ++k) {
    interpolated += values[k] * power;
    magnitude += abs_value(values[k] * power);
    power *= check_u;
  }
  const Quad direct = line_discriminant(qline, check_u * Quad(radius));
  if (abs_value(direct - interpolated) > Quad(1e-6) * std::max(magnitude, abs_value(direct))) {
    throw Error(ErrorKind::kInterpolationInconsistency, "discriminant interpolant fails its check point");
  }
  Quad rpow(1);
  for (int k = 0; k < n; ++k) {
    values[k] /= rpow;
    rpow *= Quad(radius);
  }
  return BasicPoly<Quad>(std::move(values));
}

std::vector<Quad> poly_mul(const std::vector<Quad>& f, const std::vector<Quad>& g) {
  std::vector<Quad> r(f.size() + g.size() - 1, Quad(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  }
  return r;
}

// Parameters at which two roots of Q_t meet at a real point. Along the line
// Q_t(z) = F(z) + t S(z) with F = z^d + sum_k b_k z^{d-k} and
// S = sum_k s_k z^{d-k}, so a real double root z of Q_t is a critical point of
// t(z) = -F(z) / S(z), i.e. a real root of W = F' S - F S'. Working in node
// space keeps this well conditioned when the endpoints lie far out in t.
std::vector<double> collision_parameters(const BasicPronyLine<Quad>& q) {
  const int d = q.d;
  std::vector<Quad> f(d + 1, Quad(0)), s(d, Quad(0));
  f[d] = Quad(1);
  for (int k = 1; k <= d; ++k) {
    f[d - k] = q.intercepts[k - 1];
    s[d - k] = q.slopes[k - 1];
  }
  const BasicPoly<Quad> fp(f), sp(s);
  const std::vector<Quad> a = poly_mul(fp.derivative().coefficients(), sp.coefficients());
  const std::vector<Quad> b = poly_mul(fp.coefficients(), sp.derivative().coefficients());
  std::vector<Quad> w(std::max(a.size(), b.size()), Quad(0));
  for (std::size_t i = 0; i < a.size(); ++i) w[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) w[i] -= b[i];
  const BasicPoly<Quad> wp(std::move(w));
  std::vector<double> ts;
  if (wp.is_zero()) return ts;
  for (const Quad& z : real_roots(wp)) {
    const Quad sz = sp(z);
    Quad scale(0), power(1);
    for (const auto& c : s) {
      scale += abs_value(c) * power;
      power *= abs_value(z);
    }
    if (abs_value(sz) <= Quad(1e-30) * scale) continue;  // z is a fixed root of every Q_t
    ts.push_back(static_cast<double>(-fp(z) / sz));
  }
  return ts;
}

}  // namespace

HyperbolicDomain hyperbolic_domain(const PronyLine& line) {
  const double inf = std::numeric_limits<double>::infinity();
  HyperbolicDomain domain;
  if (line.d == 1) {
    domain.discriminant_on_line = Poly({1.0});
    domain.intervals.push_back({-inf, inf});
    return domain;
  }
  const BasicPronyLine<Quad> qline = to_quad(line);
  const double slope_norm = max_abs(line.slopes);
  const double radius = std::max(1.0, max_abs(line.intercepts) / slope_norm);
  const BasicPoly<Quad> disc = interpolate_line_discriminant(qline, radius);
  domain.discriminant_on_line = Poly(convert<double>(disc.coefficients()));

  // Candidate endpoints; hyperbolicity probes on the pieces between them
  // decide which are boundaries, punctures or irrelevant.
  std::vector<double> roots = collision_parameters(qline);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }),
              roots.end());

  std::vector<Interval> pieces;
  double prev = -inf;
  for (double r : roots) {
    pieces.push_back({prev, r});
    prev = r;
  }
  pieces.push_back({prev, inf});

  double far = 1.0;
  for (double r : roots) far = std::max(far, std::abs(r) + 1.0);
  std::vector<bool> accepted(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Interval& p = pieces[i];
    if (p.bounded()) {
      accepted[i] = hyperbolic_at(line, 0.5 * (p.lo + p.hi));
      continue;
    }
    std::vector<double> probes;
    if (std::isinf(p.lo) && std::isinf(p.hi)) {
      probes = {0.0, -radius, radius};
    } else if (std::isinf(p.lo)) {
      probes = {-far, -10.0 * far};
    } else {
      probes = {far, 10.0 * far};
    }
    const bool first = hyperbolic_at(line, probes[0]);
    for (std::size_t k = 1; k < probes.size(); ++k) {
      if (hyperbolic_at(line, probes[k]) != first) {
        throw Error(ErrorKind::kInterpolationInconsistency,
                    "hyperbolicity changes on a piece without discriminant roots");
      }
    }
    accepted[i] = first;
  }

  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (accepted[i]) domain.intervals.push_back(pieces[i]);
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const bool left = accepted[i];
    const bool right = accepted[i + 1];
    if (left && right) {
      domain.endpoints.push_back({roots[i], EndpointKind::kPuncture});
    } else if (left || right) {
      domain.endpoints.push_back({roots[i], EndpointKind::kBoundary});
    }
  }
  return domain;
}

std::vector<double> projection_residuals(const MomentVector& mu, std::span<const double> nodes, int q) {
  const int d = static_cast<int>(nodes.size());
  if (d == 0) throw Error(ErrorKind::kInvalidInput, "no nodes");
  if (q < d || q > 2 * d - 1) throw Error(ErrorKind::kInvalidInput, "projection needs d <= q <= 2d-1");
  if (mu.order() < q) throw Error(ErrorKind::kInvalidInput, "moment vector shorter than q+1");
  const SymmetricCoords sigma = elementary_symmetric(nodes);
  std::vector<double> residuals;
  residuals.reserve(q - d + 1);
  for (int l = d; l <= q; ++l) {
    double r = mu[l];
    for (int i = 1; i <= d; ++i) r += mu[l - i] * sigma.sigma[i - 1];
    residuals.push_back(r);
  }
  return residuals;
}

Signal lift_to_solution(const MomentVector& mu, std::span<const double> nodes, int q, double tolerance) {
  const int d = static_cast<int>(nodes.size());
  for (int i = 1; i < d; ++i) {
    if (!(nodes[i - 1] < nodes[i])) throw Error(ErrorKind::kInvalidInput, "nodes must be strictly increasing");
  }
  const std::vector<double> residuals = projection_residuals(mu, nodes, q);
  const SymmetricCoords sigma = elementary_symmetric(nodes);
  for (int l = d; l <= q; ++l) {
    double scale = std::abs(mu[l]);
    for (int i = 1; i <= d; ++i) scale += std::abs(mu[l - i] * sigma.sigma[i - 1]);
    if (std::abs(residuals[l - d]) > tolerance * scale) {
      throw Error(ErrorKind::kResidualTooLarge,
                  "nodes violate projected equation " + std::to_string(l - d) + " (residual " +
                      std::to_string(residuals[l - d]) + ")");
    }
  }
  Signal s{amplitudes_from_nodes(mu, nodes), std::vector<double>(nodes.begin(), nodes.end())};
  return s;
}

}  // namespace prony
