#include "prony/closed_forms.hpp"

#include <cmath>
#include <numbers>

namespace prony {

namespace {

void require_length(const MomentVector& mu, std::size_t n) {
  mu.validate();
  if (mu.size() != n) {
    throw Error(ErrorKind::kInvalidInput,
                "expected " + std::to_string(n) + " moments, got " + std::to_string(mu.size()));
  }
}

DomainEvidence domain_evidence(const PronyLine& line) {
  DomainEvidence ev;
  try {
    const HyperbolicDomain dom = hyperbolic_domain(line);
    ev.available = true;
    ev.intervals = static_cast<int>(dom.intervals.size());
    ev.has_unbounded = dom.has_unbounded_above() || dom.has_unbounded_below();
    ev.bounded = !dom.empty() && dom.bounded();
    for (const auto& e : dom.endpoints) ev.finite_endpoints.push_back(e.t);
  } catch (const Error&) {
    ev.available = false;
  }
  return ev;
}

double det2(double a, double b, double c, double d) { return a * d - b * c; }
double det2_scale(double a, double b, double c, double d) { return std::abs(a * d) + std::abs(b * c); }

// Natural magnitude of det M: the cofactor expansion's size.
double det_scale(const PronyLine& line) { return line.hankel.max_abs_minor * line.hankel.max_abs_entry; }

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kYes: return "yes";
    case Verdict::kNo: return "no";
    case Verdict::kIndeterminate: return "indeterminate";
  }
  return "?";
}

Classification classify_d2(const MomentVector& mu, const ClassifyOptions& options) {
  require_length(mu, 3);
  const PronyLine line = line_params(mu);
  Classification c;
  c.d = 2;
  c.det_m = line.det_m;
  c.collision = std::abs(c.det_m) <= options.zone * det_scale(line) ? Verdict::kIndeterminate
                : c.det_m < 0.0                          ? Verdict::kYes
                                                         : Verdict::kNo;
  c.bounded = Verdict::kNo;
  c.mu0_nonzero = mu[0] != 0.0;
  c.numeric = domain_evidence(line);
  return c;
}

double discriminant_cubic_paper(const std::array<double, 3>& s) {
  return cubic_discriminant_negated(s[0], s[1], s[2]);
}

double discriminant_cubic_paper_scale(const std::array<double, 3>& s) {
  const double a = std::abs(s[0]), b = std::abs(s[1]), c = std::abs(s[2]);
  return 27 * c * c + 4 * b * b * b + a * a * b * b + 4 * a * a * a * c + 18 * a * b * c;
}

BasicPoly<Quad> quartic_Pmu_quad(const MomentVector& mu) {
  require_length(mu, 5);
  const PronyLine dline = line_params(mu);  // degeneracy check in working precision
  const std::vector<Quad> q = convert<Quad>(mu.values);
  const BasicPronyLine<Quad> line = make_line(make_hankel(q), q);
  const Quad det2 = line.det_m * line.det_m;
  const Quad det4 = det2 * det2;
  auto eval = [&](const Quad& t) {
    const std::vector<Quad> s = line.sigma_at(t);
    return det4 * cubic_discriminant_negated(s[0], s[1], s[2]);
  };
  const double radius = std::max(1.0, max_abs(dline.intercepts) / max_abs(dline.slopes));
  constexpr int n = 5;
  Matrix<Quad> vander(n, n);
  std::vector<Quad> values(n);
  for (int j = 0; j < n; ++j) {
    const Quad u = boost::multiprecision::cos(Quad(std::numbers::pi) * (Quad(j) + Quad(0.5)) / Quad(n));
    Quad power(1);
    for (int k = 0; k < n; ++k) {
      vander(j, k) = power;
      power *= u;
    }
    values[j] = eval(u * Quad(radius));
  }
  if (!lu_solve(vander, values)) throw Error(ErrorKind::kInterpolationInconsistency, "singular interpolation system");
  const Quad check_u("0.7236067977499789696409173668731276");
  Quad interpolated(0), magnitude(0), power(1);
  for (int k = 0; k < n; ++k) {
    interpolated += values[k] * power;
    magnitude += abs_value(values[k] * power);
    power *= check_u;
  }
  const Quad direct = eval(check_u * Quad(radius));
  if (abs_value(direct - interpolated) > Quad(1e-8) * std::max(magnitude, abs_value(direct))) {
    throw Error(ErrorKind::kInterpolationInconsistency, "quartic interpolant fails its check point");
  }
  Quad rpow(1);
  for (int k = 0; k < n; ++k) {
    values[k] /= rpow;
    rpow *= Quad(radius);
  }
  return BasicPoly<Quad>(std::move(values));
}

Poly quartic_Pmu(const MomentVector& mu) {
  const BasicPoly<Quad> p = quartic_Pmu_quad(mu);
  return Poly(convert<double>(p.coefficients()));
}

std::vector<double> quartic_real_roots(const MomentVector& mu) {
  const BasicPoly<Quad> p = quartic_Pmu_quad(mu);
  if (p.degree() <= 0) return {};
  return convert<double>(real_roots(p));
}

double P8_closed_form(const MomentVector& mu) {
  if (mu.size() < 4) throw Error(ErrorKind::kInvalidInput, "P8 needs mu_0..mu_3");
  const double m33 = det2(mu[0], mu[1], mu[1], mu[2]);
  const double m31 = det2(mu[1], mu[2], mu[2], mu[3]);
  const double m32 = det2(mu[0], mu[2], mu[1], mu[3]);
  return 4.0 * m33 * m33 * m33 * m31 - m33 * m33 * m32 * m32;
}

double P8_scale(const MomentVector& mu) {
  if (mu.size() < 4) throw Error(ErrorKind::kInvalidInput, "P8 needs mu_0..mu_3");
  const double m33 = det2_scale(mu[0], mu[1], mu[1], mu[2]);
  const double m31 = det2_scale(mu[1], mu[2], mu[2], mu[3]);
  const double m32 = det2_scale(mu[0], mu[2], mu[1], mu[3]);
  return 4.0 * m33 * m33 * m33 * m31 + m33 * m33 * m32 * m32;
}

double K_value(const MomentVector& mu) {
  if (mu.size() < 4) throw Error(ErrorKind::kInvalidInput, "K needs mu_0..mu_3");
  if (mu[0] == 0.0) throw Error(ErrorKind::kInvalidInput, "K is undefined for mu_0 = 0");
  return discriminant_cubic_paper({3.0 * mu[1] / mu[0], 3.0 * mu[2] / mu[0], mu[3] / mu[0]});
}

double K_scale(const MomentVector& mu) {
  if (mu.size() < 4 || mu[0] == 0.0) return INFINITY;
  return discriminant_cubic_paper_scale({3.0 * mu[1] / mu[0], 3.0 * mu[2] / mu[0], mu[3] / mu[0]});
}

double P8_via_K(const MomentVector& mu) {
  const double k = K_value(mu);
  const double m33 = det2(mu[0], mu[1], mu[1], mu[2]);
  const double mu0sq = mu[0] * mu[0];
  return -(mu0sq * mu0sq / 27.0) * m33 * m33 * k;
}

Classification classify_d3(const MomentVector& mu, const ClassifyOptions& options) {
  require_length(mu, 5);
  const PronyLine line = line_params(mu);
  Classification c;
  c.d = 3;
  c.det_m = line.det_m;
  const double m = mu.max_abs();

  const BasicPoly<Quad> pq = quartic_Pmu_quad(mu);
  std::array<double, 5> coeffs{};
  for (int k = 0; k < 5; ++k) coeffs[k] = static_cast<double>(pq[4 - k]);
  c.quartic = coeffs;
  c.p8 = P8_closed_form(mu);
  c.mu0_nonzero = std::abs(mu[0]) > options.zone * m;
  c.leading_minor_nonzero =
      std::abs(det2(mu[0], mu[1], mu[1], mu[2])) > options.zone * det2_scale(mu[0], mu[1], mu[1], mu[2]);
  if (mu[0] != 0.0) c.k = K_value(mu);
  if (pq.degree() > 0) c.quartic_roots = convert<double>(real_roots(pq));
  c.numeric = domain_evidence(line);

  if (std::abs(c.det_m) <= options.zone * det_scale(line)) {
    c.collision = Verdict::kIndeterminate;
  } else if (pq.is_zero()) {
    c.collision = Verdict::kIndeterminate;
  } else {
    c.collision = c.quartic_roots.empty() ? Verdict::kNo : Verdict::kYes;
  }

  const bool conditions = c.mu0_nonzero && c.leading_minor_nonzero;
  const bool p8_clear = std::abs(*c.p8) > options.zone * P8_scale(mu);
  const bool k_clear = c.k && std::abs(*c.k) > options.zone * K_scale(mu);
  if (conditions && p8_clear && k_clear) {
    c.bounded = *c.k < 0.0 ? Verdict::kYes : Verdict::kNo;
  } else {
    c.bounded = Verdict::kIndeterminate;
  }
  return c;
}

}  // namespace prony
