#include "prony/curve_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace prony {

namespace {

CurveSampling sample_impl(const MomentVector& mu, std::span<const double> grid, bool parallel) {
  const PronyLine line = line_params(mu);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<std::optional<CurveSample>> slots(grid.size());
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (std::isfinite(grid[i])) slots[i] = make_curve_sample<double>(line, grid[i]);
  }
  CurveSampling out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) {
      out.samples.push_back(std::move(*slots[i]));
    } else {
      out.rejected.push_back(grid[i]);
    }
  }
  return out;
}

BasicPronyLine<Quad> quad_line(const MomentVector& mu) {
  const std::vector<Quad> q = convert<Quad>(mu.values);
  return make_line(make_hankel(q), q);
}

// Sharpens a sign-changing discriminant root to quad resolution.
Quad polish_boundary(const BasicPronyLine<Quad>& qline, double t0, double scale) {
  Quad h(1e-9 * scale);
  Quad a(t0), b(t0);
  int sa = 0, sb = 0;
  for (int grow = 0; grow < 8; ++grow) {
    a = Quad(t0) - h;
    b = Quad(t0) + h;
    sa = sign_of(line_discriminant(qline, a));
    sb = sign_of(line_discriminant(qline, b));
    if (sa != 0 && sb != 0 && sa != sb) break;
    h *= 10;
  }
  if (sa == sb || sa == 0 || sb == 0) return Quad(t0);
  for (int it = 0; it < 200 && b - a > Quad(1e-33) * Quad(scale); ++it) {
    const Quad m = (a + b) / 2;
    const int sm = sign_of(line_discriminant(qline, m));
    if (sm == 0) return m;
    if (sm == sa) {
      a = m;
    } else {
      b = m;
    }
  }
  return (a + b) / 2;
}

// Tangency: |D| is minimised rather than bracketed.
Quad polish_puncture(const BasicPronyLine<Quad>& qline, double t0, double scale) {
  const Quad phi = (boost::multiprecision::sqrt(Quad(5)) - 1) / 2;
  Quad a = Quad(t0) - Quad(1e-8 * scale);
  Quad b = Quad(t0) + Quad(1e-8 * scale);
  auto f = [&](const Quad& t) { return abs_value(line_discriminant(qline, t)); };
  Quad c = b - phi * (b - a), e = a + phi * (b - a);
  Quad fc = f(c), fe = f(e);
  for (int it = 0; it < 160; ++it) {
    if (fc < fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + phi * (b - a);
      fe = f(e);
    }
  }
  return (a + b) / 2;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

struct QuadProbe {
  double offset;
  Quad t;
  BasicCurveSample<Quad> sample;
  bool extension;
};

CollisionReport analyse_endpoint(const MomentVector& mu, const BasicPronyLine<Quad>& qline,
                                 const HyperbolicDomain& domain, const DomainEndpoint& ep,
                                 const CollisionOptions& options) {
  const int d = qline.d;
  CollisionReport report;
  report.t0 = ep.t;
  report.kind = ep.kind;
  const double scale = std::max(1.0, std::abs(ep.t));

  // Probe side: the interval starting at t0, else the one ending there.
  std::optional<Interval> piece;
  const double tie = 1e-9 * scale;
  for (const auto& iv : domain.intervals) {
    if (std::abs(iv.lo - ep.t) <= tie) {
      piece = iv;
      report.side = +1;
      break;
    }
  }
  if (!piece) {
    for (const auto& iv : domain.intervals) {
      if (std::abs(iv.hi - ep.t) <= tie) {
        piece = iv;
        report.side = -1;
        break;
      }
    }
  }
  const double room = piece ? (piece->bounded() ? 0.5 * (piece->hi - piece->lo) : INFINITY) : 0.0;

  const Quad t0 = ep.kind == EndpointKind::kBoundary ? polish_boundary(qline, ep.t, scale)
                                                      : polish_puncture(qline, ep.t, scale);
  report.t0 = static_cast<double>(t0);

  std::vector<QuadProbe> probes;
  auto probe = [&](int k, bool extension) -> bool {
    const double offset = std::pow(10.0, -k) * scale;
    if (!(offset < room)) return true;  // beyond the adjacent piece; try deeper
    const Quad t = t0 + Quad(report.side) * Quad(offset);
    auto s = make_curve_sample<Quad>(qline, t);
    if (!s) return false;
    probes.push_back({offset, t, std::move(*s), extension});
    return true;
  };
  for (int k = options.first_decade; k <= options.last_decade; ++k) probe(k, false);
  if (probes.empty()) return report;

  auto argmin_gap = [&](const BasicCurveSample<Quad>& s) {
    int best = 0;
    for (int i = 1; i + 1 < d; ++i) {
      if (s.nodes[i + 1] - s.nodes[i] < s.nodes[best + 1] - s.nodes[best]) best = i;
    }
    return best;
  };
  auto exceeded = [&](const BasicCurveSample<Quad>& s, int i) {
    return abs_value(s.amplitudes[i]) > Quad(options.blow_up_threshold) &&
           abs_value(s.amplitudes[i + 1]) > Quad(options.blow_up_threshold);
  };
  for (int k = options.last_decade + 1; k <= options.max_decade; ++k) {
    const auto& last = probes.back().sample;
    if (exceeded(last, argmin_gap(last))) break;
    if (!probe(k, true)) break;
  }

  const auto& deepest = probes.back().sample;
  const int pair = argmin_gap(deepest);
  report.pair = pair;
  for (int i = 0; i + 1 < d; ++i) {
    const Quad first = probes.front().sample.nodes[i + 1] - probes.front().sample.nodes[i];
    const Quad last = deepest.nodes[i + 1] - deepest.nodes[i];
    if (i == pair || last <= Quad(1e-3) * first) report.colliding_pairs.push_back(i);
  }

  std::vector<double> gaps, left, right;
  for (const auto& p : probes) {
    CollisionProbe row;
    row.offset = p.offset;
    row.t = static_cast<double>(p.t);
    row.gap = static_cast<double>(p.sample.nodes[pair + 1] - p.sample.nodes[pair]);
    row.amplitude_left = static_cast<double>(abs_value(p.sample.amplitudes[pair]));
    row.amplitude_right = static_cast<double>(abs_value(p.sample.amplitudes[pair + 1]));
    row.product_residual = static_cast<double>(p.sample.product_residual);
    row.residual = static_cast<double>(p.sample.residual);
    row.extension = p.extension;
    report.probes.push_back(row);
    gaps.push_back(row.gap);
    left.push_back(row.amplitude_left);
    right.push_back(row.amplitude_right);
  }
  report.gap_decreasing = strictly_decreasing(gaps);
  const std::size_t tail = std::min<std::size_t>(4, probes.size());
  const std::vector<double> left_tail(left.end() - tail, left.end());
  const std::vector<double> right_tail(right.end() - tail, right.end());
  report.amplitudes_increasing = tail == 4 && strictly_increasing(left_tail) && strictly_increasing(right_tail);
  report.threshold_exceeded = exceeded(deepest, pair);
  report.blow_up_confirmed = report.amplitudes_increasing && report.threshold_exceeded;

  std::vector<double> xstar;
  for (int i = 0; i < d; ++i) {
    if (i == pair + 1) continue;
    const Quad x = i == pair ? (deepest.nodes[i] + deepest.nodes[i + 1]) / 2 : deepest.nodes[i];
    xstar.push_back(static_cast<double>(x));
  }
  report.limit_nodes = xstar;
  report.numerator = collision_numerator(mu, xstar);
  report.numerator_scale = collision_numerator_scale(mu, xstar);
  return report;
}

}  // namespace

CurveSampling sample_curve(const MomentVector& mu, std::span<const double> grid) {
  return sample_impl(mu, grid, true);
}

CurveSampling sample_curve_serial(const MomentVector& mu, std::span<const double> grid) {
  return sample_impl(mu, grid, false);
}

double collision_numerator(const MomentVector& mu, std::span<const double> xstar) {
  const std::size_t d = xstar.size() + 1;
  if (mu.size() < d) throw Error(ErrorKind::kInvalidInput, "need at least d moments");
  const std::vector<double> rho = signed_elementary_symmetric(std::vector<double>(xstar.begin(), xstar.end()));
  double p = mu[d - 1];
  for (std::size_t j = 0; j + 1 < d; ++j) p += mu[j] * rho[d - 2 - j];
  return p;
}

double collision_numerator_scale(const MomentVector& mu, std::span<const double> xstar) {
  const std::size_t d = xstar.size() + 1;
  if (mu.size() < d) throw Error(ErrorKind::kInvalidInput, "need at least d moments");
  const std::vector<double> rho = signed_elementary_symmetric(std::vector<double>(xstar.begin(), xstar.end()));
  double s = std::abs(mu[d - 1]);
  for (std::size_t j = 0; j + 1 < d; ++j) s += std::abs(mu[j] * rho[d - 2 - j]);
  return s;
}

std::vector<CollisionReport> detect_collisions(const MomentVector& mu, const CollisionOptions& options) {
  const PronyLine line = line_params(mu);
  const HyperbolicDomain domain = hyperbolic_domain(line);
  std::vector<CollisionReport> reports(domain.endpoints.size());
  if (reports.empty()) return reports;
  const BasicPronyLine<Quad> qline = quad_line(mu);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(reports.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    reports[i] = analyse_endpoint(mu, qline, domain, domain.endpoints[i], options);
  }
  return reports;
}

EscapeReport escape_analysis(const MomentVector& mu, Direction direction, const EscapeOptions& options) {
  const PronyLine line = line_params(mu);
  const HyperbolicDomain domain = hyperbolic_domain(line);
  const bool up = direction == Direction::kPositive;
  if (up ? !domain.has_unbounded_above() : !domain.has_unbounded_below()) {
    throw Error(ErrorKind::kNoUnboundedComponent,
                std::string("A_mu has no component unbounded towards ") + (up ? "+inf" : "-inf"));
  }
  const int d = line.d;
  EscapeReport report;
  report.direction = direction;
  const HankelMatrix& h = line.hankel;
  report.hypothesis_met =
      std::abs(h.minor(d, d)) > options.hypothesis_tolerance * h.max_abs_minor;

  double tscale = 1.0;
  for (const auto& ep : domain.endpoints) tscale = std::max(tscale, std::abs(ep.t));
  tscale = std::max(tscale, max_abs(line.intercepts) / max_abs(line.slopes));

  const BasicPronyLine<Quad> qline = quad_line(mu);
  const double sign = up ? 1.0 : -1.0;
  for (int k = options.first_decade; k <= options.last_decade; ++k) {
    const double t = sign * tscale * std::pow(10.0, k);
    auto s = make_curve_sample<Quad>(qline, Quad(t));
    if (!s) continue;
    report.probes.push_back({t, convert<double>(s->nodes)});
  }

  report.behavior.assign(d, NodeBehavior::kAmbiguous);
  const std::size_t m = report.probes.size();
  if (m >= 3) {
    for (int i = 0; i < d; ++i) {
      const double x0 = report.probes[m - 3].nodes[i];
      const double x1 = report.probes[m - 2].nodes[i];
      const double x2 = report.probes[m - 1].nodes[i];
      // Probes are a decade apart.
      const bool grows = std::abs(x1) >= options.growth_ratio * std::abs(x0) &&
                         std::abs(x2) >= options.growth_ratio * std::abs(x1) && std::abs(x0) > 0.0;
      const bool settles = std::abs(x1 - x0) <= options.cauchy_tolerance * std::max(1.0, std::abs(x1)) &&
                           std::abs(x2 - x1) <= options.cauchy_tolerance * std::max(1.0, std::abs(x2));
      if (grows) {
        report.behavior[i] = NodeBehavior::kEscaping;
        report.escaping.push_back(i);
        report.escape_signs.push_back(x2 > 0 ? +1 : -1);
      } else if (settles) {
        report.behavior[i] = NodeBehavior::kBounded;
        report.bounded_limits.push_back(x2);
      }
    }
  }

  const bool ambiguous =
      std::any_of(report.behavior.begin(), report.behavior.end(), [](NodeBehavior b) { return b == NodeBehavior::kAmbiguous; });
  if (ambiguous) {
    report.verdict = EscapeVerdict::kAmbiguous;
  } else if (!report.hypothesis_met) {
    report.verdict = EscapeVerdict::kHypothesisNotMet;
  } else {
    report.verdict = report.escaping.size() == 1 ? EscapeVerdict::kConfirmed : EscapeVerdict::kViolated;
  }
  return report;
}

std::string_view to_string(Direction d) { return d == Direction::kPositive ? "+inf" : "-inf"; }

std::string_view to_string(NodeBehavior b) {
  switch (b) {
    case NodeBehavior::kEscaping: return "escaping";
    case NodeBehavior::kBounded: return "bounded";
    case NodeBehavior::kAmbiguous: return "ambiguous";
  }
  return "?";
}

std::string_view to_string(EscapeVerdict v) {
  switch (v) {
    case EscapeVerdict::kConfirmed: return "confirmed";
    case EscapeVerdict::kHypothesisNotMet: return "hypothesis-not-met";
    case EscapeVerdict::kAmbiguous: return "ambiguous";
    case EscapeVerdict::kViolated: return "violated";
  }
  return "?";
}

}  // namespace prony
