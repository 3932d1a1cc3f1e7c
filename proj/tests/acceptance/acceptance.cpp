// One PASS/FAIL line per acceptance criterion. With an argument N only
// criterion N runs; the exit status is nonzero when any criterion that ran
// failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "prony/closed_forms.hpp"
#include "prony/curve_analysis.hpp"
#include "prony/poly.hpp"
#include "prony/prony_line.hpp"
#include "prony/prony_solver.hpp"

using namespace prony;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool well_posed(const HankelMatrix& h) { return std::abs(h.det) > 1e-3 * h.max_abs_minor * h.max_abs_entry; }

// The two-node curve of mu = (0, 1, 0), parametrised by t = -s^2.
Outcome criterion1() {
  Outcome o;
  const MomentVector mu{{0.0, 1.0, 0.0}};
  std::vector<double> s_values, grid;
  for (int j = 0; j <= 400; ++j) {
    const double s = 0.1 * std::pow(100.0, j / 400.0);
    s_values.push_back(s);
    grid.push_back(-s * s);
  }
  const CurveSampling cs = sample_curve(mu, grid);
  double dev = 0.0;
  if (cs.samples.size() != grid.size()) {
    o.pass = false;
    dev = INFINITY;
  } else {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double s = s_values[j];
      const CurveSample& c = cs.samples[j];
      const double expected[4] = {-1.0 / (2.0 * s), 1.0 / (2.0 * s), -s, s};
      const double got[4] = {c.amplitudes[0], c.amplitudes[1], c.nodes[0], c.nodes[1]};
      for (int k = 0; k < 4; ++k) dev = std::max(dev, std::abs(got[k] - expected[k]));
    }
  }
  o.pass = o.pass && dev <= 1e-9;

  const auto reports = detect_collisions(mu);
  bool found = false, blow_up = true;
  double min_gap = INFINITY, max_amp = 0.0;
  for (const CollisionReport& r : reports) {
    if (std::abs(r.t0) > 1e-12 || r.side != -1) continue;
    found = r.blow_up_confirmed;
    for (const CollisionProbe& p : r.probes) {
      min_gap = std::min(min_gap, p.gap);
      if (p.gap < 1e-6) {
        const double small = std::min(std::abs(p.amplitude_left), std::abs(p.amplitude_right));
        max_amp = std::max(max_amp, small);
        blow_up = blow_up && small > 1e6;
      }
    }
  }
  const bool reached = min_gap < 1e-6;
  o.pass = o.pass && found && reached && blow_up;
  o.detail = fmt("max deviation %.2e over %zu s values; collision at t=0 from the left %s, min gap %.1e, min |a| %.2e",
                 dev, grid.size(), found ? "confirmed" : "missing", min_gap, max_amp);
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::mt19937_64 rng(1002);
  int n = 0, agree = 0, unbounded_ok = 0;
  while (n < 1000) {
    const MomentVector mu{oracle::uniform_vector(rng, 3, -2.0, 2.0)};
    if (std::abs(mu[0] * mu[2] - mu[1] * mu[1]) <= 1e-3) continue;
    ++n;
    const Classification c = classify_d2(mu);
    const bool numeric_collision = !detect_collisions(mu).empty();
    if (c.collision != Verdict::kIndeterminate && (c.collision == Verdict::kYes) == numeric_collision) ++agree;
    const HyperbolicDomain dom = hyperbolic_domain(line_params(mu));
    if (c.bounded == Verdict::kNo && (dom.has_unbounded_above() || dom.has_unbounded_below())) ++unbounded_ok;
  }
  o.pass = agree == n && unbounded_ok == n;
  o.detail = fmt("collision agreement %d/%d, unbounded confirmed %d/%d", agree, n, unbounded_ok, n);
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(1003);
  int n = 0, collision_ok = 0, bounded_ok = 0, bounded_checked = 0, roots_ok = 0, empty = 0;
  double worst_root = 0.0;
  while (n < 300) {
    const MomentVector mu{oracle::uniform_vector(rng, 5, -2.0, 2.0)};
    const HankelMatrix h = hankel(mu);
    if (std::abs(h.det) <= 1e-6 * h.max_abs_minor * h.max_abs_entry) continue;
    if (std::abs(P8_closed_form(mu)) <= 1e-6 * P8_scale(mu)) continue;
    if (std::abs(K_value(mu)) <= 1e-6 * K_scale(mu)) continue;
    ++n;
    const Classification c = classify_d3(mu);
    const HyperbolicDomain dom = hyperbolic_domain(line_params(mu));
    if (c.collision != Verdict::kIndeterminate && (c.collision == Verdict::kYes) == !dom.endpoints.empty()) {
      ++collision_ok;
    }
    if (dom.empty()) {
      ++empty;
    } else {
      ++bounded_checked;
      if (c.bounded != Verdict::kIndeterminate && (c.bounded == Verdict::kYes) == dom.bounded()) ++bounded_ok;
    }
    bool match = c.quartic_roots.size() == dom.endpoints.size();
    for (std::size_t i = 0; match && i < dom.endpoints.size(); ++i) {
      const double err = std::abs(c.quartic_roots[i] - dom.endpoints[i].t) / std::max(1.0, std::abs(dom.endpoints[i].t));
      worst_root = std::max(worst_root, err);
      match = err <= 1e-8;
    }
    if (match) ++roots_ok;
  }
  o.pass = collision_ok == n && bounded_ok == bounded_checked && roots_ok == n;
  o.detail = fmt("collision %d/%d, boundedness %d/%d (%d empty domains), quartic roots = endpoints %d/%d (worst %.1e)",
                 collision_ok, n, bounded_ok, bounded_checked, empty, roots_ok, n, worst_root);
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(1004);
  int n = 0, forms_ok = 0;
  double worst_forms = 0.0;
  while (n < 1000) {
    const MomentVector mu{oracle::uniform_vector(rng, 5, -2.0, 2.0)};
    if (mu[0] == 0.0) continue;
    ++n;
    const double a = P8_closed_form(mu), b = P8_via_K(mu);
    const double rel = std::abs(a - b) / std::max(std::abs(a), std::abs(b));
    worst_forms = std::max(worst_forms, rel);
    if (rel <= 1e-9) ++forms_ok;
  }
  int m = 0, lc_ok = 0;
  double worst_lc = 0.0;
  while (m < 100) {
    const MomentVector mu{oracle::uniform_vector(rng, 5, -2.0, 2.0)};
    if (!well_posed(hankel(mu))) continue;
    ++m;
    const Poly q = quartic_Pmu(mu);
    const double p8 = P8_closed_form(mu);
    const double rel = std::abs(q[4] - p8) / std::max(std::abs(q[4]), std::abs(p8));
    worst_lc = std::max(worst_lc, rel);
    if (q.degree() == 4 && rel <= 1e-8) ++lc_ok;
  }
  o.pass = forms_ok == n && lc_ok == m;
  o.detail = fmt("forms agree %d/%d (worst rel %.1e), leading coefficient %d/%d (worst rel %.1e)", forms_ok, n,
                 worst_forms, lc_ok, m, worst_lc);
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(1005);
  int instances = 0, endpoints = 0, monotone = 0, product_ok = 0, confirmed = 0, numerator_ok = 0;
  double worst_product = 0.0;
  while (instances < 100) {
    const int d = 2 + instances % 2;
    const MomentVector mu{oracle::uniform_vector(rng, 2 * d - 1, -2.0, 2.0)};
    if (!well_posed(hankel(mu))) continue;
    const auto reports = detect_collisions(mu);
    if (reports.empty()) continue;
    ++instances;
    for (const CollisionReport& r : reports) {
      ++endpoints;
      if (r.amplitudes_increasing) ++monotone;
      bool ok = true;
      for (const CollisionProbe& p : r.probes) {
        worst_product = std::max(worst_product, p.product_residual);
        ok = ok && p.product_residual <= 1e-6;
      }
      if (ok) ++product_ok;
      if (r.blow_up_confirmed) {
        ++confirmed;
        if (std::abs(r.numerator) >= 1e-8 * r.numerator_scale) ++numerator_ok;
      }
    }
  }
  o.pass = monotone == endpoints && product_ok == endpoints && numerator_ok == confirmed;
  o.detail = fmt("%d instances, %d endpoints: monotone %d, product identity %d (worst %.1e), numerator %d/%d confirmed",
                 instances, endpoints, monotone, product_ok, worst_product, numerator_ok, confirmed);
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::mt19937_64 rng(1006);
  int instances = 0, components = 0, single = 0;
  while (instances < 200) {
    const int d = 2 + instances % 2;
    const MomentVector mu{oracle::uniform_vector(rng, 2 * d - 1, -2.0, 2.0)};
    const HankelMatrix h = hankel(mu);
    if (!well_posed(h) || std::abs(h.minor(d, d)) < 1e-6 * h.max_abs_minor) continue;
    const HyperbolicDomain dom = hyperbolic_domain(line_params(mu));
    if (!dom.has_unbounded_above() && !dom.has_unbounded_below()) continue;
    ++instances;
    for (Direction dir : {Direction::kPositive, Direction::kNegative}) {
      if (!(dir == Direction::kPositive ? dom.has_unbounded_above() : dom.has_unbounded_below())) continue;
      ++components;
      const EscapeReport e = escape_analysis(mu, dir);
      if (e.hypothesis_met && e.escaping.size() == 1 && e.verdict == EscapeVerdict::kConfirmed) ++single;
    }
  }
  int zero_cases = 0, flagged = 0;
  while (zero_cases < 50) {
    auto v = oracle::uniform_vector(rng, 3, -2.0, 2.0);
    v[0] = 0.0;
    if (std::abs(v[1]) < 0.1) continue;
    ++zero_cases;
    const MomentVector mu{v};
    const HyperbolicDomain dom = hyperbolic_domain(line_params(mu));
    const Direction dir = dom.has_unbounded_below() ? Direction::kNegative : Direction::kPositive;
    const EscapeReport e = escape_analysis(mu, dir);
    if (e.verdict == EscapeVerdict::kHypothesisNotMet && e.escaping.size() == 2) ++flagged;
  }
  o.pass = single == components && flagged == zero_cases;
  o.detail = fmt("%d instances, %d unbounded components with one escaping node: %d; mu0 = 0 double escape flagged %d/%d",
                 instances, components, single, flagged, zero_cases);
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(1007);
  int ok = 0, strict = 0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const auto inst = oracle::random_budan_instance(rng, i);
    const int bound = budan_fourier_bound(Poly(inst.coeffs), inst.a, inst.b);
    const int exact = oracle::roots_with_multiplicity(oracle::from_doubles(inst.coeffs), oracle::finite_or_none(inst.a),
                                                      oracle::finite_or_none(inst.b));
    if (bound >= exact && (bound - exact) % 2 == 0) ++ok;
    if (bound > exact) ++strict;
  }
  o.pass = ok == n;
  o.detail = fmt("bound >= exact with even difference %d/%d (%d strict)", ok, n, strict);
  return o;
}

Outcome criterion8() {
  Outcome o;
  NoiseConfig cfg;
  cfg.d = 2;
  cfg.epsilon = 1e-8;
  cfg.trials = 200;
  cfg.h_grid = {0.4, 0.2, 0.1, 0.05};
  const AmplificationResult r = amplification_experiment(cfg);
  std::vector<double> linf;
  for (const AmplificationRow& row : r.rows) linf.push_back(row.max_point_error_linf);
  const SlopeFit point = fit_log_log(cfg.h_grid, linf);
  const double cs = r.curve_fit.slope;
  const bool point_ok = point.slope >= -3.5 && point.slope <= -2.5;
  const bool curve_ok = cs >= -2.5 && cs <= -1.5;
  const bool order_ok = cs >= point.slope + 0.5;
  o.pass = point_ok && curve_ok && order_ok;
  o.detail = fmt("point slope %.3f (linf; euclidean %.3f) %s, curve-distance slope %.3f %s, separation %.3f %s; "
                 "matched-parameter slope %.3f (info)",
                 point.slope, r.point_fit.slope, point_ok ? "in band" : "OUT OF BAND", cs,
                 curve_ok ? "in band" : "OUT OF BAND", cs - point.slope, order_ok ? "ok" : "too small",
                 r.matched_fit.slope);
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::mt19937_64 rng(1009);
  int n = 0, residual_ok = 0, lift_ok = 0;
  double worst_residual = 0.0, worst_lift = 0.0;
  for (; n < 500; ++n) {
    const int d = 2 + n % 3;
    const Signal s = oracle::random_signal(rng, d, 0.2, 0.5, 2.0);
    const std::vector<double> sigma = elementary_symmetric(s.nodes).sigma;
    bool res_pass = true, lift_pass = true;
    for (int q = d; q <= 2 * d - 1; ++q) {
      const MomentVector mu = compute_moments(s, q);
      const auto r = projection_residuals(mu, s.nodes, q);
      for (int l = d; l <= q; ++l) {
        double scale = std::abs(mu[l]);
        for (int i = 1; i <= d; ++i) scale += std::abs(mu[l - i] * sigma[i - 1]);
        const double rel = std::abs(r[l - d]) / scale;
        worst_residual = std::max(worst_residual, rel);
        res_pass = res_pass && rel <= 1e-10;
      }
      try {
        const Signal back = lift_to_solution(mu, s.nodes, q);
        for (int k = 0; k <= q; ++k) {
          double m = 0.0, scale = 0.0;
          for (int i = 0; i < d; ++i) {
            const double term = back.amplitudes[i] * std::pow(back.nodes[i], k);
            m += term;
            scale += std::abs(term);
          }
          const double rel = std::abs(m - mu[k]) / std::max(scale, std::abs(mu[k]));
          worst_lift = std::max(worst_lift, rel);
          lift_pass = lift_pass && rel <= 1e-8;
        }
      } catch (const Error&) {
        lift_pass = false;
      }
    }
    if (res_pass) ++residual_ok;
    if (lift_pass) ++lift_ok;
  }
  o.pass = residual_ok == n && lift_ok == n;
  o.detail = fmt("projection residuals vanish %d/%d (worst rel %.1e), lift satisfies the moments %d/%d (worst rel %.1e)",
                 residual_ok, n, worst_residual, lift_ok, n, worst_lift);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "two-node example curve and collision", 1.0, criterion1},
      {2, "d=2 classification vs numeric domain", 30.0, criterion2},
      {3, "d=3 classification vs numeric domain", 120.0, criterion3},
      {4, "P8 identities", 1e9, criterion4},
      {5, "amplitude blow-up certificate", 1e9, criterion5},
      {6, "single escaping node certificate", 1e9, criterion6},
      {7, "Budan-Fourier dominance", 1e9, criterion7},
      {8, "error amplification slopes", 120.0, criterion8},
      {9, "projection and lift round trip", 1e9, criterion9},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    all = all && pass;
    std::printf("%s criterion %d (%s): %s [%.2f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
