#include "prony/prony_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "prony/curve_analysis.hpp"
#include "prony/prony_line.hpp"

namespace prony {

Signal solve_complete(const MomentVector& mu) {
  mu.validate();
  if (mu.size() % 2 != 0) throw Error(ErrorKind::kInvalidInput, "complete system needs 2d moments");
  const int d = static_cast<int>(mu.size()) / 2;
  const HankelMatrix h = make_hankel(std::vector<double>(mu.values.begin(), mu.values.end() - 1));
  if (h.degenerate()) throw Error(ErrorKind::kDegenerateHankel, "Hankel matrix of mu_0..mu_{2d-2} is singular");
  // Row i: sum_j mu_{i+j} sigma_{d-j} = -mu_{d+i}.
  std::vector<double> rhs(d);
  for (int i = 0; i < d; ++i) rhs[i] = -mu[d + i];
  if (!lu_solve(h.entries, rhs)) throw Error(ErrorKind::kDegenerateHankel, "singular Hankel solve");
  SymmetricCoords sigma;
  sigma.sigma.resize(d);
  for (int j = 0; j < d; ++j) sigma.sigma[d - 1 - j] = rhs[j];
  std::vector<double> nodes;
  try {
    nodes = vieta_inverse(sigma);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNotHyperbolic) throw;
    throw Error(ErrorKind::kNoRealSolution, "recovered node polynomial is not hyperbolic");
  }
  Signal s;
  s.amplitudes = amplitudes_from_nodes(mu, nodes);
  s.nodes = std::move(nodes);
  return s;
}

Signal make_cluster_signal(int d, double h, std::uint64_t) {
  if (d < 1) throw Error(ErrorKind::kInvalidInput, "d must be >= 1");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::kInvalidInput, "cluster size must be positive");
  Signal s;
  for (int i = 0; i < d; ++i) {
    s.nodes.push_back(d == 1 ? 0.0 : i * h / (d - 1));
    s.amplitudes.push_back(i % 2 == 0 ? 1.0 : -1.0);
  }
  return s;
}

double curve_distance(const Signal& signal, const MomentVector& mu, const CurveDistanceOptions& options) {
  signal.validate();
  const int d = signal.dimension();
  if (static_cast<int>(mu.size()) != 2 * d - 1) {
    throw Error(ErrorKind::kInvalidInput, "curve distance needs 2d-1 moments");
  }
  const PronyLine line = line_params(mu);
  const HyperbolicDomain domain = hyperbolic_domain(line);
  if (domain.empty()) throw Error(ErrorKind::kEmptyDomain, "A_mu is empty");

  const double inf = std::numeric_limits<double>::infinity();
  auto dist = [&](double t) {
    const auto s = make_curve_sample<double>(line, t);
    if (!s) return inf;
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
      const double da = s->amplitudes[i] - signal.amplitudes[i];
      const double dx = s->nodes[i] - signal.nodes[i];
      acc += da * da + dx * dx;
    }
    return std::sqrt(acc);
  };

  const double that = line.parameter_of(elementary_symmetric(signal.nodes).sigma);
  const double center = std::isfinite(that) ? that : 0.0;
  double window = 10.0 * std::max(1.0, std::abs(center));
  for (const auto& e : domain.endpoints) window = std::max(window, 2.0 * std::abs(e.t - center));

  // Grid points tagged with the clipped piece of A_mu they belong to.
  struct Node {
    double t;
    double lo;
    double hi;
  };
  std::vector<Node> ts;
  const int n = std::max(options.grid_points, 3);
  for (const auto& iv : domain.intervals) {
    const double lo = std::max(iv.lo, center - window);
    const double hi = std::min(iv.hi, center + window);
    if (!(lo < hi)) continue;
    if (iv.contains(center)) ts.push_back({center, lo, hi});
    for (int k = 1; k <= n; ++k) ts.push_back({lo + (hi - lo) * k / (n + 1), lo, hi});
  }
  std::sort(ts.begin(), ts.end(), [](const Node& a, const Node& b) { return a.t < b.t; });
  ts.erase(std::unique(ts.begin(), ts.end(), [](const Node& a, const Node& b) { return a.t == b.t; }), ts.end());
  if (ts.empty()) throw Error(ErrorKind::kEmptyDomain, "no grid point inside A_mu");

  std::vector<double> fs(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) fs[i] = dist(ts[i].t);

  // Golden section on the bracket around each local grid minimum; at the
  // edge of a piece the bracket extends to the piece's end.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double best = *std::min_element(fs.begin(), fs.end());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const bool has_left = i > 0 && ts[i - 1].lo == ts[i].lo;
    const bool has_right = i + 1 < ts.size() && ts[i + 1].lo == ts[i].lo;
    if ((has_left && fs[i] > fs[i - 1]) || (has_right && fs[i] > fs[i + 1]) || !std::isfinite(fs[i])) continue;
    double a = has_left ? ts[i - 1].t : ts[i].lo;
    double b = has_right ? ts[i + 1].t : ts[i].hi;
    double c = b - phi * (b - a), e = a + phi * (b - a);
    double fc = dist(c), fe = dist(e);
    for (int it = 0; it < options.golden_iterations && b - a > 0.0; ++it) {
      if (fc < fe) {
        b = e;
        e = c;
        fe = fc;
        c = b - phi * (b - a);
        fc = dist(c);
      } else {
        a = c;
        c = e;
        fc = fe;
        e = a + phi * (b - a);
        fe = dist(e);
      }
    }
    best = std::min({best, fc, fe});
  }
  if (!std::isfinite(best)) throw Error(ErrorKind::kEmptyDomain, "curve could not be sampled");
  return best;
}

double curve_deviation_at_parameter(const Signal& signal, const MomentVector& mu) {
  signal.validate();
  const int d = signal.dimension();
  if (static_cast<int>(mu.size()) != 2 * d - 1) {
    throw Error(ErrorKind::kInvalidInput, "curve deviation needs 2d-1 moments");
  }
  const PronyLine line = line_params(mu);
  const double t = line.parameter_of(elementary_symmetric(signal.nodes).sigma);
  const auto s = make_curve_sample<double>(line, t);
  if (!s) return std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (int i = 0; i < d; ++i) {
    const double da = s->amplitudes[i] - signal.amplitudes[i];
    const double dx = s->nodes[i] - signal.nodes[i];
    acc += da * da + dx * dx;
  }
  return std::sqrt(acc);
}

void NoiseConfig::validate() const {
  if (d < 1) throw Error(ErrorKind::kInvalidInput, "d must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error(ErrorKind::kInvalidInput, "epsilon must be positive");
  if (trials < 1) throw Error(ErrorKind::kInvalidInput, "trials must be >= 1");
  if (t_grid < 3) throw Error(ErrorKind::kInvalidInput, "t_grid must be >= 3");
  if (h_grid.empty()) throw Error(ErrorKind::kInvalidInput, "empty h grid");
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    if (!(h_grid[i] > 0.0)) throw Error(ErrorKind::kInvalidInput, "h values must be positive");
    if (i > 0 && !(h_grid[i] < h_grid[i - 1])) {
      throw Error(ErrorKind::kInvalidInput, "h grid must be strictly decreasing");
    }
  }
}

SlopeFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error(ErrorKind::kInvalidInput, "fit needs at least two points");
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

namespace {

struct TrialOutcome {
  bool valid = false;
  double point_error = 0.0;
  double point_error_linf = 0.0;
  double curve_distance = 0.0;
  double matched_deviation = 0.0;
};

TrialOutcome run_trial(const NoiseConfig& cfg, const Signal& truth, const MomentVector& mu_true,
                       const MomentVector& curve_mu, std::size_t h_index, int trial) {
  std::seed_seq seq{static_cast<std::uint64_t>(cfg.seed), static_cast<std::uint64_t>(h_index),
                    static_cast<std::uint64_t>(trial)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> noise(-cfg.epsilon, cfg.epsilon);
  MomentVector mu = mu_true;
  for (auto& v : mu.values) v += noise(rng);

  TrialOutcome out;
  Signal est;
  try {
    est = solve_complete(mu);
    est.validate();
  } catch (const Error&) {
    return out;
  }
  double sq = 0.0, linf = 0.0;
  for (int i = 0; i < cfg.d; ++i) {
    const double da = std::abs(est.amplitudes[i] - truth.amplitudes[i]);
    const double dx = std::abs(est.nodes[i] - truth.nodes[i]);
    sq += da * da + dx * dx;
    linf = std::max({linf, da, dx});
  }
  try {
    out.curve_distance = curve_distance(est, curve_mu, {cfg.t_grid, 120});
    out.matched_deviation = curve_deviation_at_parameter(est, curve_mu);
  } catch (const Error&) {
    return out;
  }
  out.valid = true;
  out.point_error = std::sqrt(sq);
  out.point_error_linf = linf;
  return out;
}

AmplificationResult run_experiment(const NoiseConfig& cfg, bool parallel) {
  cfg.validate();
  AmplificationResult result;
  result.config = cfg;
  for (std::size_t hi = 0; hi < cfg.h_grid.size(); ++hi) {
    const double h = cfg.h_grid[hi];
    const Signal truth = make_cluster_signal(cfg.d, h, cfg.seed);
    const MomentVector mu_true = compute_moments(truth, 2 * cfg.d - 1);
    if (cfg.epsilon > 0.1 * mu_true.max_abs()) {
      throw Error(ErrorKind::kInvalidInput, "epsilon exceeds 0.1 max|mu| at h = " + std::to_string(h));
    }
    const MomentVector curve_mu = mu_true.head(2 * cfg.d - 2);
    std::vector<TrialOutcome> outcomes(cfg.trials);
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (int trial = 0; trial < cfg.trials; ++trial) {
      outcomes[trial] = run_trial(cfg, truth, mu_true, curve_mu, hi, trial);
    }
    AmplificationRow row;
    row.h = h;
    for (const auto& o : outcomes) {
      if (!o.valid) {
        ++row.failed_trials;
        continue;
      }
      ++row.valid_trials;
      row.max_point_error = std::max(row.max_point_error, o.point_error);
      row.max_point_error_linf = std::max(row.max_point_error_linf, o.point_error_linf);
      row.max_curve_distance = std::max(row.max_curve_distance, o.curve_distance);
      row.max_matched_deviation = std::max(row.max_matched_deviation, o.matched_deviation);
      if (o.curve_distance > o.point_error) ++row.distance_exceeds_error;
    }
    if (2 * row.failed_trials > cfg.trials) {
      throw Error(ErrorKind::kTooFewValidTrials, std::to_string(row.failed_trials) + " of " +
                                                      std::to_string(cfg.trials) +
                                                      " trials failed at h = " + std::to_string(h));
    }
    result.rows.push_back(row);
  }
  std::vector<double> hs, pe, cd, md;
  for (const auto& r : result.rows) {
    hs.push_back(r.h);
    pe.push_back(r.max_point_error);
    cd.push_back(r.max_curve_distance);
    md.push_back(r.max_matched_deviation);
  }
  if (hs.size() >= 2) {
    result.point_fit = fit_log_log(hs, pe);
    result.curve_fit = fit_log_log(hs, cd);
    result.matched_fit = fit_log_log(hs, md);
  }
  return result;
}

}  // namespace

AmplificationResult amplification_experiment(const NoiseConfig& cfg) { return run_experiment(cfg, true); }

AmplificationResult amplification_experiment_serial(const NoiseConfig& cfg) { return run_experiment(cfg, false); }

}  // namespace prony
