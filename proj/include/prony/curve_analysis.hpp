#pragma once

// Sampling the Prony curve in full (amplitude, node) coordinates and the
// numerical certificates for its two structural properties: amplitudes of
// colliding nodes blow up, and at most one node escapes to infinity along an
// unbounded component.

#include <optional>
#include <span>
#include <vector>

#include "prony/prony_line.hpp"
#include "prony/signal_model.hpp"

namespace prony {

template <class T>
struct BasicCurveSample {
  T t;
  std::vector<T> sigma;
  std::vector<T> nodes;       // strictly increasing
  std::vector<T> amplitudes;
  T residual;                 // max_k |sum_i a_i x_i^k - mu_k|, k = 0..2d-2
  T product_residual;         // relative defect of |prod a_i| (det V)^2 = |det M|
};

using CurveSample = BasicCurveSample<double>;

// sigma(t) -> Vieta inverse -> Vandermonde-inverse amplitudes, with residual
// diagnostics. Empty when t is outside A_mu at working precision.
template <class T>
std::optional<BasicCurveSample<T>> make_curve_sample(const BasicPronyLine<T>& line, const T& t) {
  BasicCurveSample<T> s;
  s.t = t;
  s.sigma = line.sigma_at(t);
  try {
    s.nodes = vieta_inverse_values(s.sigma);
    s.amplitudes = amplitudes_from_node_values(line.source, s.nodes);
  } catch (const Error&) {
    return std::nullopt;
  }
  const int d = line.d;
  s.residual = T(0);
  std::vector<T> power(d, T(1));
  for (int k = 0; k <= 2 * d - 2; ++k) {
    T m(0);
    for (int i = 0; i < d; ++i) {
      m += s.amplitudes[i] * power[i];
      power[i] *= s.nodes[i];
    }
    s.residual = std::max(s.residual, abs_value(m - line.source[k]));
  }
  T prod(1), vdet(1);
  for (int i = 0; i < d; ++i) {
    prod *= s.amplitudes[i];
    for (int j = i + 1; j < d; ++j) vdet *= s.nodes[j] - s.nodes[i];
  }
  s.product_residual = abs_value(abs_value(prod) * vdet * vdet - abs_value(line.det_m)) / abs_value(line.det_m);
  return s;
}

struct CurveSampling {
  std::vector<CurveSample> samples;
  std::vector<double> rejected;  // grid points outside A_mu
};

// OpenMP over grid points; identical output to sample_curve_serial.
CurveSampling sample_curve(const MomentVector& mu, std::span<const double> grid);
CurveSampling sample_curve_serial(const MomentVector& mu, std::span<const double> grid);

// P(X*) = mu_0 rho_{d-1}(X*) + mu_1 rho_{d-2}(X*) + ... + mu_{d-2} rho_1(X*) + mu_{d-1},
// the numerator of the amplitude of a node that merges into X*.
double collision_numerator(const MomentVector& mu, std::span<const double> xstar);

// Sum of the magnitudes of the terms of collision_numerator.
double collision_numerator_scale(const MomentVector& mu, std::span<const double> xstar);

struct CollisionOptions {
  double blow_up_threshold = 1e6;
  // Certificate probes at t0 +- 10^{-k} scale, k = first_decade..last_decade.
  int first_decade = 2;
  int last_decade = 8;
  // Further decades, evaluated in quad precision, continue until the
  // colliding amplitudes cross blow_up_threshold.
  int max_decade = 26;
};

struct CollisionProbe {
  double offset;  // |t - t0|
  double t;
  double gap;     // x_{i+1} - x_i for the colliding pair
  double amplitude_left;
  double amplitude_right;
  double product_residual;
  double residual;
  bool extension;  // beyond the certificate decades
};

struct CollisionReport {
  double t0 = 0.0;
  EndpointKind kind = EndpointKind::kBoundary;
  int side = +1;  // probes at t0 + side * offset
  int pair = 0;   // 0-based: nodes pair and pair+1 collide
  std::vector<int> colliding_pairs;
  std::vector<CollisionProbe> probes;
  std::vector<double> limit_nodes;  // X*, the d-1 limit nodes
  double numerator = 0.0;
  double numerator_scale = 0.0;
  bool gap_decreasing = false;
  bool amplitudes_increasing = false;  // strictly, over the last four probes
  bool threshold_exceeded = false;
  bool blow_up_confirmed = false;
};

// One report per finite endpoint of A_mu. Throws kDegenerateHankel.
std::vector<CollisionReport> detect_collisions(const MomentVector& mu, const CollisionOptions& options = {});

enum class Direction { kPositive, kNegative };

enum class NodeBehavior { kEscaping, kBounded, kAmbiguous };

enum class EscapeVerdict {
  kConfirmed,         // hypothesis holds and exactly one node escapes
  kHypothesisNotMet,  // top-left minor vanishes; informational only
  kAmbiguous,         // some node matched neither pattern
  kViolated,          // hypothesis holds but the escape count is not one
};

struct EscapeOptions {
  int first_decade = 1;
  int last_decade = 8;
  double growth_ratio = 1.5;   // per-decade growth of an escaping node
  double cauchy_tolerance = 1e-4;
  double hypothesis_tolerance = 1e-12;
};

struct EscapeProbe {
  double t;
  std::vector<double> nodes;
};

struct EscapeReport {
  Direction direction = Direction::kPositive;
  bool hypothesis_met = false;  // M_{d,d} != 0, i.e. sigma_1 has nonzero slope
  std::vector<NodeBehavior> behavior;
  std::vector<int> escaping;       // 0-based node indices
  std::vector<int> escape_signs;   // +1 / -1: the side each escaping node runs to
  std::vector<double> bounded_limits;  // last probe value of every bounded node
  std::vector<EscapeProbe> probes;
  EscapeVerdict verdict = EscapeVerdict::kAmbiguous;
};

// Throws kNoUnboundedComponent, kDegenerateHankel.
EscapeReport escape_analysis(const MomentVector& mu, Direction direction, const EscapeOptions& options = {});

std::string_view to_string(Direction d);
std::string_view to_string(NodeBehavior b);
std::string_view to_string(EscapeVerdict v);

}  // namespace prony
