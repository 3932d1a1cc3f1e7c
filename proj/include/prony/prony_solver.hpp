#pragma once

// The complete Prony system (2d moments) and the error-amplification
// experiment: noisy complete reconstructions of a node cluster of size h
// compared against the curve of the exact first 2d-1 moments.

#include <cstdint>
#include <vector>

#include "prony/signal_model.hpp"

namespace prony {

// Throws kInvalidInput (odd length), kDegenerateHankel, kNoRealSolution.
Signal solve_complete(const MomentVector& mu);

// x_i = (i-1) h / (d-1), a_i = (-1)^{i-1}. The seed is accepted for
// interface stability; the construction is deterministic.
Signal make_cluster_signal(int d, double h, std::uint64_t seed = 0);

struct CurveDistanceOptions {
  int grid_points = 400;
  int golden_iterations = 120;
};

// Euclidean distance in R^{2d} from (A, X) of the signal to the curve of mu
// (2d-1 moments), minimised over a t-grid on A_mu and refined by golden
// section. Throws kDegenerateHankel, kEmptyDomain.
double curve_distance(const Signal& signal, const MomentVector& mu, const CurveDistanceOptions& options = {});

// Distance from (A, X) to the curve point at the line parameter of sigma(X),
// i.e. against the exact curve parametrised by the missing moment. Infinite
// when that parameter falls outside A_mu.
double curve_deviation_at_parameter(const Signal& signal, const MomentVector& mu);

struct NoiseConfig {
  int d = 2;
  double epsilon = 1e-8;
  int trials = 200;
  std::uint64_t seed = 20240917;
  std::vector<double> h_grid{0.4, 0.2, 0.1, 0.05};
  int t_grid = 400;

  // Throws kInvalidInput.
  void validate() const;
};

struct AmplificationRow {
  double h = 0.0;
  double max_point_error = 0.0;       // Euclidean, same metric as the curve distance
  double max_point_error_linf = 0.0;
  double max_curve_distance = 0.0;
  double max_matched_deviation = 0.0;  // curve_deviation_at_parameter
  int failed_trials = 0;              // complete system left P_d
  int valid_trials = 0;
  int distance_exceeds_error = 0;     // trials with curve distance > point error
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

struct AmplificationResult {
  NoiseConfig config;
  std::vector<AmplificationRow> rows;
  SlopeFit point_fit;  // log max point error vs log h
  SlopeFit curve_fit;  // log max curve distance vs log h
  SlopeFit matched_fit;
};

// OLS of log(y) on log(x).
SlopeFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

// Trials run under OpenMP; every trial draws from its own stream seeded by
// (seed, h index, trial index), so the serial variant is bit-identical.
// Throws kTooFewValidTrials when more than half the trials at some h fail.
AmplificationResult amplification_experiment(const NoiseConfig& cfg);
AmplificationResult amplification_experiment_serial(const NoiseConfig& cfg);

}  // namespace prony
