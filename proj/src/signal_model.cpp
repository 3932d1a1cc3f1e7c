#include "prony/signal_model.hpp"

#include <cmath>
#include <string>

namespace prony {

void Signal::validate() const {
  if (nodes.empty()) throw Error(ErrorKind::kInvalidInput, "signal must have d >= 1 spikes");
  if (amplitudes.size() != nodes.size()) {
    throw Error(ErrorKind::kInvalidInput, "amplitudes and nodes differ in length (" +
                                              std::to_string(amplitudes.size()) + " vs " +
                                              std::to_string(nodes.size()) + ")");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i]) || !std::isfinite(amplitudes[i])) {
      throw Error(ErrorKind::kInvalidInput, "non-finite signal entry");
    }
    if (amplitudes[i] == 0.0) throw Error(ErrorKind::kInvalidInput, "zero amplitude");
    if (i > 0 && !(nodes[i - 1] < nodes[i])) {
      throw Error(ErrorKind::kInvalidInput, "nodes must be strictly increasing");
    }
  }
}

void MomentVector::validate() const {
  if (values.empty()) throw Error(ErrorKind::kInvalidInput, "empty moment vector");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kInvalidInput, "non-finite moment");
  }
}

MomentVector MomentVector::head(int q) const {
  if (q < 0 || q > order()) throw Error(ErrorKind::kInvalidInput, "moment head out of range");
  return {std::vector<double>(values.begin(), values.begin() + q + 1)};
}

double MomentVector::max_abs() const { return prony::max_abs(values); }

bool SymmetricCoords::hyperbolic() const { return is_hyperbolic(sigma); }

bool is_hyperbolic(const SymmetricCoords& sigma) { return is_hyperbolic(sigma.sigma); }

MomentVector compute_moments(const Signal& signal, int q) {
  signal.validate();
  if (q < 0) throw Error(ErrorKind::kInvalidInput, "moment order must be >= 0");
  std::vector<double> mu(q + 1, 0.0);
  std::vector<double> power(signal.nodes.size(), 1.0);
  for (int k = 0; k <= q; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < signal.nodes.size(); ++i) {
      sum += signal.amplitudes[i] * power[i];
      power[i] *= signal.nodes[i];
    }
    mu[k] = sum;
  }
  return {std::move(mu)};
}

SymmetricCoords elementary_symmetric(std::span<const double> nodes) {
  return {signed_elementary_symmetric(std::vector<double>(nodes.begin(), nodes.end()))};
}

std::vector<double> vieta_inverse(const SymmetricCoords& sigma) {
  if (sigma.sigma.empty()) throw Error(ErrorKind::kInvalidInput, "empty sigma");
  return vieta_inverse_values(sigma.sigma);
}

std::vector<double> amplitudes_from_nodes(const MomentVector& mu, std::span<const double> nodes) {
  const std::size_t d = nodes.size();
  if (d == 0) throw Error(ErrorKind::kInvalidInput, "no nodes");
  if (mu.size() < d) throw Error(ErrorKind::kInvalidInput, "need at least d moments");
  for (std::size_t i = 1; i < d; ++i) {
    if (nodes[i - 1] == nodes[i]) throw Error(ErrorKind::kRepeatedNodes, "coinciding nodes");
  }
  return amplitudes_from_node_values(std::vector<double>(mu.values.begin(), mu.values.begin() + d),
                                     std::vector<double>(nodes.begin(), nodes.end()));
}

}  // namespace prony
