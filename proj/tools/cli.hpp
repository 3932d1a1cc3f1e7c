#pragma once

// Command implementations behind the `prony` executable. Each command maps
// parsed inputs to a JSON document (or CSV text); run() adds argument
// parsing, file I/O, manifests and exit codes.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prony/closed_forms.hpp"
#include "prony/curve_analysis.hpp"
#include "prony/prony_solver.hpp"
#include "prony/signal_model.hpp"

namespace prony::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

Signal parse_signal(const json& j);
MomentVector parse_moments(const json& j);
NoiseConfig parse_noise_config(const json& j);

json to_json(const Signal& s);
json to_json(const MomentVector& mu);
json to_json(const Classification& c);
json to_json(const CollisionReport& r);
json to_json(const EscapeReport& r);
json to_json(const AmplificationResult& r);
json to_json(const HyperbolicDomain& d);

json cmd_moments(const Signal& s, int q);
json cmd_solve(const MomentVector& mu);
json cmd_classify(const MomentVector& mu);
json cmd_analyze(const MomentVector& mu, const CollisionOptions& options = {});

struct CurveRequest {
  int samples = 200;
  std::optional<double> t_min;
  std::optional<double> t_max;
};

struct CurveOutput {
  std::string samples_csv;    // without manifest line
  std::string companion_csv;  // sigma-space line, plus the parabola for d = 2
  std::size_t rows = 0;
  std::size_t rejected = 0;
  double t_min = 0.0;
  double t_max = 0.0;
};

CurveOutput cmd_curve(const MomentVector& mu, const CurveRequest& request);

// Default plotting range: the bounded hull of A_mu widened by 10% of its
// width on each side, or [-100 s, 100 s] with s = max(1, max|endpoint|).
std::pair<double, double> default_t_range(const HyperbolicDomain& domain);

std::string amplification_csv(const AmplificationResult& r);

// SHA-256 hex digest.
std::string sha256_hex(const std::string& data);

struct RunManifest {
  std::string command;
  std::string input_digest;
  json config;
  std::string version = kVersion;
  std::vector<std::string> outputs;

  json to_json() const;
};

// Writes via a temporary sibling file and rename.
void write_atomic(const std::string& path, const std::string& content);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace prony::cli
