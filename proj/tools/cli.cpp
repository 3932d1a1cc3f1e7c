#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace prony::cli {

namespace {

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::kInvalidInput, std::string(what) + " must be an array");
  std::vector<double> v;
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(ErrorKind::kInvalidInput, std::string(what) + " must hold numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

std::string csv_number(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidInput, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_text(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kInvalidInput, path + ": " + e.what());
  }
}

}  // namespace

Signal parse_signal(const json& j) {
  if (!j.is_object() || !j.contains("amplitudes") || !j.contains("nodes")) {
    throw Error(ErrorKind::kInvalidInput, "signal needs \"amplitudes\" and \"nodes\"");
  }
  Signal s{number_array(j["amplitudes"], "amplitudes"), number_array(j["nodes"], "nodes")};
  s.validate();
  return s;
}

MomentVector parse_moments(const json& j) {
  MomentVector mu;
  if (j.is_array()) {
    mu.values = number_array(j, "moments");
  } else if (j.is_object() && j.contains("moments")) {
    mu.values = number_array(j["moments"], "moments");
  } else {
    throw Error(ErrorKind::kInvalidInput, "moments must be an array or {\"moments\": [...]}");
  }
  mu.validate();
  return mu;
}

NoiseConfig parse_noise_config(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::kInvalidInput, "config must be an object");
  NoiseConfig cfg;
  try {
    if (j.contains("d")) cfg.d = j["d"].get<int>();
    if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("h_grid")) cfg.h_grid = number_array(j["h_grid"], "h_grid");
    if (j.contains("t_grid")) cfg.t_grid = j["t_grid"].get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidInput, std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json to_json(const Signal& s) { return {{"amplitudes", nums(s.amplitudes)}, {"nodes", nums(s.nodes)}}; }

json to_json(const MomentVector& mu) { return {{"moments", nums(mu.values)}}; }

json to_json(const HyperbolicDomain& d) {
  json iv = json::array();
  for (const auto& i : d.intervals) iv.push_back({num(i.lo), num(i.hi)});
  json ep = json::array();
  for (const auto& e : d.endpoints) {
    ep.push_back({{"t", num(e.t)}, {"kind", e.kind == EndpointKind::kBoundary ? "boundary" : "puncture"}});
  }
  return {{"intervals", iv}, {"endpoints", ep}, {"empty", d.empty()}, {"bounded", !d.empty() && d.bounded()}};
}

json to_json(const Classification& c) {
  json j = {{"d", c.d},
            {"collision", std::string(to_string(c.collision))},
            {"bounded", std::string(to_string(c.bounded))},
            {"detM", num(c.det_m)}};
  json ev = json::object();
  if (c.quartic) {
    const auto& q = *c.quartic;
    ev["quartic"] = {{"P8", q[0]}, {"P9", q[1]}, {"P10", q[2]}, {"P11", q[3]}, {"P12", q[4]}};
    ev["quartic_real_roots"] = nums(c.quartic_roots);
  }
  if (c.p8) ev["P8"] = num(*c.p8);
  if (c.k) ev["K"] = num(*c.k);
  if (c.d == 3) {
    ev["mu0_nonzero"] = c.mu0_nonzero;
    ev["leading_minor_nonzero"] = c.leading_minor_nonzero;
  }
  json numeric = {{"available", c.numeric.available}};
  if (c.numeric.available) {
    numeric["intervals"] = c.numeric.intervals;
    numeric["bounded"] = c.numeric.bounded;
    numeric["has_unbounded_interval"] = c.numeric.has_unbounded;
    numeric["finite_endpoints"] = nums(c.numeric.finite_endpoints);
  }
  ev["numeric"] = numeric;
  j["evidence"] = ev;
  return j;
}

json to_json(const CollisionReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes) {
    probes.push_back({{"t", num(p.t)},
                      {"offset", num(p.offset)},
                      {"gap", num(p.gap)},
                      {"abs_a_i", num(p.amplitude_left)},
                      {"abs_a_i1", num(p.amplitude_right)},
                      {"product_residual", num(p.product_residual)},
                      {"residual", num(p.residual)},
                      {"extension", p.extension}});
  }
  json pairs = json::array();
  for (int i : r.colliding_pairs) pairs.push_back({i + 1, i + 2});
  return {{"t0", num(r.t0)},
          {"kind", r.kind == EndpointKind::kBoundary ? "boundary" : "puncture"},
          {"side", r.side},
          {"pair", {r.pair + 1, r.pair + 2}},
          {"colliding_pairs", pairs},
          {"probes", probes},
          {"limit_nodes", nums(r.limit_nodes)},
          {"numerator", num(r.numerator)},
          {"numerator_scale", num(r.numerator_scale)},
          {"gap_decreasing", r.gap_decreasing},
          {"amplitudes_increasing", r.amplitudes_increasing},
          {"threshold_exceeded", r.threshold_exceeded},
          {"blow_up_confirmed", r.blow_up_confirmed}};
}

json to_json(const EscapeReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes) probes.push_back({{"t", num(p.t)}, {"nodes", nums(p.nodes)}});
  json behavior = json::array();
  for (auto b : r.behavior) behavior.push_back(std::string(to_string(b)));
  json escaping = json::array();
  for (std::size_t k = 0; k < r.escaping.size(); ++k) {
    escaping.push_back({{"index", r.escaping[k] + 1}, {"towards", r.escape_signs[k] > 0 ? "+inf" : "-inf"}});
  }
  json j = {{"direction", std::string(to_string(r.direction))},
            {"hypothesis_met", r.hypothesis_met},
            {"behavior", behavior},
            {"escaping", escaping},
            {"bounded_limits", nums(r.bounded_limits)},
            {"probes", probes},
            {"verdict", std::string(to_string(r.verdict))}};
  if (r.escaping.size() == 1) j["escaping_index"] = r.escaping[0] + 1;
  return j;
}

json to_json(const AmplificationResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"h", row.h},
                    {"max_point_err", num(row.max_point_error)},
                    {"max_point_err_linf", num(row.max_point_error_linf)},
                    {"max_curve_dist", num(row.max_curve_distance)},
                    {"max_matched_dev", num(row.max_matched_deviation)},
                    {"n_failed_trials", row.failed_trials},
                    {"n_valid_trials", row.valid_trials},
                    {"n_dist_exceeds_err", row.distance_exceeds_error}});
  }
  auto fit = [](const SlopeFit& f) {
    return json{{"slope", num(f.slope)}, {"intercept", num(f.intercept)}, {"r_squared", num(f.r_squared)}};
  };
  const NoiseConfig& c = r.config;
  return {{"config",
           {{"d", c.d}, {"epsilon", c.epsilon}, {"trials", c.trials}, {"seed", c.seed}, {"h_grid", c.h_grid},
            {"t_grid", c.t_grid}}},
          {"rows", rows},
          {"point_fit", fit(r.point_fit)},
          {"curve_fit", fit(r.curve_fit)},
          {"matched_fit", fit(r.matched_fit)}};
}

json cmd_moments(const Signal& s, int q) { return to_json(compute_moments(s, q)); }

json cmd_solve(const MomentVector& mu) { return to_json(solve_complete(mu)); }

json cmd_classify(const MomentVector& mu) {
  if (mu.size() == 3) return to_json(classify_d2(mu));
  if (mu.size() == 5) return to_json(classify_d3(mu));
  throw Error(ErrorKind::kInvalidInput, "classify needs 3 (d = 2) or 5 (d = 3) moments");
}

json cmd_analyze(const MomentVector& mu, const CollisionOptions& options) {
  if (mu.size() % 2 == 0) throw Error(ErrorKind::kInvalidInput, "analyze needs 2d-1 moments");
  const PronyLine line = line_params(mu);
  const HyperbolicDomain domain = hyperbolic_domain(line);
  json collisions = json::array();
  for (const auto& r : detect_collisions(mu, options)) collisions.push_back(to_json(r));
  json escapes = json::object();
  for (Direction dir : {Direction::kPositive, Direction::kNegative}) {
    const bool present = dir == Direction::kPositive ? domain.has_unbounded_above() : domain.has_unbounded_below();
    if (present) escapes[std::string(to_string(dir))] = to_json(escape_analysis(mu, dir));
  }
  return {{"d", line.d},
          {"detM", num(line.det_m)},
          {"domain", to_json(domain)},
          {"collisions", collisions},
          {"escapes", escapes}};
}

std::pair<double, double> default_t_range(const HyperbolicDomain& domain) {
  double s = 1.0;
  for (const auto& e : domain.endpoints) s = std::max(s, std::abs(e.t));
  if (domain.empty() || !domain.bounded()) return {-100.0 * s, 100.0 * s};
  const double lo = domain.intervals.front().lo;
  const double hi = domain.intervals.back().hi;
  const double pad = 0.1 * (hi - lo);
  return {lo - pad, hi + pad};
}

CurveOutput cmd_curve(const MomentVector& mu, const CurveRequest& request) {
  if (mu.size() % 2 == 0) throw Error(ErrorKind::kInvalidInput, "curve needs 2d-1 moments");
  if (request.samples < 1) throw Error(ErrorKind::kInvalidInput, "--samples must be >= 1");
  const PronyLine line = line_params(mu);
  const HyperbolicDomain domain = hyperbolic_domain(line);
  auto [lo, hi] = default_t_range(domain);
  if (request.t_min) lo = *request.t_min;
  if (request.t_max) hi = *request.t_max;
  if (!(lo <= hi)) throw Error(ErrorKind::kInvalidInput, "--t-min must not exceed --t-max");

  std::vector<double> grid(request.samples);
  for (int i = 0; i < request.samples; ++i) {
    grid[i] = request.samples == 1 ? lo : lo + (hi - lo) * i / (request.samples - 1);
  }
  if (request.samples > 1) grid.back() = hi;
  // Only parameters inside A_mu become rows.
  std::vector<double> inside;
  for (double t : grid) {
    if (domain.contains(t)) inside.push_back(t);
  }
  const CurveSampling sampling = sample_curve(mu, inside);
  const int d = line.d;

  CurveOutput out;
  out.t_min = lo;
  out.t_max = hi;
  out.rows = sampling.samples.size();
  out.rejected = grid.size() - sampling.samples.size();
  std::ostringstream os;
  os << "t";
  for (int k = 1; k <= d; ++k) os << ",sigma_" << k;
  for (int k = 1; k <= d; ++k) os << ",x_" << k;
  for (int k = 1; k <= d; ++k) os << ",a_" << k;
  os << ",residual,product_residual\n";
  for (const auto& s : sampling.samples) {
    os << csv_number(s.t);
    for (double v : s.sigma) os << ',' << csv_number(v);
    for (double v : s.nodes) os << ',' << csv_number(v);
    for (double v : s.amplitudes) os << ',' << csv_number(v);
    os << ',' << csv_number(s.residual) << ',' << csv_number(s.product_residual) << '\n';
  }
  out.samples_csv = os.str();

  std::ostringstream cs;
  cs << "kind,param";
  for (int k = 1; k <= d; ++k) cs << ",sigma_" << k;
  cs << '\n';
  double s1_lo = INFINITY, s1_hi = -INFINITY;
  for (double t : grid) {
    const std::vector<double> s = line.sigma_at(t);
    cs << "line," << csv_number(t);
    for (double v : s) cs << ',' << csv_number(v);
    cs << '\n';
    s1_lo = std::min(s1_lo, s[0]);
    s1_hi = std::max(s1_hi, s[0]);
  }
  if (d == 2) {
    // Discriminant zero set sigma_2 = sigma_1^2 / 4 over the line's sigma_1 span.
    if (!(s1_hi - s1_lo > 1e-12)) {
      s1_lo -= 10.0;
      s1_hi += 10.0;
    }
    const int n = std::max(request.samples, 2);
    for (int i = 0; i < n; ++i) {
      const double s1 = s1_lo + (s1_hi - s1_lo) * i / (n - 1);
      cs << "parabola," << csv_number(s1) << ',' << csv_number(s1) << ',' << csv_number(0.25 * s1 * s1) << '\n';
    }
  }
  out.companion_csv = cs.str();
  return out;
}

std::string amplification_csv(const AmplificationResult& r) {
  std::ostringstream os;
  os << "h,max_point_err,max_curve_dist,n_failed_trials,max_point_err_linf,max_matched_dev,n_valid_trials\n";
  for (const auto& row : r.rows) {
    os << csv_number(row.h) << ',' << csv_number(row.max_point_error) << ',' << csv_number(row.max_curve_distance)
       << ',' << row.failed_trials << ',' << csv_number(row.max_point_error_linf) << ','
       << csv_number(row.max_matched_deviation) << ',' << row.valid_trials << '\n';
  }
  return os.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

json RunManifest::to_json() const {
  json j = {{"command", command},
            {"input_digest", input_digest},
            {"config", config},
            {"version", version},
            {"outputs", outputs}};
  j["digest"] = sha256_hex(j.dump());
  return j;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kInvalidInput, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorKind::kInvalidInput, "write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

namespace {

struct Emitter {
  std::ostream& out;
  std::optional<std::string> path;

  void emit(const std::string& text) const {
    if (path) {
      write_atomic(*path, text);
    } else {
      out << text;
    }
  }
};

std::string with_manifest(json body, const json& manifest) {
  body["manifest"] = manifest;
  return body.dump(2) + "\n";
}

std::string csv_with_manifest(const std::string& csv, const json& manifest) {
  return "# manifest " + manifest["digest"].get<std::string>() + " command=" +
         manifest["command"].get<std::string>() + " version=" + manifest["version"].get<std::string>() + "\n" + csv;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prony systems: moments, complete solves, curves and their structure"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string input, out_path, aux_path;
  int q = 0;
  CurveRequest curve_req;
  double t_min = 0.0, t_max = 0.0;
  double threshold = 1e6;

  auto* moments = app.add_subcommand("moments", "power moments of a signal");
  moments->add_option("signal", input, "signal JSON")->required();
  moments->add_option("-q,--order", q, "highest moment order")->required()->check(CLI::NonNegativeNumber);
  moments->add_option("-o,--out", out_path, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "solve the complete system from 2d moments");
  solve->add_option("moments", input, "moments JSON")->required();
  solve->add_option("-o,--out", out_path, "output file");

  auto* curve = app.add_subcommand("curve", "sample the curve of 2d-1 moments to CSV");
  curve->add_option("moments", input, "moments JSON")->required();
  curve->add_option("-n,--samples", curve_req.samples, "grid points")->check(CLI::PositiveNumber);
  auto* tmin_opt = curve->add_option("--t-min", t_min, "first parameter");
  auto* tmax_opt = curve->add_option("--t-max", t_max, "last parameter");
  curve->add_option("-o,--out", out_path, "samples CSV (default stdout)");
  curve->add_option("--line-out", aux_path, "sigma-space companion CSV (default <out>.line.csv)");

  auto* classify = app.add_subcommand("classify", "collision / boundedness verdicts for d = 2, 3");
  classify->add_option("moments", input, "moments JSON")->required();
  classify->add_option("-o,--out", out_path, "output file");

  auto* analyze = app.add_subcommand("analyze", "collision and escape certificates");
  analyze->add_option("moments", input, "moments JSON")->required();
  analyze->add_option("--threshold", threshold, "amplitude blow-up threshold")->check(CLI::PositiveNumber);
  analyze->add_option("-o,--out", out_path, "output file");

  auto* amplify = app.add_subcommand("amplify", "error amplification experiment");
  amplify->add_option("config", input, "noise config JSON")->required();
  amplify->add_option("-o,--out", out_path, "result JSON (default stdout)");
  amplify->add_option("--csv", aux_path, "result CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string text = read_file(input);
    const json doc = parse_text(text, input);
    RunManifest manifest;
    manifest.input_digest = sha256_hex(text);
    const Emitter emitter{out, out_path.empty() ? std::nullopt : std::optional<std::string>(out_path)};
    if (!out_path.empty()) manifest.outputs.push_back(out_path);

    if (*moments) {
      manifest.command = "moments";
      manifest.config = {{"q", q}};
      emitter.emit(with_manifest(cmd_moments(parse_signal(doc), q), manifest.to_json()));
    } else if (*solve) {
      manifest.command = "solve";
      manifest.config = json::object();
      emitter.emit(with_manifest(cmd_solve(parse_moments(doc)), manifest.to_json()));
    } else if (*classify) {
      manifest.command = "classify";
      manifest.config = json::object();
      emitter.emit(with_manifest(cmd_classify(parse_moments(doc)), manifest.to_json()));
    } else if (*analyze) {
      manifest.command = "analyze";
      manifest.config = {{"threshold", threshold}};
      CollisionOptions opts;
      opts.blow_up_threshold = threshold;
      emitter.emit(with_manifest(cmd_analyze(parse_moments(doc), opts), manifest.to_json()));
    } else if (*curve) {
      manifest.command = "curve";
      if (tmin_opt->count() > 0) curve_req.t_min = t_min;
      if (tmax_opt->count() > 0) curve_req.t_max = t_max;
      const CurveOutput res = cmd_curve(parse_moments(doc), curve_req);
      manifest.config = {{"samples", curve_req.samples}, {"t_min", res.t_min}, {"t_max", res.t_max}};
      std::string line_path = aux_path;
      if (line_path.empty() && !out_path.empty()) line_path = out_path + ".line.csv";
      if (!line_path.empty()) manifest.outputs.push_back(line_path);
      const json m = manifest.to_json();
      emitter.emit(csv_with_manifest(res.samples_csv, m));
      if (!line_path.empty()) write_atomic(line_path, csv_with_manifest(res.companion_csv, m));
      if (res.rows == 0) {
        err << "warning: no requested parameter lies in A_mu; curve output is empty\n";
      } else if (res.rejected > 0) {
        err << "note: " << res.rejected << " grid points outside A_mu were skipped\n";
      }
    } else if (*amplify) {
      manifest.command = "amplify";
      NoiseConfig cfg = parse_noise_config(doc);
      if (const char* env = std::getenv("PRONY_SEED")) {
        try {
          cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
          throw Error(ErrorKind::kInvalidInput, "PRONY_SEED must be an unsigned integer");
        }
      }
      const AmplificationResult res = amplification_experiment(cfg);
      json body = to_json(res);
      manifest.config = body["config"];
      if (!aux_path.empty()) manifest.outputs.push_back(aux_path);
      const json m = manifest.to_json();
      emitter.emit(with_manifest(body, m));
      if (!aux_path.empty()) write_atomic(aux_path, csv_with_manifest(amplification_csv(res), m));
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace prony::cli
