#pragma once

// Explicit answers for d = 2 and d = 3: does a node collision occur on the
// curve, and is its node projection bounded.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "prony/poly.hpp"
#include "prony/prony_line.hpp"
#include "prony/signal_model.hpp"

namespace prony {

enum class Verdict { kYes, kNo, kIndeterminate };

std::string_view to_string(Verdict v);

// What the numerically computed A_mu says, attached to every classification.
struct DomainEvidence {
  bool available = false;
  int intervals = 0;
  bool bounded = false;           // every interval bounded (and at least one exists)
  bool has_unbounded = false;
  std::vector<double> finite_endpoints;
};

struct Classification {
  int d = 0;
  Verdict collision = Verdict::kIndeterminate;
  Verdict bounded = Verdict::kIndeterminate;
  double det_m = 0.0;
  // d = 3 only.
  std::optional<std::array<double, 5>> quartic;  // P8, P9, P10, P11, P12
  std::optional<double> p8;
  std::optional<double> k;
  bool mu0_nonzero = false;
  bool leading_minor_nonzero = false;  // det [[mu0, mu1], [mu1, mu2]] != 0
  std::vector<double> quartic_roots;
  DomainEvidence numeric;
};

struct ClassifyOptions {
  // Half-width of the abstention zone around zero for det M, P8 and K,
  // relative to the natural scale of each quantity.
  double zone = 1e-6;
};

// Throws kDegenerateHankel, kInvalidInput (wrong length).
Classification classify_d2(const MomentVector& mu, const ClassifyOptions& options = {});
Classification classify_d3(const MomentVector& mu, const ClassifyOptions& options = {});

// 27 s3^2 + 4 s2^3 - s1^2 s2^2 + 4 s1^3 s3 - 18 s1 s2 s3: negative exactly
// when z^3 + s1 z^2 + s2 z + s3 has three distinct real roots.
template <class T>
T cubic_discriminant_negated(const T& s1, const T& s2, const T& s3) {
  return T(27) * s3 * s3 + T(4) * s2 * s2 * s2 - s1 * s1 * s2 * s2 + T(4) * s1 * s1 * s1 * s3 -
         T(18) * s1 * s2 * s3;
}

double discriminant_cubic_paper(const std::array<double, 3>& sigma);

// Sum of term magnitudes of discriminant_cubic_paper.
double discriminant_cubic_paper_scale(const std::array<double, 3>& sigma);

// P_mu(t) = (det M)^4 * discriminant_cubic_paper(sigma(t)) along the line,
// ascending coefficients (P12, P11, P10, P9, P8). Throws kDegenerateHankel,
// kInterpolationInconsistency.
Poly quartic_Pmu(const MomentVector& mu);
BasicPoly<Quad> quartic_Pmu_quad(const MomentVector& mu);

// Real roots of P_mu, isolated and refined in quad precision.
std::vector<double> quartic_real_roots(const MomentVector& mu);

// 4 m33^3 m31 - m33^2 m32^2 with m33 = det[[mu0,mu1],[mu1,mu2]],
// m31 = det[[mu1,mu2],[mu2,mu3]], m32 = det[[mu0,mu2],[mu1,mu3]].
double P8_closed_form(const MomentVector& mu);
// Same expression with every 2x2 determinant replaced by |ad| + |bc|.
double P8_scale(const MomentVector& mu);

// -(mu0^4 / 27) m33^2 K(mu); requires mu0 != 0.
double P8_via_K(const MomentVector& mu);

// discriminant_cubic_paper(3 mu1/mu0, 3 mu2/mu0, mu3/mu0); requires mu0 != 0.
double K_value(const MomentVector& mu);
double K_scale(const MomentVector& mu);

}  // namespace prony
