#include "prony/poly.hpp"

#include <cmath>

namespace prony {

SignVariation sign_variation(const Poly& p, double x) {
  if (std::isnan(x)) throw Error(ErrorKind::kInvalidInput, "sign variation at NaN");
  return {x, fourier_variations(derivative_tower(p), x)};
}

int budan_fourier_bound(const Poly& p, double a, double b) {
  if (!(a < b)) throw Error(ErrorKind::kInvalidInput, "Budan-Fourier interval requires a < b");
  // Zeros in the derivative vector are skipped; the bound then holds for
  // (a, b] even when a or b is itself a root, so no endpoint nudging.
  const auto tower = derivative_tower(p);
  return fourier_variations(tower, a) - fourier_variations(tower, b);
}

int sturm_count(const Poly& p, double a, double b) {
  if (!(a < b)) throw Error(ErrorKind::kInvalidInput, "Sturm interval requires a < b");
  return SturmSequence(p).count(a, b);
}

}  // namespace prony
