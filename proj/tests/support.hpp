#pragma once

#include <random>

#include "octoroot/numerics.hpp"

namespace octoroot::test {

/// |a - b| / max(|b|, tiny), as a double for easy comparison.
inline double rel_err(const BigComplex& a, const BigComplex& b) {
  const BigReal den = b.abs();
  const BigReal num = (a - b).abs();
  if (den.is_zero()) return num.convert_to<double>();
  return BigReal(num / den).convert_to<double>();
}

inline double abs_err(const BigComplex& a, const BigComplex& b) {
  return (a - b).abs().convert_to<double>();
}

inline BigComplex random_complex(std::mt19937_64& rng, const PrecisionContext& ctx, double lo,
                                 double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  const double re = u(rng);
  const double im = u(rng);
  return {ctx, re, im};
}

}  // namespace octoroot::test
