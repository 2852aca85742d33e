#pragma once

#include <cstdint>
#include <random>

#include "hyperholo/forms.hpp"

namespace hyperholo {

using Rng = std::mt19937_64;

/// Uniform point in the cube [-r, r]^dim.
inline Vec random_point(Rng& rng, int dim, double r = 1.0) {
  std::uniform_real_distribution<double> u(-r, r);
  Vec p(dim);
  for (int i = 0; i < dim; ++i) p(i) = u(rng);
  return p;
}

inline double random_uniform(Rng& rng, double a, double b) {
  std::uniform_real_distribution<double> u(a, b);
  return u(rng);
}

}  // namespace hyperholo
