// Shared fixtures for the test suite: common states and seeded generators.

#pragma once

#include <cmath>
#include <cstdint>

#include "gesforge/linalg.hpp"

namespace gesforge::testing {

inline PureState bell_state() {
  Vector v(4);
  v << 1, 0, 0, 1;
  return PureState(v / std::sqrt(2.0), DimProfile({2, 2}));
}

inline PureState singlet_state() {
  Vector v(4);
  v << 0, 1, -1, 0;
  return PureState(v / std::sqrt(2.0), DimProfile({2, 2}));
}

inline PureState ghz_state() {
  Vector v = Vector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return PureState(v, DimProfile({2, 2, 2}));
}

inline PureState random_pure(const DimProfile& profile, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return PureState::normalized(gaussian_vector(profile.total_dim(), rng), profile);
}

inline DensityOperator random_density(const DimProfile& profile, int rank, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const Matrix c = gaussian_matrix(profile.total_dim(), rank, rng);
  Matrix m = c * c.adjoint();
  m /= m.trace().real();
  return DensityOperator(std::move(m), profile);
}

// Resamples until the second Schmidt coefficient across {0}|{1} is sizable.
inline PureState random_entangled_bipartite(const DimProfile& profile, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    PureState psi = random_pure(profile, derived_seed(seed, attempt));
    const SchmidtDecomposition sd = schmidt(psi, Bipartition({0}, 2));
    if (sd.coefficients.size() >= 2 && sd.coefficients(1) > 1e-3) return psi;
  }
}

}  // namespace gesforge::testing
