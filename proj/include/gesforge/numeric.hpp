// numeric.hpp — tolerance policy, error types, deterministic sampling

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gesforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Malformed input: bad shapes, invalid indices, unparsable data.
class argument_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical hypothesis of an operation fails on the given data.
class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation would exceed a configured resource limit.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Central tolerance record. Operations read from numeric_policy() instead of
// hard-coding constants.
struct NumericPolicy {
  double unit_norm = 1e-12;            // pure-state norm deviation
  double hermiticity = 1e-12;          // operator Hermiticity / trace deviation
  double psd_floor = 1e-10;            // density operators: min eigenvalue >= -floor
  double rank_cut = 1e-10;             // orthonormalization + Schmidt truncation
  double eig_residual = 1e-9;          // eigensolver acceptance, relative to ‖M‖
  double hermitian_input = 1e-10;      // non-Hermiticity accepted by the solver
  double basis_orthonormality = 1e-10; // subspace basis: ‖B†B − I‖_max
  double summand_orthogonality = 1e-8; // pairwise-orthogonality checks
  double projector_idempotence = 1e-8; // accepted ‖P² − P‖_max for projector inputs
  double subspace_equality = 1e-9;     // projector distance for subspace equality
  double ces_threshold = 1e-6;         // subspace measure above which a CES is certified
  double certification_margin = 1e-12; // strict-inequality slack for boundary conditions
  double npt_margin = 1e-9;            // PT eigenvalue below -margin counts as NPT
  double distill_negativity = 1e-10;   // witness value below -this certifies
  double witness_rank_tol = 1e-9;      // third Schmidt coefficient allowed in a rank-2 witness
  double support_tol = 1e-8;           // Tr(rho P) >= 1 - tol counts as supported
  Index ambient_cap = 4096;            // tensor/kron result-dimension limit
};

inline NumericPolicy& numeric_policy() {
  static NumericPolicy policy;
  return policy;
}

// splitmix64: tiny, full-period, identical output on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [lo, hi]
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
  }

  // standard normal via Box-Muller
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(t);
    have_cached_ = true;
    return r * std::cos(t);
  }

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

// Independent stream seed for restart/sample `index` under a root seed.
inline std::uint64_t derived_seed(std::uint64_t root, std::uint64_t index) {
  SplitMix64 mix(root ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  return mix.next();
}

inline Vector gaussian_vector(Index dim, SplitMix64& rng) {
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
  return v;
}

inline Vector random_unit_vector(Index dim, SplitMix64& rng) {
  Vector v = gaussian_vector(dim, rng);
  return v / v.norm();
}

inline Matrix gaussian_matrix(Index rows, Index cols, SplitMix64& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return m;
}

// Haar-like unitary from the QR of a Gaussian matrix.
inline Matrix random_unitary(Index dim, SplitMix64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(dim, dim, rng));
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    q.col(i) *= (a > 0) ? d / a : Complex(1, 0);
  }
  return q;
}

}  // namespace gesforge
