// channel.hpp — quantum channels from isometries: the subspace-channel
// correspondence and the maximal output norm ν∞.

#pragma once

#include <utility>

#include "gesforge/measures.hpp"

namespace gesforge {

enum class OutputFactor { first, second };

// Channel Φ(ρ) = Tr_traced(V ρ V†) for an isometry V: C^{d_in} → C^{d_b} ⊗ C^{d_c}.
// `keep` selects which output factor the channel retains; tracing the kept
// factor instead gives the complementary channel.
struct IsometryChannel {
  Matrix isometry;  // (d_b * d_c) x d_in, orthonormal columns
  int d_b;
  int d_c;
  OutputFactor keep;

  Index input_dim() const { return isometry.cols(); }

  IsometryChannel(Matrix v, int b, int c, OutputFactor kept)
      : isometry(std::move(v)), d_b(b), d_c(c), keep(kept) {
    if (isometry.rows() != static_cast<Index>(d_b) * d_c)
      throw argument_error("IsometryChannel: matrix rows do not match output dimensions");
    const Matrix gram = isometry.adjoint() * isometry;
    if ((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() >
        numeric_policy().basis_orthonormality)
      throw argument_error("IsometryChannel: columns are not orthonormal");
  }
};

// The channel whose Stinespring isometry has the given bipartite subspace as
// its range; input dimension equals dim(w).
inline IsometryChannel channel_from_subspace(const Subspace& w,
                                             OutputFactor keep = OutputFactor::first) {
  if (w.profile().num_parties() != 2)
    throw argument_error("channel_from_subspace: subspace is not bipartite");
  return IsometryChannel(w.basis(), w.profile().dim(0), w.profile().dim(1), keep);
}

inline DensityOperator apply(const IsometryChannel& ch, const DensityOperator& rho) {
  if (rho.profile().total_dim() != ch.input_dim())
    throw argument_error("apply: input dimension mismatch");
  Matrix lifted = ch.isometry * rho.matrix() * ch.isometry.adjoint();
  DensityOperator on_output(std::move(lifted), DimProfile::permitting_unit({ch.d_b, ch.d_c}));
  const int traced = ch.keep == OutputFactor::first ? 1 : 0;
  return partial_trace(on_output, std::vector<int>{traced});
}

// Result of a ν∞ optimization. `input` is the achieving pure input state;
// a non-stable flag marks a lower bound that failed the agreement check.
struct NuReport {
  double value;
  Vector input;
  bool stable;
  int restarts_agreeing;
};

// ν∞(Φ): largest output eigenvalue over pure inputs. Computed as the maximal
// product overlap with the range subspace of the isometry, which makes it
// independent of the kept factor.
inline NuReport nu_infinity(const IsometryChannel& ch, const OptimizerPolicy& opt) {
  ProductOverlapResult res =
      detail::seesaw_overlap(ch.isometry, ch.d_b, ch.d_c, opt);
  Vector product = kron(res.left, res.right);
  Vector input = ch.isometry.adjoint() * product;
  const double n = input.norm();
  if (n > numeric_policy().rank_cut) input /= n;
  return NuReport{res.value, std::move(input), res.stable, res.restarts_agreeing};
}

// ν∞(I_k ⊗ Φ) via the enlarged range C^k ⊗ W, grouped as (ancilla·B) | C.
// Consistency check for the identity ν∞(I ⊗ Φ) = ν∞(Φ).
inline NuReport nu_infinity_extended(const IsometryChannel& ch, int ancilla_dim,
                                     const OptimizerPolicy& opt) {
  if (ancilla_dim < 1) throw argument_error("nu_infinity_extended: ancilla_dim must be >= 1");
  if (ancilla_dim == 1) return nu_infinity(ch, opt);

  detail::check_ambient(static_cast<Index>(ancilla_dim) * ch.isometry.rows());
  const Index k = ch.input_dim();
  Matrix extended(static_cast<Index>(ancilla_dim) * ch.isometry.rows(),
                  static_cast<Index>(ancilla_dim) * k);
  extended.setZero();
  for (Index m = 0; m < ancilla_dim; ++m)
    extended.block(m * ch.isometry.rows(), m * k, ch.isometry.rows(), k) = ch.isometry;

  ProductOverlapResult res = detail::seesaw_overlap(
      extended, static_cast<Index>(ancilla_dim) * ch.d_b, ch.d_c, opt);
  Vector product = kron(res.left, res.right);
  Vector input = extended.adjoint() * product;
  const double n = input.norm();
  if (n > numeric_policy().rank_cut) input /= n;
  return NuReport{res.value, std::move(input), res.stable, res.restarts_agreeing};
}

}  // namespace gesforge
