// subspace.hpp — subspaces of multipartite spaces: spans, tensor products,
// adjacent-party joins, direct sums, projectors, membership.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gesforge/linalg.hpp"

namespace gesforge {

// An orthonormal basis (ambient-dim x k) tagged with a party profile.
class Subspace {
 public:
  Subspace(Matrix basis, DimProfile profile)
      : basis_(std::move(basis)), profile_(std::move(profile)) {
    if (basis_.cols() < 1) throw argument_error("Subspace: empty basis");
    if (basis_.rows() != profile_.total_dim())
      throw argument_error("Subspace: basis rows do not match profile " + profile_.to_string());
    if (basis_.cols() > basis_.rows())
      throw argument_error("Subspace: more basis vectors than ambient dimensions");
    const Matrix gram = basis_.adjoint() * basis_;
    const double dev = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (dev > numeric_policy().basis_orthonormality)
      throw argument_error("Subspace: basis is not orthonormal (deviation " +
                           std::to_string(dev) + ")");
  }

  Index dim() const { return basis_.cols(); }
  Index ambient_dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const DimProfile& profile() const { return profile_; }

 private:
  Matrix basis_;
  DimProfile profile_;
};

// Orthonormal envelope of a spanning set; dimension is the numerical rank.
inline Subspace from_span(const DimProfile& profile, const std::vector<Vector>& vectors) {
  if (vectors.empty()) throw argument_error("from_span: no vectors");
  for (const Vector& v : vectors)
    if (v.size() != profile.total_dim())
      throw argument_error("from_span: vector length does not match profile");
  Matrix basis;
  try {
    basis = orthonormalize(vectors);
  } catch (const argument_error&) {
    throw argument_error("from_span: vectors span the zero space");
  }
  return Subspace(std::move(basis), profile);
}

inline Subspace from_span(const std::vector<PureState>& states) {
  if (states.empty()) throw argument_error("from_span: no vectors");
  const DimProfile& profile = states.front().profile();
  std::vector<Vector> vectors;
  vectors.reserve(states.size());
  for (const PureState& s : states) {
    if (s.profile() != profile) throw argument_error("from_span: mixed profiles");
    vectors.push_back(s.amplitudes());
  }
  return from_span(profile, vectors);
}

// Tensor product: profiles concatenate, basis columns are all pairwise
// Kronecker products (orthonormal without re-orthonormalization).
inline Subspace tensor(const Subspace& s, const Subspace& g) {
  std::vector<int> dims = s.profile().dims();
  const auto& gd = g.profile().dims();
  dims.insert(dims.end(), gd.begin(), gd.end());
  Matrix basis = kron(s.basis(), g.basis());
  return Subspace(std::move(basis), DimProfile(std::move(dims)));
}

// Merge of parties left_party and left_party+1 into one. Lexicographic
// flattening makes this a pure relabeling: amplitudes are untouched.
struct JoinSpec {
  int left_party;
};

inline Subspace join(const Subspace& s, JoinSpec spec) {
  const int n = s.profile().num_parties();
  if (spec.left_party < 0 || spec.left_party > n - 2)
    throw argument_error("join: party index out of range");
  std::vector<int> dims;
  for (int p = 0; p < n; ++p) {
    if (p == spec.left_party) {
      dims.push_back(s.profile().dim(p) * s.profile().dim(p + 1));
      ++p;
    } else {
      dims.push_back(s.profile().dim(p));
    }
  }
  return Subspace(s.basis(), DimProfile(std::move(dims)));
}

inline PureState join(const PureState& s, JoinSpec spec) {
  const int n = s.profile().num_parties();
  if (spec.left_party < 0 || spec.left_party > n - 2)
    throw argument_error("join: party index out of range");
  std::vector<int> dims;
  for (int p = 0; p < n; ++p) {
    if (p == spec.left_party) {
      dims.push_back(s.profile().dim(p) * s.profile().dim(p + 1));
      ++p;
    } else {
      dims.push_back(s.profile().dim(p));
    }
  }
  return PureState(s.amplitudes(), DimProfile(std::move(dims)));
}

namespace detail {
// Largest singular value of the cross Gram B1†B2.
inline double cross_overlap(const Subspace& a, const Subspace& b) {
  const Matrix cross = a.basis().adjoint() * b.basis();
  Eigen::JacobiSVD<Matrix> svd(cross);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}
}  // namespace detail

// Direct sum of mutually orthogonal subspaces over a common profile.
inline Subspace direct_sum(const std::vector<Subspace>& parts) {
  if (parts.empty()) throw argument_error("direct_sum: no parts");
  const DimProfile& profile = parts.front().profile();
  Index total = 0;
  for (const Subspace& p : parts) {
    if (p.profile() != profile) throw argument_error("direct_sum: mixed profiles");
    total += p.dim();
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      const double overlap = detail::cross_overlap(parts[i], parts[j]);
      if (overlap > numeric_policy().summand_orthogonality)
        throw precondition_error("direct_sum: parts " + std::to_string(i) + " and " +
                                 std::to_string(j) + " are not orthogonal (overlap " +
                                 std::to_string(overlap) + ")");
    }
  Matrix basis(profile.total_dim(), total);
  Index col = 0;
  for (const Subspace& p : parts) {
    basis.middleCols(col, p.dim()) = p.basis();
    col += p.dim();
  }
  return Subspace(std::move(basis), profile);
}

// Orthogonal projector P = BB†.
inline Matrix projector(const Subspace& s) { return s.basis() * s.basis().adjoint(); }

// ‖(I - P)v‖ <= tol
inline bool contains(const Subspace& s, const PureState& v, double tol) {
  if (v.profile() != s.profile()) throw argument_error("contains: profile mismatch");
  const Vector coeffs = s.basis().adjoint() * v.amplitudes();
  return (v.amplitudes() - s.basis() * coeffs).norm() <= tol;
}

// Basis-independent distance: largest |eigenvalue| of P1 - P2.
inline double projector_distance(const Subspace& a, const Subspace& b) {
  if (a.profile() != b.profile())
    throw argument_error("projector_distance: profile mismatch");
  const Matrix diff = projector(a) - projector(b);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

inline bool same_subspace(const Subspace& a, const Subspace& b) {
  return projector_distance(a, b) <= numeric_policy().subspace_equality;
}

// Permutes party labels of the subspace (unitary relabeling of the basis).
inline Subspace permute_parties(const Subspace& s, const std::vector<int>& perm) {
  const auto source = permutation_source_map(s.profile(), perm);
  Matrix basis(s.basis().rows(), s.basis().cols());
  for (Index c = 0; c < basis.cols(); ++c)
    for (Index r = 0; r < basis.rows(); ++r)
      basis(r, c) = s.basis()(source[static_cast<std::size_t>(r)], c);
  return Subspace(std::move(basis), permuted_profile(s.profile(), perm));
}

}  // namespace gesforge
