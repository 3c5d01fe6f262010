// linalg.hpp — dense complex linear algebra with multipartite index bookkeeping:
// tensor products, party permutation, partial trace / transpose, Schmidt
// decomposition, Hermitian eigendecomposition, orthonormalization.

#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include "gesforge/numeric.hpp"

namespace gesforge {

// ------------------------------- profiles -----------------------------------

// Ordered list of local party dimensions. Flattening of composite indices is
// lexicographic throughout: the last party varies fastest.
class DimProfile {
 public:
  explicit DimProfile(std::vector<int> dims) : DimProfile(std::move(dims), false) {}

  // Parties of dimension 1 are rejected by default; a few internal spaces
  // (e.g. channel inputs from one-dimensional subspaces) need them.
  static DimProfile permitting_unit(std::vector<int> dims) {
    return DimProfile(std::move(dims), true);
  }

  int num_parties() const { return static_cast<int>(dims_.size()); }

  int dim(int party) const {
    if (party < 0 || party >= num_parties())
      throw argument_error("DimProfile: party index out of range");
    return dims_[static_cast<std::size_t>(party)];
  }

  const std::vector<int>& dims() const { return dims_; }
  Index total_dim() const { return total_; }

  bool operator==(const DimProfile& other) const { return dims_ == other.dims_; }
  bool operator!=(const DimProfile& other) const { return dims_ != other.dims_; }

  std::string to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < dims_.size(); ++i) out << (i ? "x" : "") << dims_[i];
    return out.str();
  }

 private:
  DimProfile(std::vector<int> dims, bool allow_unit) : dims_(std::move(dims)) {
    if (dims_.empty()) throw argument_error("DimProfile: no parties");
    total_ = 1;
    for (int d : dims_) {
      if (d < 1 || (d < 2 && !allow_unit))
        throw argument_error("DimProfile: party dimension " + std::to_string(d) +
                             " is not allowed");
      if (total_ > (Index{1} << 40) / d) throw resource_error("DimProfile: dimension overflow");
      total_ *= d;
    }
  }

  std::vector<int> dims_;
  Index total_ = 0;
};

// Strides of the lexicographic flattening (last party fastest).
inline std::vector<Index> lex_strides(const std::vector<int>& dims) {
  std::vector<Index> strides(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    strides[k] = strides[k + 1] * dims[k + 1];
  return strides;
}

// Flat offsets contributed by a subset of parties: offsets[i] enumerates, in
// lexicographic order of the subset's digits, the partial sums digit*stride.
inline std::vector<Index> subset_offsets(const DimProfile& profile,
                                         const std::vector<int>& parties) {
  const auto strides = lex_strides(profile.dims());
  Index count = 1;
  for (int p : parties) count *= profile.dim(p);
  std::vector<Index> offsets(static_cast<std::size_t>(count), 0);
  Index block = count;
  for (int p : parties) {
    const int d = profile.dim(p);
    block /= d;
    const Index stride = strides[static_cast<std::size_t>(p)];
    for (Index i = 0; i < count; ++i) offsets[static_cast<std::size_t>(i)] += ((i / block) % d) * stride;
  }
  return offsets;
}

// ----------------------------- bipartitions ---------------------------------

// A cut A|Ā: a nonempty strict subset of the parties.
class Bipartition {
 public:
  Bipartition(std::vector<int> members, int num_parties) : n_(num_parties) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) throw argument_error("Bipartition: empty member set");
    if (static_cast<int>(members.size()) >= n_)
      throw argument_error("Bipartition: members must be a strict subset");
    for (int p : members)
      if (p < 0 || p >= n_) throw argument_error("Bipartition: party index out of range");
    members_ = std::move(members);
  }

  const std::vector<int>& members() const { return members_; }
  int num_parties() const { return n_; }

  bool contains(int party) const {
    return std::binary_search(members_.begin(), members_.end(), party);
  }

  std::vector<int> complement() const {
    std::vector<int> rest;
    for (int p = 0; p < n_; ++p)
      if (!contains(p)) rest.push_back(p);
    return rest;
  }

  Bipartition complement_cut() const { return Bipartition(complement(), n_); }

  std::string to_string() const {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < members_.size(); ++i) out << (i ? "," : "") << members_[i];
    out << "}";
    return out.str();
  }

 private:
  std::vector<int> members_;
  int n_;
};

// All cuts of an n-party system, one per unordered pair A|Ā (party 0 is kept
// in the member set), ordered lexicographically by member list.
inline std::vector<Bipartition> all_bipartitions(int num_parties) {
  if (num_parties < 2) throw argument_error("all_bipartitions: need at least 2 parties");
  std::vector<std::vector<int>> sets;
  for (unsigned mask = 1; mask < (1u << num_parties) - 1; ++mask) {
    if (!(mask & 1u)) continue;
    std::vector<int> members;
    for (int p = 0; p < num_parties; ++p)
      if (mask & (1u << p)) members.push_back(p);
    sets.push_back(std::move(members));
  }
  std::sort(sets.begin(), sets.end());
  std::vector<Bipartition> cuts;
  cuts.reserve(sets.size());
  for (auto& s : sets) cuts.emplace_back(std::move(s), num_parties);
  return cuts;
}

// ------------------------------ state types ---------------------------------

class PureState {
 public:
  PureState(Vector amplitudes, DimProfile profile)
      : amplitudes_(std::move(amplitudes)), profile_(std::move(profile)) {
    if (amplitudes_.size() != profile_.total_dim())
      throw argument_error("PureState: amplitude length " + std::to_string(amplitudes_.size()) +
                           " does not match profile " + profile_.to_string());
    if (std::abs(amplitudes_.norm() - 1.0) > numeric_policy().unit_norm)
      throw argument_error("PureState: vector is not normalized");
  }

  static PureState normalized(Vector amplitudes, DimProfile profile) {
    const double n = amplitudes.norm();
    if (n < numeric_policy().rank_cut) throw argument_error("PureState: zero vector");
    return PureState(amplitudes / n, std::move(profile));
  }

  const Vector& amplitudes() const { return amplitudes_; }
  const DimProfile& profile() const { return profile_; }

 private:
  Vector amplitudes_;
  DimProfile profile_;
};

class DensityOperator {
 public:
  DensityOperator(Matrix matrix, DimProfile profile)
      : matrix_(std::move(matrix)), profile_(std::move(profile)) {
    const auto& pol = numeric_policy();
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() != profile_.total_dim())
      throw argument_error("DensityOperator: matrix shape does not match profile");
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > pol.hermiticity)
      throw argument_error("DensityOperator: matrix is not Hermitian");
    if (std::abs(matrix_.trace().real() - 1.0) > pol.hermiticity ||
        std::abs(matrix_.trace().imag()) > pol.hermiticity)
      throw argument_error("DensityOperator: trace is not 1");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues()(0) < -pol.psd_floor)
      throw argument_error("DensityOperator: matrix is not positive semidefinite");
  }

  const Matrix& matrix() const { return matrix_; }
  const DimProfile& profile() const { return profile_; }

 private:
  Matrix matrix_;
  DimProfile profile_;
};

// ------------------------------ kron ----------------------------------------

namespace detail {
inline void check_ambient(Index dim) {
  if (dim > numeric_policy().ambient_cap)
    throw resource_error("result dimension " + std::to_string(dim) +
                         " exceeds the ambient cap of " +
                         std::to_string(numeric_policy().ambient_cap));
}
}  // namespace detail

// Kronecker product; the result index is lexicographic in the operand indices.
inline Matrix kron(const Matrix& x, const Matrix& y) {
  detail::check_ambient(x.rows() * y.rows());
  detail::check_ambient(x.cols() * y.cols());
  return Eigen::kroneckerProduct(x, y);
}

inline Vector kron(const Vector& x, const Vector& y) {
  detail::check_ambient(x.size() * y.size());
  Vector out(x.size() * y.size());
  for (Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return out;
}

// --------------------------- party permutation ------------------------------

namespace detail {
inline void check_permutation(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n)
    throw argument_error("permute_parties: permutation has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
      throw argument_error("permute_parties: not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
}
}  // namespace detail

// source[y] = x such that output flat index y reads input flat index x, when
// party k of the output is party perm[k] of the input.
inline std::vector<Index> permutation_source_map(const DimProfile& in,
                                                 const std::vector<int>& perm) {
  const int n = in.num_parties();
  detail::check_permutation(perm, n);
  std::vector<int> out_dims(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out_dims[static_cast<std::size_t>(k)] = in.dim(perm[static_cast<std::size_t>(k)]);
  const auto in_strides = lex_strides(in.dims());
  const auto out_strides = lex_strides(out_dims);
  const Index total = in.total_dim();
  std::vector<Index> source(static_cast<std::size_t>(total));
  for (Index y = 0; y < total; ++y) {
    Index x = 0;
    for (int k = 0; k < n; ++k) {
      const Index digit = (y / out_strides[static_cast<std::size_t>(k)]) % out_dims[static_cast<std::size_t>(k)];
      x += digit * in_strides[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    }
    source[static_cast<std::size_t>(y)] = x;
  }
  return source;
}

inline DimProfile permuted_profile(const DimProfile& in, const std::vector<int>& perm) {
  std::vector<int> dims;
  dims.reserve(perm.size());
  for (int p : perm) dims.push_back(in.dim(p));
  return DimProfile::permitting_unit(std::move(dims));
}

inline Vector permute_flat(const Vector& v, const DimProfile& in, const std::vector<int>& perm) {
  const auto source = permutation_source_map(in, perm);
  Vector out(v.size());
  for (Index y = 0; y < v.size(); ++y) out(y) = v(source[static_cast<std::size_t>(y)]);
  return out;
}

inline Matrix permute_flat(const Matrix& m, const DimProfile& in, const std::vector<int>& perm) {
  const auto source = permutation_source_map(in, perm);
  Matrix out(m.rows(), m.cols());
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      out(r, c) = m(source[static_cast<std::size_t>(r)], source[static_cast<std::size_t>(c)]);
  return out;
}

inline PureState permute_parties(const PureState& s, const std::vector<int>& perm) {
  return PureState(permute_flat(s.amplitudes(), s.profile(), perm),
                   permuted_profile(s.profile(), perm));
}

inline DensityOperator permute_parties(const DensityOperator& rho, const std::vector<int>& perm) {
  return DensityOperator(permute_flat(rho.matrix(), rho.profile(), perm),
                         permuted_profile(rho.profile(), perm));
}

// ------------------------------ partial trace -------------------------------

inline DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& traced) {
  const int n = rho.profile().num_parties();
  std::vector<int> tr = traced;
  std::sort(tr.begin(), tr.end());
  tr.erase(std::unique(tr.begin(), tr.end()), tr.end());
  if (tr.empty()) throw argument_error("partial_trace: empty traced set");
  for (int p : tr)
    if (p < 0 || p >= n) throw argument_error("partial_trace: party index out of range");
  if (static_cast<int>(tr.size()) == n)
    throw argument_error("partial_trace: cannot trace out all parties");

  std::vector<int> kept;
  for (int p = 0; p < n; ++p)
    if (!std::binary_search(tr.begin(), tr.end(), p)) kept.push_back(p);

  const auto kept_off = subset_offsets(rho.profile(), kept);
  const auto traced_off = subset_offsets(rho.profile(), tr);
  const Index dk = static_cast<Index>(kept_off.size());

  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = rho.matrix();
  for (Index b = 0; b < dk; ++b)
    for (Index a = 0; a < dk; ++a)
      for (Index t : traced_off)
        out(a, b) += m(kept_off[static_cast<std::size_t>(a)] + t, kept_off[static_cast<std::size_t>(b)] + t);

  std::vector<int> kept_dims;
  for (int p : kept) kept_dims.push_back(rho.profile().dim(p));
  return DensityOperator(std::move(out), DimProfile::permitting_unit(std::move(kept_dims)));
}

inline DensityOperator partial_trace(const DensityOperator& rho, const Bipartition& traced) {
  return partial_trace(rho, traced.members());
}

// ---------------------------- partial transpose -----------------------------

// Transposes the indices of the listed parties jointly (equal to transposing
// them one by one). Trace and Hermiticity are preserved; positivity is not.
inline Matrix partial_transpose(const Matrix& m, const DimProfile& profile,
                                const std::vector<int>& members) {
  const int n = profile.num_parties();
  std::vector<int> ms = members;
  std::sort(ms.begin(), ms.end());
  for (int p : ms)
    if (p < 0 || p >= n) throw argument_error("partial_transpose: party index out of range");
  std::vector<int> rest;
  for (int p = 0; p < n; ++p)
    if (!std::binary_search(ms.begin(), ms.end(), p)) rest.push_back(p);

  const auto mo = subset_offsets(profile, ms);
  const auto ro = subset_offsets(profile, rest);
  Matrix out(m.rows(), m.cols());
  for (Index m2 = 0; m2 < static_cast<Index>(mo.size()); ++m2)
    for (Index r2 = 0; r2 < static_cast<Index>(ro.size()); ++r2)
      for (Index m1 = 0; m1 < static_cast<Index>(mo.size()); ++m1)
        for (Index r1 = 0; r1 < static_cast<Index>(ro.size()); ++r1)
          out(mo[static_cast<std::size_t>(m1)] + ro[static_cast<std::size_t>(r1)],
              mo[static_cast<std::size_t>(m2)] + ro[static_cast<std::size_t>(r2)]) =
              m(mo[static_cast<std::size_t>(m2)] + ro[static_cast<std::size_t>(r1)],
                mo[static_cast<std::size_t>(m1)] + ro[static_cast<std::size_t>(r2)]);
  return out;
}

inline Matrix partial_transpose(const DensityOperator& rho, const Bipartition& cut) {
  if (cut.num_parties() != rho.profile().num_parties())
    throw argument_error("partial_transpose: cut does not match the state's profile");
  return partial_transpose(rho.matrix(), rho.profile(), cut.members());
}

// --------------------------- Schmidt decomposition --------------------------

struct SchmidtDecomposition {
  RealVector coefficients;  // descending, trimmed at the rank cut
  Matrix left;              // orthonormal columns on the member side (joined)
  Matrix right;             // orthonormal columns on the complement side (joined)
};

inline SchmidtDecomposition schmidt(const PureState& s, const Bipartition& cut) {
  if (cut.num_parties() != s.profile().num_parties())
    throw argument_error("schmidt: cut does not match the state's profile");
  std::vector<int> order = cut.members();
  const auto rest = cut.complement();
  order.insert(order.end(), rest.begin(), rest.end());

  const Vector flat = permute_flat(s.amplitudes(), s.profile(), order);
  Index dl = 1;
  for (int p : cut.members()) dl *= s.profile().dim(p);
  const Index dr = s.profile().total_dim() / dl;

  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      view(flat.data(), dl, dr);
  Eigen::JacobiSVD<Matrix> svd(view, Eigen::ComputeThinU | Eigen::ComputeThinV);

  const auto& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > numeric_policy().rank_cut) ++rank;
  if (rank == 0) rank = 1;  // a normalized state always has one coefficient

  SchmidtDecomposition out;
  out.coefficients = sv.head(rank);
  out.left = svd.matrixU().leftCols(rank);
  out.right = svd.matrixV().leftCols(rank).conjugate();
  return out;
}

// --------------------------- Hermitian eigensolver ---------------------------

struct EigResult {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns, matching order
};

inline EigResult hermitian_eig(const Matrix& m) {
  if (m.rows() != m.cols()) throw argument_error("hermitian_eig: matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > numeric_policy().hermitian_input * scale)
    throw argument_error("hermitian_eig: matrix is not Hermitian within tolerance");
  const Matrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");

  EigResult out{solver.eigenvalues(), solver.eigenvectors()};
  const double norm = std::max(std::abs(out.values(0)), std::abs(out.values(out.values.size() - 1)));
  const Matrix residual = sym * out.vectors - out.vectors * out.values.asDiagonal();
  if (residual.colwise().norm().maxCoeff() > numeric_policy().eig_residual * std::max(1.0, norm))
    throw std::runtime_error("hermitian_eig: residual exceeds tolerance");
  return out;
}

// ----------------------------- orthonormalization ---------------------------

// Modified Gram-Schmidt with one re-orthogonalization pass. Vectors whose
// residual drops below `tol` are treated as dependent and skipped.
inline Matrix orthonormalize(const std::vector<Vector>& vectors, double tol) {
  if (vectors.empty()) throw argument_error("orthonormalize: empty input");
  const Index dim = vectors.front().size();
  std::vector<Vector> cols;
  for (const Vector& v : vectors) {
    if (v.size() != dim) throw argument_error("orthonormalize: mixed vector lengths");
    Vector w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : cols) w -= q * q.dot(w);
    const double n = w.norm();
    if (n < tol) continue;
    cols.push_back(w / n);
  }
  if (cols.empty()) throw argument_error("orthonormalize: input spans the zero space");
  Matrix out(dim, static_cast<Index>(cols.size()));
  for (Index j = 0; j < out.cols(); ++j) out.col(j) = cols[static_cast<std::size_t>(j)];
  return out;
}

inline Matrix orthonormalize(const std::vector<Vector>& vectors) {
  return orthonormalize(vectors, numeric_policy().rank_cut);
}

}  // namespace gesforge
