// npt.hpp — partial-transpose spectra, sampling of states on a subspace,
// Schmidt-rank-2 distillation witness search, and the factored witness
// Γ = Φ ⊗ τ for states supported on a two-part chain.

#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "gesforge/constructions.hpp"

namespace gesforge {

// ------------------------------- PT spectra ----------------------------------

struct PTReport {
  Bipartition cut;
  double min_eigenvalue;
  Vector witness_eigvec;
};

inline PTReport min_pt_eigenvalue(const DensityOperator& rho, const Bipartition& cut) {
  const Matrix pt = partial_transpose(rho, cut);
  const EigResult eig = hermitian_eig(pt);
  return PTReport{cut, eig.values(0), eig.vectors.col(0)};
}

// ------------------------------- sampling ------------------------------------

// ρ = B C C† B† / Tr(·) for a Gaussian dim(w) x rank matrix C: a random state
// of the given rank supported exactly inside w.
inline DensityOperator sample_state_on_subspace(const Subspace& w, int rank,
                                                std::uint64_t seed) {
  if (rank < 1 || rank > w.dim())
    throw argument_error("sample_state_on_subspace: rank outside [1, dim]");
  SplitMix64 rng(seed);
  const Matrix c = gaussian_matrix(w.dim(), rank, rng);
  Matrix inner = c * c.adjoint();
  inner /= inner.trace().real();
  return DensityOperator(w.basis() * inner * w.basis().adjoint(), w.profile());
}

struct CutSampleReport {
  Bipartition cut;
  double worst_min_eigenvalue;  // max over samples of the per-sample min PT eigenvalue
  int samples;
  bool all_npt;                 // worst < -npt_margin
};

// Samples states of random rank supported on w and reports, per cut, the
// least negative PT minimum seen. Lemma-level NPT subspaces must stay below
// the margin on every sample; a PPT sample is a finding, not an error.
inline std::vector<CutSampleReport> npt_subspace_check(const Subspace& w,
                                                       const std::vector<Bipartition>& cuts,
                                                       int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw argument_error("npt_subspace_check: need at least one sample");
  std::vector<CutSampleReport> out;
  out.reserve(cuts.size());
  for (std::size_t ci = 0; ci < cuts.size(); ++ci) {
    double worst = -2.0;
    for (int s = 0; s < n_samples; ++s) {
      const std::uint64_t stream = derived_seed(seed, ci * 1000003ull + static_cast<std::uint64_t>(s));
      SplitMix64 rng(stream);
      const int rank = static_cast<int>(rng.uniform_int(1, w.dim()));
      const DensityOperator rho = sample_state_on_subspace(w, rank, rng.next());
      worst = std::max(worst, min_pt_eigenvalue(rho, cuts[ci]).min_eigenvalue);
    }
    out.push_back(CutSampleReport{cuts[ci], worst, n_samples,
                                  worst < -numeric_policy().npt_margin});
  }
  return out;
}

// --------------------------- rank-2 witness search ---------------------------

// A Schmidt-rank-2 state ψ with ⟨ψ| ρ^{T_cut} |ψ⟩ < 0 certifies one-copy
// distillability across the cut. The transpose acts on the cut's member set.
struct DistillWitness {
  Bipartition cut;
  PureState psi;
  double value;
};

namespace detail {

struct Rank2Outcome {
  double value;
  Vector psi;  // in the grouped (members-first) ordering
};

// (Q ⊗ I)† M (Q ⊗ I) computed blockwise for Q: dl x k.
inline Matrix compress_left_factor(const Matrix& m, Index dl, Index dr, const Matrix& q) {
  const Index k = q.cols();
  Matrix out = Matrix::Zero(k * dr, k * dr);
  for (Index i = 0; i < dl; ++i)
    for (Index i2 = 0; i2 < dl; ++i2) {
      const auto block = m.block(i * dr, i2 * dr, dr, dr);
      for (Index a = 0; a < k; ++a)
        for (Index b = 0; b < k; ++b)
          out.block(a * dr, b * dr, dr, dr) += std::conj(q(i, a)) * q(i2, b) * block;
    }
  return out;
}

// (I ⊗ Q)† M (I ⊗ Q) computed blockwise for Q: dr x k.
inline Matrix compress_right_factor(const Matrix& m, Index dl, Index dr, const Matrix& q) {
  const Index k = q.cols();
  Matrix out(dl * k, dl * k);
  for (Index i = 0; i < dl; ++i)
    for (Index i2 = 0; i2 < dl; ++i2)
      out.block(i * k, i2 * k, k, k) = q.adjoint() * m.block(i * dr, i2 * dr, dr, dr) * q;
  return out;
}

// Alternating subspace compression: restrict one side to a 2-dim subspace,
// take the minimum eigenvector of the compressed operator, re-extract the
// best 2-dim subspace on the other side from its Schmidt vectors. Each
// half-step is a minimization over a set containing the current iterate, so
// the value never increases.
inline Rank2Outcome rank2_minimize(const Matrix& grouped_pt, Index dl, Index dr,
                                   const OptimizerPolicy& opt) {
  opt.validate();
  using RowMajorMap =
      Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  const auto left_subspace_of = [&](const Vector& psi) {
    Eigen::JacobiSVD<Matrix> svd(RowMajorMap(psi.data(), dl, dr), Eigen::ComputeThinU);
    return Matrix(svd.matrixU().leftCols(std::min<Index>(2, dl)));
  };
  const auto right_subspace_of = [&](const Vector& psi) {
    Eigen::JacobiSVD<Matrix> svd(RowMajorMap(psi.data(), dl, dr), Eigen::ComputeThinV);
    return Matrix(svd.matrixV().leftCols(std::min<Index>(2, dr)).conjugate());
  };
  const auto flatten_row_major = [](const Matrix& m) {
    Vector out(m.rows() * m.cols());
    for (Index i = 0; i < m.rows(); ++i) out.segment(i * m.cols(), m.cols()) = m.row(i);
    return out;
  };

  Eigen::SelfAdjointEigenSolver<Matrix> full(grouped_pt);
  const Vector global_min_vec = full.eigenvectors().col(0);

  Rank2Outcome best{1.0, Vector()};
  for (int r = 0; r < opt.restarts; ++r) {
    Matrix qa;
    if (r == 0) {
      qa = left_subspace_of(global_min_vec);
    } else {
      SplitMix64 rng(derived_seed(opt.seed, static_cast<std::uint64_t>(r)));
      Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(dl, std::min<Index>(2, dl), rng));
      qa = qr.householderQ() * Matrix::Identity(dl, std::min<Index>(2, dl));
    }
    double prev = 2.0;
    double value = 1.0;
    Vector psi;
    for (int it = 0; it < opt.max_iters; ++it) {
      Eigen::SelfAdjointEigenSolver<Matrix> ea(
          compress_left_factor(grouped_pt, dl, dr, qa));
      value = ea.eigenvalues()(0);
      // lift (Q ⊗ I) v: reshape v to k x dr and apply Q on the left
      psi = flatten_row_major(qa * RowMajorMap(ea.eigenvectors().col(0).data(), qa.cols(), dr));

      const Matrix qb = right_subspace_of(psi);
      Eigen::SelfAdjointEigenSolver<Matrix> eb(
          compress_right_factor(grouped_pt, dl, dr, qb));
      value = eb.eigenvalues()(0);
      psi = flatten_row_major(
          Matrix(RowMajorMap(eb.eigenvectors().col(0).data(), dl, qb.cols()) * qb.transpose()));

      qa = left_subspace_of(psi);
      if (prev - value < opt.conv_tol) break;
      prev = value;
    }
    if (psi.size() && value < best.value) best = Rank2Outcome{value, psi};
  }
  return best;
}

}  // namespace detail

// Minimizes ⟨ψ| ρ^{T_cut} |ψ⟩ over Schmidt-rank-2 states across the cut.
// Returns the witness when the minimum found is certifiably negative.
inline std::optional<DistillWitness> rank2_witness_search(const DensityOperator& rho,
                                                          const Bipartition& cut,
                                                          const OptimizerPolicy& opt) {
  if (cut.num_parties() != rho.profile().num_parties())
    throw argument_error("rank2_witness_search: cut does not match profile");
  const Matrix pt = partial_transpose(rho, cut);

  std::vector<int> order = cut.members();
  const auto rest = cut.complement();
  order.insert(order.end(), rest.begin(), rest.end());
  const Matrix grouped = permute_flat(pt, rho.profile(), order);
  Index dl = 1;
  for (int p : cut.members()) dl *= rho.profile().dim(p);
  const Index dr = rho.profile().total_dim() / dl;

  detail::Rank2Outcome res = detail::rank2_minimize(grouped, dl, dr, opt);
  if (!(res.value < -numeric_policy().distill_negativity)) return std::nullopt;

  std::vector<int> inverse(order.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    inverse[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  const Vector psi_orig =
      permute_flat(res.psi, permuted_profile(rho.profile(), order), inverse);
  PureState psi = PureState::normalized(psi_orig, rho.profile());

  const SchmidtDecomposition sd = schmidt(psi, cut);
  if (sd.coefficients.size() > 2 && sd.coefficients(2) >= numeric_policy().witness_rank_tol)
    throw std::logic_error("rank2_witness_search: produced a witness of rank > 2");

  const double value = (psi.amplitudes().adjoint() * pt * psi.amplitudes())(0).real();
  return DistillWitness{cut, std::move(psi), value};
}

// ----------------------------- factored witness ------------------------------

struct FactoredWitnessReport {
  std::optional<DistillWitness> witness;
  bool support_ok;         // ρ is supported on the chain of the two parts
  double support_overlap;  // Tr(ρ Π_chain)
  int taus_tried;
};

namespace detail {

// σ(x,y) = Σ_{u,v} τ*_u M(x·Dr + u, y·Dr + v) τ_v   (contract the right block)
inline Matrix contract_right_block(const Matrix& m, Index d_left_block, Index d_right_block,
                                   const Vector& tau) {
  Matrix out(d_left_block, d_left_block);
  for (Index y = 0; y < d_left_block; ++y)
    for (Index x = 0; x < d_left_block; ++x)
      out(x, y) = (tau.adjoint() *
                   m.block(x * d_right_block, y * d_right_block, d_right_block, d_right_block) *
                   tau)(0);
  return out;
}

// σ(u,v) = Σ_{x,y} τ*_x M(x·Dr + u, y·Dr + v) τ_y   (contract the left block)
inline Matrix contract_left_block(const Matrix& m, Index d_left_block, Index d_right_block,
                                  const Vector& tau) {
  Matrix out = Matrix::Zero(d_right_block, d_right_block);
  for (Index y = 0; y < d_left_block; ++y)
    for (Index x = 0; x < d_left_block; ++x)
      out += std::conj(tau(x)) * tau(y) *
             m.block(x * d_right_block, y * d_right_block, d_right_block, d_right_block);
  return out;
}

}  // namespace detail

// Constructive witness for a state supported on the chain of two bipartite
// parts (profile d1 x (d2·d3) x d4): conditions ρ on a sampled |τ⟩ of the
// far factor, finds a rank-2 witness Φ for the conditioned state, and lifts
// Γ = Φ ⊗ τ back to the full state. For the middle cut τ is taken in product
// form |μ⟩⊗|ν⟩ and the spare transpose is removed by conjugating ν.
inline FactoredWitnessReport factored_witness_search(const DensityOperator& rho,
                                                     const Bipartition& cut,
                                                     const Subspace& left_part,
                                                     const Subspace& right_part,
                                                     int tau_samples,
                                                     const OptimizerPolicy& opt) {
  if (rho.profile().num_parties() != 3)
    throw argument_error("factored_witness_search: state must live on a 3-party chain profile");
  if (left_part.profile().num_parties() != 2 || right_part.profile().num_parties() != 2)
    throw argument_error("factored_witness_search: parts must be bipartite");
  const int d1 = left_part.profile().dim(0);
  const int d2 = left_part.profile().dim(1);
  const int d3 = right_part.profile().dim(0);
  const int d4 = right_part.profile().dim(1);
  if (rho.profile().dim(0) != d1 || rho.profile().dim(1) != d2 * d3 ||
      rho.profile().dim(2) != d4)
    throw argument_error("factored_witness_search: profile does not match the chain of the parts");
  if (tau_samples < 1) throw argument_error("factored_witness_search: need at least one tau");

  const Subspace chain = chain_ges({left_part, right_part});
  const double support = (rho.matrix() * projector(chain)).trace().real();
  if (support < 1.0 - numeric_policy().support_tol)
    return FactoredWitnessReport{std::nullopt, false, support, 0};

  const auto& members = cut.members();
  enum class Case { left_single, right_single, middle };
  Case which;
  bool conjugate;
  if (members == std::vector<int>{0}) {
    which = Case::left_single;
    conjugate = false;
  } else if (members == std::vector<int>{1, 2}) {
    which = Case::left_single;
    conjugate = true;
  } else if (members == std::vector<int>{2}) {
    which = Case::right_single;
    conjugate = false;
  } else if (members == std::vector<int>{0, 1}) {
    which = Case::right_single;
    conjugate = true;
  } else if (members == std::vector<int>{0, 2}) {
    which = Case::middle;
    conjugate = false;
  } else {  // {1}
    which = Case::middle;
    conjugate = true;
  }

  const Index d12 = static_cast<Index>(d1) * d2;
  const Index d34 = static_cast<Index>(d3) * d4;
  const Matrix requested_pt = partial_transpose(rho, cut);

  // a generic tau works; on failure resample until the budget runs out
  for (int t = 0; t < tau_samples; ++t) {
    SplitMix64 rng(derived_seed(opt.seed ^ 0x7a75u, static_cast<std::uint64_t>(t)));

    Vector tau_for_sigma, tau_for_gamma;
    Matrix sigma_raw;
    DimProfile sigma_profile({2, 2});
    Bipartition sigma_cut({0}, 2);
    switch (which) {
      case Case::left_single: {
        tau_for_sigma = random_unit_vector(d34, rng);
        tau_for_gamma = tau_for_sigma;
        sigma_raw = detail::contract_right_block(rho.matrix(), d12, d34, tau_for_sigma);
        sigma_profile = left_part.profile();
        sigma_cut = Bipartition({0}, 2);
        break;
      }
      case Case::right_single: {
        tau_for_sigma = random_unit_vector(d12, rng);
        tau_for_gamma = tau_for_sigma;
        sigma_raw = detail::contract_left_block(rho.matrix(), d12, d34, tau_for_sigma);
        sigma_profile = right_part.profile();
        sigma_cut = Bipartition({1}, 2);
        break;
      }
      case Case::middle: {
        const Vector mu = random_unit_vector(d3, rng);
        const Vector nu = random_unit_vector(d4, rng);
        tau_for_sigma = kron(mu, Vector(nu.conjugate()));
        tau_for_gamma = kron(mu, nu);
        sigma_raw = detail::contract_right_block(rho.matrix(), d12, d34, tau_for_sigma);
        sigma_profile = left_part.profile();
        sigma_cut = Bipartition({0}, 2);
        break;
      }
    }

    const double c = sigma_raw.trace().real();
    if (c < 1e-12) continue;
    const DensityOperator sigma(sigma_raw / c, sigma_profile);
    const auto phi = rank2_witness_search(sigma, sigma_cut, opt);
    if (!phi) continue;

    Vector gamma = which == Case::right_single
                       ? kron(tau_for_gamma, phi->psi.amplitudes())
                       : kron(phi->psi.amplitudes(), tau_for_gamma);
    if (conjugate) gamma = gamma.conjugate();
    PureState candidate = PureState::normalized(std::move(gamma), rho.profile());
    const double value =
        (candidate.amplitudes().adjoint() * requested_pt * candidate.amplitudes())(0).real();
    if (value < -numeric_policy().distill_negativity) {
      const SchmidtDecomposition sd = schmidt(candidate, cut);
      if (sd.coefficients.size() > 2 &&
          sd.coefficients(2) >= numeric_policy().witness_rank_tol)
        throw std::logic_error("factored_witness_search: witness of rank > 2");
      return FactoredWitnessReport{DistillWitness{cut, std::move(candidate), value}, true,
                                   support, t + 1};
    }
  }
  return FactoredWitnessReport{std::nullopt, true, support, tau_samples};
}

}  // namespace gesforge
