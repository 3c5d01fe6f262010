// constructions.hpp — named subspace and state builders: antisymmetric spaces,
// two-term shift subspaces, chain joins, orthogonal direct sums, paired product
// spans, and the Werner family.

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "gesforge/measures.hpp"

namespace gesforge {

// ------------------------- symmetric / antisymmetric -------------------------

// SWAP = Σ |i,j⟩⟨j,i| on C^d ⊗ C^d.
inline Matrix swap_operator(int d) {
  if (d < 2) throw argument_error("swap_operator: d must be >= 2");
  const Index dim = static_cast<Index>(d) * d;
  Matrix swap = Matrix::Zero(dim, dim);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
  return swap;
}

// Antisymmetric subspace of C^d ⊗ C^d: span{|i,j⟩ − |j,i⟩ : i < j}, dimension
// d(d−1)/2, with projector (I − SWAP)/2.
inline Subspace antisymmetric_subspace(int d) {
  if (d < 2) throw argument_error("antisymmetric_subspace: d must be >= 2");
  const Index dim = static_cast<Index>(d) * d;
  Matrix basis(dim, static_cast<Index>(d) * (d - 1) / 2);
  Index col = 0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      basis.col(col).setZero();
      basis(i * d + j, col) = inv_sqrt2;
      basis(j * d + i, col) = -inv_sqrt2;
      ++col;
    }
  return Subspace(std::move(basis), DimProfile({d, d}));
}

// --------------------------- two-term NPT subspace ---------------------------

// Generating family span{|j⟩|k+1⟩ − |j+1⟩|k⟩}, 0 <= j <= d1−2, 0 <= k <= d2−2,
// in (j,k) row-major order, each normalized by 1/√2. The generators are not
// mutually orthogonal for d >= 3; the subspace carries their orthonormal
// envelope.
inline std::vector<PureState> johnston_vectors(int d1, int d2) {
  if (d1 < 2 || d2 < 2) throw argument_error("johnston_vectors: dimensions must be >= 2");
  const DimProfile profile({d1, d2});
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<PureState> out;
  out.reserve(static_cast<std::size_t>((d1 - 1) * (d2 - 1)));
  for (int j = 0; j + 1 < d1; ++j)
    for (int k = 0; k + 1 < d2; ++k) {
      Vector v = Vector::Zero(profile.total_dim());
      v(j * d2 + (k + 1)) = inv_sqrt2;
      v((j + 1) * d2 + k) = -inv_sqrt2;
      out.emplace_back(std::move(v), profile);
    }
  return out;
}

// NPT subspace of C^{d1} ⊗ C^{d2} of dimension (d1−1)(d2−1).
inline Subspace johnston_subspace(int d1, int d2) {
  return from_span(johnston_vectors(d1, d2));
}

// ------------------------------- chain join ----------------------------------

// Left-fold of tensor products of bipartite parts with a join at every
// interior boundary: n parts yield an (n+1)-party subspace of dimension
// equal to the product of the part dimensions.
inline Subspace chain_ges(const std::vector<Subspace>& parts) {
  if (parts.size() < 2) throw argument_error("chain_ges: need at least 2 parts");
  for (const Subspace& p : parts)
    if (p.profile().num_parties() != 2)
      throw argument_error("chain_ges: every part must be bipartite");
  Subspace acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const int boundary = acc.profile().num_parties() - 1;
    acc = join(tensor(acc, parts[i]), JoinSpec{boundary});
  }
  return acc;
}

// --------------------------- 16-dim worked example ---------------------------

// The sixteen four-term vectors
//   |j⟩|3(k+1)+l⟩|m+1⟩ − |j⟩|3(k+1)+l+1⟩|m⟩ − |j+1⟩|3k+l⟩|m+1⟩ + |j+1⟩|3k+l+1⟩|m⟩
// over j,k,l,m ∈ {0,1}, each with coefficients ±1/2, on the 3x9x3 profile.
inline std::vector<PureState> example_w_vectors() {
  const DimProfile profile({3, 9, 3});
  const auto idx = [](int a, int b, int c) { return (a * 9 + b) * 3 + c; };
  std::vector<PureState> out;
  out.reserve(16);
  for (int j = 0; j <= 1; ++j)
    for (int k = 0; k <= 1; ++k)
      for (int l = 0; l <= 1; ++l)
        for (int m = 0; m <= 1; ++m) {
          Vector v = Vector::Zero(81);
          v(idx(j, 3 * (k + 1) + l, m + 1)) = 0.5;
          v(idx(j, 3 * (k + 1) + l + 1, m)) = -0.5;
          v(idx(j + 1, 3 * k + l, m + 1)) = -0.5;
          v(idx(j + 1, 3 * k + l + 1, m)) = 0.5;
          out.emplace_back(std::move(v), profile);
        }
  return out;
}

// 16-dimensional subspace of 3 ⊗ 9 ⊗ 3 spanned by example_w_vectors(); equals
// the chain of two 3x3 two-term subspaces.
inline Subspace example_w_basis() { return from_span(example_w_vectors()); }

// --------------------------- orthogonal direct sums --------------------------

namespace detail {

inline void require_common_bipartite(const std::vector<Subspace>& parts, const char* who) {
  if (parts.empty()) throw argument_error(std::string(who) + ": no parts");
  const DimProfile& profile = parts.front().profile();
  if (profile.num_parties() != 2)
    throw argument_error(std::string(who) + ": parts must be bipartite");
  for (const Subspace& p : parts)
    if (p.profile() != profile) throw argument_error(std::string(who) + ": mixed profiles");
}

inline void require_pairwise_orthogonal(const std::vector<Subspace>& parts, const char* who) {
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      const double overlap = cross_overlap(parts[i], parts[j]);
      if (overlap > numeric_policy().summand_orthogonality)
        throw precondition_error(std::string(who) + ": parts " + std::to_string(i) + " and " +
                                 std::to_string(j) + " are not orthogonal (overlap " +
                                 std::to_string(overlap) + ")");
    }
}

inline void require_certified_ces(const std::vector<MeasureReport>& measures, std::size_t count,
                                  const char* who, const char* role) {
  if (measures.size() != count)
    throw argument_error(std::string(who) + ": expected one measure report per part");
  for (std::size_t i = 0; i < measures.size(); ++i)
    if (!certifies_ces(measures[i]))
      throw precondition_error(std::string(who) + ": " + role + " " + std::to_string(i) +
                               " is not a certified CES (value " +
                               std::to_string(measures[i].value) +
                               (measures[i].stable ? "" : ", unstable") + ")");
}

}  // namespace detail

// Direct sum of tensor products S_i ⊗ P_i with mutually orthogonal single-party
// subspaces P_i, joined into a bipartite space: a CES whenever every S_i is.
inline Subspace sum_of_products_ces(const std::vector<Subspace>& s_parts,
                                    const std::vector<Subspace>& p_parts,
                                    const std::vector<MeasureReport>& s_measures) {
  detail::require_common_bipartite(s_parts, "sum_of_products_ces");
  if (p_parts.size() != s_parts.size())
    throw argument_error("sum_of_products_ces: part counts differ");
  const DimProfile& p_profile = p_parts.front().profile();
  if (p_profile.num_parties() != 1)
    throw argument_error("sum_of_products_ces: right factors must be single-party");
  for (const Subspace& p : p_parts)
    if (p.profile() != p_profile) throw argument_error("sum_of_products_ces: mixed right profiles");
  detail::require_pairwise_orthogonal(p_parts, "sum_of_products_ces");
  detail::require_certified_ces(s_measures, s_parts.size(), "sum_of_products_ces", "s_part");

  std::vector<Subspace> terms;
  terms.reserve(s_parts.size());
  for (std::size_t i = 0; i < s_parts.size(); ++i)
    terms.push_back(tensor(s_parts[i], p_parts[i]));
  return join(direct_sum(terms), JoinSpec{1});
}

inline Subspace sum_of_products_ces(const std::vector<Subspace>& s_parts,
                                    const std::vector<Subspace>& p_parts,
                                    const OptimizerPolicy& opt) {
  std::vector<MeasureReport> measures;
  measures.reserve(s_parts.size());
  for (const Subspace& s : s_parts) measures.push_back(subspace_geometric_measure(s, opt));
  return sum_of_products_ces(s_parts, p_parts, measures);
}

// Direct sum of tensor products S_i ⊗ G_i with mutually orthogonal bipartite
// G_i whose own direct sum Σ is a certified CES: a GES after joining.
inline Subspace sum_of_products_ges(const std::vector<Subspace>& s_parts,
                                    const std::vector<Subspace>& g_parts,
                                    const std::vector<MeasureReport>& s_measures,
                                    const MeasureReport& sigma_measure) {
  detail::require_common_bipartite(s_parts, "sum_of_products_ges");
  detail::require_common_bipartite(g_parts, "sum_of_products_ges");
  if (g_parts.size() != s_parts.size())
    throw argument_error("sum_of_products_ges: part counts differ");
  detail::require_pairwise_orthogonal(g_parts, "sum_of_products_ges");
  detail::require_certified_ces(s_measures, s_parts.size(), "sum_of_products_ges", "s_part");
  if (!certifies_ces(sigma_measure))
    throw precondition_error(
        "sum_of_products_ges: the direct sum of the right parts is not a certified CES (value " +
        std::to_string(sigma_measure.value) + (sigma_measure.stable ? "" : ", unstable") + ")");

  std::vector<Subspace> terms;
  terms.reserve(s_parts.size());
  for (std::size_t i = 0; i < s_parts.size(); ++i)
    terms.push_back(tensor(s_parts[i], g_parts[i]));
  return join(direct_sum(terms), JoinSpec{1});
}

inline Subspace sum_of_products_ges(const std::vector<Subspace>& s_parts,
                                    const std::vector<Subspace>& g_parts,
                                    const OptimizerPolicy& opt) {
  std::vector<MeasureReport> measures;
  measures.reserve(s_parts.size());
  for (const Subspace& s : s_parts) measures.push_back(subspace_geometric_measure(s, opt));
  const Subspace sigma = direct_sum(g_parts);
  return sum_of_products_ges(s_parts, g_parts, measures, subspace_geometric_measure(sigma, opt));
}

// Span of joined products ψᵢ ⊗ χᵢ: entangled left factors paired with mutually
// orthogonal right factors that span a certified CES give a GES of dimension
// equal to the pair count.
inline Subspace product_pair_span(const std::vector<PureState>& psis,
                                  const std::vector<PureState>& chis,
                                  const OptimizerPolicy& opt) {
  if (psis.empty() || psis.size() != chis.size())
    throw argument_error("product_pair_span: need matching nonempty lists");
  const Bipartition left_cut({0}, 2);
  for (std::size_t i = 0; i < psis.size(); ++i) {
    if (psis[i].profile().num_parties() != 2 || chis[i].profile().num_parties() != 2)
      throw argument_error("product_pair_span: states must be bipartite");
    if (geometric_measure_state(psis[i], left_cut) <= numeric_policy().ces_threshold)
      throw precondition_error("product_pair_span: psi " + std::to_string(i) +
                               " is not entangled");
  }
  for (std::size_t i = 0; i < chis.size(); ++i)
    for (std::size_t j = i + 1; j < chis.size(); ++j) {
      const double overlap = std::abs(chis[i].amplitudes().dot(chis[j].amplitudes()));
      if (overlap > numeric_policy().summand_orthogonality)
        throw precondition_error("product_pair_span: chis " + std::to_string(i) + " and " +
                                 std::to_string(j) + " are not orthogonal");
    }
  const MeasureReport chi_span_measure =
      subspace_geometric_measure(from_span(chis), opt);
  if (!certifies_ces(chi_span_measure))
    throw precondition_error("product_pair_span: the span of the chis is not a certified CES");

  std::vector<PureState> products;
  products.reserve(psis.size());
  for (std::size_t i = 0; i < psis.size(); ++i) {
    Vector v = kron(psis[i].amplitudes(), chis[i].amplitudes());
    std::vector<int> dims = psis[i].profile().dims();
    const auto& cd = chis[i].profile().dims();
    dims.insert(dims.end(), cd.begin(), cd.end());
    products.push_back(join(PureState(std::move(v), DimProfile(std::move(dims))), JoinSpec{1}));
  }
  Subspace span = from_span(products);
  if (span.dim() != static_cast<Index>(products.size()))
    throw precondition_error("product_pair_span: products are linearly dependent");
  return span;
}

// ------------------------------ Werner family --------------------------------

// Conversions between the mixing parameter p ∈ [−1, 1] and the antisymmetric
// weight s ∈ [0, 1]:  2s / (d(d−1)) = (1 − p) / (d(p + d)).
inline double p_to_s(double p, int d) {
  if (d < 2) throw argument_error("p_to_s: d must be >= 2");
  if (p < -1.0 || p > 1.0) throw argument_error("p_to_s: p outside [-1, 1]");
  const double denom = p + d;
  if (std::abs(denom) < 1e-14) throw argument_error("p_to_s: degenerate parameter p = -d");
  return (d - 1) * (1.0 - p) / (2.0 * denom);
}

inline double s_to_p(double s, int d) {
  if (d < 2) throw argument_error("s_to_p: d must be >= 2");
  if (s < 0.0 || s > 1.0) throw argument_error("s_to_p: s outside [0, 1]");
  const double denom = 2.0 * s + d - 1;
  if (std::abs(denom) < 1e-14) throw argument_error("s_to_p: degenerate parameters");
  return ((d - 1) - 2.0 * s * d) / denom;
}

struct WernerParams {
  int d;
  double s;  // antisymmetric weight
  double p;  // mixing parameter

  static WernerParams from_s(int d, double s) { return WernerParams{d, s, s_to_p(s, d)}; }
  static WernerParams from_p(int d, double p) { return WernerParams{d, p_to_s(p, d), p}; }
};

// ρ_W(s,d) = 2(1−s)/(d(d+1)) Π_S + 2s/(d(d−1)) Π_A, with Tr(ρ Π_A) = s.
inline DensityOperator werner_state(const WernerParams& params) {
  const int d = params.d;
  if (d < 2) throw argument_error("werner_state: d must be >= 2");
  if (params.s < 0.0 || params.s > 1.0) throw argument_error("werner_state: s outside [0, 1]");
  const Index dim = static_cast<Index>(d) * d;
  const Matrix swap = swap_operator(d);
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix proj_sym = (id + swap) / 2.0;
  const Matrix proj_anti = (id - swap) / 2.0;
  const double a = 2.0 * (1.0 - params.s) / (d * (d + 1.0));
  const double b = 2.0 * params.s / (d * (d - 1.0));
  return DensityOperator(a * proj_sym + b * proj_anti, DimProfile({d, d}));
}

// Upper boundary, in p, of the certified square domain of genuine entanglement
// for a joined pair of Werner states: (d(1−√2) − 1) / (√2 + d − 1). Equals
// s_to_p(1/√2, d) and tends to 1 − √2 as d grows.
inline double werner_ge_threshold(int d) {
  if (d < 2) throw argument_error("werner_ge_threshold: d must be >= 2");
  const double sqrt2 = std::sqrt(2.0);
  return (d * (1.0 - sqrt2) - 1.0) / (sqrt2 + d - 1.0);
}

}  // namespace gesforge
