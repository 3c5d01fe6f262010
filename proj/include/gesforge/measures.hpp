// measures.hpp — geometric entanglement measures: Schmidt-based state measures,
// subspace measures via seesaw product-overlap maximization, the projector
// witness, and the derived certification conditions and bounds.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gesforge/subspace.hpp"

namespace gesforge {

// ------------------------------ optimizer -----------------------------------

struct OptimizerPolicy {
  int restarts = 64;
  int max_iters = 500;         // per restart
  double conv_tol = 1e-10;     // on objective increase
  std::uint64_t seed = 0xA5A5;
  int agreement_count = 5;     // restarts that must agree within 1e-7 for "stable"

  void validate() const {
    if (restarts < 1 || max_iters < 1 || !(conv_tol > 0.0) || agreement_count < 1)
      throw argument_error("OptimizerPolicy: all fields must be positive");
  }
};

inline constexpr double kRestartAgreementTol = 1e-7;

struct MeasureReport {
  double value;              // in [0, 1]
  PureState witness_vector;  // state achieving the reported value
  bool stable;
  int restarts_agreeing;
};

// Outcome of the product-overlap seesaw on a bipartite grouping.
struct ProductOverlapResult {
  double value = 0.0;     // best overlap found (a certified lower bound)
  Vector left;            // unit vector a
  Vector right;           // unit vector b
  bool stable = false;
  int restarts_agreeing = 0;
  std::vector<double> objective_trace;  // per-half-step objectives, best restart
};

namespace detail {

// Seesaw maximizing  f(a,b) = Σ_r |⟨q_r | a ⊗ b⟩|²  over unit product vectors,
// where q_r are the orthonormal columns of `basis` reshaped to d_left x d_right.
// Fixing one side reduces the other to the top eigenvector of a compressed
// PSD matrix, so the objective never decreases.
inline ProductOverlapResult seesaw_overlap(const Matrix& basis, Index d_left, Index d_right,
                                           const OptimizerPolicy& opt) {
  opt.validate();
  if (basis.rows() != d_left * d_right)
    throw argument_error("seesaw: basis rows do not match the factor dimensions");
  const Index k = basis.cols();

  // Per-column row-major views V_r with V_r(i,j) = q_r[i*d_right + j].
  std::vector<Matrix> views;
  views.reserve(static_cast<std::size_t>(k));
  for (Index r = 0; r < k; ++r) {
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        view(basis.col(r).data(), d_left, d_right);
    views.emplace_back(view);
  }

  struct Restart {
    double value;
    Vector a, b;
    std::vector<double> trace;
  };

  auto run_restart = [&](std::uint64_t seed) {
    SplitMix64 rng(seed);
    Vector a = random_unit_vector(d_left, rng);
    Vector b = Vector::Unit(d_right, 0);
    Restart res{0.0, a, b, {}};
    double prev = -1.0;
    for (int it = 0; it < opt.max_iters; ++it) {
      // fix a: rows w_r = aᵀ V_r*; maximize b† (W†W) b
      Matrix w(k, d_right);
      for (Index r = 0; r < k; ++r)
        w.row(r) = a.transpose() * views[static_cast<std::size_t>(r)].conjugate();
      Eigen::SelfAdjointEigenSolver<Matrix> eb(w.adjoint() * w);
      b = eb.eigenvectors().col(d_right - 1);
      double value = eb.eigenvalues()(d_right - 1);
      if (value < prev - 1e-12) throw std::logic_error("seesaw: objective decreased");
      res.trace.push_back(value);

      // fix b: cols u_r = V_r* b; maximize a† conj(UU†) a
      Matrix u(d_left, k);
      for (Index r = 0; r < k; ++r)
        u.col(r) = views[static_cast<std::size_t>(r)].conjugate() * b;
      Eigen::SelfAdjointEigenSolver<Matrix> ea(Matrix((u * u.adjoint()).conjugate()));
      a = ea.eigenvectors().col(d_left - 1);
      value = ea.eigenvalues()(d_left - 1);
      if (value < res.trace.back() - 1e-12) throw std::logic_error("seesaw: objective decreased");
      res.trace.push_back(value);

      if (value - prev < opt.conv_tol && it > 0) {
        res.value = value;
        res.a = a;
        res.b = b;
        return res;
      }
      prev = value;
    }
    res.value = res.trace.empty() ? 0.0 : res.trace.back();
    res.a = a;
    res.b = b;
    return res;
  };

  ProductOverlapResult out;
  std::vector<double> finals;
  finals.reserve(static_cast<std::size_t>(opt.restarts));
  for (int r = 0; r < opt.restarts; ++r) {
    Restart res = run_restart(derived_seed(opt.seed, static_cast<std::uint64_t>(r)));
    finals.push_back(res.value);
    if (r == 0 || res.value > out.value) {
      out.value = res.value;
      out.left = std::move(res.a);
      out.right = std::move(res.b);
      out.objective_trace = std::move(res.trace);
    }
  }
  for (double f : finals)
    if (out.value - f <= kRestartAgreementTol) ++out.restarts_agreeing;
  out.stable = out.restarts_agreeing >= opt.agreement_count;
  return out;
}

inline DimProfile grouped_profile(Index d_left, Index d_right) {
  return DimProfile::permitting_unit({static_cast<int>(d_left), static_cast<int>(d_right)});
}

}  // namespace detail

// Maximal product overlap  max_{a,b} ⟨a⊗b| P |a⊗b⟩  for a projector P.
inline MeasureReport max_product_overlap(const Matrix& p, Index d_left, Index d_right,
                                         const OptimizerPolicy& opt) {
  if (p.rows() != p.cols() || p.rows() != d_left * d_right)
    throw argument_error("max_product_overlap: projector shape mismatch");
  const double idem = (p * p - p).cwiseAbs().maxCoeff();
  if (idem > numeric_policy().projector_idempotence)
    throw argument_error("max_product_overlap: input is not a projector (‖P²−P‖ = " +
                         std::to_string(idem) + ")");
  const EigResult eig = hermitian_eig(p);
  Index rank = 0;
  for (Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > 0.5) ++rank;
  if (rank == 0) {
    Vector e0 = kron(Vector(Vector::Unit(d_left, 0)), Vector(Vector::Unit(d_right, 0)));
    return MeasureReport{0.0, PureState(std::move(e0), detail::grouped_profile(d_left, d_right)),
                         true, opt.restarts};
  }
  const Matrix basis = eig.vectors.rightCols(rank);
  ProductOverlapResult res = detail::seesaw_overlap(basis, d_left, d_right, opt);
  Vector product = kron(res.left, res.right);
  return MeasureReport{res.value,
                       PureState::normalized(std::move(product), detail::grouped_profile(d_left, d_right)),
                       res.stable, res.restarts_agreeing};
}

// Geometric measure of a pure state across a cut: 1 − λ₁.
inline double geometric_measure_state(const PureState& psi, const Bipartition& cut) {
  const SchmidtDecomposition sd = schmidt(psi, cut);
  const double top = sd.coefficients(0);
  return 1.0 - top * top;
}

struct GmeStateResult {
  double value;
  Bipartition cut;  // minimizing cut, lexicographically smallest on ties
};

// Minimum of the geometric measure over all 2^(n-1) − 1 cuts.
inline GmeStateResult gme_measure_state(const PureState& psi) {
  if (psi.profile().num_parties() < 2)
    throw argument_error("gme_measure_state: need at least 2 parties");
  const auto cuts = all_bipartitions(psi.profile().num_parties());
  std::optional<GmeStateResult> best;
  for (const Bipartition& cut : cuts) {
    const double g = geometric_measure_state(psi, cut);
    if (!best || g < best->value) best = GmeStateResult{g, cut};
  }
  return *best;
}

// Geometric measure of a bipartite subspace: the measure of its least
// entangled vector, 1 − max product overlap with the range projector.
inline MeasureReport subspace_geometric_measure(const Subspace& s, const OptimizerPolicy& opt) {
  if (s.profile().num_parties() != 2)
    throw argument_error("subspace_geometric_measure: subspace is not bipartite");
  ProductOverlapResult res =
      detail::seesaw_overlap(s.basis(), s.profile().dim(0), s.profile().dim(1), opt);
  // least entangled direction: normalized projection of the product optimizer
  const Vector product = kron(res.left, res.right);
  const Vector inside = s.basis() * (s.basis().adjoint() * product);
  Vector witness = inside.norm() > numeric_policy().rank_cut ? Vector(inside / inside.norm())
                                                             : Vector(s.basis().col(0));
  return MeasureReport{1.0 - res.value, PureState::normalized(std::move(witness), s.profile()),
                       res.stable, res.restarts_agreeing};
}

// Measure across an arbitrary cut of a multipartite subspace: parties are
// grouped per the cut (members first) and the bipartite seesaw is applied.
inline MeasureReport subspace_measure_across_cut(const Subspace& s, const Bipartition& cut,
                                                 const OptimizerPolicy& opt) {
  if (cut.num_parties() != s.profile().num_parties())
    throw argument_error("subspace_measure_across_cut: cut does not match profile");
  std::vector<int> order = cut.members();
  const auto rest = cut.complement();
  order.insert(order.end(), rest.begin(), rest.end());

  const Subspace grouped = permute_parties(s, order);
  Index d_left = 1;
  for (int p : cut.members()) d_left *= s.profile().dim(p);
  const Index d_right = s.profile().total_dim() / d_left;

  ProductOverlapResult res = detail::seesaw_overlap(grouped.basis(), d_left, d_right, opt);

  // map the achieving subspace vector back to the original party order
  const Vector product = kron(res.left, res.right);
  const Vector inside = grouped.basis() * (grouped.basis().adjoint() * product);
  Vector witness = inside.norm() > numeric_policy().rank_cut ? Vector(inside / inside.norm())
                                                             : Vector(grouped.basis().col(0));
  std::vector<int> inverse(order.size());
  for (std::size_t k = 0; k < order.size(); ++k)
    inverse[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  const PureState grouped_witness(std::move(witness), grouped.profile());
  return MeasureReport{1.0 - res.value, permute_parties(grouped_witness, inverse),
                       res.stable, res.restarts_agreeing};
}

// Whether a measure report certifies a completely entangled subspace.
inline bool certifies_ces(const MeasureReport& report) {
  return report.stable && report.value > numeric_policy().ces_threshold;
}

// GME measure of a chain built from parts with the given component measures.
inline double ges_measure_chain(const std::vector<MeasureReport>& components) {
  if (components.empty()) throw argument_error("ges_measure_chain: no components");
  double m = components.front().value;
  for (const MeasureReport& r : components) m = std::min(m, r.value);
  return m;
}

// ------------------------------ witnesses -----------------------------------

// Tr(ρ Π_W) + G_GME(W) − 1; a strictly positive value certifies genuine
// entanglement of ρ.
inline double witness_value(const DensityOperator& rho, const Subspace& w, double g_gme_of_w) {
  if (rho.profile() != w.profile()) throw argument_error("witness_value: profile mismatch");
  if (g_gme_of_w < 0.0 || g_gme_of_w > 1.0)
    throw argument_error("witness_value: measure outside [0, 1]");
  const double overlap = (rho.matrix() * projector(w)).trace().real();
  return overlap + g_gme_of_w - 1.0;
}

struct ProductGeCondition {
  double lhs;       // Tr(α Π₁) · Tr(β Π₂)
  double rhs;       // 1 − min(G₁, G₂)
  bool certified;   // lhs > rhs
};

// Sufficient condition for genuine entanglement of the joined product α ⊗ β,
// given two bipartite CESs with measures g1 and g2. Uses the factorization
// Tr{α⊗β Π₁⊗Π₂} = Tr{α Π₁} Tr{β Π₂}.
inline ProductGeCondition product_state_ge_condition(const DensityOperator& alpha,
                                                     const DensityOperator& beta,
                                                     const Subspace& w1, const Subspace& w2,
                                                     double g1, double g2) {
  if (w1.profile().num_parties() != 2 || w2.profile().num_parties() != 2)
    throw argument_error("product_state_ge_condition: subspaces must be bipartite");
  if (alpha.profile() != w1.profile() || beta.profile() != w2.profile())
    throw argument_error("product_state_ge_condition: profile mismatch");
  const double o1 = (alpha.matrix() * projector(w1)).trace().real();
  const double o2 = (beta.matrix() * projector(w2)).trace().real();
  const double lhs = o1 * o2;
  const double rhs = 1.0 - std::min(g1, g2);
  return ProductGeCondition{lhs, rhs, lhs > rhs};
}

// Lower bound on the convex-roof extended negativity of a joined product:
// (o1·o2 + g12 − 1) / (2 (1 − g12)).
inline double cren_lower_bound(double overlap1, double overlap2, double g12) {
  if (g12 < 0.0 || g12 >= 1.0)
    throw argument_error("cren_lower_bound: g12 must lie in [0, 1)");
  if (overlap1 < 0.0 || overlap1 > 1.0 || overlap2 < 0.0 || overlap2 > 1.0)
    throw argument_error("cren_lower_bound: overlaps must lie in [0, 1]");
  return (overlap1 * overlap2 + g12 - 1.0) / (2.0 * (1.0 - g12));
}

struct CesSumCondition {
  double sum_minus;  // Σ G(ψᵢ) − (k − 1)
  bool certified;    // positive value certifies the span is a CES
};

// Sum-of-measures condition: k pairwise orthogonal bipartite states span a
// CES whenever Σ G(ψᵢ) − (k−1) > 0.
inline CesSumCondition ces_measure_sum_condition(const std::vector<PureState>& states) {
  if (states.empty()) throw argument_error("ces_measure_sum_condition: no states");
  const DimProfile& profile = states.front().profile();
  if (profile.num_parties() != 2)
    throw argument_error("ces_measure_sum_condition: states must be bipartite");
  for (const PureState& s : states)
    if (s.profile() != profile) throw argument_error("ces_measure_sum_condition: mixed profiles");
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      const double overlap = std::abs(states[i].amplitudes().dot(states[j].amplitudes()));
      if (overlap > numeric_policy().summand_orthogonality)
        throw precondition_error("ces_measure_sum_condition: states " + std::to_string(i) +
                                 " and " + std::to_string(j) + " are not orthogonal (|⟨ψi|ψj⟩| = " +
                                 std::to_string(overlap) + ")");
    }
  const Bipartition cut({0}, 2);
  double sum = 0.0;
  for (const PureState& s : states) sum += geometric_measure_state(s, cut);
  const double value = sum - (static_cast<double>(states.size()) - 1.0);
  return CesSumCondition{value, value > numeric_policy().certification_margin};
}

// Certifies genuine entanglement of the uniform mixture of joined products
// φᵢ ⊗ χᵢ: every φᵢ entangled and the χᵢ span a CES by the sum condition.
inline bool paired_mixture_ge_certify(
    const std::vector<std::pair<PureState, PureState>>& pairs) {
  if (pairs.empty()) throw argument_error("paired_mixture_ge_certify: no pairs");
  const Bipartition cut({0}, 2);
  std::string offenders;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].first.profile().num_parties() != 2 ||
        pairs[i].second.profile().num_parties() != 2)
      throw argument_error("paired_mixture_ge_certify: states must be bipartite");
    if (geometric_measure_state(pairs[i].first, cut) <= numeric_policy().ces_threshold)
      offenders += (offenders.empty() ? "" : ", ") + std::to_string(i);
  }
  if (!offenders.empty())
    throw precondition_error("paired_mixture_ge_certify: left state not entangled at pair(s) " +
                             offenders);
  std::vector<PureState> chis;
  chis.reserve(pairs.size());
  for (const auto& p : pairs) chis.push_back(p.second);
  return ces_measure_sum_condition(chis).certified;
}

}  // namespace gesforge
