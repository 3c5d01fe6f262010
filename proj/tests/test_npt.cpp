#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gesforge/npt.hpp"
#include "test_helpers.hpp"

using namespace gesforge;
using gesforge::testing::bell_state;
using gesforge::testing::random_density;
using gesforge::testing::singlet_state;
using Catch::Approx;

namespace {

OptimizerPolicy quick_policy(std::uint64_t seed = 0xA5A5, int restarts = 12) {
  OptimizerPolicy opt;
  opt.restarts = restarts;
  opt.seed = seed;
  return opt;
}

DensityOperator bell_density() {
  const Vector v = bell_state().amplitudes();
  return DensityOperator(v * v.adjoint(), DimProfile({2, 2}));
}

}  // namespace

TEST_CASE("min_pt_eigenvalue") {
  // separable product states stay PSD under partial transposition
  const DensityOperator rho = random_density(DimProfile({2}), 2, 11);
  const DensityOperator sigma = random_density(DimProfile({2}), 2, 12);
  const DensityOperator product(kron(rho.matrix(), sigma.matrix()), DimProfile({2, 2}));
  REQUIRE(min_pt_eigenvalue(product, Bipartition({0}, 2)).min_eigenvalue > -1e-12);

  const PTReport bell = min_pt_eigenvalue(bell_density(), Bipartition({0}, 2));
  REQUIRE(bell.min_eigenvalue == Approx(-0.5));

  // the eigenvector achieves the reported value
  const Matrix pt = partial_transpose(bell_density(), Bipartition({0}, 2));
  const double rayleigh =
      (bell.witness_eigvec.adjoint() * pt * bell.witness_eigvec)(0).real();
  REQUIRE(rayleigh == Approx(bell.min_eigenvalue).margin(1e-12));
}

TEST_CASE("werner PT spectrum follows the closed form") {
  // rho = alpha I + beta SWAP has PT spectrum {alpha (x d^2-1), alpha + d beta}
  for (int d : {2, 3}) {
    for (double s : {0.0, 0.2, 0.4, 0.5, 0.6, 0.8, 1.0}) {
      const DensityOperator rho = werner_state(WernerParams::from_s(d, s));
      const double a = 2.0 * (1.0 - s) / (d * (d + 1.0));
      const double b = 2.0 * s / (d * (d - 1.0));
      const double alpha = (a + b) / 2.0;
      const double beta = (a - b) / 2.0;
      const double expected_min = std::min(alpha, alpha + d * beta);
      const PTReport report = min_pt_eigenvalue(rho, Bipartition({0}, 2));
      REQUIRE(report.min_eigenvalue == Approx(expected_min).margin(1e-12));
      // NPT exactly above s = 1/2
      REQUIRE((report.min_eigenvalue < -1e-9) == (s > 0.5));
    }
  }
}

TEST_CASE("min PT eigenvalue is cut-complement symmetric") {
  const DimProfile profile({2, 3, 2});
  for (std::uint64_t k = 0; k < 8; ++k) {
    const DensityOperator rho = random_density(profile, 3, 100 + k);
    for (const Bipartition& cut : all_bipartitions(3)) {
      const double a = min_pt_eigenvalue(rho, cut).min_eigenvalue;
      const double b = min_pt_eigenvalue(rho, cut.complement_cut()).min_eigenvalue;
      REQUIRE(a == Approx(b).margin(1e-10));
    }
  }
}

TEST_CASE("sample_state_on_subspace") {
  const Subspace w = example_w_basis();

  const DensityOperator pure = sample_state_on_subspace(w, 1, 77);
  const EigResult pure_eig = hermitian_eig(pure.matrix());
  int nonzero = 0;
  for (Index i = 0; i < pure_eig.values.size(); ++i)
    if (pure_eig.values(i) > 1e-10) ++nonzero;
  REQUIRE(nonzero == 1);

  for (int rank : {1, 4, 16}) {
    const DensityOperator rho = sample_state_on_subspace(w, rank, 1000 + rank);
    REQUIRE((rho.matrix() * projector(w)).trace().real() == Approx(1.0).margin(1e-10));
    const EigResult eig = hermitian_eig(rho.matrix());
    int support = 0;
    for (Index i = 0; i < eig.values.size(); ++i)
      if (eig.values(i) > 1e-12) ++support;
    REQUIRE(support == rank);
  }

  REQUIRE_THROWS_AS(sample_state_on_subspace(w, 0, 1), argument_error);
  REQUIRE_THROWS_AS(sample_state_on_subspace(w, 17, 1), argument_error);
}

TEST_CASE("npt_subspace_check") {
  const Subspace w = example_w_basis();
  const auto reports = npt_subspace_check(w, all_bipartitions(3), 12, 0xA5A5);
  REQUIRE(reports.size() == 3);
  for (const CutSampleReport& r : reports) {
    REQUIRE(r.all_npt);
    REQUIRE(r.worst_min_eigenvalue < -1e-9);
  }

  // the full space holds separable states: PPT samples must be found
  const Subspace full(Matrix(Matrix::Identity(4, 4)), DimProfile({2, 2}));
  const auto trivial = npt_subspace_check(full, all_bipartitions(2), 12, 0xA5A5);
  REQUIRE_FALSE(trivial.front().all_npt);

  // the singlet span: every sample is the singlet itself, min eigenvalue -1/2
  const Subspace singlet_span = from_span({singlet_state()});
  const auto singlet_reports = npt_subspace_check(singlet_span, all_bipartitions(2), 4, 1);
  REQUIRE(singlet_reports.front().worst_min_eigenvalue == Approx(-0.5).margin(1e-10));
}

TEST_CASE("rank2_witness_search on the Bell state") {
  const auto witness = rank2_witness_search(bell_density(), Bipartition({0}, 2), quick_policy());
  REQUIRE(witness.has_value());
  REQUIRE(witness->value == Approx(-0.5).margin(1e-9));

  // independent recomputation and the rank constraint
  const Matrix pt = partial_transpose(bell_density(), Bipartition({0}, 2));
  const double recomputed =
      (witness->psi.amplitudes().adjoint() * pt * witness->psi.amplitudes())(0).real();
  REQUIRE(recomputed == Approx(witness->value).margin(1e-10));
  const SchmidtDecomposition sd = schmidt(witness->psi, Bipartition({0}, 2));
  REQUIRE((sd.coefficients.size() <= 2 || sd.coefficients(2) < 1e-9));
}

TEST_CASE("rank2_witness_search returns none on separable states") {
  const DensityOperator rho = random_density(DimProfile({2}), 2, 21);
  const DensityOperator sigma = random_density(DimProfile({3}), 3, 22);
  const DensityOperator product(kron(rho.matrix(), sigma.matrix()), DimProfile({2, 3}));
  REQUIRE_FALSE(rank2_witness_search(product, Bipartition({0}, 2), quick_policy()).has_value());
}

TEST_CASE("rank2_witness_search certifies sampled states on the 16-dim example") {
  const Subspace w = example_w_basis();
  for (std::uint64_t k = 0; k < 3; ++k) {
    SplitMix64 rng(3000 + k);
    const int rank = static_cast<int>(rng.uniform_int(1, 16));
    const DensityOperator rho = sample_state_on_subspace(w, rank, rng.next());
    for (const Bipartition& cut : all_bipartitions(3)) {
      const auto witness = rank2_witness_search(rho, cut, quick_policy(k));
      REQUIRE(witness.has_value());
      REQUIRE(witness->value < -1e-10);
      const SchmidtDecomposition sd = schmidt(witness->psi, cut);
      REQUIRE((sd.coefficients.size() <= 2 || sd.coefficients(2) < 1e-9));
    }
  }
}

TEST_CASE("factored_witness_search on a pure two-singlet chain") {
  const Subspace singlet_span = from_span({singlet_state()});
  const Subspace chain = chain_ges({singlet_span, singlet_span});
  const DensityOperator rho = sample_state_on_subspace(chain, 1, 5);  // the chain state itself

  const auto report = factored_witness_search(rho, Bipartition({0}, 3), singlet_span,
                                              singlet_span, 16, quick_policy());
  REQUIRE(report.support_ok);
  REQUIRE(report.witness.has_value());
  REQUIRE(report.witness->value < -1e-10);

  const Matrix pt = partial_transpose(rho, Bipartition({0}, 3));
  const double recomputed =
      (report.witness->psi.amplitudes().adjoint() * pt * report.witness->psi.amplitudes())(0)
          .real();
  REQUIRE(recomputed == Approx(report.witness->value).margin(1e-10));

  // conditioning on tau = singlet keeps the full weight (c = 1), so the
  // assembled witness Gamma = Phi (x) singlet reaches -1/2, well below -1/8
  const DensityOperator sigma(
      singlet_state().amplitudes() * singlet_state().amplitudes().adjoint(), DimProfile({2, 2}));
  const auto phi = rank2_witness_search(sigma, Bipartition({0}, 2), quick_policy());
  REQUIRE(phi.has_value());
  const Vector gamma = kron(phi->psi.amplitudes(), singlet_state().amplitudes());
  const double explicit_value = (gamma.adjoint() * pt * gamma)(0).real();
  REQUIRE(explicit_value <= -0.125);
  REQUIRE(explicit_value == Approx(-0.5).margin(1e-9));
}

TEST_CASE("factored_witness_search matches the general search on every cut") {
  const Subspace johnston = johnston_subspace(3, 3);
  const Subspace w = chain_ges({johnston, johnston});
  const DensityOperator rho = sample_state_on_subspace(w, 16, 99);

  for (const Bipartition& cut : all_bipartitions(3)) {
    const auto factored =
        factored_witness_search(rho, cut, johnston, johnston, 16, quick_policy());
    REQUIRE(factored.support_ok);
    REQUIRE(factored.witness.has_value());
    REQUIRE(factored.witness->value < -1e-10);

    const auto general = rank2_witness_search(rho, cut, quick_policy());
    REQUIRE(general.has_value());
    // the factored witness is a feasible point of the general search
    REQUIRE(general->value <= factored.witness->value + 1e-9);

    const SchmidtDecomposition sd = schmidt(factored.witness->psi, cut);
    REQUIRE((sd.coefficients.size() <= 2 || sd.coefficients(2) < 1e-9));
  }
}

TEST_CASE("factored_witness_search reports missing support") {
  const Subspace singlet_span = from_span({singlet_state()});
  const DensityOperator separable(Matrix(Matrix::Identity(16, 16) / 16.0),
                                  DimProfile({2, 4, 2}));
  const auto report = factored_witness_search(separable, Bipartition({0}, 3), singlet_span,
                                              singlet_span, 8, quick_policy());
  REQUIRE_FALSE(report.support_ok);
  REQUIRE_FALSE(report.witness.has_value());
  REQUIRE(report.support_overlap < 0.5);
}
