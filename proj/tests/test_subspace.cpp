#include <catch2/catch_amalgamated.hpp>

#include "gesforge/constructions.hpp"
#include "gesforge/subspace.hpp"
#include "test_helpers.hpp"

using namespace gesforge;
using gesforge::testing::bell_state;
using gesforge::testing::random_pure;
using gesforge::testing::singlet_state;
using Catch::Approx;

namespace {

Subspace random_subspace(const DimProfile& profile, int dim, std::uint64_t seed) {
  std::vector<Vector> vectors;
  SplitMix64 rng(seed);
  for (int i = 0; i < dim; ++i) vectors.push_back(gaussian_vector(profile.total_dim(), rng));
  return from_span(profile, vectors);
}

}  // namespace

TEST_CASE("from_span basics") {
  Vector v(4);
  v << 0, 1, -1, 0;  // unnormalized singlet
  const Subspace s = from_span(DimProfile({2, 2}), {v});
  REQUIRE(s.dim() == 1);
  REQUIRE(std::abs(std::abs(s.basis()(1, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);

  // the two-term generating family at 3x3 spans four dimensions
  const Subspace johnston = from_span(johnston_vectors(3, 3));
  REQUIRE(johnston.dim() == 4);

  // rank cut: a vector equal up to 1e-14 adds nothing
  Vector a = Vector::Zero(4), b = Vector::Zero(4);
  a(0) = 1;
  b(0) = 1;
  b(3) = 1e-14;
  REQUIRE(from_span(DimProfile({2, 2}), {a, b}).dim() == 1);

  REQUIRE_THROWS_AS(from_span(DimProfile({2, 2}), {Vector(Vector::Zero(4))}), argument_error);
}

TEST_CASE("tensor of subspaces") {
  const Subspace bell = from_span({bell_state()});
  const Subspace product = tensor(bell, bell);
  REQUIRE(product.dim() == 1);
  REQUIRE(product.profile().dims() == std::vector<int>{2, 2, 2, 2});
  const Vector expected = kron(bell_state().amplitudes(), bell_state().amplitudes());
  REQUIRE(std::abs(std::abs((product.basis().col(0).adjoint() * expected)(0)) - 1.0) < 1e-12);

  const Subspace johnston = johnston_subspace(3, 3);
  REQUIRE(tensor(johnston, johnston).dim() == 16);

  for (std::uint64_t k = 0; k < 5; ++k) {
    SplitMix64 rng(50 + k);
    const int da = static_cast<int>(rng.uniform_int(1, 3));
    const int db = static_cast<int>(rng.uniform_int(1, 3));
    const Subspace a = random_subspace(DimProfile({2, 3}), da, rng.next());
    const Subspace b = random_subspace(DimProfile({2, 2}), db, rng.next());
    const Subspace t = tensor(a, b);
    REQUIRE(t.dim() == a.dim() * b.dim());
    // orthonormal without re-orthonormalization
    const Matrix gram = t.basis().adjoint() * t.basis();
    REQUIRE((gram - Matrix::Identity(t.dim(), t.dim())).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("join is a relabeling in lexicographic order") {
  // |i>|j> -> |3i+j> on a 3x3 pair
  const DimProfile pair({3, 3});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vector v = Vector::Zero(9);
      v(i * 3 + j) = 1.0;
      const PureState joined = join(PureState(v, pair), JoinSpec{0});
      REQUIRE(joined.profile().dims() == std::vector<int>{9});
      REQUIRE(joined.amplitudes()(3 * i + j).real() == 1.0);
    }

  // |0>|0> on 2x2 -> |0> on dim 4
  Vector v00 = Vector::Zero(4);
  v00(0) = 1.0;
  const PureState j00 = join(PureState(v00, DimProfile({2, 2})), JoinSpec{0});
  REQUIRE(j00.profile().dims() == std::vector<int>{4});
  REQUIRE(j00.amplitudes()(0).real() == 1.0);

  // joining leaves Schmidt data across other cuts unchanged
  const DimProfile profile({2, 2, 2, 2});
  const PureState psi = random_pure(profile, 91);
  const SchmidtDecomposition before = schmidt(psi, Bipartition({0}, 4));
  const PureState joined = join(psi, JoinSpec{1});
  const SchmidtDecomposition after = schmidt(joined, Bipartition({0}, 3));
  REQUIRE(before.coefficients.size() == after.coefficients.size());
  for (Index r = 0; r < before.coefficients.size(); ++r)
    REQUIRE(before.coefficients(r) == Approx(after.coefficients(r)).margin(1e-12));

  const Subspace s = random_subspace(profile, 3, 17);
  REQUIRE_THROWS_AS(join(s, JoinSpec{3}), argument_error);
  REQUIRE_THROWS_AS(join(s, JoinSpec{-1}), argument_error);
}

TEST_CASE("direct_sum") {
  Vector minus(4), plus(4);
  minus << 0, 1, -1, 0;
  plus << 0, 1, 1, 0;
  const DimProfile pair({2, 2});
  const Subspace a = from_span(pair, {minus});
  const Subspace b = from_span(pair, {plus});
  REQUIRE(direct_sum({a, b}).dim() == 2);

  // antisymmetric (+) symmetric = the full space
  for (int d : {2, 3}) {
    const Subspace anti = antisymmetric_subspace(d);
    std::vector<Vector> sym_vectors;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        Vector v = Vector::Zero(d * d);
        v(i * d + j) += 1.0;
        v(j * d + i) += 1.0;
        sym_vectors.push_back(v);
      }
    const Subspace sym = from_span(DimProfile({d, d}), sym_vectors);
    const Subspace full = direct_sum({anti, sym});
    REQUIRE(full.dim() == d * d);
  }

  const Subspace overlapping = from_span(pair, {minus, Vector(Vector::Unit(4, 0))});
  REQUIRE_THROWS_AS(direct_sum({a, overlapping}), precondition_error);
}

TEST_CASE("projector") {
  const PureState psi = random_pure(DimProfile({2, 3}), 7);
  const Subspace s = from_span({psi});
  const Matrix p = projector(s);
  REQUIRE((p - psi.amplitudes() * psi.amplitudes().adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  for (int d : {2, 3, 4}) {
    const Matrix pa = projector(antisymmetric_subspace(d));
    REQUIRE(pa.trace().real() == Approx(d * (d - 1) / 2.0));
  }

  const Subspace r = random_subspace(DimProfile({2, 2, 2}), 3, 23);
  const Matrix pr = projector(r);
  REQUIRE((pr * r.basis() - r.basis()).cwiseAbs().maxCoeff() < 1e-12);
  REQUIRE((pr * pr - pr).cwiseAbs().maxCoeff() < 1e-10);
  REQUIRE((pr - pr.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

  // projector spectrum is {0,1} with multiplicity dim at 1
  const EigResult eig = hermitian_eig(pr);
  int ones = 0;
  for (Index i = 0; i < eig.values.size(); ++i) {
    REQUIRE((std::abs(eig.values(i)) < 1e-9 || std::abs(eig.values(i) - 1.0) < 1e-9));
    if (eig.values(i) > 0.5) ++ones;
  }
  REQUIRE(ones == r.dim());
}

TEST_CASE("contains") {
  const Subspace s = random_subspace(DimProfile({2, 3}), 2, 77);
  const PureState col0(s.basis().col(0), s.profile());
  REQUIRE(contains(s, col0, 1e-10));

  // orthogonal-complement vector
  SplitMix64 rng(78);
  Vector outside = gaussian_vector(6, rng);
  outside -= s.basis() * (s.basis().adjoint() * outside);
  const PureState out_state = PureState::normalized(outside, s.profile());
  REQUIRE_FALSE(contains(s, out_state, 1e-8));

  // random combination of basis columns
  Vector combo = s.basis() * gaussian_vector(s.dim(), rng);
  REQUIRE(contains(s, PureState::normalized(combo, s.profile()), 1e-10));
}

TEST_CASE("chain folding order does not matter") {
  const Subspace p1 = random_subspace(DimProfile({2, 2}), 1, 301);
  const Subspace p2 = random_subspace(DimProfile({2, 3}), 2, 302);
  const Subspace p3 = random_subspace(DimProfile({3, 2}), 1, 303);

  // left fold
  Subspace left = join(tensor(p1, p2), JoinSpec{1});
  left = join(tensor(left, p3), JoinSpec{2});

  // right fold
  Subspace right_tail = join(tensor(p2, p3), JoinSpec{1});
  Subspace right = join(tensor(p1, right_tail), JoinSpec{1});

  REQUIRE(left.profile() == right.profile());
  REQUIRE(projector_distance(left, right) <= 1e-10);
  REQUIRE(same_subspace(left, right));
}

TEST_CASE("subspace validation") {
  Matrix not_orthonormal(4, 2);
  not_orthonormal.setZero();
  not_orthonormal(0, 0) = 1.0;
  not_orthonormal(0, 1) = 1.0;
  REQUIRE_THROWS_AS(Subspace(not_orthonormal, DimProfile({2, 2})), argument_error);

  Matrix too_many = Matrix::Identity(4, 4);
  REQUIRE_NOTHROW(Subspace(too_many, DimProfile({2, 2})));
  Matrix wrong_rows = Matrix::Identity(3, 1);
  REQUIRE_THROWS_AS(Subspace(wrong_rows, DimProfile({2, 2})), argument_error);
}
