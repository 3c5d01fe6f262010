#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "gesforge/io.hpp"
#include "test_helpers.hpp"

using namespace gesforge;
using gesforge::testing::bell_state;
using gesforge::testing::singlet_state;
using Catch::Approx;

namespace {

OptimizerPolicy quick_policy() {
  OptimizerPolicy opt;
  opt.restarts = 16;
  return opt;
}

}  // namespace

TEST_CASE("subspace JSON round trip preserves the projector") {
  const Subspace original = johnston_subspace(3, 3);
  const Json j = subspace_to_json(original);
  REQUIRE(j["dims"] == Json::array({3, 3}));
  REQUIRE(j["basis"].size() == 4);

  const Subspace back = subspace_from_json(j);
  REQUIRE(back.dim() == original.dim());
  REQUIRE(projector_distance(original, back) < 1e-12);

  // serialization is stable for identical inputs
  REQUIRE(subspace_to_json(original).dump() == j.dump());
}

TEST_CASE("subspace JSON rejects invalid input") {
  REQUIRE_THROWS_AS(subspace_from_json(Json::parse("{}")), argument_error);
  REQUIRE_THROWS_AS(subspace_from_json(Json::parse(R"({"dims": [2,2], "basis": []})")),
                    argument_error);
  REQUIRE_THROWS_AS(subspace_from_json(Json::parse(R"({"dims": [2,1], "basis": [[[1,0]]]})")),
                    argument_error);
  // column length mismatch
  REQUIRE_THROWS_AS(
      subspace_from_json(Json::parse(R"({"dims": [2,2], "basis": [[[1,0],[0,0]]]})")),
      argument_error);
  // orthonormality violation
  const Json bad = Json::parse(
      R"({"dims": [2,2], "basis": [[[1,0],[0,0],[0,0],[0,0]], [[1,0],[0,0],[0,0],[0,0]]]})");
  REQUIRE_THROWS_AS(subspace_from_json(bad), argument_error);
}

TEST_CASE("construction specs build the expected subspaces") {
  const OptimizerPolicy opt = quick_policy();

  const Subspace anti = build_from_spec(Json::parse(R"({"construct":"antisym","d":3})"), opt);
  REQUIRE(anti.dim() == 3);
  REQUIRE(projector_distance(anti, antisymmetric_subspace(3)) < 1e-12);

  const Subspace johnston =
      build_from_spec(Json::parse(R"({"construct":"johnston","d1":3,"d2":3})"), opt);
  REQUIRE(johnston.dim() == 4);

  const Subspace w = build_from_spec(Json::parse(R"({"construct":"example_w"})"), opt);
  REQUIRE(w.dim() == 16);
  REQUIRE(w.profile().dims() == std::vector<int>{3, 9, 3});

  const Subspace chain = build_from_spec(Json::parse(R"({
    "construct": "chain",
    "parts": [{"construct":"antisym","d":2}, {"construct":"antisym","d":2}]
  })"),
                                         opt);
  REQUIRE(chain.profile().dims() == std::vector<int>{2, 4, 2});
  REQUIRE(chain.dim() == 1);

  const Subspace span = build_from_spec(Json::parse(R"({
    "construct": "span",
    "dims": [2, 2],
    "vectors": [[[0,0],[1,0],[-1,0],[0,0]]]
  })"),
                                        opt);
  REQUIRE(span.dim() == 1);
  REQUIRE(projector_distance(span, from_span({singlet_state()})) < 1e-12);

  const Subspace sum = build_from_spec(Json::parse(R"({
    "construct": "sum_products_ces",
    "s_parts": [{"construct":"antisym","d":2}, {"construct":"antisym","d":2}],
    "b2_dim": 2,
    "p_parts": [[0],[1]]
  })"),
                                       opt);
  REQUIRE(sum.profile().dims() == std::vector<int>{2, 4});
  REQUIRE(sum.dim() == 2);

  const Subspace ges = build_from_spec(Json::parse(R"({
    "construct": "sum_products_ges",
    "s_parts": [{"construct":"antisym","d":2}],
    "g_parts": [{"construct":"antisym","d":2}]
  })"),
                                       opt);
  REQUIRE(ges.profile().dims() == std::vector<int>{2, 4, 2});

  const Subspace pairs = build_from_spec(Json::parse(R"({
    "construct": "corollary6",
    "psi_dims": [2, 2],
    "chi_dims": [2, 2],
    "psis": [[[1,0],[0,0],[0,0],[1,0]]],
    "chis": [[[0,0],[1,0],[-1,0],[0,0]]]
  })"),
                                         opt);
  REQUIRE(pairs.dim() == 1);
  REQUIRE(pairs.profile().dims() == std::vector<int>{2, 4, 2});

  REQUIRE_THROWS_AS(build_from_spec(Json::parse(R"({"construct":"unknown"})"), opt),
                    argument_error);
  REQUIRE_THROWS_AS(build_from_spec(Json::parse(R"({"construct":"antisym"})"), opt),
                    argument_error);
}

TEST_CASE("subspace files round trip on disk") {
  const std::string path = "/tmp/gesforge_test_subspace.json";
  const Subspace original = antisymmetric_subspace(3);
  save_subspace(original, path);
  const Subspace back = load_subspace(path);
  REQUIRE(projector_distance(original, back) < 1e-12);
  std::remove(path.c_str());

  REQUIRE_THROWS_AS(load_subspace("/tmp/gesforge_does_not_exist.json"), argument_error);

  const std::string bad_path = "/tmp/gesforge_bad.json";
  std::ofstream(bad_path) << "{ not json";
  REQUIRE_THROWS_AS(load_json(bad_path), argument_error);
  std::remove(bad_path.c_str());
}

TEST_CASE("werner scan rows") {
  const auto rows = werner_scan(2, 5, false);
  REQUIRE(rows.size() == 25);
  // s grid includes the endpoints
  REQUIRE(rows.front().x1 == 0.0);
  REQUIRE(rows.back().x1 == 1.0);

  // the (0.8, 0.8) point certifies with value 0.14
  bool found = false;
  for (const auto& r : werner_scan(2, 6, false)) {
    if (std::abs(r.x1 - 0.8) < 1e-12 && std::abs(r.x2 - 0.8) < 1e-12) {
      found = true;
      REQUIRE(r.witness_value == Approx(0.14).margin(1e-12));
      REQUIRE(r.certified);
    }
  }
  REQUIRE(found);

  // (0.7, 0.7) misses: 0.49 - 0.5 < 0
  for (const auto& r : werner_scan(2, 11, false)) {
    if (std::abs(r.x1 - 0.7) < 1e-12 && std::abs(r.x2 - 0.7) < 1e-12) {
      REQUIRE(r.witness_value == Approx(-0.01).margin(1e-12));
      REQUIRE_FALSE(r.certified);
    }
  }

  // p-space conversion and CSV shape
  const auto p_rows = werner_scan(2, 3, true);
  REQUIRE(p_rows.front().x1 == -1.0);
  REQUIRE(p_rows.front().witness_value == Approx(0.5).margin(1e-12));  // s1 = s2 = 1
  const std::string csv = werner_scan_csv(p_rows, true);
  REQUIRE(csv.rfind("p1,p2,witness_value,certified\n", 0) == 0);
  REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 10);

  REQUIRE_THROWS_AS(werner_scan(2, 1, false), argument_error);
}
