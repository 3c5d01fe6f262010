// io.hpp — JSON schemas for subspaces, construction specs, and check reports;
// CSV emission for parameter scans.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gesforge/channel.hpp"
#include "gesforge/npt.hpp"

namespace gesforge {

using Json = nlohmann::json;

// 12 significant digits, stable across runs for identical inputs.
inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

// ------------------------------ subspace JSON --------------------------------
//
// { "dims": [int, ...], "basis": [ [ [re, im], ... ] per column ] }

inline Json complex_vector_to_json(const Vector& v) {
  Json column = Json::array();
  for (Index i = 0; i < v.size(); ++i)
    column.push_back(Json::array({v(i).real(), v(i).imag()}));
  return column;
}

inline Vector complex_vector_from_json(const Json& column) {
  if (!column.is_array() || column.empty())
    throw argument_error("subspace JSON: a vector must be a nonempty array");
  Vector v(static_cast<Index>(column.size()));
  for (std::size_t i = 0; i < column.size(); ++i) {
    const Json& entry = column[i];
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
      throw argument_error("subspace JSON: amplitude entries must be [re, im] pairs");
    v(static_cast<Index>(i)) = Complex(entry[0].get<double>(), entry[1].get<double>());
  }
  return v;
}

inline Json subspace_to_json(const Subspace& s) {
  Json out;
  out["dims"] = s.profile().dims();
  Json basis = Json::array();
  for (Index c = 0; c < s.dim(); ++c) basis.push_back(complex_vector_to_json(s.basis().col(c)));
  out["basis"] = std::move(basis);
  return out;
}

// Validates the invariants (positive dims, matching lengths, orthonormal
// columns) and rejects on failure.
inline Subspace subspace_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("basis"))
    throw argument_error("subspace JSON: expected an object with 'dims' and 'basis'");
  if (!j["dims"].is_array() || j["dims"].empty())
    throw argument_error("subspace JSON: 'dims' must be a nonempty array");
  std::vector<int> dims;
  for (const Json& d : j["dims"]) {
    if (!d.is_number_integer()) throw argument_error("subspace JSON: dims must be integers");
    dims.push_back(d.get<int>());
  }
  if (!j["basis"].is_array() || j["basis"].empty())
    throw argument_error("subspace JSON: 'basis' must be a nonempty array of columns");
  DimProfile profile(std::move(dims));
  Matrix basis(profile.total_dim(), static_cast<Index>(j["basis"].size()));
  for (std::size_t c = 0; c < j["basis"].size(); ++c) {
    Vector col = complex_vector_from_json(j["basis"][c]);
    if (col.size() != profile.total_dim())
      throw argument_error("subspace JSON: column length does not match dims");
    basis.col(static_cast<Index>(c)) = col;
  }
  return Subspace(std::move(basis), std::move(profile));  // orthonormality enforced here
}

inline void save_subspace(const Subspace& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw argument_error("cannot open " + path + " for writing");
  out << subspace_to_json(s).dump(2) << "\n";
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw argument_error("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw argument_error(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return j;
}

inline Subspace load_subspace(const std::string& path) {
  return subspace_from_json(load_json(path));
}

// ---------------------------- construction specs -----------------------------
//
// { "construct": "antisym" | "johnston" | "example_w" | "chain" | "span" |
//                "sum_products_ces" | "sum_products_ges" | "corollary6",
//   ...parameters }

inline Subspace build_from_spec(const Json& spec, const OptimizerPolicy& opt);

namespace detail {

inline int require_int(const Json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_number_integer())
    throw argument_error(std::string("construction spec: missing integer field '") + key + "'");
  return spec[key].get<int>();
}

inline std::vector<Subspace> build_parts(const Json& spec, const char* key,
                                         const OptimizerPolicy& opt) {
  if (!spec.contains(key) || !spec[key].is_array() || spec[key].empty())
    throw argument_error(std::string("construction spec: '") + key +
                         "' must be a nonempty array of specs");
  std::vector<Subspace> parts;
  for (const Json& p : spec[key]) parts.push_back(build_from_spec(p, opt));
  return parts;
}

inline std::vector<PureState> parse_states(const Json& spec, const char* key,
                                           const DimProfile& profile) {
  if (!spec.contains(key) || !spec[key].is_array() || spec[key].empty())
    throw argument_error(std::string("construction spec: '") + key +
                         "' must be a nonempty array of vectors");
  std::vector<PureState> states;
  for (const Json& v : spec[key])
    states.push_back(PureState::normalized(complex_vector_from_json(v), profile));
  return states;
}

}  // namespace detail

inline Subspace build_from_spec(const Json& spec, const OptimizerPolicy& opt) {
  if (!spec.is_object() || !spec.contains("construct") || !spec["construct"].is_string())
    throw argument_error("construction spec: expected an object with a 'construct' string");
  const std::string kind = spec["construct"].get<std::string>();

  if (kind == "antisym") return antisymmetric_subspace(detail::require_int(spec, "d"));
  if (kind == "johnston")
    return johnston_subspace(detail::require_int(spec, "d1"), detail::require_int(spec, "d2"));
  if (kind == "example_w") return example_w_basis();
  if (kind == "chain") return chain_ges(detail::build_parts(spec, "parts", opt));
  if (kind == "span") {
    if (!spec.contains("dims")) throw argument_error("construction spec: span needs 'dims'");
    std::vector<int> dims;
    for (const Json& d : spec["dims"]) dims.push_back(d.get<int>());
    DimProfile profile(std::move(dims));
    std::vector<Vector> vectors;
    for (const Json& v : spec["vectors"]) vectors.push_back(complex_vector_from_json(v));
    return from_span(profile, vectors);
  }
  if (kind == "sum_products_ces") {
    const auto s_parts = detail::build_parts(spec, "s_parts", opt);
    const int b2 = detail::require_int(spec, "b2_dim");
    if (!spec.contains("p_parts") || !spec["p_parts"].is_array())
      throw argument_error("construction spec: sum_products_ces needs 'p_parts' index lists");
    std::vector<Subspace> p_parts;
    for (const Json& part : spec["p_parts"]) {
      std::vector<Vector> vectors;
      for (const Json& idx : part) {
        const int i = idx.get<int>();
        if (i < 0 || i >= b2) throw argument_error("construction spec: p_parts index out of range");
        vectors.push_back(Vector(Vector::Unit(b2, i)));
      }
      p_parts.push_back(from_span(DimProfile({b2}), vectors));
    }
    return sum_of_products_ces(s_parts, p_parts, opt);
  }
  if (kind == "sum_products_ges") {
    const auto s_parts = detail::build_parts(spec, "s_parts", opt);
    const auto g_parts = detail::build_parts(spec, "g_parts", opt);
    return sum_of_products_ges(s_parts, g_parts, opt);
  }
  if (kind == "corollary6") {
    std::vector<int> psi_dims, chi_dims;
    for (const Json& d : spec.at("psi_dims")) psi_dims.push_back(d.get<int>());
    for (const Json& d : spec.at("chi_dims")) chi_dims.push_back(d.get<int>());
    if (psi_dims.size() != 2 || chi_dims.size() != 2)
      throw argument_error("construction spec: corollary6 dims must be bipartite");
    const auto psis = detail::parse_states(spec, "psis", DimProfile(std::move(psi_dims)));
    const auto chis = detail::parse_states(spec, "chis", DimProfile(std::move(chi_dims)));
    return product_pair_span(psis, chis, opt);
  }
  throw argument_error("construction spec: unknown construct '" + kind + "'");
}

// ------------------------------ report JSON ----------------------------------

inline Json measure_report_to_json(const MeasureReport& report) {
  Json out;
  out["value"] = report.value;
  out["stable"] = report.stable;
  out["restarts_agreeing"] = report.restarts_agreeing;
  out["witness"] = complex_vector_to_json(report.witness_vector.amplitudes());
  return out;
}

inline Json cut_to_json(const Bipartition& cut) {
  Json members = Json::array();
  for (int p : cut.members()) members.push_back(p);
  return members;
}

inline Json pt_report_to_json(const PTReport& report) {
  Json out;
  out["cut"] = cut_to_json(report.cut);
  out["min_eigenvalue"] = report.min_eigenvalue;
  out["witness_eigvec"] = complex_vector_to_json(report.witness_eigvec);
  return out;
}

inline Json npt_cut_report_to_json(const CutSampleReport& report) {
  Json out;
  out["cut"] = cut_to_json(report.cut);
  out["worst_min_eigenvalue"] = report.worst_min_eigenvalue;
  out["samples"] = report.samples;
  out["npt"] = report.all_npt;
  return out;
}

inline Json distill_witness_to_json(const DistillWitness& witness) {
  Json out;
  out["cut"] = cut_to_json(witness.cut);
  out["value"] = witness.value;
  out["witness"] = complex_vector_to_json(witness.psi.amplitudes());
  return out;
}

// ------------------------------- CSV scans -----------------------------------

struct WernerScanRow {
  double x1, x2;          // grid coordinates in the selected parameter
  double witness_value;   // s1·s2 − 1/2 after conversion to s
  bool certified;
};

// N x N grid over [0,1]² (s) or [−1,1]² (p), row-major in (x1, x2).
inline std::vector<WernerScanRow> werner_scan(int d, int grid, bool in_p_space) {
  if (grid < 2) throw argument_error("werner_scan: grid must be >= 2");
  const double lo = in_p_space ? -1.0 : 0.0;
  const double hi = 1.0;
  std::vector<WernerScanRow> rows;
  rows.reserve(static_cast<std::size_t>(grid) * grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double x1 = lo + (hi - lo) * i / (grid - 1);
      const double x2 = lo + (hi - lo) * j / (grid - 1);
      const double s1 = in_p_space ? p_to_s(x1, d) : x1;
      const double s2 = in_p_space ? p_to_s(x2, d) : x2;
      const double value = s1 * s2 - 0.5;
      rows.push_back(WernerScanRow{x1, x2, value, value > 0.0});
    }
  return rows;
}

inline std::string werner_scan_csv(const std::vector<WernerScanRow>& rows, bool in_p_space) {
  std::ostringstream out;
  const char* name = in_p_space ? "p" : "s";
  out << name << "1," << name << "2,witness_value,certified\n";
  for (const WernerScanRow& r : rows)
    out << format_real(r.x1) << "," << format_real(r.x2) << "," << format_real(r.witness_value)
        << "," << (r.certified ? 1 : 0) << "\n";
  return out.str();
}

}  // namespace gesforge
