// gesforge — construct entangled subspaces, compute their measures, scan the
// Werner witness domain, and run NPT/distillability checks.
//
// Exit codes: 0 success, 2 input error, 3 construction precondition failure,
// 4 check failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gesforge/io.hpp"
#include "gesforge/verify.hpp"

namespace {

using namespace gesforge;

constexpr std::uint64_t kDefaultSeed = 0xA5A5;

std::uint64_t seed_from_env_or(std::uint64_t fallback) {
  if (const char* env = std::getenv("GESFORGE_SEED")) {
    try {
      return std::stoull(std::string(env), nullptr, 0);
    } catch (const std::exception&) {
      throw argument_error("GESFORGE_SEED is not a valid integer");
    }
  }
  return fallback;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw argument_error("cannot open " + path + " for writing");
  out << text;
}

std::vector<int> parse_cut_list(const std::string& cut_flag) {
  std::vector<int> members;
  std::stringstream stream(cut_flag);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      members.push_back(std::stoi(token));
    } catch (const std::exception&) {
      throw argument_error("--cut expects a comma-separated list of party indices");
    }
  }
  if (members.empty()) throw argument_error("--cut expects at least one party index");
  return members;
}

struct CommonOptions {
  std::uint64_t seed = kDefaultSeed;
  int restarts = 64;
  std::string output;

  OptimizerPolicy policy() const {
    OptimizerPolicy opt;
    opt.restarts = restarts;
    opt.seed = seed;
    return opt;
  }
};

int run_construct(const std::string& spec_path, const CommonOptions& common) {
  const Subspace s = build_from_spec(load_json(spec_path), common.policy());
  write_output(subspace_to_json(s).dump(2) + "\n", common.output);
  return 0;
}

int run_measure(const std::string& subspace_path, const std::string& cut_flag, bool all_cuts,
                const CommonOptions& common) {
  const Subspace s = load_subspace(subspace_path);
  const OptimizerPolicy opt = common.policy();

  std::vector<Bipartition> cuts;
  if (!cut_flag.empty()) {
    cuts.emplace_back(parse_cut_list(cut_flag), s.profile().num_parties());
  } else if (all_cuts || s.profile().num_parties() > 2) {
    cuts = all_bipartitions(s.profile().num_parties());
  } else {
    cuts.emplace_back(std::vector<int>{0}, 2);
  }

  Json out;
  out["dims"] = s.profile().dims();
  Json reports = Json::array();
  double min_value = 1.0;
  for (const Bipartition& cut : cuts) {
    const MeasureReport r = subspace_measure_across_cut(s, cut, opt);
    Json entry = measure_report_to_json(r);
    entry["cut"] = cut_to_json(cut);
    reports.push_back(std::move(entry));
    min_value = std::min(min_value, r.value);
  }
  out["reports"] = std::move(reports);
  out["min_value"] = min_value;
  write_output(out.dump(2) + "\n", common.output);
  return 0;
}

int run_werner_scan(int d, int grid, const std::string& param, const CommonOptions& common) {
  if (param != "s" && param != "p")
    throw argument_error("--param must be 's' or 'p'");
  const bool in_p = param == "p";
  const auto rows = werner_scan(d, grid, in_p);
  write_output(werner_scan_csv(rows, in_p), common.output);
  const double corner = in_p ? werner_ge_threshold(d) : 1.0 / std::sqrt(2.0);
  std::cerr << "square-domain corner (" << param << "-space, d=" << d
            << "): " << format_real(corner) << "\n";
  return 0;
}

int run_check(const std::string& subspace_path, bool npt, bool distill, int samples,
              const CommonOptions& common) {
  if (npt == distill)
    throw argument_error("check: pass exactly one of --npt or --distill");
  const Subspace s = load_subspace(subspace_path);
  if (s.profile().num_parties() < 2)
    throw argument_error("check: the subspace must have at least 2 parties");
  const auto cuts = all_bipartitions(s.profile().num_parties());

  Json out;
  out["dims"] = s.profile().dims();
  out["samples"] = samples;
  bool pass = true;

  if (npt) {
    Json reports = Json::array();
    for (const CutSampleReport& r : npt_subspace_check(s, cuts, samples, common.seed)) {
      reports.push_back(npt_cut_report_to_json(r));
      pass = pass && r.all_npt;
    }
    out["check"] = "npt";
    out["reports"] = std::move(reports);
  } else {
    OptimizerPolicy opt = common.policy();
    opt.restarts = std::min(opt.restarts, 16);
    Json reports = Json::array();
    for (std::size_t ci = 0; ci < cuts.size(); ++ci) {
      double worst = -2.0;
      int found = 0;
      Json witnesses = Json::array();
      for (int k = 0; k < samples; ++k) {
        SplitMix64 rng(derived_seed(common.seed, ci * 7919ull + static_cast<std::uint64_t>(k)));
        const int rank = static_cast<int>(rng.uniform_int(1, s.dim()));
        const DensityOperator rho = sample_state_on_subspace(s, rank, rng.next());
        const auto witness = rank2_witness_search(rho, cuts[ci], opt);
        if (witness) {
          ++found;
          worst = std::max(worst, witness->value);
          if (witnesses.empty()) witnesses.push_back(distill_witness_to_json(*witness));
        }
      }
      Json entry;
      entry["cut"] = cut_to_json(cuts[ci]);
      entry["witnesses_found"] = found;
      entry["worst_value"] = worst;
      entry["example_witness"] = witnesses.empty() ? Json() : witnesses.front();
      reports.push_back(std::move(entry));
      pass = pass && found == samples;
    }
    out["check"] = "distill";
    out["reports"] = std::move(reports);
  }
  out["pass"] = pass;
  write_output(out.dump(2) + "\n", common.output);
  return pass ? 0 : 4;
}

int run_verify(bool fast, std::uint64_t seed) {
  VerifyConfig cfg;
  cfg.fast = fast;
  cfg.seed = seed;
  const auto results = run_acceptance_criteria(cfg);
  std::cout << render_verify_report(results);
  bool pass = true;
  for (const CriterionResult& r : results) {
    std::cerr << "criterion " << r.id << ": " << format_real(r.seconds) << " s\n";
    pass = pass && r.pass;
  }
  return pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entangled-subspace construction and certification toolkit"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string spec_path, subspace_path, cut_flag, param = "s";
  bool all_cuts = false, npt = false, distill = false, fast = false, full = false;
  int d = 2, grid = 41, samples = 50;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed, "root seed (env GESFORGE_SEED overrides)");
    cmd->add_option("--restarts", common.restarts, "optimizer restarts")
        ->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", common.output, "write the result to a file");
  };

  CLI::App* construct = app.add_subcommand("construct", "build a subspace from a spec file");
  construct->add_option("spec", spec_path, "construction spec (JSON)")->required();
  add_common(construct);

  CLI::App* measure = app.add_subcommand("measure", "subspace entanglement measures");
  measure->add_option("subspace", subspace_path, "subspace file (JSON)")->required();
  measure->add_option("--cut", cut_flag, "party indices of one cut, e.g. 0,2");
  measure->add_flag("--all-cuts", all_cuts, "report every bipartite cut");
  add_common(measure);

  CLI::App* scan = app.add_subcommand("werner-scan", "witness values for a Werner pair grid");
  scan->add_option("--d", d, "local dimension")->check(CLI::Range(2, 64));
  scan->add_option("--grid", grid, "grid points per axis")->check(CLI::Range(2, 4096));
  scan->add_option("--param", param, "grid parameter: s or p");
  add_common(scan);

  CLI::App* check = app.add_subcommand("check", "NPT / distillability checks");
  check->add_option("subspace", subspace_path, "subspace file (JSON)")->required();
  check->add_flag("--npt", npt, "sampled NPT check on every cut");
  check->add_flag("--distill", distill, "rank-2 witness search on every cut");
  check->add_option("--samples", samples, "sampled states per cut")->check(CLI::PositiveNumber);
  add_common(check);

  CLI::App* verify = app.add_subcommand("verify-paper", "run the numerical verification suite");
  verify->add_flag("--fast", fast, "reduced restart/sample counts");
  verify->add_flag("--full", full, "full restart/sample counts (default)");
  verify->add_option("--seed", common.seed, "root seed (env GESFORGE_SEED overrides)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    common.seed = seed_from_env_or(common.seed);
    if (construct->parsed()) return run_construct(spec_path, common);
    if (measure->parsed()) return run_measure(subspace_path, cut_flag, all_cuts, common);
    if (scan->parsed()) return run_werner_scan(d, grid, param, common);
    if (check->parsed()) return run_check(subspace_path, npt, distill, samples, common);
    if (verify->parsed()) {
      if (fast && full) throw argument_error("verify-paper: pass at most one of --fast/--full");
      return run_verify(fast, common.seed);
    }
  } catch (const precondition_error& e) {
    std::cerr << "precondition failure: " << e.what() << "\n";
    return 3;
  } catch (const argument_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
