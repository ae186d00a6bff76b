#include "eon/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "eon/error.hpp"
#include "eon/planner.hpp"
#include "eon/report.hpp"

namespace eon {

namespace {

GrowthProfile resolve_scenario(const std::string& scenario) {
  if (scenario == "expected") return expected_profile();
  if (scenario == "unexpected") return unexpected_profile();
  constexpr std::string_view kCustom = "custom:";
  if (scenario.starts_with(kCustom)) return load_growth_profile_file(scenario.substr(kCustom.size()));
  throw ConfigError("unknown scenario '" + scenario + "'");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& list) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const auto v = std::stoull(item, &used);
    if (used != item.size()) throw ConfigError("bad seed '" + item + "'");
    seeds.push_back(v);
  }
  if (seeds.empty()) throw ConfigError("empty seed list");
  return seeds;
}

std::string run_dir_name(int scheme, std::uint64_t seed) {
  return fmt::format("scheme{}_seed{}", scheme, seed);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-period elastic optical network planner"};
  app.require_subcommand(1);
  CLI::App* plan = app.add_subcommand("plan", "Run a multi-period planning study");

  StudySpec spec;
  if (const char* env = std::getenv("EONPLAN_OUT")) spec.output_dir = env;
  std::string scheme = "both";
  std::optional<std::uint64_t> seed;
  std::string seeds;
  std::string phy_path;
  int horizon = 0;

  plan->add_option("--topology", spec.topology_paths, "Topology JSON (repeatable)")->required();
  plan->add_option("--scenario", spec.scenario, "expected | unexpected | custom:<path>");
  plan->add_option("--scheme", scheme, "1 | 2 | both")->check(CLI::IsMember({"1", "2", "both"}));
  plan->add_option("--k", spec.k, "Candidate paths per demand")->check(CLI::PositiveNumber);
  plan->add_option("--seed", seed, "Routing seed");
  plan->add_option("--seeds", seeds, "Comma-separated routing seeds");
  plan->add_option("--horizon", horizon, "Last planning year");
  plan->add_option("--delta", spec.delta_gbps, "Over-provisioning bound per demand (Gbps)");
  plan->add_option("--threshold", spec.saturation_threshold, "Slot occupancy warning threshold");
  plan->add_flag("--auto-physical-upgrade", spec.auto_physical_upgrade,
                 "Light a dark fiber pair on every flagged link");
  plan->add_option("--out", spec.output_dir, "Output directory");
  plan->add_option("--phy-config", phy_path, "Physical-layer configuration JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << (plan->parsed() ? plan->help() : app.help());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << plan->help();
    return kExitBadFlags;
  }

  GrowthProfile profile;
  PhyConfig phy;
  try {
    if (scheme == "1") spec.schemes = {1};
    else if (scheme == "2") spec.schemes = {2};
    spec.seeds.clear();
    if (seed) spec.seeds.push_back(*seed);
    if (!seeds.empty()) {
      for (auto s : parse_seed_list(seeds)) {
        if (std::find(spec.seeds.begin(), spec.seeds.end(), s) == spec.seeds.end()) spec.seeds.push_back(s);
      }
    }
    if (spec.seeds.empty()) spec.seeds.push_back(1);
    profile = resolve_scenario(spec.scenario);
    if (horizon != 0) {
      if (horizon < profile.base_year || horizon > profile.horizon_year) {
        throw ConfigError(fmt::format("horizon must lie in [{}, {}]", profile.base_year,
                                      profile.horizon_year));
      }
      spec.horizon = horizon;
      profile.horizon_year = horizon;
    }
    if (!phy_path.empty()) {
      spec.phy_config_path = phy_path;
      phy = load_phy_config_file(phy_path);
    }
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n" << plan->help();
    return kExitBadFlags;
  }

  std::vector<Topology> topologies;
  try {
    for (const auto& path : spec.topology_paths) topologies.push_back(load_topology_file(path));
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const TopologyError& e) {
    err << "error: infeasible topology: " << e.what() << "\n";
    return kExitInfeasibleTopology;
  }

  std::vector<StudyResult> runs;
  try {
    for (std::size_t t = 0; t < topologies.size(); ++t) {
      std::string name = topologies[t].name();
      if (name.empty()) name = spec.topology_paths[t].stem().string();
      const std::filesystem::path topo_dir =
          topologies.size() > 1 ? spec.output_dir / name : spec.output_dir;
      for (int s : spec.schemes) {
        for (std::uint64_t sd : spec.seeds) {
          PlannerConfig pc;
          pc.scheme = s;
          pc.seed = sd;
          pc.k = spec.k;
          pc.delta_gbps = spec.delta_gbps;
          pc.saturation_threshold = spec.saturation_threshold;
          pc.auto_physical_upgrade = spec.auto_physical_upgrade;
          StudyResult run = run_study(topologies[t], profile, phy, pc);
          write_run_csvs(run, topo_dir / run_dir_name(s, sd));
          const PeriodReport& last = run.reports.back();
          out << fmt::format("{} scheme {} seed {}: {} carried {:.3f} / offered {:.3f} Tbps, {} BVTs\n",
                             name, s, sd, last.year, last.carried_tbps, last.offered_tbps,
                             last.bvt_count);
          runs.push_back(std::move(run));
        }
      }
    }
    emit_figure_data(runs, spec.output_dir);
    std::ofstream summary(spec.output_dir / "summary.txt", std::ios::binary);
    summary << summarize(runs);
    summary.flush();
    if (!summary) throw std::ios_base::failure("cannot write summary.txt");
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadFlags;
  } catch (const TopologyError& e) {
    err << "error: infeasible topology: " << e.what() << "\n";
    return kExitInfeasibleTopology;
  }
  return kExitOk;
}

}  // namespace eon
