#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "eon/additions.hpp"
#include "eon/phy.hpp"
#include "eon/rwsa.hpp"
#include "eon/slot_grid.hpp"
#include "eon/topology.hpp"
#include "eon/traffic.hpp"

namespace eon {

struct PlannerConfig {
  // 1: upgrade provisioned BVTs in place, then add. 2: add only.
  int scheme = 1;
  double delta_gbps = 100.0;
  double saturation_threshold = 0.75;
  bool auto_physical_upgrade = false;
  int k = 3;
  std::uint64_t seed = 1;

  // Throws ConfigError.
  void validate() const;
};

struct SlotRange {
  int start = 0;
  int length = 0;

  // Lower of the two middle slots for even lengths.
  int center() const { return start + (length - 1) / 2; }
  auto operator<=>(const SlotRange&) const = default;
};

// Keeps center() fixed while trimming to `new_length` (<= length). An odd
// trim takes its extra slot from the high side for even lengths and from the
// low side for odd ones.
SlotRange shrink_centered(SlotRange range, int new_length);

// One provisioned BVT.
struct Lightpath {
  int id = 0;
  NodePair pair;
  CandidatePath path;
  int candidate_index = 0;
  ChannelConfig config;
  int fiber_pair = 0;
  SlotRange slots;
  double eta_nli = 0.0;
  int provisioned_year = 0;
  std::vector<int> upgraded_years;
};

struct UpgradeEvent {
  int year = 0;
  int lightpath_id = 0;
  ChannelConfig before;
  ChannelConfig after;
  SlotRange range_before;
  SlotRange range_after;
};

struct AdditionEvent {
  int year = 0;
  NodePair pair;
  int candidate_index = -1;              // path the solver priced options on
  double theta_gbps = 0.0;               // residual handed to the solver
  std::optional<double> nli_budget;      // nullopt: bootstrap, unbounded
  bool infeasible = false;
  std::vector<ChannelConfig> solution;
  double solution_eta = 0.0;             // sum of option coefficients
  int placed = 0;
  int blocked = 0;
  double placed_eta = 0.0;               // sum over committed lightpaths
};

struct LinkOccupancy {
  int year = 0;
  LinkId link = 0;
  double ratio = 0.0;
  bool flagged = false;
};

struct PeriodReport {
  int year = 0;
  double offered_tbps = 0.0;
  double carried_tbps = 0.0;
  double unmet_tbps = 0.0;
  int bvt_count = 0;
  int upgrades_performed = 0;
  int lps_added = 0;
  int blocked_additions = 0;
  int infeasible_demands = 0;
  int upgrades_reverted = 0;
  std::vector<LinkId> fiber_pairs_added;  // applied at the start of the period
  std::vector<LinkId> flagged_links;

  bool operator==(const PeriodReport&) const = default;
};

struct UpgradeResult {
  double theta_gbps = 0.0;
  int upgrades = 0;
};

// The upgrade pick for one lightpath: among `valid_on_path` entries whose
// bandwidth does not exceed the current one, the highest datarate if it beats
// the current datarate. Datarate ties go to the most slots (the least spectrum
// left stranded next to the channel), then the lowest eta.
std::optional<AdditionOption> select_upgrade(const ChannelConfig& current,
                                             std::span<const AdditionOption> valid_on_path);

// Upgrades the lightpaths of one demand in provisioning order until the
// residual is covered. `valid_by_candidate[i]` lists configurations valid on
// candidate path i with their coefficients on that path. Grids are updated
// to the shrunken slot ranges.
UpgradeResult upgrade_lightpaths(std::span<Lightpath* const> pair_lightpaths,
                                 std::span<const std::vector<AdditionOption>> valid_by_candidate,
                                 std::span<SlotGrid> grids, double theta_gbps, int year,
                                 std::vector<UpgradeEvent>* log = nullptr);

// Reverts one upgrade event on its lightpath, re-occupying the trimmed slots.
void revert_upgrade(Lightpath& lightpath, const UpgradeEvent& event, std::span<SlotGrid> grids,
                    double eta_before);

// Links whose occupancy exceeds the threshold (strict).
std::vector<LinkId> check_saturation(std::span<const SlotGrid> grids, double threshold);

class Planner {
 public:
  Planner(const Topology& topology, PhyConfig phy, PlannerConfig config);

  PeriodReport plan_period(const TrafficMatrix& offered);

  const Topology& topology() const { return *topology_; }
  const PlannerConfig& config() const { return config_; }
  const std::vector<Lightpath>& lightpaths() const { return lightpaths_; }
  const std::vector<SlotGrid>& grids() const { return grids_; }
  const std::vector<UpgradeEvent>& upgrade_log() const { return upgrade_log_; }
  const std::vector<AdditionEvent>& addition_log() const { return addition_log_; }
  const std::vector<LinkOccupancy>& occupancy_log() const { return occupancy_log_; }

  // Grids rebuilt from the lightpath ledger equal the live grids, and no two
  // lightpaths share a slot.
  bool reconciles() const;

  // Σ datarate of the lightpaths serving `pair`.
  double capacity(NodePair pair) const;

  struct DemandRoute {
    std::vector<CandidatePath> candidates;
    // Configurations valid on candidate i, with their coefficients there.
    std::vector<std::vector<AdditionOption>> valid_by_candidate;
  };
  const DemandRoute& route(NodePair pair);

 private:
  struct PricedAdditions {
    std::size_t candidate = 0;
    std::vector<AdditionOption> picked;
  };
  std::optional<PricedAdditions> price_additions(NodePair pair, double theta,
                                                 std::optional<double> budget);
  void commit_additions(NodePair pair, const PricedAdditions& priced, int year,
                        AdditionEvent& event);
  bool place(NodePair pair, std::size_t candidate, const AdditionOption& option, int year);

  const Topology* topology_;
  PhyConfig phy_;
  PlannerConfig config_;
  std::vector<ChannelConfig> catalog_;
  std::vector<SlotGrid> grids_;
  std::vector<Lightpath> lightpaths_;
  std::map<NodePair, std::vector<std::size_t>> by_pair_;
  std::map<NodePair, DemandRoute> routes_;
  std::vector<LinkId> pending_fiber_pairs_;
  std::vector<UpgradeEvent> upgrade_log_;
  std::vector<AdditionEvent> addition_log_;
  std::vector<LinkOccupancy> occupancy_log_;
  Rng rng_;
};

struct StudyResult {
  Topology topology;
  PlannerConfig config;
  std::vector<PeriodReport> reports;
  std::vector<TrafficMatrix> offered;              // one per year
  std::vector<std::vector<Lightpath>> snapshots;   // ledger after each year
  std::vector<UpgradeEvent> upgrades;
  std::vector<AdditionEvent> additions;
  std::vector<LinkOccupancy> occupancy;
};

using PeriodObserver = std::function<void(const Planner&, const PeriodReport&)>;

// Plans every year from profile.base_year to profile.horizon_year inclusive.
StudyResult run_study(const Topology& topology, const GrowthProfile& profile,
                      const PhyConfig& phy, const PlannerConfig& config,
                      const PeriodObserver& observer = {});

}  // namespace eon
