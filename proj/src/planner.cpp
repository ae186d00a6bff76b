#include "eon/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eon/error.hpp"

namespace eon {

void PlannerConfig::validate() const {
  if (scheme != 1 && scheme != 2) throw ConfigError("scheme must be 1 or 2");
  if (!(delta_gbps > 0.0)) throw ConfigError("delta must be positive");
  if (!(saturation_threshold > 0.0 && saturation_threshold < 1.0)) {
    throw ConfigError("saturation threshold must lie in (0, 1)");
  }
  if (k < 1) throw ConfigError("k must be at least 1");
}

SlotRange shrink_centered(SlotRange range, int new_length) {
  if (new_length < 1 || new_length > range.length) throw Error("invalid shrink length");
  const int center = range.center();
  return SlotRange{center - (new_length - 1) / 2, new_length};
}

std::optional<AdditionOption> select_upgrade(const ChannelConfig& current,
                                             std::span<const AdditionOption> valid_on_path) {
  const AdditionOption* pick = nullptr;
  for (const AdditionOption& o : valid_on_path) {
    if (o.config.bandwidth_ghz > current.bandwidth_ghz + 1e-9) continue;
    if (!pick) {
      pick = &o;
      continue;
    }
    const auto key = [](const AdditionOption& a) {
      return std::make_tuple(-a.config.datarate_gbps, -a.config.slot_count, a.eta_nli);
    };
    if (key(o) < key(*pick)) pick = &o;
  }
  if (!pick || pick->config.datarate_gbps <= current.datarate_gbps) return std::nullopt;
  return *pick;
}

UpgradeResult upgrade_lightpaths(std::span<Lightpath* const> pair_lightpaths,
                                 std::span<const std::vector<AdditionOption>> valid_by_candidate,
                                 std::span<SlotGrid> grids, double theta_gbps, int year,
                                 std::vector<UpgradeEvent>* log) {
  UpgradeResult result{theta_gbps, 0};
  for (Lightpath* lp : pair_lightpaths) {
    if (result.theta_gbps <= 0.0) break;
    const auto& valid = valid_by_candidate[static_cast<std::size_t>(lp->candidate_index)];
    auto pick = select_upgrade(lp->config, valid);
    if (!pick) continue;

    const SlotRange before = lp->slots;
    const SlotRange after = shrink_centered(before, pick->config.slot_count);
    for (LinkId lid : lp->path.link_sequence) {
      SlotGrid& grid = grids[static_cast<std::size_t>(lid)];
      if (after.start > before.start) grid.release(lp->fiber_pair, before.start, after.start - before.start);
      const int tail = before.start + before.length - (after.start + after.length);
      if (tail > 0) grid.release(lp->fiber_pair, after.start + after.length, tail);
    }
    if (log) log->push_back(UpgradeEvent{year, lp->id, lp->config, pick->config, before, after});
    result.theta_gbps -= pick->config.datarate_gbps - lp->config.datarate_gbps;
    ++result.upgrades;
    lp->config = pick->config;
    lp->eta_nli = pick->eta_nli;
    lp->slots = after;
    lp->upgraded_years.push_back(year);
  }
  return result;
}

void revert_upgrade(Lightpath& lightpath, const UpgradeEvent& event, std::span<SlotGrid> grids,
                    double eta_before) {
  const SlotRange& before = event.range_before;
  const SlotRange& after = event.range_after;
  for (LinkId lid : lightpath.path.link_sequence) {
    SlotGrid& grid = grids[static_cast<std::size_t>(lid)];
    if (after.start > before.start) grid.allocate(lightpath.fiber_pair, before.start, after.start - before.start);
    const int tail = before.start + before.length - (after.start + after.length);
    if (tail > 0) grid.allocate(lightpath.fiber_pair, after.start + after.length, tail);
  }
  lightpath.config = event.before;
  lightpath.slots = before;
  lightpath.eta_nli = eta_before;
  if (!lightpath.upgraded_years.empty()) lightpath.upgraded_years.pop_back();
}

std::vector<LinkId> check_saturation(std::span<const SlotGrid> grids, double threshold) {
  std::vector<LinkId> flagged;
  for (std::size_t i = 0; i < grids.size(); ++i) {
    if (grids[i].occupancy_ratio() > threshold) flagged.push_back(static_cast<LinkId>(i));
  }
  return flagged;
}

Planner::Planner(const Topology& topology, PhyConfig phy, PlannerConfig config)
    : topology_(&topology),
      phy_(std::move(phy)),
      config_(config),
      catalog_(generate_configs(phy_)),
      grids_(topology.make_grids(phy_.slot_count, phy_.slot_width_ghz)),
      rng_(config.seed) {
  config_.validate();
}

const Planner::DemandRoute& Planner::route(NodePair pair) {
  auto it = routes_.find(pair);
  if (it != routes_.end()) return it->second;

  DemandRoute r;
  r.candidates = k_shortest_paths(*topology_, pair.src, pair.dst, config_.k);
  for (const CandidatePath& path : r.candidates) {
    const auto spans = path.spans(*topology_);
    std::vector<AdditionOption> valid;
    for (const ChannelConfig& c : valid_configs(spans, catalog_, phy_)) {
      valid.push_back({c, eta_nli(spans, c, phy_)});
    }
    r.valid_by_candidate.push_back(std::move(valid));
  }
  return routes_.emplace(pair, std::move(r)).first->second;
}

double Planner::capacity(NodePair pair) const {
  auto it = by_pair_.find(pair);
  if (it == by_pair_.end()) return 0.0;
  double sum = 0.0;
  for (std::size_t idx : it->second) sum += lightpaths_[idx].config.datarate_gbps;
  return sum;
}

bool Planner::place(NodePair pair, std::size_t candidate, const AdditionOption& option, int year) {
  const DemandRoute& r = route(pair);
  const CandidatePath& path = r.candidates[candidate];
  auto slot = first_fit(path, option.config.slot_count, grids_);
  if (!slot) return false;
  for (LinkId lid : path.link_sequence) {
    grids_[static_cast<std::size_t>(lid)].allocate(slot->fiber_pair, slot->start_slot,
                                                   option.config.slot_count);
  }
  Lightpath lp;
  lp.id = static_cast<int>(lightpaths_.size());
  lp.pair = pair;
  lp.path = path;
  lp.candidate_index = static_cast<int>(candidate);
  lp.config = option.config;
  lp.fiber_pair = slot->fiber_pair;
  lp.slots = SlotRange{slot->start_slot, option.config.slot_count};
  lp.eta_nli = option.eta_nli;
  lp.provisioned_year = year;
  by_pair_[pair].push_back(lightpaths_.size());
  lightpaths_.push_back(std::move(lp));
  return true;
}

std::optional<Planner::PricedAdditions> Planner::price_additions(NodePair pair, double theta,
                                                                 std::optional<double> budget) {
  const DemandRoute& r = route(pair);
  // Weighted random pick first, then the remaining candidates shortest first.
  std::vector<int> weights;
  weights.reserve(r.candidates.size());
  for (const CandidatePath& p : r.candidates) weights.push_back(path_free_weight(p, grids_));
  const std::size_t chosen = choose_path(r.candidates, weights, rng_);
  std::vector<std::size_t> order{chosen};
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    if (i != chosen) order.push_back(i);
  }
  for (std::size_t idx : order) {
    const auto& options = r.valid_by_candidate[idx];
    if (options.empty()) continue;
    auto solution = solve_additions(theta, options, budget, config_.delta_gbps);
    if (!solution) continue;
    PricedAdditions priced{idx, {}};
    for (std::size_t i : *solution) priced.picked.push_back(options[i]);
    return priced;
  }
  return std::nullopt;
}

void Planner::commit_additions(NodePair pair, const PricedAdditions& priced, int year,
                               AdditionEvent& event) {
  const DemandRoute& r = route(pair);
  event.candidate_index = static_cast<int>(priced.candidate);
  for (const AdditionOption& o : priced.picked) {
    event.solution.push_back(o.config);
    event.solution_eta += o.eta_nli;
  }
  std::vector<AdditionOption> picked = priced.picked;
  // Widest channels first.
  std::stable_sort(picked.begin(), picked.end(), [](const AdditionOption& a, const AdditionOption& b) {
    return a.config.slot_count > b.config.slot_count;
  });

  for (const AdditionOption& option : picked) {
    bool placed = place(pair, priced.candidate, option, year);
    // Alternates must carry the configuration at no higher coefficient, so
    // the solved budget still holds.
    for (std::size_t alt = 0; alt < r.candidates.size() && !placed; ++alt) {
      if (alt == priced.candidate) continue;
      const auto& v = r.valid_by_candidate[alt];
      auto m = std::find_if(v.begin(), v.end(),
                            [&](const AdditionOption& o) { return o.config == option.config; });
      if (m == v.end() || m->eta_nli > option.eta_nli) continue;
      placed = place(pair, alt, *m, year);
    }
    if (placed) {
      ++event.placed;
      event.placed_eta += lightpaths_.back().eta_nli;
    } else {
      ++event.blocked;
    }
  }
}

PeriodReport Planner::plan_period(const TrafficMatrix& offered) {
  PeriodReport report;
  report.year = offered.year;

  for (LinkId lid : pending_fiber_pairs_) grids_[static_cast<std::size_t>(lid)].add_fiber_pair();
  report.fiber_pairs_added = std::move(pending_fiber_pairs_);
  pending_fiber_pairs_.clear();

  struct Residual {
    NodePair pair;
    double theta;
  };
  std::vector<Residual> residuals;
  for (const auto& [pair, tau] : offered.entries) {
    if (tau <= 0.0) continue;
    const double theta = tau - capacity(pair);
    if (theta > 0.0) residuals.push_back({pair, theta});
  }
  std::stable_sort(residuals.begin(), residuals.end(),
                   [](const Residual& a, const Residual& b) { return a.theta > b.theta; });

  const auto eta_sum = [](const std::vector<Lightpath*>& lps) {
    return std::accumulate(lps.begin(), lps.end(), 0.0,
                           [](double acc, const Lightpath* lp) { return acc + lp->eta_nli; });
  };

  for (const Residual& res : residuals) {
    const DemandRoute& r = route(res.pair);
    double theta = res.theta;
    std::vector<Lightpath*> existing;
    for (std::size_t idx : by_pair_[res.pair]) existing.push_back(&lightpaths_[idx]);
    std::optional<double> budget;
    if (!existing.empty()) budget = eta_sum(existing);

    std::vector<UpgradeEvent> upgrades;
    std::map<int, double> eta_before;
    if (config_.scheme == 1 && !existing.empty()) {
      for (const Lightpath* lp : existing) eta_before[lp->id] = lp->eta_nli;
      theta = upgrade_lightpaths(existing, r.valid_by_candidate, grids_, theta, report.year,
                                 &upgrades).theta_gbps;
    }

    std::optional<PricedAdditions> priced;
    if (theta > 0.0) {
      const std::optional<double> upgraded_budget = budget ? std::optional(eta_sum(existing)) : std::nullopt;
      priced = price_additions(res.pair, theta, upgraded_budget);
      budget = upgraded_budget;
      // Upgrades must not leave the demand worse off than adding alone: when
      // the shrunken residual has no feasible addition but the original one
      // does, the upgrades are undone for this period.
      if (!priced && !upgrades.empty()) {
        for (auto it = upgrades.rbegin(); it != upgrades.rend(); ++it) {
          revert_upgrade(lightpaths_[static_cast<std::size_t>(it->lightpath_id)], *it, grids_,
                         eta_before.at(it->lightpath_id));
        }
        const std::optional<double> original_budget = eta_sum(existing);
        auto fallback = price_additions(res.pair, res.theta, original_budget);
        if (fallback) {
          report.upgrades_reverted += static_cast<int>(upgrades.size());
          upgrades.clear();
          theta = res.theta;
          budget = original_budget;
          priced = std::move(fallback);
        } else {
          upgrade_lightpaths(existing, r.valid_by_candidate, grids_, res.theta, report.year, nullptr);
        }
      }
    }
    report.upgrades_performed += static_cast<int>(upgrades.size());
    upgrade_log_.insert(upgrade_log_.end(), upgrades.begin(), upgrades.end());
    if (theta <= 0.0) continue;

    AdditionEvent event;
    event.year = report.year;
    event.pair = res.pair;
    event.theta_gbps = theta;
    event.nli_budget = budget;
    if (priced) {
      commit_additions(res.pair, *priced, report.year, event);
      report.lps_added += event.placed;
      report.blocked_additions += event.blocked;
    } else {
      event.infeasible = true;
      ++report.infeasible_demands;
    }
    addition_log_.push_back(std::move(event));
  }

  double offered_gbps = 0.0;
  double carried_gbps = 0.0;
  for (const auto& [pair, tau] : offered.entries) {
    offered_gbps += tau;
    carried_gbps += std::min(tau, capacity(pair));
  }
  report.offered_tbps = offered_gbps / 1000.0;
  report.carried_tbps = carried_gbps / 1000.0;
  report.unmet_tbps = std::max(0.0, offered_gbps - carried_gbps) / 1000.0;
  report.bvt_count = static_cast<int>(lightpaths_.size());

  report.flagged_links = check_saturation(grids_, config_.saturation_threshold);
  for (std::size_t i = 0; i < grids_.size(); ++i) {
    const bool flagged = std::binary_search(report.flagged_links.begin(), report.flagged_links.end(),
                                            static_cast<LinkId>(i));
    occupancy_log_.push_back({report.year, static_cast<LinkId>(i), grids_[i].occupancy_ratio(), flagged});
  }
  if (config_.auto_physical_upgrade) pending_fiber_pairs_ = report.flagged_links;
  return report;
}

bool Planner::reconciles() const {
  std::vector<SlotGrid> rebuilt = topology_->make_grids(phy_.slot_count, phy_.slot_width_ghz);
  for (std::size_t i = 0; i < grids_.size(); ++i) {
    while (rebuilt[i].fiber_pairs() < grids_[i].fiber_pairs()) rebuilt[i].add_fiber_pair();
  }
  try {
    for (const Lightpath& lp : lightpaths_) {
      if (lp.slots.length != lp.config.slot_count) return false;
      for (LinkId lid : lp.path.link_sequence) {
        rebuilt[static_cast<std::size_t>(lid)].allocate(lp.fiber_pair, lp.slots.start, lp.slots.length);
      }
    }
  } catch (const SpectrumError&) {
    return false;
  }
  return rebuilt == grids_;
}

StudyResult run_study(const Topology& topology, const GrowthProfile& profile, const PhyConfig& phy,
                      const PlannerConfig& config, const PeriodObserver& observer) {
  profile.validate();
  StudyResult result{topology, config, {}, {}, {}, {}, {}, {}};
  Planner planner(result.topology, phy, config);
  const TrafficMatrix tm0 = initial_traffic(topology);
  for (int year = profile.base_year; year <= profile.horizon_year; ++year) {
    TrafficMatrix tm = offered_traffic(tm0, profile, year);
    PeriodReport report = planner.plan_period(tm);
    if (observer) observer(planner, report);
    result.reports.push_back(std::move(report));
    result.offered.push_back(std::move(tm));
    result.snapshots.push_back(planner.lightpaths());
  }
  result.upgrades = planner.upgrade_log();
  result.additions = planner.addition_log();
  result.occupancy = planner.occupancy_log();
  return result;
}

}  // namespace eon
