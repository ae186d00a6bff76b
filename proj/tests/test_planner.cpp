#include "doctest.h"
#include "eon/error.hpp"
#include "eon/planner.hpp"
#include "study_checks.hpp"
#include "support.hpp"

using namespace eon;

namespace {

// Small ring with enough hub asymmetry to create traffic.
Topology ring() {
  return load_topology(R"({"name": "ring", "nodes": [
      {"id": 1, "dc_count": 6, "ixp_count": 1},
      {"id": 2, "dc_count": 3, "ixp_count": 1},
      {"id": 3, "dc_count": 4, "ixp_count": 2},
      {"id": 4, "dc_count": 2, "ixp_count": 1}],
    "links": [
      {"id": 0, "from": 1, "to": 2, "spans": [{"length_km": 80}, {"length_km": 70}]},
      {"id": 1, "from": 2, "to": 3, "spans": [{"length_km": 90}]},
      {"id": 2, "from": 3, "to": 4, "spans": [{"length_km": 60}, {"length_km": 60}]},
      {"id": 3, "from": 4, "to": 1, "spans": [{"length_km": 100}]},
      {"id": 4, "from": 1, "to": 3, "spans": [{"length_km": 110}, {"length_km": 95}]}]})");
}

const Topology& germany() {
  static const Topology t = load_topology_file(testing::data_file("germany17.json"));
  return t;
}

std::vector<AdditionOption> options_on(const std::vector<Span>& spans, const std::vector<ChannelConfig>& configs) {
  std::vector<AdditionOption> out;
  for (const ChannelConfig& c : configs) out.push_back({c, eta_nli(spans, c)});
  return out;
}

void check_clean(const checks::Violations& v) {
  for (const auto& s : v.samples) MESSAGE(s);
  CHECK(v.count == 0);
}

}  // namespace

TEST_SUITE("planner") {

TEST_CASE("planner config validation") {
  PlannerConfig c;
  CHECK_NOTHROW(c.validate());
  c.scheme = 3;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.delta_gbps = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.saturation_threshold = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.k = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("centered shrink") {
  CHECK(shrink_centered({10, 6}, 5) == SlotRange{10, 5});
  CHECK(shrink_centered({10, 5}, 4) == SlotRange{11, 4});
  CHECK(shrink_centered({10, 6}, 4) == SlotRange{11, 4});
  CHECK(shrink_centered({10, 6}, 6) == SlotRange{10, 6});
  CHECK_THROWS_AS(shrink_centered({10, 6}, 7), Error);
  CHECK_THROWS_AS(shrink_centered({10, 6}, 0), Error);
  for (int len = 1; len <= 16; ++len) {
    for (int n = 1; n <= len; ++n) {
      const SlotRange r{100, len};
      const SlotRange s = shrink_centered(r, n);
      CHECK(s.length == n);
      CHECK(s.center() == r.center());
      CHECK(s.start >= r.start);
      CHECK(s.start + s.length <= r.start + r.length);
    }
  }
}

TEST_CASE("upgrade pick on a short Germany17 path") {
  const Link* shortest = &germany().links().front();
  for (const Link& l : germany().links()) {
    if (l.length_km() < shortest->length_km()) shortest = &l;
  }
  const auto catalog = generate_configs();
  const auto valid = valid_configs(shortest->spans, catalog);
  const ChannelConfig qpsk200 = make_config(200, Modulation::QPSK, PhyConfig{});
  REQUIRE(qpsk200.slot_count == 6);
  const ChannelConfig qam16_400 = make_config(400, Modulation::QAM16, PhyConfig{});
  REQUIRE(std::find(valid.begin(), valid.end(), qam16_400) != valid.end());

  // Formats up to 16QAM: 400G-16QAM is the best fit in six slots.
  std::vector<ChannelConfig> up_to_16;
  for (const ChannelConfig& c : valid) {
    if (c.modulation <= Modulation::QAM16) up_to_16.push_back(c);
  }
  const auto pick16 = select_upgrade(qpsk200, options_on(shortest->spans, up_to_16));
  REQUIRE(pick16.has_value());
  CHECK(pick16->config == qam16_400);

  const auto pick = select_upgrade(qpsk200, options_on(shortest->spans, valid));
  REQUIRE(pick.has_value());
  CHECK(pick->config.datarate_gbps == 600);
  CHECK(pick->config.bandwidth_ghz <= qpsk200.bandwidth_ghz);

  const ChannelConfig top = make_config(600, Modulation::QAM64, PhyConfig{});
  CHECK_FALSE(select_upgrade(top, options_on(shortest->spans, valid)).has_value());
}

TEST_CASE("upgrading lightpaths in place") {
  const Topology t = ring();
  auto grids = t.make_grids();
  CandidatePath path;
  path.node_sequence = {1, 2};
  path.link_sequence = {0};
  path.total_length_km = 150.0;
  const auto spans = path.spans(t);
  const auto valid = options_on(spans, valid_configs(spans, generate_configs()));

  Lightpath lp;
  lp.id = 0;
  lp.pair = {1, 2};
  lp.path = path;
  lp.config = make_config(200, Modulation::QPSK, PhyConfig{});
  lp.slots = {20, lp.config.slot_count};
  lp.eta_nli = eta_nli(spans, lp.config);
  grids[0].allocate(0, 20, lp.config.slot_count);
  std::vector<Lightpath*> lps{&lp};
  const std::vector<std::vector<AdditionOption>> by_candidate{valid};

  SUBCASE("nothing to do") {
    const auto r = upgrade_lightpaths(lps, by_candidate, grids, 0.0, 2021);
    CHECK(r.upgrades == 0);
    CHECK(lp.config.datarate_gbps == 200);
  }
  SUBCASE("upgrade, then revert") {
    const Lightpath original = lp;
    const auto grids_before = grids;
    std::vector<UpgradeEvent> log;
    const auto r = upgrade_lightpaths(lps, by_candidate, grids, 150.0, 2021, &log);
    REQUIRE(r.upgrades == 1);
    REQUIRE(log.size() == 1);
    CHECK(lp.config.datarate_gbps > 200);
    CHECK(r.theta_gbps == doctest::Approx(150.0 - (lp.config.datarate_gbps - 200)));
    CHECK(lp.slots.center() == original.slots.center());
    CHECK(lp.slots.length == lp.config.slot_count);
    CHECK(lp.upgraded_years == std::vector<int>{2021});
    CHECK(grids[0].occupied_slots() == lp.config.slot_count);

    revert_upgrade(lp, log.front(), grids, original.eta_nli);
    CHECK(lp.config == original.config);
    CHECK(lp.slots == original.slots);
    CHECK(lp.eta_nli == original.eta_nli);
    CHECK(lp.upgraded_years.empty());
    CHECK(grids == grids_before);

    // Already at the top of the valid set: untouched.
    lp.config = make_config(600, Modulation::QAM64, PhyConfig{});
    CHECK(upgrade_lightpaths(lps, by_candidate, grids, 500.0, 2022).upgrades == 0);
  }
}

TEST_CASE("saturation check is strict") {
  std::vector<SlotGrid> grids(3);
  grids[0].allocate(0, 0, 288);  // exactly 0.75
  grids[1].allocate(0, 0, 292);  // 0.76
  grids[2].allocate(0, 0, 10);
  CHECK(check_saturation(grids, 0.75) == std::vector<LinkId>{1});
  grids[1].add_fiber_pair();
  CHECK(grids[1].occupancy_ratio() == doctest::Approx(292.0 / 768.0));
  CHECK(check_saturation(grids, 0.75).empty());
}

TEST_CASE("base year on an empty network carries everything") {
  const Topology t = ring();
  Planner planner(t, PhyConfig{}, PlannerConfig{});
  TrafficMatrix tm = initial_traffic(t);
  tm.year = 2020;
  const PeriodReport r = planner.plan_period(tm);
  CHECK(r.offered_tbps > 0.0);
  CHECK(r.carried_tbps == doctest::Approx(r.offered_tbps));
  CHECK(r.unmet_tbps == doctest::Approx(0.0));
  CHECK(r.blocked_additions == 0);
  CHECK(r.bvt_count == r.lps_added);
  CHECK(planner.reconciles());
  for (const AdditionEvent& e : planner.addition_log()) CHECK_FALSE(e.nli_budget.has_value());
}

TEST_CASE("study length follows the profile") {
  const Topology t = ring();
  const auto full = run_study(t, expected_profile(), PhyConfig{}, PlannerConfig{});
  CHECK(full.reports.size() == 11);
  CHECK(full.reports.front().year == 2020);
  CHECK(full.reports.back().year == 2030);
  const auto one = run_study(t, expected_profile(2020, 2020), PhyConfig{}, PlannerConfig{});
  CHECK(one.reports.size() == 1);
}

TEST_CASE("same seed, same reports") {
  const Topology t = ring();
  for (int scheme : {1, 2}) {
    PlannerConfig c;
    c.scheme = scheme;
    c.seed = 77;
    const auto a = run_study(t, unexpected_profile(), PhyConfig{}, c);
    const auto b = run_study(t, unexpected_profile(), PhyConfig{}, c);
    CHECK(a.reports == b.reports);
    REQUIRE(a.snapshots.back().size() == b.snapshots.back().size());
    for (std::size_t i = 0; i < a.snapshots.back().size(); ++i) {
      CHECK(a.snapshots.back()[i].slots == b.snapshots.back()[i].slots);
      CHECK(a.snapshots.back()[i].path == b.snapshots.back()[i].path);
    }
  }
}

TEST_CASE("Germany17 study invariants") {
  for (int scheme : {1, 2}) {
    for (bool surge : {false, true}) {
      CAPTURE(scheme);
      CAPTURE(surge);
      PlannerConfig c;
      c.scheme = scheme;
      c.seed = 4;
      int reconciled = 0;
      const auto run = run_study(germany(), surge ? unexpected_profile() : expected_profile(), PhyConfig{}, c,
                                 [&](const Planner& p, const PeriodReport&) { reconciled += p.reconciles(); });
      CHECK(reconciled == 11);
      check_clean(checks::over_provisioning(run));
      check_clean(checks::upgrade_semantics(run));
      check_clean(checks::nli_budget(run));
      check_clean(checks::ledger_shape(run));
      if (scheme == 2) CHECK(run.upgrades.empty());
      if (scheme == 1) CHECK_FALSE(run.upgrades.empty());
    }
  }
}

TEST_CASE("Scheme 1 carries at least as much as Scheme 2 under expected growth") {
  PlannerConfig s1, s2;
  s1.scheme = 1;
  s2.scheme = 2;
  s1.seed = s2.seed = 2;
  const auto a = run_study(germany(), expected_profile(), PhyConfig{}, s1);
  const auto b = run_study(germany(), expected_profile(), PhyConfig{}, s2);
  for (std::size_t y = 0; y < a.reports.size(); ++y) {
    CAPTURE(a.reports[y].year);
    CHECK(a.reports[y].carried_tbps >= b.reports[y].carried_tbps - 1e-9);
    if (std::abs(a.reports[y].carried_tbps - b.reports[y].carried_tbps) < 1e-9) {
      CHECK(a.reports[y].bvt_count <= b.reports[y].bvt_count);
    }
  }
}

TEST_CASE("auto physical upgrade lights fiber on flagged links") {
  PlannerConfig c;
  c.auto_physical_upgrade = true;
  const auto run = run_study(germany(), unexpected_profile(), PhyConfig{}, c);
  bool any = false;
  for (std::size_t y = 0; y + 1 < run.reports.size(); ++y) {
    CHECK(run.reports[y + 1].fiber_pairs_added == run.reports[y].flagged_links);
    any = any || !run.reports[y].flagged_links.empty();
  }
  CHECK(any);
  CHECK(run.reports.front().fiber_pairs_added.empty());
}

}  // TEST_SUITE
