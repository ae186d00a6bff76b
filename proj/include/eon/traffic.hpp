#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <string_view>

#include "eon/topology.hpp"

namespace eon {

struct NodePair {
  NodeId src = 0;
  NodeId dst = 0;
  auto operator<=>(const NodePair&) const = default;
};

// Offered traffic in Gbps per ordered node pair for one planning year.
struct TrafficMatrix {
  int year = 0;
  std::map<NodePair, double> entries;

  double at(NodePair pair) const;
};

// Year-indexed growth multipliers. `gamma` is the expected growth relative to
// the base year; `unexpected` scales it further (1.0 = expected scenario).
struct GrowthProfile {
  int base_year = 2020;
  int horizon_year = 2030;
  std::map<int, double> gamma;
  std::map<int, double> unexpected;

  double multiplier(int year) const;
  // Throws ConfigError on missing years, gamma < 1, decreasing gamma, u < 1,
  // or gamma(base) != 1.
  void validate() const;
};

// gamma_t = 1.25^(t - base), u_t = 1.
GrowthProfile expected_profile(int base_year = 2020, int horizon_year = 2030);
// Expected profile times a surge ramping 1.3/1.5/1.7/1.9 over 2023-2026 that
// then eases off (1.6, 1.4, 1.2, 1.1 from 2027) without dropping to expected.
GrowthProfile unexpected_profile(int base_year = 2020, int horizon_year = 2030);
// {"base_year": .., "horizon_year": .., "years": {"2020": {"gamma": 1,
// "unexpected_multiplier": 1}, ...}}
GrowthProfile load_growth_profile(std::string_view document);
GrowthProfile load_growth_profile_file(const std::filesystem::path& path);

int delta(const Node& node);

TrafficMatrix initial_traffic(const Topology& topology);
TrafficMatrix offered_traffic(const TrafficMatrix& tm0, const GrowthProfile& profile, int year);
double aggregate_offered(const TrafficMatrix& tm);
double residual_traffic(const TrafficMatrix& tm_t, const TrafficMatrix& tm_0, NodePair pair);

}  // namespace eon
