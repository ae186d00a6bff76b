#include "eon/traffic.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "eon/error.hpp"

namespace eon {

double TrafficMatrix::at(NodePair pair) const {
  auto it = entries.find(pair);
  if (it == entries.end()) {
    throw Error("unknown pair (" + std::to_string(pair.src) + "," + std::to_string(pair.dst) + ")");
  }
  return it->second;
}

double GrowthProfile::multiplier(int year) const {
  if (year < base_year || year > horizon_year) {
    throw ConfigError("year " + std::to_string(year) + " outside growth profile range");
  }
  const double g = gamma.at(year);
  auto u = unexpected.find(year);
  return g * (u == unexpected.end() ? 1.0 : u->second);
}

void GrowthProfile::validate() const {
  if (horizon_year < base_year) throw ConfigError("horizon year precedes base year");
  double prev = 1.0;
  for (int y = base_year; y <= horizon_year; ++y) {
    auto g = gamma.find(y);
    if (g == gamma.end()) throw ConfigError("growth profile missing year " + std::to_string(y));
    if (y == base_year && g->second != 1.0) throw ConfigError("gamma of the base year must be 1");
    if (g->second < 1.0 || g->second < prev) {
      throw ConfigError("gamma must be >= 1 and non-decreasing (year " + std::to_string(y) + ")");
    }
    prev = g->second;
    auto u = unexpected.find(y);
    if (u != unexpected.end() && u->second < 1.0) {
      throw ConfigError("unexpected multiplier below 1 in year " + std::to_string(y));
    }
  }
}

GrowthProfile expected_profile(int base_year, int horizon_year) {
  GrowthProfile p;
  p.base_year = base_year;
  p.horizon_year = horizon_year;
  for (int y = base_year; y <= horizon_year; ++y) {
    p.gamma[y] = std::pow(1.25, y - base_year);
    p.unexpected[y] = 1.0;
  }
  return p;
}

GrowthProfile unexpected_profile(int base_year, int horizon_year) {
  GrowthProfile p = expected_profile(base_year, horizon_year);
  for (int y = base_year; y <= horizon_year; ++y) {
    double u = 1.0;
    switch (y) {
      case 2023: u = 1.3; break;
      case 2024: u = 1.5; break;
      case 2025: u = 1.7; break;
      case 2026: u = 1.9; break;
      case 2027: u = 1.6; break;
      case 2028: u = 1.4; break;
      case 2029: u = 1.2; break;
      default: u = y > 2029 ? 1.1 : 1.0;
    }
    p.unexpected[y] = u;
  }
  return p;
}

GrowthProfile load_growth_profile(std::string_view document) {
  using nlohmann::json;
  GrowthProfile p;
  try {
    const json doc = json::parse(document);
    p.base_year = doc.at("base_year").get<int>();
    p.horizon_year = doc.at("horizon_year").get<int>();
    for (const auto& [key, entry] : doc.at("years").items()) {
      const int year = std::stoi(key);
      p.gamma[year] = entry.at("gamma").get<double>();
      p.unexpected[year] = entry.value("unexpected_multiplier", 1.0);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("growth profile: ") + e.what());
  } catch (const std::logic_error&) {
    throw ConfigError("growth profile: year keys must be integers");
  }
  p.validate();
  return p;
}

GrowthProfile load_growth_profile_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open growth profile " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_growth_profile(buf.str());
}

int delta(const Node& node) { return std::abs(node.dc_count - node.ixp_count); }

TrafficMatrix initial_traffic(const Topology& topology) {
  TrafficMatrix tm;
  tm.year = 0;
  const double mean_degree = avg_node_degree(topology);
  for (const Node& a : topology.nodes()) {
    for (const Node& b : topology.nodes()) {
      if (a.id == b.id) continue;
      const int n = node_degree(topology, a.id) + node_degree(topology, b.id);
      const double deltas = static_cast<double>(delta(a)) * static_cast<double>(delta(b));
      // Hub pairs (combined degree strictly above twice the mean) get the
      // quadratic branch.
      const double tau = n > 2.0 * mean_degree ? static_cast<double>(n) * (n - 1) * deltas
                                               : static_cast<double>(n) * deltas;
      tm.entries[{a.id, b.id}] = tau;
    }
  }
  return tm;
}

TrafficMatrix offered_traffic(const TrafficMatrix& tm0, const GrowthProfile& profile, int year) {
  const double m = profile.multiplier(year);
  TrafficMatrix tm;
  tm.year = year;
  for (const auto& [pair, tau] : tm0.entries) tm.entries[pair] = tau * m;
  return tm;
}

double aggregate_offered(const TrafficMatrix& tm) {
  double sum = 0.0;
  for (const auto& [pair, tau] : tm.entries) sum += tau;
  return sum / 1000.0;
}

double residual_traffic(const TrafficMatrix& tm_t, const TrafficMatrix& tm_0, NodePair pair) {
  return tm_t.at(pair) - tm_0.at(pair);
}

}  // namespace eon
