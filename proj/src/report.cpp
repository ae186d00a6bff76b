#include "eon/report.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

namespace eon {

namespace {

// Buffers a CSV in memory; save() writes it in one go.
class CsvFile {
 public:
  CsvFile(std::filesystem::path path, std::string_view header) : path_(std::move(path)) {
    out_ << header << '\n';
  }
  std::ostringstream& out() { return out_; }
  void save() const {
    std::ofstream f(path_, std::ios::binary);
    f << out_.str();
    f.flush();
    if (!f) throw std::ios_base::failure("cannot write " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ostringstream out_;
};

std::string fixed3(double v) { return fmt::format("{:.3f}", v); }

std::string node_path(const CandidatePath& path) {
  std::string s;
  for (std::size_t i = 0; i < path.node_sequence.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(path.node_sequence[i]);
  }
  return s;
}

}  // namespace

void write_run_csvs(const StudyResult& run, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    CsvFile f(dir / "throughput.csv", "year,scheme,offered_tbps,carried_tbps,unmet_tbps");
    for (const PeriodReport& r : run.reports) {
      f.out() << r.year << ',' << run.config.scheme << ',' << fixed3(r.offered_tbps) << ','
              << fixed3(r.carried_tbps) << ',' << fixed3(r.unmet_tbps) << '\n';
    }
    f.save();
  }
  {
    CsvFile f(dir / "bvts.csv", "year,bvt_count,upgrades,additions,blocked,infeasible");
    for (const PeriodReport& r : run.reports) {
      f.out() << r.year << ',' << r.bvt_count << ',' << r.upgrades_performed << ',' << r.lps_added
              << ',' << r.blocked_additions << ',' << r.infeasible_demands << '\n';
    }
    f.save();
  }
  {
    CsvFile f(dir / "occupancy.csv", "year,link_id,ratio,flagged");
    for (const LinkOccupancy& o : run.occupancy) {
      f.out() << o.year << ',' << o.link << ',' << fixed3(o.ratio) << ',' << (o.flagged ? 1 : 0) << '\n';
    }
    f.save();
  }
  {
    CsvFile f(dir / "lightpaths.csv",
              "year,lp_id,src,dst,datarate_gbps,modulation,symbol_rate_gbd,fiber_pair,start_slot,"
              "slot_count,eta_nli,provisioned_year,path");
    for (std::size_t y = 0; y < run.snapshots.size(); ++y) {
      for (const Lightpath& lp : run.snapshots[y]) {
        f.out() << run.reports[y].year << ',' << lp.id << ',' << lp.pair.src << ',' << lp.pair.dst
                << ',' << lp.config.datarate_gbps << ',' << to_string(lp.config.modulation) << ','
                << fixed3(lp.config.symbol_rate_gbd) << ',' << lp.fiber_pair << ','
                << lp.slots.start << ',' << lp.slots.length << ',' << fixed3(lp.eta_nli) << ','
                << lp.provisioned_year << ',' << node_path(lp.path) << '\n';
      }
    }
    f.save();
  }
  {
    CsvFile f(dir / "demands.csv", "year,src,dst,offered_gbps");
    for (const TrafficMatrix& tm : run.offered) {
      for (const auto& [pair, tau] : tm.entries) {
        f.out() << tm.year << ',' << pair.src << ',' << pair.dst << ',' << fixed3(tau) << '\n';
      }
    }
    f.save();
  }
}

void emit_figure_data(std::span<const StudyResult> runs, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  // (topology, year) -> offered and per-scheme carried, accumulated over seeds.
  struct Acc {
    double offered = 0.0;
    int offered_n = 0;
    double carried[2] = {0.0, 0.0};
    int carried_n[2] = {0, 0};
  };
  std::map<std::pair<std::string, int>, Acc> acc;
  std::vector<std::string> topo_order;
  for (const StudyResult& run : runs) {
    const std::string& name = run.topology.name();
    if (std::find(topo_order.begin(), topo_order.end(), name) == topo_order.end()) {
      topo_order.push_back(name);
    }
    for (const PeriodReport& r : run.reports) {
      Acc& a = acc[{name, r.year}];
      a.offered += r.offered_tbps;
      ++a.offered_n;
      const int s = run.config.scheme - 1;
      a.carried[s] += r.carried_tbps;
      ++a.carried_n[s];
    }
  }
  {
    CsvFile f(dir / "fig_throughput.csv", "year,offered,scheme1_carried,scheme2_carried,topology");
    for (const std::string& name : topo_order) {
      for (const auto& [key, a] : acc) {
        if (key.first != name) continue;
        const double offered = a.offered / a.offered_n;
        // Each run carries at most its offer; averaging can still round past it.
        const auto carried = [&](int s) {
          return a.carried_n[s] ? fixed3(std::min(offered, a.carried[s] / a.carried_n[s])) : "";
        };
        f.out() << key.second << ',' << fixed3(offered) << ',' << carried(0) << ',' << carried(1) << ','
                << name << '\n';
      }
    }
    f.save();
  }
  {
    CsvFile f(dir / "fig_bvt_vs_throughput.csv", "bvt_count,carried_tbps,scheme,topology,seed,year");
    for (const StudyResult& run : runs) {
      for (const PeriodReport& r : run.reports) {
        f.out() << r.bvt_count << ',' << fixed3(r.carried_tbps) << ',' << run.config.scheme << ','
                << run.topology.name() << ',' << run.config.seed << ',' << r.year << '\n';
      }
    }
    f.save();
  }
}

std::string summarize(std::span<const StudyResult> runs) {
  struct Stats {
    double sum = 0.0;
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double offered = 0.0;
    int n = 0;
  };
  std::map<std::tuple<std::string, int, int>, Stats> stats;
  std::set<std::uint64_t> seeds;
  for (const StudyResult& run : runs) {
    seeds.insert(run.config.seed);
    for (const PeriodReport& r : run.reports) {
      Stats& s = stats[{run.topology.name(), run.config.scheme, r.year}];
      s.sum += r.carried_tbps;
      s.min = std::min(s.min, r.carried_tbps);
      s.max = std::max(s.max, r.carried_tbps);
      s.offered = r.offered_tbps;
      ++s.n;
    }
  }
  std::string out = fmt::format("runs: {}  seeds: {}\n", runs.size(), seeds.size());
  out += "topology,scheme,year,offered_tbps,carried_mean_tbps,carried_min_tbps,carried_max_tbps\n";
  for (const auto& [key, s] : stats) {
    out += fmt::format("{},{},{},{:.3f},{:.3f},{:.3f},{:.3f}\n", std::get<0>(key), std::get<1>(key),
                       std::get<2>(key), s.offered, std::min(s.offered, s.sum / s.n), s.min, s.max);
  }
  return out;
}

}  // namespace eon
