#include "eon/rwsa.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>

#include "eon/error.hpp"

namespace eon {

std::vector<Span> CandidatePath::spans(const Topology& topology) const {
  std::vector<Span> out;
  for (LinkId lid : link_sequence) {
    const auto& s = topology.link(lid).spans;
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

namespace {

struct PathOrder {
  bool operator()(const CandidatePath& a, const CandidatePath& b) const {
    if (a.total_length_km != b.total_length_km) return a.total_length_km < b.total_length_km;
    return a.node_sequence < b.node_sequence;
  }
};

// Dijkstra with some nodes and links masked out. Ties prefer the lower link id
// so results are reproducible.
std::optional<CandidatePath> shortest_path(const Topology& topo, NodeId src, NodeId dst,
                                           const std::vector<char>& banned_nodes,
                                           const std::set<LinkId>& banned_links) {
  const std::size_t n = topo.nodes().size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<LinkId> via(n, -1);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const std::size_t s = topo.node_index(src);
  dist[s] = 0.0;
  pq.push({0.0, s});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (LinkId lid : topo.outgoing(topo.nodes()[u].id)) {
      if (banned_links.contains(lid)) continue;
      const Link& l = topo.link(lid);
      const std::size_t v = topo.node_index(l.to);
      if (banned_nodes[v]) continue;
      const double nd = d + l.length_km();
      if (nd < dist[v]) {
        dist[v] = nd;
        via[v] = lid;
        pq.push({nd, v});
      }
    }
  }
  const std::size_t t = topo.node_index(dst);
  if (dist[t] == kInf) return std::nullopt;
  CandidatePath p;
  for (std::size_t v = t; v != s;) {
    const Link& l = topo.link(via[v]);
    p.link_sequence.push_back(l.id);
    p.node_sequence.push_back(l.to);
    v = topo.node_index(l.from);
  }
  p.node_sequence.push_back(src);
  std::reverse(p.node_sequence.begin(), p.node_sequence.end());
  std::reverse(p.link_sequence.begin(), p.link_sequence.end());
  p.total_length_km = 0.0;
  for (LinkId lid : p.link_sequence) p.total_length_km += topo.link(lid).length_km();
  return p;
}

}  // namespace

std::vector<CandidatePath> k_shortest_paths(const Topology& topology, NodeId src, NodeId dst,
                                            int k) {
  if (k < 1) throw Error("k must be at least 1");
  if (src == dst) throw Error("source and destination coincide");
  const std::size_t n = topology.nodes().size();

  std::vector<CandidatePath> accepted;
  auto first = shortest_path(topology, src, dst, std::vector<char>(n, 0), {});
  if (!first) throw Error("no path exists between the nodes");
  accepted.push_back(std::move(*first));

  std::set<CandidatePath, PathOrder> pending;
  while (static_cast<int>(accepted.size()) < k) {
    const CandidatePath& last = accepted.back();
    for (std::size_t i = 0; i + 1 < last.node_sequence.size(); ++i) {
      const NodeId spur = last.node_sequence[i];
      std::set<LinkId> banned_links;
      for (const CandidatePath& p : accepted) {
        if (p.node_sequence.size() > i + 1 &&
            std::equal(p.node_sequence.begin(), p.node_sequence.begin() + static_cast<long>(i) + 1,
                       last.node_sequence.begin())) {
          banned_links.insert(p.link_sequence[i]);
        }
      }
      std::vector<char> banned_nodes(n, 0);
      for (std::size_t j = 0; j < i; ++j) banned_nodes[topology.node_index(last.node_sequence[j])] = 1;

      auto spur_path = shortest_path(topology, spur, dst, banned_nodes, banned_links);
      if (!spur_path) continue;
      CandidatePath total;
      total.node_sequence.assign(last.node_sequence.begin(),
                                 last.node_sequence.begin() + static_cast<long>(i));
      total.link_sequence.assign(last.link_sequence.begin(),
                                 last.link_sequence.begin() + static_cast<long>(i));
      total.node_sequence.insert(total.node_sequence.end(), spur_path->node_sequence.begin(),
                                 spur_path->node_sequence.end());
      total.link_sequence.insert(total.link_sequence.end(), spur_path->link_sequence.begin(),
                                 spur_path->link_sequence.end());
      total.total_length_km = 0.0;
      for (LinkId lid : total.link_sequence) total.total_length_km += topology.link(lid).length_km();
      if (std::find(accepted.begin(), accepted.end(), total) == accepted.end()) {
        pending.insert(std::move(total));
      }
    }
    if (pending.empty()) break;
    accepted.push_back(*pending.begin());
    pending.erase(pending.begin());
  }
  return accepted;
}

namespace {

int fiber_pairs_along(const CandidatePath& path, std::span<const SlotGrid> grids) {
  int pairs = std::numeric_limits<int>::max();
  for (LinkId lid : path.link_sequence) {
    pairs = std::min(pairs, grids[static_cast<std::size_t>(lid)].fiber_pairs());
  }
  return path.link_sequence.empty() ? 0 : pairs;
}

}  // namespace

int path_free_weight(const CandidatePath& path, std::span<const SlotGrid> grids) {
  const int pairs = fiber_pairs_along(path, grids);
  int best = 0;
  for (int p = 0; p < pairs; ++p) {
    const int slots = grids[static_cast<std::size_t>(path.link_sequence.front())].slot_count();
    int run = 0;
    for (int s = 0; s < slots; ++s) {
      const bool free = std::none_of(path.link_sequence.begin(), path.link_sequence.end(), [&](LinkId lid) {
        return grids[static_cast<std::size_t>(lid)].occupied(p, s);
      });
      run = free ? run + 1 : 0;
      best = std::max(best, run);
    }
  }
  return best;
}

std::size_t choose_path(std::span<const CandidatePath> candidates, std::span<const int> weights,
                        Rng& rng) {
  if (candidates.empty()) throw Error("empty candidate list");
  if (weights.size() != candidates.size()) throw Error("weights not aligned with candidates");
  long long total = 0;
  for (int w : weights) total += std::max(w, 0);
  if (total == 0) {
    std::size_t shortest = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      if (candidates[i].total_length_km < candidates[shortest].total_length_km) shortest = i;
    }
    return shortest;
  }
  // Portable uniform draw in [0, 1): top 53 bits of one engine output.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  const double target = u * static_cast<double>(total);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    cumulative += weights[i];
    last_positive = i;
    if (target < cumulative) return i;
  }
  return last_positive;
}

std::optional<Placement> first_fit(const CandidatePath& path, int slot_count,
                                   std::span<const SlotGrid> grids) {
  if (slot_count < 1) throw Error("slot_count must be positive");
  const int pairs = fiber_pairs_along(path, grids);
  for (int p = 0; p < pairs; ++p) {
    const int slots = grids[static_cast<std::size_t>(path.link_sequence.front())].slot_count();
    int run = 0;
    for (int s = 0; s < slots; ++s) {
      const bool free = std::none_of(path.link_sequence.begin(), path.link_sequence.end(), [&](LinkId lid) {
        return grids[static_cast<std::size_t>(lid)].occupied(p, s);
      });
      run = free ? run + 1 : 0;
      if (run == slot_count) return Placement{p, s - slot_count + 1};
    }
  }
  return std::nullopt;
}

}  // namespace eon
