#pragma once

// Random connected topologies for property checks: a random spanning tree
// plus extra edges.

#include <random>
#include <set>
#include <utility>
#include <vector>

#include "eon/topology.hpp"

namespace oracle {

struct RandomTopology {
  eon::Topology topology;
  std::vector<std::pair<int, int>> edges;  // one entry per adjacency
};

inline RandomTopology random_topology(std::mt19937_64& rng, int min_nodes = 3, int max_nodes = 20,
                                      int integer_spans = 0) {
  std::uniform_int_distribution<int> node_count(min_nodes, max_nodes);
  const int n = node_count(rng);
  std::vector<eon::Node> nodes;
  std::uniform_int_distribution<int> count(0, 9);
  for (int i = 0; i < n; ++i) {
    // Sparse, non-contiguous ids.
    nodes.push_back({3 * i + 1, "n" + std::to_string(i), count(rng), count(rng)});
  }
  std::set<std::pair<int, int>> used;
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    const int p = parent(rng);
    edges.push_back({nodes[p].id, nodes[i].id});
    used.insert({p, i});
  }
  std::uniform_int_distribution<int> extra(0, n);
  const int extras = extra(rng);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int e = 0; e < extras; ++e) {
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!used.insert({a, b}).second) continue;
    edges.push_back({nodes[a].id, nodes[b].id});
  }

  std::vector<eon::Link> links;
  std::uniform_real_distribution<double> span_len(20.0, 120.0);
  std::uniform_int_distribution<int> span_int(1, 4);
  std::uniform_int_distribution<int> span_count(1, 4);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    std::vector<eon::Span> spans;
    const int sc = integer_spans ? 1 : span_count(rng);
    for (int s = 0; s < sc; ++s) {
      spans.push_back({integer_spans ? static_cast<double>(span_int(rng)) : span_len(rng)});
    }
    const auto id = static_cast<eon::LinkId>(2 * k);
    links.push_back({id, static_cast<int>(k), edges[k].first, edges[k].second, spans});
    std::vector<eon::Span> reversed(spans.rbegin(), spans.rend());
    links.push_back({id + 1, static_cast<int>(k), edges[k].second, edges[k].first, reversed});
  }
  return {eon::Topology("random", nodes, links), edges};
}

}  // namespace oracle
