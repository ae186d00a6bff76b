#pragma once

// All simple paths between two nodes by depth-first enumeration, ordered by
// (length, node sequence).

#include <algorithm>
#include <map>
#include <vector>

namespace oracle {

struct Edge {
  int a;
  int b;
  double length;
};

struct SimplePath {
  std::vector<int> nodes;
  double length = 0.0;
};

inline std::vector<SimplePath> all_simple_paths(const std::vector<Edge>& edges, int src, int dst) {
  std::map<int, std::vector<std::pair<int, double>>> adj;
  for (const Edge& e : edges) {
    adj[e.a].push_back({e.b, e.length});
    adj[e.b].push_back({e.a, e.length});
  }
  std::vector<SimplePath> out;
  SimplePath cur{{src}, 0.0};
  auto dfs = [&](auto& self, int at) -> void {
    if (at == dst) {
      out.push_back(cur);
      return;
    }
    for (const auto& [next, len] : adj[at]) {
      if (std::find(cur.nodes.begin(), cur.nodes.end(), next) != cur.nodes.end()) continue;
      cur.nodes.push_back(next);
      cur.length += len;
      self(self, next);
      cur.length -= len;
      cur.nodes.pop_back();
    }
  };
  dfs(dfs, src);
  std::sort(out.begin(), out.end(), [](const SimplePath& x, const SimplePath& y) {
    if (x.length != y.length) return x.length < y.length;
    return x.nodes < y.nodes;
  });
  return out;
}

}  // namespace oracle
