#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "eon/slot_grid.hpp"
#include "eon/topology.hpp"

namespace eon {

struct CandidatePath {
  std::vector<NodeId> node_sequence;
  std::vector<LinkId> link_sequence;
  double total_length_km = 0.0;

  // Concatenated spans of every link, in travel order.
  std::vector<Span> spans(const Topology& topology) const;
  bool operator==(const CandidatePath&) const = default;
};

// Yen's algorithm on span length. Paths come back in non-decreasing length;
// equal lengths are ordered by node sequence. Throws Error when src == dst,
// k < 1, or dst is unreachable.
std::vector<CandidatePath> k_shortest_paths(const Topology& topology, NodeId src, NodeId dst,
                                            int k);

// Largest slot run free on every link of the path within one fiber pair.
int path_free_weight(const CandidatePath& path, std::span<const SlotGrid> grids);

using Rng = std::mt19937_64;

// Samples a candidate index with probability proportional to its weight; all
// zero weights select the shortest candidate.
std::size_t choose_path(std::span<const CandidatePath> candidates, std::span<const int> weights,
                        Rng& rng);

struct Placement {
  int fiber_pair = 0;
  int start_slot = 0;
  auto operator<=>(const Placement&) const = default;
};

// Lowest (fiber pair, start) whose run of `slot_count` slots is free on every
// link of the path; nullopt when blocked.
std::optional<Placement> first_fit(const CandidatePath& path, int slot_count,
                                   std::span<const SlotGrid> grids);

}  // namespace eon
