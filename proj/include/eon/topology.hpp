#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "eon/slot_grid.hpp"

namespace eon {

using NodeId = int;
using LinkId = int;

struct Node {
  NodeId id = 0;
  std::string name;
  int dc_count = 0;
  int ixp_count = 0;

  bool operator==(const Node&) const = default;
};

struct Span {
  double length_km = 0.0;
  double loss_db_per_km = 0.2;
  double noise_figure_db = 4.3;

  double loss_db() const { return length_km * loss_db_per_km; }
  bool operator==(const Span&) const = default;
};

// One direction of a fiber adjacency. `adjacency_id` is the id the link
// carries in the topology document; both directions share it.
struct Link {
  LinkId id = 0;
  int adjacency_id = 0;
  NodeId from = 0;
  NodeId to = 0;
  std::vector<Span> spans;

  double length_km() const;
  bool operator==(const Link&) const = default;
};

class Topology {
 public:
  Topology() = default;
  // Validates and indexes; throws TopologyError.
  Topology(std::string name, std::vector<Node> nodes, std::vector<Link> links);

  const std::string& name() const { return name_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  const Node& node(NodeId id) const;
  const Link& link(LinkId id) const;
  bool has_node(NodeId id) const { return node_index_.contains(id); }
  // Position of a node in nodes(); throws on unknown id.
  std::size_t node_index(NodeId id) const;

  // Directed links leaving `id`, in link-id order.
  const std::vector<LinkId>& outgoing(NodeId id) const;
  // Number of undirected adjacencies (unique `adjacency_id`s).
  std::size_t adjacency_count() const;

  // Fresh per-direction spectrum state, indexed by LinkId.
  std::vector<SlotGrid> make_grids(int slot_count = SlotGrid::kDefaultSlotCount,
                                   double slot_width_ghz = SlotGrid::kDefaultSlotWidthGhz) const;

  bool operator==(const Topology& other) const {
    return name_ == other.name_ && nodes_ == other.nodes_ && links_ == other.links_;
  }

 private:
  std::string name_;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::unordered_map<NodeId, std::size_t> node_index_;
  std::vector<std::vector<LinkId>> outgoing_;
};

// Parses the JSON topology document. Each listed link is an undirected
// adjacency; both directions are materialized (ids 2k and 2k+1 for the k-th
// listed adjacency).
Topology load_topology(std::string_view document);
Topology load_topology_file(const std::filesystem::path& path);
// Inverse of load_topology (one entry per adjacency).
std::string to_json(const Topology& topology);

int node_degree(const Topology& topology, NodeId node);
double avg_node_degree(const Topology& topology);

}  // namespace eon
