#include "eon/topology.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "eon/error.hpp"

namespace eon {

using nlohmann::json;

double Link::length_km() const {
  return std::accumulate(spans.begin(), spans.end(), 0.0,
                         [](double acc, const Span& s) { return acc + s.length_km; });
}

Topology::Topology(std::string name, std::vector<Node> nodes, std::vector<Link> links)
    : name_(std::move(name)), nodes_(std::move(nodes)), links_(std::move(links)) {
  if (nodes_.empty()) throw TopologyError("topology has no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    if (n.dc_count < 0 || n.ixp_count < 0) {
      throw TopologyError("negative DC/IXP count at node " + std::to_string(n.id));
    }
    if (!node_index_.emplace(n.id, i).second) {
      throw TopologyError("duplicate node id " + std::to_string(n.id));
    }
  }
  outgoing_.assign(nodes_.size(), {});
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const Link& l = links_[i];
    if (l.id != static_cast<LinkId>(i)) throw TopologyError("link ids must be dense");
    if (!has_node(l.from) || !has_node(l.to)) {
      throw TopologyError("dangling endpoint on link " + std::to_string(l.adjacency_id));
    }
    if (l.from == l.to) throw TopologyError("self loop on link " + std::to_string(l.adjacency_id));
    if (l.spans.empty()) throw TopologyError("link " + std::to_string(l.adjacency_id) + " has no spans");
    for (const Span& s : l.spans) {
      if (!(s.length_km > 0.0)) {
        throw TopologyError("non-positive span length on link " + std::to_string(l.adjacency_id));
      }
      if (!(s.loss_db_per_km > 0.0)) {
        throw TopologyError("non-positive loss coefficient on link " +
                            std::to_string(l.adjacency_id));
      }
    }
    outgoing_[node_index_.at(l.from)].push_back(l.id);
  }

  // Connectivity over the undirected view.
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    std::size_t u = stack.back();
    stack.pop_back();
    for (LinkId lid : outgoing_[u]) {
      std::size_t v = node_index_.at(links_[static_cast<std::size_t>(lid)].to);
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  if (std::count(seen.begin(), seen.end(), 1) != static_cast<std::ptrdiff_t>(nodes_.size())) {
    throw TopologyError("disconnected graph");
  }
}

const Node& Topology::node(NodeId id) const { return nodes_[node_index(id)]; }

const Link& Topology::link(LinkId id) const {
  if (id < 0 || id >= static_cast<LinkId>(links_.size())) {
    throw TopologyError("unknown link id " + std::to_string(id));
  }
  return links_[static_cast<std::size_t>(id)];
}

std::size_t Topology::node_index(NodeId id) const {
  auto it = node_index_.find(id);
  if (it == node_index_.end()) throw TopologyError("unknown node id " + std::to_string(id));
  return it->second;
}

const std::vector<LinkId>& Topology::outgoing(NodeId id) const {
  return outgoing_[node_index(id)];
}

std::size_t Topology::adjacency_count() const {
  std::set<int> ids;
  for (const Link& l : links_) ids.insert(l.adjacency_id);
  return ids.size();
}

std::vector<SlotGrid> Topology::make_grids(int slot_count, double slot_width_ghz) const {
  return std::vector<SlotGrid>(links_.size(), SlotGrid(slot_count, slot_width_ghz));
}

namespace {

template <typename T>
T required(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw TopologyError(std::string("schema violation: ") + where + " missing '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw TopologyError(std::string("schema violation: ") + where + " field '" + key +
                        "' has wrong type");
  }
}

}  // namespace

Topology load_topology(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw TopologyError(std::string("schema violation: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array() ||
      !doc.contains("links") || !doc["links"].is_array()) {
    throw TopologyError("schema violation: expected 'nodes' and 'links' arrays");
  }

  std::vector<Node> nodes;
  for (const json& n : doc["nodes"]) {
    Node node;
    node.id = required<int>(n, "id", "node");
    node.name = n.value("name", std::to_string(node.id));
    node.dc_count = required<int>(n, "dc_count", "node");
    node.ixp_count = required<int>(n, "ixp_count", "node");
    nodes.push_back(std::move(node));
  }

  std::vector<Link> links;
  for (const json& l : doc["links"]) {
    const int adj = required<int>(l, "id", "link");
    const NodeId from = required<int>(l, "from", "link");
    const NodeId to = required<int>(l, "to", "link");
    if (!l.contains("spans") || !l["spans"].is_array()) {
      throw TopologyError("schema violation: link missing 'spans' array");
    }
    std::vector<Span> spans;
    for (const json& s : l["spans"]) {
      Span span;
      span.length_km = required<double>(s, "length_km", "span");
      span.loss_db_per_km = s.contains("loss_db_per_km") ? required<double>(s, "loss_db_per_km", "span")
                                                         : 0.2;
      span.noise_figure_db = s.contains("nf_db") ? required<double>(s, "nf_db", "span") : 4.3;
      spans.push_back(span);
    }
    Link fwd{static_cast<LinkId>(links.size()), adj, from, to, spans};
    links.push_back(fwd);
    std::vector<Span> reversed(spans.rbegin(), spans.rend());
    Link rev{static_cast<LinkId>(links.size()), adj, to, from, std::move(reversed)};
    links.push_back(std::move(rev));
  }

  std::set<int> adj_ids;
  for (std::size_t i = 0; i < links.size(); i += 2) {
    if (!adj_ids.insert(links[i].adjacency_id).second) {
      throw TopologyError("schema violation: duplicate link id " +
                          std::to_string(links[i].adjacency_id));
    }
  }

  return Topology(doc.value("name", std::string{}), std::move(nodes), std::move(links));
}

Topology load_topology_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open topology file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_topology(buf.str());
}

std::string to_json(const Topology& topology) {
  json doc;
  doc["name"] = topology.name();
  doc["nodes"] = json::array();
  for (const Node& n : topology.nodes()) {
    doc["nodes"].push_back(
        {{"id", n.id}, {"name", n.name}, {"dc_count", n.dc_count}, {"ixp_count", n.ixp_count}});
  }
  doc["links"] = json::array();
  for (std::size_t i = 0; i < topology.links().size(); i += 2) {
    const Link& l = topology.links()[i];
    json spans = json::array();
    for (const Span& s : l.spans) {
      spans.push_back({{"length_km", s.length_km},
                       {"loss_db_per_km", s.loss_db_per_km},
                       {"nf_db", s.noise_figure_db}});
    }
    doc["links"].push_back({{"id", l.adjacency_id}, {"from", l.from}, {"to", l.to}, {"spans", spans}});
  }
  return doc.dump(1);
}

int node_degree(const Topology& topology, NodeId node) {
  std::set<int> adjacencies;
  for (LinkId lid : topology.outgoing(node)) adjacencies.insert(topology.link(lid).adjacency_id);
  return static_cast<int>(adjacencies.size());
}

double avg_node_degree(const Topology& topology) {
  double total = 0.0;
  for (const Node& n : topology.nodes()) total += node_degree(topology, n.id);
  return total / static_cast<double>(topology.nodes().size());
}

}  // namespace eon
