#include "mlne/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mlne {

namespace {

// Sorted, deduplicated canonical pairs -> symmetric CSR.
void build_csr(std::size_t num_nodes, const std::vector<NodePair>& pairs,
               std::vector<std::size_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(num_nodes + 1, 0);
  for (const auto& e : pairs) {
    ++offsets[index(e.a) + 1];
    ++offsets[index(e.b) + 1];
  }
  for (std::size_t v = 0; v < num_nodes; ++v) offsets[v + 1] += offsets[v];
  targets.resize(offsets.back());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& e : pairs) {
    targets[cursor[index(e.a)]++] = e.b;
    targets[cursor[index(e.b)]++] = e.a;
  }
  for (std::size_t v = 0; v < num_nodes; ++v)
    std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
              targets.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
}

void check_node(std::size_t num_nodes, NodeId v) {
  if (index(v) >= num_nodes)
    throw std::out_of_range("node id " + std::to_string(index(v)) + " out of range (|V|=" +
                            std::to_string(num_nodes) + ")");
}

}  // namespace

Graph Graph::from_pairs(std::size_t num_nodes, std::span<const NodePair> pairs) {
  std::vector<NodePair> canon;
  canon.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (index(p.a) >= num_nodes || index(p.b) >= num_nodes)
      throw ConfigError("edge endpoint out of range");
    if (p.a == p.b) continue;
    canon.push_back(NodePair::canonical(p.a, p.b));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

  Graph g;
  build_csr(num_nodes, canon, g.offsets_, g.targets_);
  return g;
}

bool Graph::has_edge(NodeId a, NodeId b) const noexcept {
  // Search the shorter list.
  if (degree(a) > degree(b)) std::swap(a, b);
  const auto nbrs = neighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::vector<NodePair> Graph::edges() const {
  std::vector<NodePair> out;
  out.reserve(edge_count());
  for (std::size_t v = 0; v < num_nodes(); ++v)
    for (NodeId u : neighbors(node(v)))
      if (index(u) > v) out.push_back({node(v), u});
  return out;
}

MultilayerNetwork MultilayerNetwork::from_triples(std::size_t num_nodes, std::size_t num_layers,
                                                  std::span<const EdgeTriple> triples,
                                                  BuildStats* stats) {
  std::vector<std::vector<NodePair>> per_layer(num_layers);
  BuildStats local;
  for (const auto& t : triples) {
    if (index(t.x) >= num_nodes || index(t.y) >= num_nodes)
      throw ConfigError("edge endpoint out of range");
    if (index(t.layer) >= num_layers)
      throw ConfigError("layer id " + std::to_string(index(t.layer)) + " out of range");
    if (t.x == t.y) {
      ++local.self_loops;
      continue;
    }
    per_layer[index(t.layer)].push_back(NodePair::canonical(t.x, t.y));
  }

  MultilayerNetwork mn;
  mn.num_nodes_ = num_nodes;
  mn.layers_.reserve(num_layers);
  for (auto& pairs : per_layer) {
    std::sort(pairs.begin(), pairs.end());
    const auto before = pairs.size();
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    local.duplicates += before - pairs.size();
    Graph g = Graph::from_pairs(num_nodes, pairs);
    mn.edge_count_ += g.edge_count();
    mn.layers_.push_back(std::move(g));
  }
  mn.index_incidence();
  if (stats) *stats = local;
  return mn;
}

MultilayerNetwork MultilayerNetwork::from_layers(std::vector<Graph> layers) {
  MultilayerNetwork mn;
  if (!layers.empty()) mn.num_nodes_ = layers.front().num_nodes();
  for (const auto& g : layers) {
    if (g.num_nodes() != mn.num_nodes_) throw MismatchError("layers must share one node set");
    mn.edge_count_ += g.edge_count();
  }
  mn.layers_ = std::move(layers);
  mn.index_incidence();
  return mn;
}

void MultilayerNetwork::index_incidence() {
  incident_offsets_.assign(num_nodes_ + 1, 0);
  incident_.clear();
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    for (std::size_t l = 0; l < layers_.size(); ++l)
      if (layers_[l].degree(node(v)) > 0) incident_.push_back(mlne::layer(l));
    incident_offsets_[v + 1] = incident_.size();
  }
}

std::vector<EdgeTriple> MultilayerNetwork::triples() const {
  std::vector<EdgeTriple> out;
  out.reserve(edge_count_);
  for (std::size_t l = 0; l < layers_.size(); ++l)
    for (const auto& e : layers_[l].edges()) out.push_back({e.a, e.b, mlne::layer(l)});
  return out;
}

Graph merge(const MultilayerNetwork& mn) {
  std::vector<NodePair> pairs;
  pairs.reserve(mn.edge_count());
  for (std::size_t l = 0; l < mn.num_layers(); ++l) {
    const auto e = mn.layer(layer(l)).edges();
    pairs.insert(pairs.end(), e.begin(), e.end());
  }
  return Graph::from_pairs(mn.num_nodes(), pairs);
}

Graph layer_graph(const MultilayerNetwork& mn, LayerId l) {
  if (index(l) >= mn.num_layers())
    throw InvalidLayerError("invalid layer " + std::to_string(index(l)) + " (|L|=" +
                            std::to_string(mn.num_layers()) + ")");
  return mn.layer(l);
}

std::size_t connected_layers(const MultilayerNetwork& mn, NodeId i) {
  check_node(mn.num_nodes(), i);
  return mn.connected_layers(i);
}

std::vector<LayerId> incident_layers(const MultilayerNetwork& mn, NodeId i) {
  check_node(mn.num_nodes(), i);
  const auto s = mn.incident_layers(i);
  return {s.begin(), s.end()};
}

MultilayerNetwork without_pairs(const MultilayerNetwork& mn, std::span<const NodePair> pairs) {
  std::vector<NodePair> removed;
  removed.reserve(pairs.size());
  for (const auto& p : pairs) removed.push_back(NodePair::canonical(p.a, p.b));
  std::sort(removed.begin(), removed.end());

  std::vector<Graph> layers;
  layers.reserve(mn.num_layers());
  for (std::size_t l = 0; l < mn.num_layers(); ++l) {
    auto kept = mn.layer(layer(l)).edges();
    std::erase_if(kept, [&](const NodePair& e) {
      return std::binary_search(removed.begin(), removed.end(), e);
    });
    layers.push_back(Graph::from_pairs(mn.num_nodes(), kept));
  }
  if (layers.empty()) return MultilayerNetwork::from_triples(mn.num_nodes(), 0, {});
  return MultilayerNetwork::from_layers(std::move(layers));
}

}  // namespace mlne
