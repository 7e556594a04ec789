#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mlne/types.hpp"

namespace mlne {

/// Undirected simple graph in CSR form with sorted neighbor lists.
class Graph {
 public:
  Graph() = default;

  /// Builds from arbitrary pairs; self-loops are dropped and duplicates collapsed.
  static Graph from_pairs(std::size_t num_nodes, std::span<const NodePair> pairs);

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {targets_.data() + offsets_[index(v)], targets_.data() + offsets_[index(v) + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[index(v) + 1] - offsets_[index(v)]; }

  /// O(log deg) membership test.
  bool has_edge(NodeId a, NodeId b) const noexcept;

  /// Canonical (a < b) edge list in lexicographic order.
  std::vector<NodePair> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Counters produced while building a network from raw triples.
struct BuildStats {
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

/// A set of layers over one shared node set: MN = (V, L, A).
///
/// Immutable after construction; all queries are safe to call concurrently.
class MultilayerNetwork {
 public:
  MultilayerNetwork() = default;

  /// Self-loops are dropped and duplicate (x, y, l) triples (in either
  /// orientation) are collapsed; both are counted in `stats` when given.
  /// Throws ConfigError if an id is out of range.
  static MultilayerNetwork from_triples(std::size_t num_nodes, std::size_t num_layers,
                                        std::span<const EdgeTriple> triples,
                                        BuildStats* stats = nullptr);

  static MultilayerNetwork from_layers(std::vector<Graph> layers);

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t num_layers() const noexcept { return layers_.size(); }
  /// Number of distinct (x, y, l) triples with x < y.
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Unchecked access; see layer_graph() for the checked copy.
  const Graph& layer(LayerId l) const noexcept { return layers_[index(l)]; }

  /// Sorted layers in which node i has at least one edge.
  std::span<const LayerId> incident_layers(NodeId i) const noexcept {
    return {incident_.data() + incident_offsets_[index(i)],
            incident_.data() + incident_offsets_[index(i) + 1]};
  }
  std::size_t connected_layers(NodeId i) const noexcept { return incident_layers(i).size(); }

  bool has_edge(NodeId a, NodeId b, LayerId l) const noexcept { return layers_[index(l)].has_edge(a, b); }

  /// Canonical sorted triples (x < y, ordered by layer then x then y).
  std::vector<EdgeTriple> triples() const;

 private:
  std::size_t num_nodes_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<Graph> layers_;
  std::vector<std::size_t> incident_offsets_;
  std::vector<LayerId> incident_;

  void index_incidence();
};

/// Union of all layers with multi-edges collapsed.
Graph merge(const MultilayerNetwork& mn);

/// Copy of layer l over the full node set. Throws InvalidLayerError.
Graph layer_graph(const MultilayerNetwork& mn, LayerId l);

std::size_t connected_layers(const MultilayerNetwork& mn, NodeId i);
std::vector<LayerId> incident_layers(const MultilayerNetwork& mn, NodeId i);

/// Removes every listed pair from every layer.
MultilayerNetwork without_pairs(const MultilayerNetwork& mn, std::span<const NodePair> pairs);

}  // namespace mlne
