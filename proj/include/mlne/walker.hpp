#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mlne/graph.hpp"
#include "mlne/types.hpp"

namespace mlne {

enum class StartMode {
  per_node,      ///< num_walks walks from every node, first hop uniform over incident (neighbor, layer) pairs
  uniform_edge,  ///< num_walks * |V| walks, each seeded on a uniformly drawn oriented layer-edge
};

struct WalkParams {
  double p = 0.5;  ///< return factor
  double q = 0.5;  ///< in-out factor
  double r = 0.5;  ///< stay-on-layer probability
  std::size_t num_walks = 10;
  std::size_t walk_length = 80;  ///< nodes per walk
  std::uint64_t seed = 0;
  StartMode start = StartMode::per_node;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Walk state: the last traversed edge (prev, curr) and the layer it was traversed in.
struct WalkStep {
  NodeId prev{};
  NodeId curr{};
  LayerId layer{};
  friend constexpr bool operator==(const WalkStep&, const WalkStep&) = default;
};

struct Transition {
  WalkStep next;
  double probability = 0.0;
};

struct WalkCorpus {
  std::vector<std::vector<NodeId>> walks;
  /// Layer of every transition (layers[w].size() == walks[w].size() - 1).
  /// Only filled by the multilayer walker; empty for single-graph walks.
  std::vector<std::vector<LayerId>> layers;

  std::size_t total_tokens() const noexcept;
  std::size_t singleton_walks() const noexcept;
};

/// Return/in-out bias for stepping from the current node to `candidate`
/// when the previous node was z: 1/p when candidate == z, 1 when z and
/// candidate are adjacent in layer l, 1/q otherwise.
double alpha_pq(const MultilayerNetwork& mn, NodeId z, NodeId candidate, LayerId l, double p, double q);
double alpha_pq(const Graph& g, NodeId z, NodeId candidate, double p, double q);

/// Full next-step law of the layer-traversing walk from `state`, using only
/// candidates with non-zero probability. Returns an empty list when
/// state.curr is isolated. Throws std::invalid_argument if state.layer is
/// not incident to state.curr.
std::vector<Transition> step_distribution(const MultilayerNetwork& mn, const WalkStep& state,
                                          const WalkParams& params);

/// Second-order p/q law on a single graph.
std::vector<std::pair<NodeId, double>> step_distribution(const Graph& g, NodeId prev, NodeId curr,
                                                         const WalkParams& params);

class Rng;

/// One draw from step_distribution, using the same code path as the walk
/// generators. Returns nullopt at a dead end.
std::optional<WalkStep> sample_step(const MultilayerNetwork& mn, const WalkStep& state, const WalkParams& params,
                                    Rng& rng);
std::optional<NodeId> sample_step(const Graph& g, NodeId prev, NodeId curr, const WalkParams& params, Rng& rng);

/// Walks are laid out walk-index-major: slot = w * |V| + v. Each slot draws
/// from its own stream keyed on (seed, v, w), so output is identical for
/// any thread count.
WalkCorpus coanalysis_walks(const MultilayerNetwork& mn, const WalkParams& params);
WalkCorpus single_graph_walks(const Graph& g, const WalkParams& params);

namespace serial {
WalkCorpus coanalysis_walks(const MultilayerNetwork& mn, const WalkParams& params);
WalkCorpus single_graph_walks(const Graph& g, const WalkParams& params);
}  // namespace serial

struct LayerSwitchStats {
  std::size_t eligible = 0;  ///< transitions taken from a node with more than one incident layer
  std::size_t switches = 0;  ///< ... of which changed layer
  double rate() const noexcept { return eligible ? static_cast<double>(switches) / eligible : 0.0; }
};

LayerSwitchStats layer_switch_stats(const MultilayerNetwork& mn, const WalkCorpus& corpus);

}  // namespace mlne
