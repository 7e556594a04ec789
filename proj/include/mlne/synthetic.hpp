#pragma once

#include <cstddef>
#include <cstdint>

#include "mlne/graph.hpp"

namespace mlne {

/// Multilayer stochastic block model.
///
/// Nodes are split into num_blocks contiguous, near-equal blocks. Layer 0 is a
/// plain SBM draw. For every later layer each pair copies its layer-0 state
/// with probability layer_correlation and is otherwise redrawn from the SBM,
/// so every layer has the same marginal law.
struct SyntheticSpec {
  std::size_t num_nodes = 100;
  std::size_t num_layers = 3;
  std::size_t num_blocks = 2;
  double p_in = 0.3;
  double p_out = 0.02;
  double layer_correlation = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

std::size_t block_of(const SyntheticSpec& spec, NodeId v);

MultilayerNetwork generate_synthetic(const SyntheticSpec& spec);

}  // namespace mlne
