#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "mlne/graph.hpp"
#include "mlne/sgns.hpp"
#include "mlne/walker.hpp"

namespace mlne {

enum class Method { network_aggregation, results_aggregation, layer_coanalysis };

/// "na" / "ra" / "lc". Throws ConfigError for anything else.
Method parse_method(std::string_view name);
std::string_view method_name(Method m);

struct MethodConfig {
  Method method = Method::layer_coanalysis;
  WalkParams walk;
  TrainConfig train;
  /// Per-layer dimension for results aggregation; 0 means train.dim.
  std::size_t per_layer_dim = 0;
  Execution exec = Execution::parallel;

  std::size_t effective_per_layer_dim() const noexcept { return per_layer_dim ? per_layer_dim : train.dim; }
  void validate() const;
};

/// Diagnostics gathered while embedding; one TrainStats per SGNS run
/// (a single one for NA/LC, one per layer for RA).
struct EmbedLog {
  std::size_t walks = 0;
  std::size_t tokens = 0;
  LayerSwitchStats layer_switches;  ///< LC only
  std::vector<TrainStats> training;
};

EmbeddingSpace network_aggregation(const MultilayerNetwork& mn, const MethodConfig& cfg, EmbedLog* log = nullptr);
EmbeddingSpace results_aggregation(const MultilayerNetwork& mn, const MethodConfig& cfg, EmbedLog* log = nullptr);
EmbeddingSpace layer_coanalysis(const MultilayerNetwork& mn, const MethodConfig& cfg, EmbedLog* log = nullptr);

/// Dispatches on cfg.method.
EmbeddingSpace embed(const MultilayerNetwork& mn, const MethodConfig& cfg, EmbedLog* log = nullptr);

}  // namespace mlne
