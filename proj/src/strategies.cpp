#include "mlne/strategies.hpp"

#include <exception>
#include <string>

#include "mlne/rng.hpp"

namespace mlne {

Method parse_method(std::string_view name) {
  if (name == "na" || name == "network-aggregation") return Method::network_aggregation;
  if (name == "ra" || name == "results-aggregation") return Method::results_aggregation;
  if (name == "lc" || name == "layer-coanalysis") return Method::layer_coanalysis;
  throw ConfigError("unknown method '" + std::string(name) + "' (expected na, ra or lc)");
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::network_aggregation: return "na";
    case Method::results_aggregation: return "ra";
    case Method::layer_coanalysis: return "lc";
  }
  return "?";
}

void MethodConfig::validate() const {
  walk.validate();
  train.validate();
}

namespace {

void check_network(const MultilayerNetwork& mn) {
  if (mn.num_nodes() == 0) throw ConfigError("network has no nodes");
}

WalkCorpus graph_walks(const Graph& g, const WalkParams& params, Execution exec) {
  return exec == Execution::serial ? serial::single_graph_walks(g, params) : single_graph_walks(g, params);
}

EmbeddingSpace embed_graph(const Graph& g, const WalkParams& walk, const TrainConfig& train_cfg,
                           Execution exec, EmbedLog* log) {
  const WalkCorpus corpus = graph_walks(g, walk, exec);
  TrainStats stats;
  EmbeddingSpace space = train(corpus, g.num_nodes(), train_cfg, exec, &stats);
  if (log) {
    log->walks += corpus.walks.size();
    log->tokens += corpus.total_tokens();
    log->training.push_back(std::move(stats));
  }
  return space;
}

}  // namespace

EmbeddingSpace network_aggregation(const MultilayerNetwork& mn, const MethodConfig& cfg, EmbedLog* log) {
  cfg.validate();
  check_network(mn);
  return embed_graph(merge(mn), cfg.walk, cfg.train, cfg.exec, log);
}

EmbeddingSpace results_aggregation(const MultilayerNetwork& mn, const MethodConfig& cfg, EmbedLog* log) {
  cfg.validate();
  check_network(mn);
  const std::size_t n_layers = mn.num_layers();
  if (n_layers == 0) throw ConfigError("network has no layers");

  std::vector<EmbeddingSpace> spaces(n_layers);
  std::vector<EmbedLog> logs(n_layers);
  const auto body = [&](std::size_t l) {
    MethodConfig layer_cfg = cfg;
    layer_cfg.walk.seed = derive_seed(cfg.walk.seed, {l});
    layer_cfg.train.seed = derive_seed(cfg.train.seed, {l});
    layer_cfg.train.dim = cfg.effective_per_layer_dim();
    spaces[l] = embed_graph(mn.layer(layer(l)), layer_cfg.walk, layer_cfg.train, cfg.exec, &logs[l]);
  };

  if (cfg.exec == Execution::serial) {
    for (std::size_t l = 0; l < n_layers; ++l) body(l);
  } else {
    // Exceptions cannot cross the parallel region; rethrow the first one after it.
    std::vector<std::exception_ptr> errors(n_layers);
    const auto n = static_cast<std::ptrdiff_t>(n_layers);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t l = 0; l < n; ++l) {
      try {
        body(static_cast<std::size_t>(l));
      } catch (...) {
        errors[static_cast<std::size_t>(l)] = std::current_exception();
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  if (log) {
    for (auto& l : logs) {
      log->walks += l.walks;
      log->tokens += l.tokens;
      for (auto& t : l.training) log->training.push_back(std::move(t));
    }
  }
  return concat(spaces);
}

EmbeddingSpace layer_coanalysis(const MultilayerNetwork& mn, const MethodConfig& cfg, EmbedLog* log) {
  cfg.validate();
  check_network(mn);
  const WalkCorpus corpus =
      cfg.exec == Execution::serial ? serial::coanalysis_walks(mn, cfg.walk) : coanalysis_walks(mn, cfg.walk);
  TrainStats stats;
  EmbeddingSpace space = train(corpus, mn.num_nodes(), cfg.train, cfg.exec, &stats);
  if (log) {
    log->walks += corpus.walks.size();
    log->tokens += corpus.total_tokens();
    log->layer_switches = layer_switch_stats(mn, corpus);
    log->training.push_back(std::move(stats));
  }
  return space;
}

EmbeddingSpace embed(const MultilayerNetwork& mn, const MethodConfig& cfg, EmbedLog* log) {
  switch (cfg.method) {
    case Method::network_aggregation: return network_aggregation(mn, cfg, log);
    case Method::results_aggregation: return results_aggregation(mn, cfg, log);
    case Method::layer_coanalysis: return layer_coanalysis(mn, cfg, log);
  }
  throw ConfigError("unknown method");
}

}  // namespace mlne
