#include "mlne/walker.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "mlne/rng.hpp"

namespace mlne {

void WalkParams::validate() const {
  if (!(p > 0.0)) throw ConfigError("p must be > 0 (got " + std::to_string(p) + ")");
  if (!(q > 0.0)) throw ConfigError("q must be > 0 (got " + std::to_string(q) + ")");
  if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("r must be in [0,1] (got " + std::to_string(r) + ")");
  if (num_walks < 1) throw ConfigError("num_walks must be >= 1");
  if (walk_length < 1) throw ConfigError("walk_length must be >= 1");
}

std::size_t WalkCorpus::total_tokens() const noexcept {
  std::size_t n = 0;
  for (const auto& w : walks) n += w.size();
  return n;
}

std::size_t WalkCorpus::singleton_walks() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(walks.begin(), walks.end(), [](const auto& w) { return w.size() == 1; }));
}

double alpha_pq(const MultilayerNetwork& mn, NodeId z, NodeId candidate, LayerId l, double p, double q) {
  if (candidate == z) return 1.0 / p;
  if (mn.has_edge(z, candidate, l)) return 1.0;
  return 1.0 / q;
}

double alpha_pq(const Graph& g, NodeId z, NodeId candidate, double p, double q) {
  if (candidate == z) return 1.0 / p;
  if (g.has_edge(z, candidate)) return 1.0;
  return 1.0 / q;
}

namespace {

struct Candidate {
  NodeId next;
  LayerId layer;
  double weight;
};

// Unnormalized transition weights; zero-weight layers are skipped entirely.
void fill_weights(const MultilayerNetwork& mn, const WalkStep& s, const WalkParams& params,
                  std::vector<Candidate>& out) {
  out.clear();
  const auto layers = mn.incident_layers(s.curr);
  const std::size_t n_layers = layers.size();
  for (LayerId l : layers) {
    double factor = 1.0;
    if (n_layers > 1)
      factor = (l == s.layer) ? params.r : (1.0 - params.r) / static_cast<double>(n_layers - 1);
    if (factor == 0.0) continue;
    for (NodeId y : mn.layer(l).neighbors(s.curr))
      out.push_back({y, l, factor * alpha_pq(mn, s.prev, y, l, params.p, params.q)});
  }
}

template <typename T, typename WeightOf>
std::size_t sample_index(const std::vector<T>& items, WeightOf weight_of, Rng& rng) {
  double total = 0.0;
  for (const auto& c : items) total += weight_of(c);
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < items.size(); ++i) {
    u -= weight_of(items[i]);
    if (u < 0.0) return i;
  }
  return items.size() - 1;
}

struct Scratch {
  std::vector<Candidate> candidates;
  std::vector<std::pair<NodeId, double>> weighted;
};

// Oriented layer-edges, used by the uniform-edge start mode.
std::vector<EdgeTriple> oriented_edges(const MultilayerNetwork& mn) {
  std::vector<EdgeTriple> out;
  out.reserve(2 * mn.edge_count());
  for (const auto& t : mn.triples()) {
    out.push_back(t);
    out.push_back({t.y, t.x, t.layer});
  }
  return out;
}

std::vector<EdgeTriple> oriented_edges(const Graph& g) {
  std::vector<EdgeTriple> out;
  out.reserve(2 * g.edge_count());
  for (const auto& e : g.edges()) {
    out.push_back({e.a, e.b, LayerId{}});
    out.push_back({e.b, e.a, LayerId{}});
  }
  return out;
}

class CoanalysisWalker {
 public:
  CoanalysisWalker(const MultilayerNetwork& mn, const WalkParams& params)
      : mn_(mn), params_(params) {
    params_.validate();
    if (mn.num_nodes() == 0) throw ConfigError("cannot walk an empty network");
    if (params.start == StartMode::uniform_edge) edges_ = oriented_edges(mn);
  }

  std::size_t slots() const noexcept { return params_.num_walks * mn_.num_nodes(); }

  void run(std::size_t slot, Scratch& scratch, std::vector<NodeId>& walk, std::vector<LayerId>& layers) const {
    const std::size_t n = mn_.num_nodes();
    const std::size_t v = slot % n;
    const std::size_t w = slot / n;
    Rng rng(params_.seed, {v, w});
    walk.clear();
    layers.clear();
    walk.reserve(params_.walk_length);
    layers.reserve(params_.walk_length);

    WalkStep state;
    if (params_.start == StartMode::uniform_edge) {
      if (edges_.empty()) {
        walk.push_back(node(v));
        return;
      }
      const auto& e = edges_[rng.below(edges_.size())];
      walk.push_back(e.x);
      if (params_.walk_length == 1) return;
      state = {e.x, e.y, e.layer};
    } else {
      const NodeId start = node(v);
      walk.push_back(start);
      if (params_.walk_length == 1) return;
      const auto incident = mn_.incident_layers(start);
      if (incident.empty()) return;
      std::size_t total = 0;
      for (LayerId l : incident) total += mn_.layer(l).degree(start);
      std::size_t k = rng.below(total);
      for (LayerId l : incident) {
        const auto nbrs = mn_.layer(l).neighbors(start);
        if (k < nbrs.size()) {
          state = {start, nbrs[k], l};
          break;
        }
        k -= nbrs.size();
      }
    }
    walk.push_back(state.curr);
    layers.push_back(state.layer);

    while (walk.size() < params_.walk_length) {
      fill_weights(mn_, state, params_, scratch.candidates);
      // state.curr is reached through an edge, so it always has candidates.
      const auto& c = scratch.candidates[sample_index(
          scratch.candidates, [](const Candidate& x) { return x.weight; }, rng)];
      state = {state.curr, c.next, c.layer};
      walk.push_back(c.next);
      layers.push_back(c.layer);
    }
  }

 private:
  const MultilayerNetwork& mn_;
  WalkParams params_;
  std::vector<EdgeTriple> edges_;
};

class SingleGraphWalker {
 public:
  SingleGraphWalker(const Graph& g, const WalkParams& params) : g_(g), params_(params) {
    params_.validate();
    if (g.num_nodes() == 0) throw ConfigError("cannot walk an empty graph");
    if (params.start == StartMode::uniform_edge) edges_ = oriented_edges(g);
  }

  std::size_t slots() const noexcept { return params_.num_walks * g_.num_nodes(); }

  void run(std::size_t slot, Scratch& scratch, std::vector<NodeId>& walk, std::vector<LayerId>&) const {
    const std::size_t n = g_.num_nodes();
    const std::size_t v = slot % n;
    const std::size_t w = slot / n;
    Rng rng(params_.seed, {v, w});
    walk.clear();
    walk.reserve(params_.walk_length);

    NodeId prev, curr;
    if (params_.start == StartMode::uniform_edge) {
      if (edges_.empty()) {
        walk.push_back(node(v));
        return;
      }
      const auto& e = edges_[rng.below(edges_.size())];
      walk.push_back(e.x);
      if (params_.walk_length == 1) return;
      prev = e.x;
      curr = e.y;
    } else {
      prev = node(v);
      walk.push_back(prev);
      if (params_.walk_length == 1 || g_.degree(prev) == 0) return;
      const auto nbrs = g_.neighbors(prev);
      curr = nbrs[rng.below(nbrs.size())];
    }
    walk.push_back(curr);

    auto& buf = scratch.weighted;
    while (walk.size() < params_.walk_length) {
      buf.clear();
      for (NodeId y : g_.neighbors(curr)) buf.emplace_back(y, alpha_pq(g_, prev, y, params_.p, params_.q));
      const NodeId next = buf[sample_index(buf, [](const auto& x) { return x.second; }, rng)].first;
      prev = curr;
      curr = next;
      walk.push_back(curr);
    }
  }

 private:
  const Graph& g_;
  WalkParams params_;
  std::vector<EdgeTriple> edges_;
};

template <typename Walker>
WalkCorpus generate_parallel(const Walker& walker, bool keep_layers) {
  WalkCorpus corpus;
  const std::size_t n = walker.slots();
  corpus.walks.resize(n);
  if (keep_layers) corpus.layers.resize(n);
#pragma omp parallel
  {
    Scratch scratch;
    std::vector<LayerId> discard;
#pragma omp for schedule(dynamic, 64)
    for (std::size_t s = 0; s < n; ++s)
      walker.run(s, scratch, corpus.walks[s], keep_layers ? corpus.layers[s] : discard);
  }
  return corpus;
}

template <typename Walker>
WalkCorpus generate_serial(const Walker& walker, bool keep_layers) {
  WalkCorpus corpus;
  const std::size_t n = walker.slots();
  corpus.walks.reserve(n);
  if (keep_layers) corpus.layers.reserve(n);
  Scratch scratch;
  std::vector<NodeId> walk;
  std::vector<LayerId> layers;
  for (std::size_t s = 0; s < n; ++s) {
    walker.run(s, scratch, walk, layers);
    corpus.walks.push_back(walk);
    if (keep_layers) corpus.layers.push_back(layers);
  }
  return corpus;
}

}  // namespace

std::vector<Transition> step_distribution(const MultilayerNetwork& mn, const WalkStep& state,
                                          const WalkParams& params) {
  const auto incident = mn.incident_layers(state.curr);
  if (incident.empty()) return {};
  if (!std::binary_search(incident.begin(), incident.end(), state.layer))
    throw std::invalid_argument("walk state layer is not incident to the current node");

  std::vector<Candidate> cands;
  fill_weights(mn, state, params, cands);
  double total = 0.0;
  for (const auto& c : cands) total += c.weight;
  std::vector<Transition> out;
  out.reserve(cands.size());
  for (const auto& c : cands) out.push_back({{state.curr, c.next, c.layer}, c.weight / total});
  return out;
}

std::vector<std::pair<NodeId, double>> step_distribution(const Graph& g, NodeId prev, NodeId curr,
                                                         const WalkParams& params) {
  std::vector<std::pair<NodeId, double>> out;
  double total = 0.0;
  for (NodeId y : g.neighbors(curr)) {
    const double w = alpha_pq(g, prev, y, params.p, params.q);
    out.emplace_back(y, w);
    total += w;
  }
  for (auto& [y, w] : out) w /= total;
  return out;
}

std::optional<WalkStep> sample_step(const MultilayerNetwork& mn, const WalkStep& state, const WalkParams& params,
                                    Rng& rng) {
  std::vector<Candidate> cands;
  fill_weights(mn, state, params, cands);
  if (cands.empty()) return std::nullopt;
  const auto& c = cands[sample_index(cands, [](const Candidate& x) { return x.weight; }, rng)];
  return WalkStep{state.curr, c.next, c.layer};
}

std::optional<NodeId> sample_step(const Graph& g, NodeId prev, NodeId curr, const WalkParams& params, Rng& rng) {
  if (g.degree(curr) == 0) return std::nullopt;
  std::vector<std::pair<NodeId, double>> buf;
  for (NodeId y : g.neighbors(curr)) buf.emplace_back(y, alpha_pq(g, prev, y, params.p, params.q));
  return buf[sample_index(buf, [](const auto& x) { return x.second; }, rng)].first;
}

WalkCorpus coanalysis_walks(const MultilayerNetwork& mn, const WalkParams& params) {
  return generate_parallel(CoanalysisWalker(mn, params), true);
}

WalkCorpus single_graph_walks(const Graph& g, const WalkParams& params) {
  return generate_parallel(SingleGraphWalker(g, params), false);
}

namespace serial {

WalkCorpus coanalysis_walks(const MultilayerNetwork& mn, const WalkParams& params) {
  return generate_serial(CoanalysisWalker(mn, params), true);
}

WalkCorpus single_graph_walks(const Graph& g, const WalkParams& params) {
  return generate_serial(SingleGraphWalker(g, params), false);
}

}  // namespace serial

LayerSwitchStats layer_switch_stats(const MultilayerNetwork& mn, const WalkCorpus& corpus) {
  LayerSwitchStats stats;
  for (std::size_t w = 0; w < corpus.layers.size(); ++w) {
    const auto& nodes = corpus.walks[w];
    const auto& layers = corpus.layers[w];
    for (std::size_t k = 1; k < layers.size(); ++k) {
      if (mn.connected_layers(nodes[k]) <= 1) continue;
      ++stats.eligible;
      if (layers[k] != layers[k - 1]) ++stats.switches;
    }
  }
  return stats;
}

}  // namespace mlne
