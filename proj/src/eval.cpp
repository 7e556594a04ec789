#include "mlne/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <string>
#include <tuple>

#include "mlne/rng.hpp"

namespace mlne {

EdgeSplit split_edges(const Graph& g, double frac, std::uint64_t seed) {
  if (!(frac > 0.0 && frac < 1.0)) throw ConfigError("test fraction must be in (0,1)");
  auto edges = g.edges();
  const auto n_test = static_cast<std::size_t>(std::llround(frac * static_cast<double>(edges.size())));
  if (edges.empty() || n_test == 0)
    throw DegenerateSplitError("split of " + std::to_string(edges.size()) + " edges at frac " +
                               std::to_string(frac) + " leaves no test edges");

  // Partial Fisher-Yates: the first n_test slots become the test set.
  Rng rng(seed, {0x5b117});
  for (std::size_t i = 0; i < n_test; ++i) std::swap(edges[i], edges[i + rng.below(edges.size() - i)]);

  EdgeSplit split;
  split.seed = seed;
  split.test.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(n_test));
  split.train.assign(edges.begin() + static_cast<std::ptrdiff_t>(n_test), edges.end());
  std::sort(split.test.begin(), split.test.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

namespace {

bool ascending(const ScoredPair& x, const ScoredPair& y) {
  if (x.score != y.score) return x.score < y.score;
  return std::tie(x.a, x.b) < std::tie(y.a, y.b);
}

bool descending(const ScoredPair& x, const ScoredPair& y) {
  if (x.score != y.score) return x.score > y.score;
  return std::tie(x.a, x.b) < std::tie(y.a, y.b);
}

double similarity(const Graph& g, NodeId x, NodeId y, Baseline b) {
  return b == Baseline::common_neighbors ? static_cast<double>(common_neighbors(g, x, y)) : jaccard(g, x, y);
}

std::vector<ScoredPair> canonical_slots(std::span<const NodePair> candidates) {
  std::vector<ScoredPair> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto c = NodePair::canonical(candidates[i].a, candidates[i].b);
    out[i] = {c.a, c.b, 0.0};
  }
  return out;
}

std::vector<NodePair> sorted_set(std::span<const NodePair> pairs) {
  std::vector<NodePair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(NodePair::canonical(p.a, p.b));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<ScoredPair> rank_candidates(const EmbeddingSpace& space, std::span<const NodePair> candidates,
                                        Metric metric) {
  auto out = canonical_slots(candidates);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& s = out[static_cast<std::size_t>(i)];
    s.score = distance(space, s.a, s.b, metric);
  }
  std::sort(out.begin(), out.end(), ascending);
  return out;
}

std::vector<ScoredPair> rank_by_similarity(const Graph& g, std::span<const NodePair> candidates, Baseline baseline) {
  auto out = canonical_slots(candidates);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& s = out[static_cast<std::size_t>(i)];
    s.score = similarity(g, s.a, s.b, baseline);
  }
  std::sort(out.begin(), out.end(), descending);
  return out;
}

namespace serial {

std::vector<ScoredPair> rank_candidates(const EmbeddingSpace& space, std::span<const NodePair> candidates,
                                        Metric metric) {
  auto out = canonical_slots(candidates);
  for (auto& s : out) s.score = distance(space, s.a, s.b, metric);
  std::stable_sort(out.begin(), out.end(), ascending);
  return out;
}

std::vector<ScoredPair> rank_by_similarity(const Graph& g, std::span<const NodePair> candidates, Baseline baseline) {
  auto out = canonical_slots(candidates);
  for (auto& s : out) s.score = similarity(g, s.a, s.b, baseline);
  std::stable_sort(out.begin(), out.end(), descending);
  return out;
}

}  // namespace serial

Baseline parse_baseline(std::string_view name) {
  if (name == "cn" || name == "common-neighbors") return Baseline::common_neighbors;
  if (name == "jaccard" || name == "ja") return Baseline::jaccard;
  throw ConfigError("unknown baseline '" + std::string(name) + "'");
}

std::string_view baseline_name(Baseline b) { return b == Baseline::common_neighbors ? "cn" : "jaccard"; }

std::vector<NodePair> predict_links(std::span<const ScoredPair> ranked, std::size_t k) {
  if (k > ranked.size())
    throw InsufficientCandidatesError("asked for " + std::to_string(k) + " links from " +
                                      std::to_string(ranked.size()) + " candidates");
  std::vector<NodePair> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back({ranked[i].a, ranked[i].b});
  return out;
}

std::size_t overlap(std::span<const NodePair> predicted, std::span<const NodePair> test) {
  const auto p = sorted_set(predicted);
  const auto t = sorted_set(test);
  std::size_t c = 0;
  auto i = p.begin();
  auto j = t.begin();
  while (i != p.end() && j != t.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++c, ++i, ++j;
    }
  }
  return c;
}

double accuracy(std::span<const NodePair> predicted, std::span<const NodePair> test) {
  const auto t = sorted_set(test);
  if (t.empty()) throw DegenerateSplitError("accuracy needs a non-empty test set");
  return static_cast<double>(overlap(predicted, t)) / static_cast<double>(t.size());
}

double recall(std::span<const NodePair> predicted, std::span<const NodePair> test) { return accuracy(predicted, test); }

double precision(std::span<const NodePair> predicted, std::span<const NodePair> test) {
  const auto p = sorted_set(predicted);
  if (p.empty()) return 0.0;
  return static_cast<double>(overlap(p, test)) / static_cast<double>(p.size());
}

double f1(std::span<const NodePair> predicted, std::span<const NodePair> test) {
  if (sorted_set(test).empty()) throw DegenerateSplitError("f1 needs a non-empty test set");
  const double prec = precision(predicted, test);
  return prec > 0.0 ? harmonic_mean(prec, 1.0) : 0.0;
}

double set_f1(std::span<const NodePair> predicted, std::span<const NodePair> test) {
  return harmonic_mean(precision(predicted, test), recall(predicted, test));
}

std::size_t common_neighbors(const Graph& g, NodeId x, NodeId y) {
  const auto a = g.neighbors(x);
  const auto b = g.neighbors(y);
  std::size_t c = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++c, ++i, ++j;
    }
  }
  return c;
}

double jaccard(const Graph& g, NodeId x, NodeId y) {
  const std::size_t inter = common_neighbors(g, x, y);
  const std::size_t uni = g.degree(x) + g.degree(y) - inter;
  return uni ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

std::vector<NodePair> candidate_pairs(const Graph& full, const EdgeSplit& split, const ExperimentConfig& cfg) {
  const std::size_t n = full.num_nodes();
  std::vector<NodePair> out;
  if (cfg.candidates == CandidateMode::all_non_train) {
    out.reserve(n * (n - 1) / 2 - split.train.size());
    auto train_it = split.train.begin();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        const NodePair p{node(a), node(b)};
        while (train_it != split.train.end() && *train_it < p) ++train_it;
        if (train_it != split.train.end() && *train_it == p) continue;
        out.push_back(p);
      }
    return out;
  }

  const std::size_t total_pairs = n * (n - 1) / 2;
  const std::size_t non_edges = total_pairs - full.edge_count();
  const std::size_t want = cfg.sampled_non_edges ? cfg.sampled_non_edges : 10 * split.test.size();
  if (want > non_edges)
    throw InsufficientCandidatesError("requested " + std::to_string(want) + " non-edges, graph has " +
                                      std::to_string(non_edges));
  Rng rng(cfg.seed, {0xca4d});
  std::set<NodePair> picked;
  while (picked.size() < want) {
    const NodeId a = node(rng.below(n));
    const NodeId b = node(rng.below(n));
    if (a == b || full.has_edge(a, b)) continue;
    picked.insert(NodePair::canonical(a, b));
  }
  out.assign(split.test.begin(), split.test.end());
  out.insert(out.end(), picked.begin(), picked.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string predictor_name(const Predictor& p) {
  if (const auto* m = std::get_if<MethodConfig>(&p)) return std::string(method_name(m->method));
  return std::string(baseline_name(std::get<Baseline>(p)));
}

PredictionReport run_experiment(const MultilayerNetwork& mn, const Predictor& predictor, const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Graph full = merge(mn);
  const EdgeSplit split = split_edges(full, cfg.test_frac, cfg.seed);
  const MultilayerNetwork training = without_pairs(mn, split.test);
  const auto candidates = candidate_pairs(full, split, cfg);

  std::vector<ScoredPair> ranked;
  if (const auto* method = std::get_if<MethodConfig>(&predictor)) {
    MethodConfig mc = *method;
    mc.walk.seed = derive_seed(method->walk.seed, {cfg.seed, 1});
    mc.train.seed = derive_seed(method->train.seed, {cfg.seed, 2});
    const EmbeddingSpace space = embed(training, mc);
    ranked = mc.exec == Execution::serial ? serial::rank_candidates(space, candidates, cfg.metric)
                                          : rank_candidates(space, candidates, cfg.metric);
  } else {
    ranked = rank_by_similarity(merge(training), candidates, std::get<Baseline>(predictor));
  }
  const auto predicted = predict_links(ranked, split.test.size());

  PredictionReport r;
  r.method = predictor_name(predictor);
  r.seed = cfg.seed;
  r.frac = cfg.test_frac;
  r.metric = cfg.metric;
  r.correct = overlap(predicted, split.test);
  r.predicted = predicted.size();
  r.test_size = split.test.size();
  r.candidates = candidates.size();
  r.accuracy = accuracy(predicted, split.test);
  r.precision = precision(predicted, split.test);
  r.recall = recall(predicted, split.test);
  r.f1 = f1(predicted, split.test);
  r.set_f1 = harmonic_mean(r.precision, r.recall);

  std::size_t scored_layers = 0;
  double sum = 0.0;
  for (std::size_t l = 0; l < mn.num_layers(); ++l) {
    std::vector<NodePair> layer_test;
    for (const auto& e : split.test)
      if (mn.has_edge(e.a, e.b, layer(l))) layer_test.push_back(e);
    if (layer_test.empty()) {
      r.layer_f1.push_back(-1.0);
      continue;
    }
    const double v = f1(predicted, layer_test);
    r.layer_f1.push_back(v);
    sum += v;
    ++scored_layers;
  }
  r.layer_f1_mean = scored_layers ? sum / static_cast<double>(scored_layers) : 0.0;

  if (cfg.record_runtime)
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace mlne
