#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mlne/graph.hpp"
#include "mlne/sgns.hpp"
#include "mlne/strategies.hpp"

namespace mlne {

struct EdgeSplit {
  std::vector<NodePair> train;  ///< sorted
  std::vector<NodePair> test;   ///< sorted
  std::uint64_t seed = 0;
};

/// Uniform random partition of g's edges with |test| = round(frac * |E|).
/// Throws DegenerateSplitError if the test side would be empty.
EdgeSplit split_edges(const Graph& g, double frac, std::uint64_t seed);

struct ScoredPair {
  NodeId a{};
  NodeId b{};
  double score = 0.0;
};

/// Candidates ordered by ascending embedding distance; ties by (a, b).
std::vector<ScoredPair> rank_candidates(const EmbeddingSpace& space, std::span<const NodePair> candidates,
                                        Metric metric);

enum class Baseline { common_neighbors, jaccard };

Baseline parse_baseline(std::string_view name);
std::string_view baseline_name(Baseline b);

/// Candidates ordered by descending similarity on g; ties by (a, b).
std::vector<ScoredPair> rank_by_similarity(const Graph& g, std::span<const NodePair> candidates, Baseline baseline);

namespace serial {
std::vector<ScoredPair> rank_candidates(const EmbeddingSpace& space, std::span<const NodePair> candidates,
                                        Metric metric);
std::vector<ScoredPair> rank_by_similarity(const Graph& g, std::span<const NodePair> candidates, Baseline baseline);
}  // namespace serial

/// First k pairs of a ranked list. Throws InsufficientCandidatesError if k > |ranked|.
std::vector<NodePair> predict_links(std::span<const ScoredPair> ranked, std::size_t k);

/// |predicted ∩ test|. Inputs are treated as sets of canonical pairs.
std::size_t overlap(std::span<const NodePair> predicted, std::span<const NodePair> test);

/// |predicted ∩ test| / |test|. Throws DegenerateSplitError on an empty test set.
double accuracy(std::span<const NodePair> predicted, std::span<const NodePair> test);
double precision(std::span<const NodePair> predicted, std::span<const NodePair> test);
double recall(std::span<const NodePair> predicted, std::span<const NodePair> test);
/// F1 of the predicted list scored on its own: harmonic mean of precision and
/// a recall of 1 (every predicted pair counts as retrieved), i.e. 2P/(1+P).
/// With |predicted| == |test| this is 2a/(1+a) for accuracy a. 0 when
/// nothing was predicted.
double f1(std::span<const NodePair> predicted, std::span<const NodePair> test);
/// Conventional set F1, 2|predicted ∩ test| / (|predicted| + |test|).
double set_f1(std::span<const NodePair> predicted, std::span<const NodePair> test);

inline double harmonic_mean(double prec, double rec) noexcept {
  return prec + rec > 0.0 ? 2.0 * prec * rec / (prec + rec) : 0.0;
}

std::size_t common_neighbors(const Graph& g, NodeId x, NodeId y);
double jaccard(const Graph& g, NodeId x, NodeId y);

enum class CandidateMode {
  all_non_train,  ///< every pair absent from the training edges
  sampled,        ///< test edges plus a uniform sample of true non-edges
};

struct ExperimentConfig {
  double test_frac = 0.1;
  std::uint64_t seed = 0;
  Metric metric = Metric::euclidean;
  CandidateMode candidates = CandidateMode::all_non_train;
  /// Non-edges drawn in sampled mode; 0 means 10 * |test|.
  std::size_t sampled_non_edges = 0;
  /// Leaves runtime_ms at 0 so reports are byte-reproducible.
  bool record_runtime = true;
};

/// Candidate set for a split of the merged graph `full`.
std::vector<NodePair> candidate_pairs(const Graph& full, const EdgeSplit& split, const ExperimentConfig& cfg);

using Predictor = std::variant<MethodConfig, Baseline>;

std::string predictor_name(const Predictor& p);

struct PredictionReport {
  std::string method;
  std::string dataset;
  std::uint64_t seed = 0;
  double frac = 0.0;
  Metric metric = Metric::euclidean;
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t test_size = 0;
  std::size_t candidates = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double set_f1 = 0.0;
  /// Per-layer breakdown: layer l is scored against the test pairs that were
  /// edges of layer l; layers without test pairs are reported as -1 and
  /// excluded from the mean.
  std::vector<double> layer_f1;
  double layer_f1_mean = 0.0;
  double runtime_ms = 0.0;

  friend bool operator==(const PredictionReport&, const PredictionReport&) = default;
};

/// Full link-prediction protocol on the merged graph of mn: split, strip test
/// pairs from every layer, embed or score, rank, predict top-|test|, measure.
PredictionReport run_experiment(const MultilayerNetwork& mn, const Predictor& predictor, const ExperimentConfig& cfg);

}  // namespace mlne
