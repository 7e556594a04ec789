#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mlne/types.hpp"
#include "mlne/walker.hpp"

namespace mlne {

struct TrainConfig {
  std::size_t dim = 128;
  std::size_t window = 10;    ///< context radius
  std::size_t negatives = 5;  ///< negative samples per positive pair
  std::size_t epochs = 1;
  double initial_lr = 0.025;
  double final_lr = 0.0001;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Dense |V| x dim map; row i is the vector of NodeId i.
class EmbeddingSpace {
 public:
  EmbeddingSpace() = default;
  EmbeddingSpace(std::size_t num_nodes, std::size_t dim)
      : num_nodes_(num_nodes), dim_(dim), data_(num_nodes * dim, 0.0) {}

  std::size_t num_nodes() const noexcept { return num_nodes_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> row(NodeId v) const noexcept { return {data_.data() + index(v) * dim_, dim_}; }
  std::span<double> row(NodeId v) noexcept { return {data_.data() + index(v) * dim_, dim_}; }

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const EmbeddingSpace&, const EmbeddingSpace&) = default;

 private:
  std::size_t num_nodes_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

enum class PairLabel { positive, negative };

struct PairLossGrad {
  double loss = 0.0;
  std::vector<double> grad_u;
  std::vector<double> grad_v;
};

/// -log sigma(u.v) for positives, -log sigma(-u.v) for negatives, with exact
/// gradients. Evaluated in a numerically stable form over the whole real line.
PairLossGrad pair_loss_and_grad(std::span<const double> u, std::span<const double> v, PairLabel label);

struct TrainStats {
  std::vector<double> epoch_loss;  ///< mean pair loss per epoch
  std::size_t pairs_per_epoch = 0;
  std::size_t vocabulary = 0;      ///< nodes that occur in at least one training pair
};

/// Nodes that never occur in a walk of two or more tokens keep the zero vector.
/// Throws EmptyCorpusError for a corpus without walks.
///
/// The default overload runs Hogwild-style: OpenMP threads update the shared
/// matrices without locks, so results vary run to run with more than one thread.
EmbeddingSpace train(const WalkCorpus& corpus, std::size_t num_nodes, const TrainConfig& cfg,
                     TrainStats* stats = nullptr);

namespace serial {
/// Single-threaded, bit-reproducible for a fixed (corpus, cfg).
EmbeddingSpace train(const WalkCorpus& corpus, std::size_t num_nodes, const TrainConfig& cfg,
                     TrainStats* stats = nullptr);
}  // namespace serial

inline EmbeddingSpace train(const WalkCorpus& corpus, std::size_t num_nodes, const TrainConfig& cfg,
                            Execution exec, TrainStats* stats = nullptr) {
  return exec == Execution::serial ? serial::train(corpus, num_nodes, cfg, stats)
                                   : train(corpus, num_nodes, cfg, stats);
}

/// Row-wise concatenation in the given order. Throws MismatchError when the
/// spaces do not cover the same node set (or the list is empty).
EmbeddingSpace concat(std::span<const EmbeddingSpace> spaces);

enum class Metric { euclidean, cosine };

/// Euclidean distance, or 1 - cosine similarity (1 if either vector is zero).
double distance(const EmbeddingSpace& space, NodeId a, NodeId b, Metric metric);

}  // namespace mlne
