#include "mlne/sgns.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <string>

#include <omp.h>

#include "mlne/alias_table.hpp"
#include "mlne/rng.hpp"

namespace mlne {

void TrainConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(final_lr > 0.0)) throw ConfigError("final_lr must be > 0");
  if (!(initial_lr >= final_lr)) throw ConfigError("initial_lr must be >= final_lr");
}

namespace {

double stable_sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

// Saturating sigmoid and log-sigmoid for the training loop, tabulated on the
// clamped domain [-6, 6] with linear interpolation (abs. error < 1e-6). The
// clamp keeps sigma strictly inside (0, 1).
class SigmoidTable {
 public:
  static constexpr double kClamp = 6.0;
  static constexpr std::size_t kBins = 4096;

  SigmoidTable() {
    for (std::size_t i = 0; i <= kBins; ++i) {
      const double x = -kClamp + 2.0 * kClamp * static_cast<double>(i) / kBins;
      sigma_[i] = stable_sigmoid(x);
      log_sigma_[i] = std::log(sigma_[i]);
    }
  }

  struct Value {
    double sigma;
    double log_sigma;      // log sigma(x)
    double log_sigma_neg;  // log sigma(-x)
  };

  Value operator()(double x) const noexcept {
    x = std::clamp(x, -kClamp, kClamp);
    const double pos = (x + kClamp) * (kBins / (2.0 * kClamp));
    const auto i = std::min(static_cast<std::size_t>(pos), kBins - 1);
    const double t = pos - static_cast<double>(i);
    const std::size_t j = kBins - i;  // mirror index for -x
    return {sigma_[i] + t * (sigma_[i + 1] - sigma_[i]),
            log_sigma_[i] + t * (log_sigma_[i + 1] - log_sigma_[i]),
            log_sigma_[j] + t * (log_sigma_[j - 1] - log_sigma_[j])};
  }

 private:
  std::array<double, kBins + 1> sigma_{};
  std::array<double, kBins + 1> log_sigma_{};
};

const SigmoidTable& sigmoid_table() {
  static const SigmoidTable table;
  return table;
}

struct Vocabulary {
  std::vector<std::size_t> counts;
  std::vector<std::uint32_t> members;  // nodes with a non-zero count
  AliasTable negatives;
  std::size_t trainable_tokens = 0;
  std::size_t pairs_per_epoch = 0;
};

Vocabulary build_vocabulary(const WalkCorpus& corpus, std::size_t num_nodes, std::size_t window) {
  Vocabulary vocab;
  vocab.counts.assign(num_nodes, 0);
  for (const auto& walk : corpus.walks) {
    for (NodeId v : walk)
      if (index(v) >= num_nodes)
        throw ConfigError("corpus node id " + std::to_string(index(v)) + " >= num_nodes");
    if (walk.size() < 2) continue;
    for (NodeId v : walk) ++vocab.counts[index(v)];
    vocab.trainable_tokens += walk.size();
    const std::size_t n = walk.size();
    for (std::size_t i = 0; i < n; ++i)
      vocab.pairs_per_epoch += std::min(i, window) + std::min(n - 1 - i, window);
  }
  std::vector<double> weights;
  for (std::size_t v = 0; v < num_nodes; ++v) {
    if (vocab.counts[v] == 0) continue;
    vocab.members.push_back(static_cast<std::uint32_t>(v));
    weights.push_back(std::pow(static_cast<double>(vocab.counts[v]), 0.75));
  }
  if (!weights.empty()) vocab.negatives = AliasTable(weights);
  return vocab;
}

// Training matrices are single precision so the inner loops vectorize 4-wide;
// the exported space is double.
struct Model {
  std::size_t dim;
  std::vector<float> input;
  std::vector<float> output;

  float* in(std::size_t v) noexcept { return input.data() + v * dim; }
  float* out(std::size_t v) noexcept { return output.data() + v * dim; }
};

Model init_model(const Vocabulary& vocab, std::size_t num_nodes, const TrainConfig& cfg) {
  Model m{cfg.dim, std::vector<float>(num_nodes * cfg.dim, 0.0f), std::vector<float>(num_nodes * cfg.dim, 0.0f)};
  const double scale = 1.0 / static_cast<double>(cfg.dim);
  for (auto v : vocab.members) {
    Rng rng(cfg.seed, {v, 0x1417});
    float* row = m.in(v);
    for (std::size_t k = 0; k < cfg.dim; ++k) row[k] = static_cast<float>((rng.uniform() - 0.5) * scale);
  }
  return m;
}

// One skip-gram pass over a walk. Returns the summed pair loss; `pairs`
// counts positive and negative updates.
double train_walk(Model& m, const Vocabulary& vocab, const std::vector<NodeId>& walk,
                  const TrainConfig& cfg, double lr, Rng& rng, std::vector<float>& grad_buf,
                  std::size_t& pairs) {
  const std::size_t n = walk.size();
  const std::size_t dim = m.dim;
  float* grad = grad_buf.data();
  const SigmoidTable& sig = sigmoid_table();
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t center = index(walk[i]);
    float* u = m.in(center);
    const std::size_t lo = i > cfg.window ? i - cfg.window : 0;
    const std::size_t hi = std::min(n - 1, i + cfg.window);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j == i) continue;
      const std::size_t context = index(walk[j]);
      std::fill_n(grad, dim, 0.0f);
      for (std::size_t s = 0; s <= cfg.negatives; ++s) {
        std::size_t target;
        double label;
        if (s == 0) {
          target = context;
          label = 1.0;
        } else {
          target = vocab.members[vocab.negatives.sample(rng)];
          if (target == context) continue;
          label = 0.0;
        }
        float* v = m.out(target);
        float x = 0.0f;
#pragma omp simd reduction(+ : x)
        for (std::size_t k = 0; k < dim; ++k) x += u[k] * v[k];
        const auto sv = sig(x);
        loss -= label > 0.0 ? sv.log_sigma : sv.log_sigma_neg;
        const auto g = static_cast<float>(lr * (label - sv.sigma));
#pragma omp simd
        for (std::size_t k = 0; k < dim; ++k) {
          grad[k] += g * v[k];
          v[k] += g * u[k];
        }
        ++pairs;
      }
#pragma omp simd
      for (std::size_t k = 0; k < dim; ++k) u[k] += grad[k];
    }
  }
  return loss;
}

double learning_rate(const TrainConfig& cfg, std::size_t done, std::size_t total) {
  const double progress = total ? static_cast<double>(done) / static_cast<double>(total) : 0.0;
  return std::max(cfg.final_lr, cfg.initial_lr - (cfg.initial_lr - cfg.final_lr) * progress);
}

EmbeddingSpace export_input(const Model& m, std::size_t num_nodes) {
  EmbeddingSpace space(num_nodes, m.dim);
  for (std::size_t v = 0; v < num_nodes; ++v)
    std::copy_n(m.input.data() + v * m.dim, m.dim, space.row(node(v)).data());
  return space;
}

void check_inputs(const WalkCorpus& corpus, const TrainConfig& cfg) {
  cfg.validate();
  if (corpus.walks.empty()) throw EmptyCorpusError("cannot train on an empty corpus");
}

}  // namespace

PairLossGrad pair_loss_and_grad(std::span<const double> u, std::span<const double> v, PairLabel label) {
  if (u.size() != v.size()) throw MismatchError("vector dimensions differ");
  double x = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) x += u[k] * v[k];
  const double s = label == PairLabel::positive ? 1.0 : -1.0;
  const double t = -s * x;
  PairLossGrad out;
  // softplus(t) = log(1 + e^t)
  out.loss = std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
  const double g = -s * stable_sigmoid(t);
  out.grad_u.resize(u.size());
  out.grad_v.resize(v.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    out.grad_u[k] = g * v[k];
    out.grad_v[k] = g * u[k];
  }
  return out;
}

EmbeddingSpace train(const WalkCorpus& corpus, std::size_t num_nodes, const TrainConfig& cfg,
                     TrainStats* stats) {
  check_inputs(corpus, cfg);
  const Vocabulary vocab = build_vocabulary(corpus, num_nodes, cfg.window);
  Model m = init_model(vocab, num_nodes, cfg);
  TrainStats local;
  local.vocabulary = vocab.members.size();
  local.pairs_per_epoch = vocab.pairs_per_epoch;

  if (!vocab.members.empty()) {
    const std::size_t total = cfg.epochs * vocab.trainable_tokens;
    std::atomic<std::size_t> done{0};
    const auto n_walks = static_cast<std::ptrdiff_t>(corpus.walks.size());
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      double loss = 0.0;
      std::size_t pairs = 0;
#pragma omp parallel reduction(+ : loss, pairs)
      {
        Rng rng(cfg.seed, {epoch, static_cast<std::uint64_t>(omp_get_thread_num()), 0x9a11});
        std::vector<float> grad(cfg.dim);
#pragma omp for schedule(dynamic, 16)
        for (std::ptrdiff_t w = 0; w < n_walks; ++w) {
          const auto& walk = corpus.walks[static_cast<std::size_t>(w)];
          if (walk.size() < 2) continue;
          const double lr = learning_rate(cfg, done.load(std::memory_order_relaxed), total);
          loss += train_walk(m, vocab, walk, cfg, lr, rng, grad, pairs);
          done.fetch_add(walk.size(), std::memory_order_relaxed);
        }
      }
      local.epoch_loss.push_back(pairs ? loss / static_cast<double>(pairs) : 0.0);
    }
  } else {
    local.epoch_loss.assign(cfg.epochs, 0.0);
  }
  if (stats) *stats = std::move(local);
  return export_input(m, num_nodes);
}

namespace serial {

EmbeddingSpace train(const WalkCorpus& corpus, std::size_t num_nodes, const TrainConfig& cfg,
                     TrainStats* stats) {
  check_inputs(corpus, cfg);
  const Vocabulary vocab = build_vocabulary(corpus, num_nodes, cfg.window);
  Model m = init_model(vocab, num_nodes, cfg);
  TrainStats local;
  local.vocabulary = vocab.members.size();
  local.pairs_per_epoch = vocab.pairs_per_epoch;

  Rng rng(cfg.seed, {0x5e41});
  std::vector<float> grad(cfg.dim);
  const std::size_t total = cfg.epochs * vocab.trainable_tokens;
  std::size_t done = 0;
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    double loss = 0.0;
    std::size_t pairs = 0;
    if (!vocab.members.empty()) {
      for (const auto& walk : corpus.walks) {
        if (walk.size() < 2) continue;
        loss += train_walk(m, vocab, walk, cfg, learning_rate(cfg, done, total), rng, grad, pairs);
        done += walk.size();
      }
    }
    local.epoch_loss.push_back(pairs ? loss / static_cast<double>(pairs) : 0.0);
  }
  if (stats) *stats = std::move(local);
  return export_input(m, num_nodes);
}

}  // namespace serial

EmbeddingSpace concat(std::span<const EmbeddingSpace> spaces) {
  if (spaces.empty()) throw MismatchError("concat needs at least one space");
  const std::size_t n = spaces.front().num_nodes();
  std::size_t dim = 0;
  for (const auto& s : spaces) {
    if (s.num_nodes() != n) throw MismatchError("concat: spaces cover different node sets");
    dim += s.dim();
  }
  EmbeddingSpace out(n, dim);
  for (std::size_t v = 0; v < n; ++v) {
    auto dst = out.row(node(v)).begin();
    for (const auto& s : spaces) dst = std::copy(s.row(node(v)).begin(), s.row(node(v)).end(), dst);
  }
  return out;
}

double distance(const EmbeddingSpace& space, NodeId a, NodeId b, Metric metric) {
  const auto x = space.row(a);
  const auto y = space.row(b);
  if (metric == Metric::euclidean) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double d = x[k] - y[k];
      s += d * d;
    }
    return std::sqrt(s);
  }
  double dot = 0.0, nx = 0.0, ny = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    dot += x[k] * y[k];
    nx += x[k] * x[k];
    ny += y[k] * y[k];
  }
  if (nx == 0.0 || ny == 0.0) return 1.0;
  return 1.0 - dot / (std::sqrt(nx) * std::sqrt(ny));
}

}  // namespace mlne
