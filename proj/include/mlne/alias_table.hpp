#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mlne/rng.hpp"

namespace mlne {

/// Walker/Vose alias table: O(n) build, O(1) draws from a fixed discrete law.
class AliasTable {
 public:
  AliasTable() = default;
  /// Weights must be non-negative with a positive sum.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const noexcept { return prob_.size(); }
  bool empty() const noexcept { return prob_.empty(); }

  std::size_t sample(Rng& rng) const noexcept {
    const std::size_t i = rng.below(prob_.size());
    return rng.uniform() < prob_[i] ? i : alias_[i];
  }

  /// Exact probability of drawing i, recovered from the table.
  double probability(std::size_t i) const;

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace mlne
