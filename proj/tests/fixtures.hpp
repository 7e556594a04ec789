#pragma once

// Shared builders for the test suites.

#include <cstdint>
#include <set>
#include <tuple>
#include <vector>

#include "mlne/graph.hpp"
#include "mlne/rng.hpp"

namespace mlne::testing {

inline MultilayerNetwork network(std::size_t n, std::size_t layers,
                                 std::initializer_list<std::tuple<int, int, int>> edges) {
  std::vector<EdgeTriple> t;
  for (auto [x, y, l] : edges) t.push_back({node(x), node(y), layer(l)});
  return MultilayerNetwork::from_triples(n, layers, t);
}

inline Graph graph(std::size_t n, std::initializer_list<std::pair<int, int>> edges) {
  std::vector<NodePair> p;
  for (auto [a, b] : edges) p.push_back({node(a), node(b)});
  return Graph::from_pairs(n, p);
}

/// Each (x, y, l) with x < y is present independently with probability p.
inline std::vector<EdgeTriple> random_triples(std::size_t n, std::size_t layers, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<EdgeTriple> out;
  for (std::size_t l = 0; l < layers; ++l)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (rng.bernoulli(p)) out.push_back({node(a), node(b), layer(l)});
  return out;
}

inline MultilayerNetwork random_network(std::size_t n, std::size_t layers, double p, std::uint64_t seed) {
  const auto t = random_triples(n, layers, p, seed);
  return MultilayerNetwork::from_triples(n, layers, t);
}

/// Exactly `count` distinct layer-edges drawn uniformly (AUCS-shaped inputs).
inline MultilayerNetwork sized_network(std::size_t n, std::size_t layers, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::set<EdgeTriple> s;
  while (s.size() < count) {
    const auto a = rng.below(n), b = rng.below(n);
    if (a == b) continue;
    const auto c = NodePair::canonical(node(a), node(b));
    s.insert({c.a, c.b, layer(rng.below(layers))});
  }
  const std::vector<EdgeTriple> t(s.begin(), s.end());
  return MultilayerNetwork::from_triples(n, layers, t);
}

}  // namespace mlne::testing
