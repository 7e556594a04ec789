#include "mlne/synthetic.hpp"

#include <vector>

#include "mlne/rng.hpp"

namespace mlne {

void SyntheticSpec::validate() const {
  const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(p_in)) throw ConfigError("p_in must be in [0,1]");
  if (!in_unit(p_out)) throw ConfigError("p_out must be in [0,1]");
  if (!in_unit(layer_correlation)) throw ConfigError("layer_correlation must be in [0,1]");
  if (num_blocks < 1 || num_blocks > num_nodes) throw ConfigError("num_blocks must be in [1, num_nodes]");
}

std::size_t block_of(const SyntheticSpec& spec, NodeId v) { return index(v) * spec.num_blocks / spec.num_nodes; }

MultilayerNetwork generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed, {0x5b3});
  std::vector<EdgeTriple> triples;
  const std::size_t n = spec.num_nodes;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double p = block_of(spec, node(a)) == block_of(spec, node(b)) ? spec.p_in : spec.p_out;
      bool base = false;
      for (std::size_t l = 0; l < spec.num_layers; ++l) {
        bool present;
        if (l == 0) {
          present = base = rng.bernoulli(p);
        } else {
          // Always draw both variates so the stream layout is independent of outcomes.
          const bool copy = rng.bernoulli(spec.layer_correlation);
          const bool fresh = rng.bernoulli(p);
          present = copy ? base : fresh;
        }
        if (present) triples.push_back({node(a), node(b), layer(l)});
      }
    }
  }
  return MultilayerNetwork::from_triples(n, spec.num_layers, triples);
}

}  // namespace mlne
