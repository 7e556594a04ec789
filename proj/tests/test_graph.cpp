#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "mlne/graph.hpp"

using namespace mlne;
using mlne::testing::network;
using mlne::testing::random_network;
using mlne::testing::sized_network;

TEST(Merge, CollapsesPairsSharedAcrossLayers) {
  const auto mn = network(3, 2, {{0, 1, 0}, {0, 1, 1}, {1, 2, 1}});
  const Graph g = merge(mn);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(node(0), node(1)));
  EXPECT_TRUE(g.has_edge(node(1), node(2)));
  EXPECT_FALSE(g.has_edge(node(0), node(2)));
  EXPECT_EQ(g.num_nodes(), 3u);
}

TEST(Merge, SingleLayerIsIdentity) {
  const auto mn = random_network(20, 1, 0.2, 3);
  EXPECT_EQ(merge(mn).edges(), mn.layer(layer(0)).edges());
}

TEST(Merge, AucsShapedMatchesPairScan) {
  const auto mn = sized_network(61, 5, 353, 11);
  ASSERT_EQ(mn.edge_count(), 353u);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& t : mn.triples()) pairs.insert({index(t.x), index(t.y)});
  EXPECT_EQ(merge(mn).edge_count(), pairs.size());
}

TEST(Merge, EmptyNetworkGivesEmptyGraph) {
  const auto mn = MultilayerNetwork::from_triples(0, 0, {});
  const Graph g = merge(mn);
  EXPECT_EQ(g.num_nodes(), 0u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(LayerGraph, KeepsOnlyThatLayerOverAllNodes) {
  const auto mn = network(5, 2, {{0, 1, 0}, {1, 2, 1}, {3, 4, 1}});
  const Graph g0 = layer_graph(mn, layer(0));
  EXPECT_EQ(g0.num_nodes(), 5u);
  EXPECT_EQ(g0.edge_count(), 1u);
  EXPECT_TRUE(g0.has_edge(node(0), node(1)));
  EXPECT_FALSE(g0.has_edge(node(1), node(2)));
}

TEST(LayerGraph, EmptyLayer) {
  const auto mn = network(4, 3, {{0, 1, 0}});
  const Graph g = layer_graph(mn, layer(2));
  EXPECT_EQ(g.num_nodes(), 4u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(LayerGraph, OutOfRangeThrows) {
  const auto mn = network(2, 1, {{0, 1, 0}});
  EXPECT_THROW(layer_graph(mn, layer(1)), InvalidLayerError);
}

TEST(LayerGraph, TerroristsShapedLayerEdgesSumToTotal) {
  const auto mn = sized_network(78, 4, 623, 5);
  std::size_t sum = 0;
  for (std::size_t l = 0; l < 4; ++l) sum += layer_graph(mn, layer(l)).edge_count();
  EXPECT_EQ(sum, 623u);
}

TEST(ConnectedLayers, CountsLayersWithIncidentEdges) {
  const auto mn = network(4, 4, {{0, 1, 0}, {0, 2, 2}, {1, 2, 3}});
  EXPECT_EQ(connected_layers(mn, node(0)), 2u);
  EXPECT_EQ(connected_layers(mn, node(3)), 0u);
  EXPECT_EQ(incident_layers(mn, node(0)), (std::vector<LayerId>{layer(0), layer(2)}));
  EXPECT_TRUE(incident_layers(mn, node(3)).empty());
  EXPECT_THROW(connected_layers(mn, node(4)), std::out_of_range);
}

TEST(ConnectedLayers, MatchesNeighborListScan) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto mn = random_network(15, 3, 0.08, seed);
    for (std::size_t v = 0; v < mn.num_nodes(); ++v) {
      std::size_t brute = 0;
      for (std::size_t l = 0; l < 3; ++l) brute += mn.layer(layer(l)).neighbors(node(v)).empty() ? 0 : 1;
      EXPECT_EQ(connected_layers(mn, node(v)), brute);
      EXPECT_EQ(incident_layers(mn, node(v)).size(), connected_layers(mn, node(v)));
    }
  }
}

TEST(MultilayerNetwork, DropsSelfLoopsAndDuplicates) {
  const std::vector<EdgeTriple> t{{node(0), node(1), layer(0)},
                                  {node(1), node(0), layer(0)},
                                  {node(2), node(2), layer(0)},
                                  {node(0), node(1), layer(1)}};
  BuildStats stats;
  const auto mn = MultilayerNetwork::from_triples(3, 2, t, &stats);
  EXPECT_EQ(stats.self_loops, 1u);
  EXPECT_EQ(stats.duplicates, 1u);
  EXPECT_EQ(mn.edge_count(), 2u);
  EXPECT_EQ(connected_layers(mn, node(2)), 0u);
}

TEST(MultilayerNetwork, RejectsOutOfRangeIds) {
  const std::vector<EdgeTriple> bad_node{{node(0), node(3), layer(0)}};
  EXPECT_THROW(MultilayerNetwork::from_triples(3, 1, bad_node), ConfigError);
  const std::vector<EdgeTriple> bad_layer{{node(0), node(1), layer(1)}};
  EXPECT_THROW(MultilayerNetwork::from_triples(3, 1, bad_layer), ConfigError);
}

TEST(MultilayerNetwork, TripleRoundTripIsSetEqual) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto input = mlne::testing::random_triples(12, 3, 0.2, seed);
    const auto mn = MultilayerNetwork::from_triples(12, 3, input);
    std::sort(input.begin(), input.end());
    auto out = mn.triples();
    std::sort(out.begin(), out.end());
    EXPECT_EQ(out, input);
  }
}

TEST(MultilayerNetwork, AdjacencyIsSymmetricAndSorted) {
  const auto mn = random_network(30, 4, 0.1, 7);
  for (std::size_t l = 0; l < mn.num_layers(); ++l) {
    const auto& g = mn.layer(layer(l));
    for (std::size_t v = 0; v < g.num_nodes(); ++v) {
      const auto nbrs = g.neighbors(node(v));
      EXPECT_TRUE(std::is_sorted(nbrs.begin(), nbrs.end()));
      for (NodeId u : nbrs) {
        EXPECT_NE(u, node(v));
        const auto back = g.neighbors(u);
        EXPECT_TRUE(std::binary_search(back.begin(), back.end(), node(v)));
      }
    }
  }
}

TEST(MultilayerNetwork, MergeBoundedBySumOfLayers) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto mn = random_network(10, 3, 0.1, seed);
    std::size_t sum = 0;
    for (std::size_t l = 0; l < 3; ++l) sum += mn.layer(layer(l)).edge_count();
    std::set<std::pair<std::size_t, std::size_t>> seen;
    bool shared = false;
    for (const auto& t : mn.triples()) shared |= !seen.insert({index(t.x), index(t.y)}).second;
    const auto merged = merge(mn).edge_count();
    EXPECT_LE(merged, sum);
    EXPECT_EQ(merged == sum, !shared);
  }
}

TEST(WithoutPairs, RemovesPairFromEveryLayer) {
  const auto mn = network(4, 3, {{0, 1, 0}, {0, 1, 1}, {1, 0, 2}, {2, 3, 2}});
  const std::vector<NodePair> drop{{node(1), node(0)}};
  const auto out = without_pairs(mn, drop);
  EXPECT_EQ(out.edge_count(), 1u);
  EXPECT_EQ(out.num_layers(), 3u);
  EXPECT_EQ(out.num_nodes(), 4u);
  EXPECT_TRUE(out.has_edge(node(2), node(3), layer(2)));
  EXPECT_EQ(connected_layers(out, node(0)), 0u);
}
