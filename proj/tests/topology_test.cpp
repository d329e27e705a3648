#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"

#include "parklot/assignment.hpp"
#include "parklot/topology.hpp"

using namespace parklot;

namespace {

int diameter(const EffectiveTopology& t) {
  int best = 0;
  for (int v = 1; v <= t.n_nodes; ++v) {
    std::vector<int> dist = hop_distances_to(t, v);
    for (int u = 1; u <= t.n_nodes; ++u) {
      REQUIRE(dist[u] >= 0);
      best = std::max(best, dist[u]);
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("topology") {

TEST_CASE("hint 4/2 effective edges") {
  EffectiveTopology t = effective_topology(build_hint(4, 2));
  REQUIRE(t.edges.size() == 4);
  std::set<std::pair<int, int>> pairs;
  for (const auto& e : t.edges) {
    CHECK(e.a < e.b);
    pairs.insert({e.a, e.b});
  }
  CHECK(pairs ==
        std::set<std::pair<int, int>>{{1, 2}, {3, 4}, {1, 3}, {2, 4}});
  CHECK(t.connected());
}

TEST_CASE("grid 9 is 4-regular with 18 edges") {
  EffectiveTopology t = effective_topology(build_grid(9));
  CHECK(t.edges.size() == 18);
  for (int v = 1; v <= 9; ++v) CHECK(t.adjacency[v].size() == 4);
  CHECK(t.connected());
}

TEST_CASE("adjacency is sorted for deterministic scans") {
  EffectiveTopology t = effective_topology(build_grid(16));
  for (int v = 1; v <= t.n_nodes; ++v) {
    const auto& links = t.adjacency[v];
    for (std::size_t i = 1; i < links.size(); ++i) {
      bool ordered =
          links[i - 1].neighbor < links[i].neighbor ||
          (links[i - 1].neighbor == links[i].neighbor &&
           links[i - 1].channel < links[i].channel);
      CHECK(ordered);
    }
  }
}

TEST_CASE("hint 16/2 distances match the two-hop example") {
  EffectiveTopology t = effective_topology(build_hint(16, 2));
  std::vector<int> dist = hop_distances_to(t, 11);
  CHECK(dist[11] == 0);
  CHECK(dist[9] == 1);   // shares Tx-1 group {9..12}
  CHECK(dist[3] == 1);   // shares Tx-2 group {3,7,11,15}
  CHECK(dist[1] == 2);   // 1-9 on the Tx-2 channel, 9-11 on Tx-1
  CHECK(dist[2] == 2);
}

TEST_CASE("ring topologies stay connected and stretch with n") {
  int d16 = diameter(effective_topology(build_ring(16)));
  int d32 = diameter(effective_topology(build_ring(32)));
  int d64 = diameter(effective_topology(build_ring(64)));
  CHECK(d16 >= 2);
  CHECK(d16 < d32);
  CHECK(d32 < d64);
}

TEST_CASE("parallel edges survive for multi-channel pairs") {
  // ring 8: overlapping windows give some node pairs several shared
  // channels; the multigraph keeps one edge per channel.
  EffectiveTopology t = effective_topology(build_ring(8));
  std::set<int> channels;
  long long pair_edges = 0;
  for (const auto& e : t.edges) {
    channels.insert(e.channel);
    if (e.a == 5 && e.b == 6) ++pair_edges;
  }
  CHECK(channels.size() == 8);  // every channel contributes edges
  CHECK(pair_edges >= 2);
  CHECK(t.connected());
}

TEST_CASE("edge transceivers match the assignment") {
  Assignment a = build_grid(9);
  EffectiveTopology t = effective_topology(a);
  for (const auto& e : t.edges) {
    CHECK(e.tx_a == a.tx_on_channel(e.a, e.channel));
    CHECK(e.tx_b == a.tx_on_channel(e.b, e.channel));
  }
}

TEST_CASE("unreachable nodes get distance -1") {
  EffectiveTopology t = effective_topology(build_log2(2));
  std::vector<int> dist = hop_distances_to(t, 1);
  CHECK(dist[1] == 0);
  CHECK(dist[2] == -1);
}

}  // TEST_SUITE
