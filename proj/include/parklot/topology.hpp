#pragma once

#include <vector>

#include "parklot/assignment.hpp"

namespace parklot {

// Multigraph induced by an assignment: nodes are adjacent once per shared
// channel. Parallel edges (same pair, different channel) are kept.
struct EffectiveTopology {
  struct Edge {
    int a = 0, b = 0;       // a < b
    int channel = 0;
    int tx_a = 0, tx_b = 0; // transceiver each endpoint uses on the channel
  };
  struct Link {
    int neighbor = 0;
    int channel = 0;
    int tx = 0;  // transceiver the owning node uses
  };

  int n_nodes = 0;
  std::vector<Edge> edges;
  // 1-based; links sorted by (neighbor, channel) so deterministic scans pick
  // the smallest neighbor id first.
  std::vector<std::vector<Link>> adjacency;

  bool connected() const;
};

EffectiveTopology effective_topology(const Assignment& a);

// Hop distances from every node to `target` (index 0 unused); -1 when
// unreachable.
std::vector<int> hop_distances_to(const EffectiveTopology& t, int target);

}  // namespace parklot
