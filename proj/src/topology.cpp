#include "parklot/topology.hpp"

#include <algorithm>
#include <queue>

namespace parklot {

EffectiveTopology effective_topology(const Assignment& a) {
  EffectiveTopology topo;
  topo.n_nodes = a.n_nodes();
  topo.adjacency.assign(static_cast<std::size_t>(topo.n_nodes) + 1, {});

  for (const Group& g : a.groups()) {
    for (std::size_t i = 0; i < g.members.size(); ++i) {
      for (std::size_t j = i + 1; j < g.members.size(); ++j) {
        int x = g.members[i], y = g.members[j];
        int tx_x = a.tx_on_channel(x, g.channel);
        int tx_y = a.tx_on_channel(y, g.channel);
        EffectiveTopology::Edge e;
        e.a = std::min(x, y);
        e.b = std::max(x, y);
        e.channel = g.channel;
        e.tx_a = (e.a == x) ? tx_x : tx_y;
        e.tx_b = (e.a == x) ? tx_y : tx_x;
        topo.edges.push_back(e);
        topo.adjacency[static_cast<std::size_t>(x)].push_back(
            {y, g.channel, tx_x});
        topo.adjacency[static_cast<std::size_t>(y)].push_back(
            {x, g.channel, tx_y});
      }
    }
  }
  for (auto& links : topo.adjacency) {
    std::sort(links.begin(), links.end(),
              [](const EffectiveTopology::Link& l,
                 const EffectiveTopology::Link& r) {
                if (l.neighbor != r.neighbor) return l.neighbor < r.neighbor;
                return l.channel < r.channel;
              });
  }
  return topo;
}

std::vector<int> hop_distances_to(const EffectiveTopology& t, int target) {
  std::vector<int> dist(static_cast<std::size_t>(t.n_nodes) + 1, -1);
  if (target < 1 || target > t.n_nodes) throw InvalidSpec("target out of range");
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(target)] = 0;
  frontier.push(target);
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (const auto& link : t.adjacency[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(link.neighbor)] == -1) {
        dist[static_cast<std::size_t>(link.neighbor)] =
            dist[static_cast<std::size_t>(u)] + 1;
        frontier.push(link.neighbor);
      }
    }
  }
  return dist;
}

bool EffectiveTopology::connected() const {
  if (n_nodes <= 1) return true;
  auto dist = hop_distances_to(*this, 1);
  for (int v = 1; v <= n_nodes; ++v)
    if (dist[static_cast<std::size_t>(v)] == -1) return false;
  return true;
}

}  // namespace parklot
