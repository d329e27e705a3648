#include "parklot/routing.hpp"

#include <algorithm>
#include <limits>

namespace parklot {

const char* to_string(RouterKind k) {
  switch (k) {
    case RouterKind::kHint: return "hint";
    case RouterKind::kLog2: return "log2";
    case RouterKind::kBfs: return "bfs";
  }
  return "?";
}

std::optional<RouterKind> router_from_string(std::string_view name) {
  if (name == "hint") return RouterKind::kHint;
  if (name == "log2") return RouterKind::kLog2;
  if (name == "bfs") return RouterKind::kBfs;
  return std::nullopt;
}

RouterKind default_router(Scheme s) {
  switch (s) {
    case Scheme::kHint: return RouterKind::kHint;
    case Scheme::kLog2: return RouterKind::kLog2;
    default: return RouterKind::kBfs;
  }
}

namespace {

void check_endpoints(const Assignment& a, int s, int d) {
  if (s < 1 || s > a.n_nodes() || d < 1 || d > a.n_nodes())
    throw InvalidSpec("route endpoint out of range");
}

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Route reconstruction against a distance field: repeatedly step to the
// smallest-id neighbor one hop closer to the destination, on the smallest
// channel connecting to it (adjacency is sorted exactly that way).
Route walk_down(const EffectiveTopology& t, const std::vector<int>& dist,
                int source, int destination) {
  Route route{source, destination, {}};
  int cur = source;
  while (cur != destination) {
    const auto& links = t.adjacency[static_cast<std::size_t>(cur)];
    const EffectiveTopology::Link* next = nullptr;
    for (const auto& link : links) {
      if (dist[static_cast<std::size_t>(link.neighbor)] ==
          dist[static_cast<std::size_t>(cur)] - 1) {
        next = &link;
        break;
      }
    }
    if (next == nullptr)
      throw UnreachableError("no path between requested nodes");
    route.hops.push_back({cur, next->neighbor, next->channel, next->tx});
    cur = next->neighbor;
  }
  return route;
}

Route route_hint_strict(const Assignment& a, int source, int destination,
                        bool* stuck) {
  const int m = a.spec().group_base;
  const int t = a.spec().n_transceivers;
  Route route{source, destination, {}};
  int cur = source;
  int guard = 2 * t + 2;
  while (cur != destination) {
    if (--guard < 0) {
      *stuck = true;
      return route;
    }
    const int k = k_min(cur, destination, m, t);
    const Group& g = a.group_of(cur, k);
    if (k == 1 || contains(g.members, destination)) {
      route.hops.push_back({cur, destination, g.channel, k});
      break;
    }
    // Exactly one member shares a level-(k-1) set with the destination in the
    // unpadded construction; scanning for the k_min-minimizing member (ties:
    // smallest id, never hit when unpadded) also behaves sanely when virtual
    // padding has thinned the group.
    int best = -1, best_k = std::numeric_limits<int>::max();
    for (int r : g.members) {
      if (r == cur) continue;
      int kr = k_min(r, destination, m, t);
      if (kr < best_k || (kr == best_k && r < best)) {
        best = r;
        best_k = kr;
      }
    }
    if (best < 0 || best_k >= k) {
      *stuck = true;  // relay deleted by padding; caller falls back to BFS
      return route;
    }
    route.hops.push_back({cur, best, g.channel, k});
    cur = best;
  }
  *stuck = false;
  return route;
}

}  // namespace

Route route_hint(const Assignment& a, int source, int destination,
                 const EffectiveTopology* topo) {
  if (a.spec().scheme != Scheme::kHint)
    throw InvalidSpec("route_hint requires a hint assignment");
  check_endpoints(a, source, destination);
  if (source == destination) return Route{source, destination, {}};

  bool stuck = false;
  Route route = route_hint_strict(a, source, destination, &stuck);
  if (!stuck) return route;
  if (a.spec().padding != PaddingMode::kVirtual)
    throw UnreachableError("hint relay chain broke on a strict assignment");
  if (topo != nullptr) return route_bfs(*topo, source, destination);
  EffectiveTopology local = effective_topology(a);
  return route_bfs(local, source, destination);
}

Route route_log2(const Assignment& a, int source, int destination) {
  if (a.spec().scheme != Scheme::kLog2)
    throw InvalidSpec("route_log2 requires a log2 assignment");
  check_endpoints(a, source, destination);
  if (source == destination) return Route{source, destination, {}};

  const int m = a.spec().group_base;
  int l = 0;
  while ((1 << l) < m) ++l;

  auto tx1_group = [l](int node) { return (node - 1) / l + 1; };
  auto first_node = [l](int group) { return (group - 1) * l + 1; };
  const int dest_group = tx1_group(destination);

  Route route{source, destination, {}};
  int cur = source;
  int guard = 2 * l + 3;
  while (cur != destination) {
    if (--guard < 0)
      throw UnreachableError("no log2 route between requested nodes");
    const int cur_group = tx1_group(cur);
    if (cur_group == dest_group) {
      const Group& g1 = a.group_of(cur, 1);
      route.hops.push_back({cur, destination, g1.channel, 1});
      break;
    }
    const int lead = first_node(cur_group);
    if (cur != lead) {
      const Group& g1 = a.group_of(cur, 1);
      route.hops.push_back({cur, lead, g1.channel, 1});
      cur = lead;
      continue;
    }
    // cur leads Tx-1 group cur_group and is also the first member of Tx-2
    // group cur_group; relay on that Tx-2 channel.
    const Group& g2 = a.group_of(cur, 2);
    if (contains(g2.members, destination)) {
      route.hops.push_back({cur, destination, g2.channel, 2});
      break;
    }
    // Pick the member whose cover set holds the destination's Tx-1 group:
    // offset o on the group-number circle selects level i with
    // 2^(i-1) <= o+1 < 2^i, capped at the top level.
    const int offset = (dest_group - cur_group + m) % m;
    int level = 1;
    while (level < l && (offset + 1) >= (1 << level)) ++level;
    const int target = g2.members[static_cast<std::size_t>(level - 1)];
    if (target == cur)
      throw UnreachableError(
          "log2 groups are singletons at base 2; nodes share no channel");
    route.hops.push_back({cur, target, g2.channel, 2});
    cur = target;
  }
  return route;
}

Route route_bfs(const EffectiveTopology& t, int source, int destination) {
  if (source < 1 || source > t.n_nodes || destination < 1 ||
      destination > t.n_nodes)
    throw InvalidSpec("route endpoint out of range");
  if (source == destination) return Route{source, destination, {}};
  std::vector<int> dist = hop_distances_to(t, destination);
  if (dist[static_cast<std::size_t>(source)] == -1)
    throw UnreachableError("no path between requested nodes");
  return walk_down(t, dist, source, destination);
}

// ---- RouteTable ------------------------------------------------------

RouteTable::RouteTable(const Assignment& a, RouterKind kind) : n_(a.n_nodes()) {
  routes_.assign(static_cast<std::size_t>(n_) * n_, Route{});
  routable_.assign(static_cast<std::size_t>(n_) * n_, 0);

  switch (kind) {
    case RouterKind::kHint:
      if (a.spec().scheme != Scheme::kHint)
        throw InvalidSpec("hint router requires a hint assignment");
      break;
    case RouterKind::kLog2:
      if (a.spec().scheme != Scheme::kLog2)
        throw InvalidSpec("log2 router requires a log2 assignment");
      break;
    case RouterKind::kBfs:
      break;
  }

  if (kind == RouterKind::kBfs) {
    EffectiveTopology topo = effective_topology(a);
    for (int d = 1; d <= n_; ++d) {
      std::vector<int> dist = hop_distances_to(topo, d);
      for (int s = 1; s <= n_; ++s) {
        if (s == d || dist[static_cast<std::size_t>(s)] == -1) continue;
        Route r = walk_down(topo, dist, s, d);
        std::size_t idx = static_cast<std::size_t>(s - 1) * n_ + (d - 1);
        total_hops_ += r.length();
        routes_[idx] = std::move(r);
        routable_[idx] = 1;
        ++routable_pairs_;
      }
    }
    return;
  }

  // Virtual-padding fallbacks inside route_hint reuse one topology.
  std::optional<EffectiveTopology> topo;
  if (kind == RouterKind::kHint &&
      a.spec().padding == PaddingMode::kVirtual)
    topo = effective_topology(a);

  for (int s = 1; s <= n_; ++s) {
    for (int d = 1; d <= n_; ++d) {
      if (s == d) continue;
      std::size_t idx = static_cast<std::size_t>(s - 1) * n_ + (d - 1);
      try {
        Route r = (kind == RouterKind::kHint)
                      ? route_hint(a, s, d, topo ? &*topo : nullptr)
                      : route_log2(a, s, d);
        total_hops_ += r.length();
        routes_[idx] = std::move(r);
        routable_[idx] = 1;
        ++routable_pairs_;
      } catch (const UnreachableError&) {
        routes_[idx] = Route{s, d, {}};
      }
    }
  }
}

bool RouteTable::is_routable(int source, int destination) const {
  if (source < 1 || source > n_ || destination < 1 || destination > n_)
    throw InvalidSpec("route endpoint out of range");
  if (source == destination) return true;
  return routable_[static_cast<std::size_t>(source - 1) * n_ +
                   (destination - 1)] != 0;
}

const Route& RouteTable::at(int source, int destination) const {
  if (!is_routable(source, destination))
    throw UnreachableError("no route between requested nodes");
  return slot(source, destination);
}

Rational avg_path_length(const Assignment& a, RouterKind kind) {
  RouteTable table(a, kind);
  if (table.unroutable_pairs() > 0)
    throw UnreachableError("assignment has unroutable node pairs");
  const long long pairs =
      static_cast<long long>(a.n_nodes()) * (a.n_nodes() - 1);
  if (pairs == 0) return Rational(0);
  return Rational(table.total_hops(), pairs);
}

}  // namespace parklot
