#pragma once

#include <optional>
#include <vector>

#include "parklot/assignment.hpp"
#include "parklot/rational.hpp"
#include "parklot/topology.hpp"

namespace parklot {

struct Hop {
  int from = 0;
  int to = 0;
  int channel = 0;
  int tx = 0;  // transmitter's transceiver index

  bool operator==(const Hop&) const = default;
};

struct Route {
  int source = 0;
  int destination = 0;
  std::vector<Hop> hops;  // empty iff source == destination

  int length() const { return static_cast<int>(hops.size()); }
  bool operator==(const Route&) const = default;
};

enum class RouterKind { kHint, kLog2, kBfs };

const char* to_string(RouterKind k);
std::optional<RouterKind> router_from_string(std::string_view name);

// Natural router for a scheme: hint -> kHint, log2 -> kLog2, else kBfs.
RouterKind default_router(Scheme s);

// Hierarchical route for a hint assignment. At each step the packet moves,
// on the current node's transceiver k = k_min(cur, dst), to the unique group
// member that shares a strictly smaller level set with the destination, so k
// decreases every hop and the route takes at most T hops. With virtual
// padding the required relay may have been deleted; such routes fall back to
// the BFS router on the pruned topology (pass `topo` to reuse one instance
// across calls, otherwise it is built on demand).
Route route_hint(const Assignment& a, int source, int destination,
                 const EffectiveTopology* topo = nullptr);

// Route for a log2 assignment. Hops alternate between Tx-1 and Tx-2 groups:
// a non-lead node first hands the packet to its Tx-1 group's first node; that
// lead relays on its Tx-2 channel to the member whose cover set holds the
// destination's Tx-1 group; delivery finishes inside the destination's Tx-1
// group. Only first members ever transmit on Tx-2 channels. Throws
// UnreachableError when no progress is possible (the degenerate base m = 2,
// whose groups are singletons and share no channel).
Route route_log2(const Assignment& a, int source, int destination);

// Minimum-hop route on the effective topology; among equals prefers the
// smallest next node id, then the smallest channel id, making the output
// deterministic. Throws UnreachableError if no path exists.
Route route_bfs(const EffectiveTopology& t, int source, int destination);

// All-pairs route cache used by the analysis and simulation layers. Routes
// for pairs no router can serve are flagged unroutable rather than thrown, so
// callers decide how to treat them (everything but log2 m = 2 routes fully).
class RouteTable {
 public:
  RouteTable(const Assignment& a, RouterKind kind);

  int n_nodes() const { return n_; }
  bool is_routable(int source, int destination) const;
  const Route& at(int source, int destination) const;
  long long total_hops() const { return total_hops_; }
  long long routable_pairs() const { return routable_pairs_; }
  long long unroutable_pairs() const {
    return static_cast<long long>(n_) * (n_ - 1) - routable_pairs_;
  }

 private:
  const Route& slot(int s, int d) const {
    return routes_[static_cast<std::size_t>(s - 1) * n_ + (d - 1)];
  }

  int n_ = 0;
  std::vector<Route> routes_;
  std::vector<char> routable_;
  long long total_hops_ = 0;
  long long routable_pairs_ = 0;
};

// Mean hop count over all ordered pairs, exact. Propagates UnreachableError
// if any pair has no route.
Rational avg_path_length(const Assignment& a, RouterKind kind);

}  // namespace parklot
