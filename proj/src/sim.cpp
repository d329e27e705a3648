#include "parklot/sim.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <random>

namespace parklot {

const char* to_string(SchedulerKind k) {
  return k == SchedulerKind::kStrictTdma ? "strict-tdma" : "work-conserving-rr";
}

std::optional<SchedulerKind> scheduler_from_string(std::string_view name) {
  if (name == "strict-tdma") return SchedulerKind::kStrictTdma;
  if (name == "work-conserving-rr") return SchedulerKind::kWorkConservingRr;
  return std::nullopt;
}

namespace {

struct Packet {
  int src = 0;
  int dst = 0;
  int hop_idx = 0;
};

// Per-queue statistics by piecewise integration: `len` held from slot
// `last_slot` until the next change. Contributions are clipped to the
// measurement window.
struct QueueTracker {
  int len = 0;
  std::int64_t last_slot = 0;
  std::int64_t area = 0;
  std::int64_t max_post = 0;

  void change(std::int64_t slot, int new_len, std::int64_t warmup) {
    std::int64_t lo = std::max(last_slot, warmup);
    if (slot > lo) {
      area += static_cast<std::int64_t>(len) * (slot - lo);
      max_post = std::max<std::int64_t>(max_post, len);
    }
    if (slot >= warmup) max_post = std::max<std::int64_t>(max_post, new_len);
    len = new_len;
    last_slot = slot;
  }

  void finish(std::int64_t horizon, std::int64_t warmup) {
    std::int64_t lo = std::max(last_slot, warmup);
    if (horizon > lo) {
      area += static_cast<std::int64_t>(len) * (horizon - lo);
      max_post = std::max<std::int64_t>(max_post, len);
    }
  }
};

struct GroupRuntime {
  int channel = 0;
  bool fixed_owner = false;  // log2 Tx-2: only the first member transmits
  std::vector<int> member_nodes;
  std::vector<int> member_queues;  // parallel to member_nodes
  int rr_ptr = 0;
};

inline double unit_interval(std::uint64_t raw) {
  return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

}  // namespace

SimResult run(const Assignment& a, RouterKind router, const SimConfig& cfg) {
  RouteTable table(a, router);
  return run(a, table, cfg);
}

SimResult run(const Assignment& a, const RouteTable& table,
              const SimConfig& cfg) {
  const int n = a.n_nodes();
  const int t = a.n_transceivers();
  if (cfg.horizon < 3) throw InvalidSpec("horizon must be at least 3 slots");
  if (cfg.warmup < 0 || cfg.warmup >= cfg.horizon)
    throw InvalidSpec("warmup must lie inside the horizon");
  if (cfg.lambda < Rational(0)) throw InvalidSpec("lambda must be >= 0");
  if (table.n_nodes() != n) throw InvalidSpec("route table does not match");
  if (table.unroutable_pairs() > 0)
    throw InvalidSpec("assignment has unroutable pairs; cannot simulate");

  SimResult res;
  res.n_nodes = n;
  res.n_transceivers = t;
  res.channels = a.total_channels();
  res.lambda = cfg.lambda;
  res.horizon = cfg.horizon;
  res.warmup = cfg.warmup;
  res.seed = cfg.seed;
  res.scheduler = cfg.scheduler;
  res.queue_capacity = cfg.queue_capacity;
  res.window_slots = cfg.horizon - cfg.warmup;
  res.delivered_by_source.assign(static_cast<std::size_t>(n), 0);

  const std::size_t n_queues = static_cast<std::size_t>(n) * t;
  std::vector<std::deque<Packet>> queues(n_queues);
  std::vector<QueueTracker> trackers(n_queues);
  auto queue_id = [t](int node, int tx) {
    return static_cast<std::size_t>(node - 1) * t + (tx - 1);
  };

  // Group runtime state, in channel order for deterministic service.
  std::vector<GroupRuntime> grt;
  grt.reserve(a.groups().size());
  for (const Group& g : a.groups()) {
    GroupRuntime r;
    r.channel = g.channel;
    r.fixed_owner = a.spec().scheme == Scheme::kLog2 && g.tx_index == 2;
    for (int node : g.members) {
      r.member_nodes.push_back(node);
      r.member_queues.push_back(
          static_cast<int>(queue_id(node, a.tx_on_channel(node, g.channel))));
    }
    grt.push_back(std::move(r));
  }
  std::sort(grt.begin(), grt.end(),
            [](const GroupRuntime& x, const GroupRuntime& y) {
              return x.channel < y.channel;
            });

  std::mt19937_64 rng(cfg.seed);
  const double p_arrival =
      n < 2 ? 0.0 : std::min(cfg.lambda.to_double(), 1.0);

  std::int64_t backlog = 0;
  std::int64_t backlog_sum[3] = {0, 0, 0};
  std::int64_t backlog_cnt[3] = {0, 0, 0};

  auto push_packet = [&](std::size_t qid, const Packet& pkt,
                         std::int64_t slot) -> bool {
    if (cfg.queue_capacity > 0 &&
        static_cast<std::int64_t>(queues[qid].size()) >= cfg.queue_capacity) {
      ++res.dropped;
      return false;
    }
    queues[qid].push_back(pkt);
    ++backlog;
    trackers[qid].change(slot, static_cast<int>(queues[qid].size()),
                         cfg.warmup);
    return true;
  };

  struct Move {
    Packet pkt;
    std::size_t qid;
  };
  std::vector<Move> moves;
  moves.reserve(grt.size());

  for (std::int64_t slot = 0; slot < cfg.horizon; ++slot) {
    const bool in_window = slot >= cfg.warmup;

    // Arrivals: Bernoulli(min(lambda, 1)) per node, destination uniform over
    // the others, route frozen at creation.
    for (int node = 1; node <= n; ++node) {
      if (unit_interval(rng()) >= p_arrival) continue;
      int other = static_cast<int>(draw_below(rng, n - 1));  // 0..n-2
      int dst = (other >= node - 1) ? other + 2 : other + 1;
      ++res.generated;
      if (in_window) ++res.window_generated;
      const Route& route = table.at(node, dst);
      Packet pkt{node, dst, 0};
      push_packet(queue_id(node, route.hops.front().tx), pkt, slot);
    }

    // One transmission per channel. Queues are popped here and refilled only
    // after the loop, so a packet advances at most one hop per slot.
    moves.clear();
    for (GroupRuntime& g : grt) {
      const std::size_t size = g.member_nodes.size();
      std::size_t chosen = size;  // sentinel: idle
      if (cfg.scheduler == SchedulerKind::kStrictTdma || g.fixed_owner) {
        std::size_t owner =
            g.fixed_owner ? 0
                          : static_cast<std::size_t>(
                                slot % static_cast<std::int64_t>(size));
        if (cfg.scheduler == SchedulerKind::kWorkConservingRr) {
          // fixed_owner under work conservation: only member 0 may claim.
          if (!queues[static_cast<std::size_t>(g.member_queues[0])].empty())
            chosen = 0;
        } else if (!queues[static_cast<std::size_t>(g.member_queues[owner])]
                        .empty()) {
          chosen = owner;
        }
      } else {
        for (std::size_t off = 0; off < size; ++off) {
          std::size_t pos = (static_cast<std::size_t>(g.rr_ptr) + off) % size;
          if (!queues[static_cast<std::size_t>(g.member_queues[pos])].empty()) {
            chosen = pos;
            g.rr_ptr = static_cast<int>((pos + 1) % size);
            break;
          }
        }
      }
      if (chosen == size) continue;

      const std::size_t qid =
          static_cast<std::size_t>(g.member_queues[chosen]);
      Packet pkt = queues[qid].front();
      queues[qid].pop_front();
      --backlog;
      trackers[qid].change(slot + 1, static_cast<int>(queues[qid].size()),
                           cfg.warmup);

      const Route& route = table.at(pkt.src, pkt.dst);
      const Hop& hop = route.hops[static_cast<std::size_t>(pkt.hop_idx)];
      assert(hop.from == g.member_nodes[chosen]);
      assert(hop.channel == g.channel);
      if (cfg.log_events)
        res.events.push_back({slot, g.channel, hop.from, hop.to});

      ++pkt.hop_idx;
      if (hop.to == pkt.dst) {
        ++res.delivered;
        if (in_window) {
          ++res.window_delivered;
          ++res.delivered_by_source[static_cast<std::size_t>(pkt.src - 1)];
          res.window_hop_sum += route.length();
        }
      } else {
        const Hop& next = route.hops[static_cast<std::size_t>(pkt.hop_idx)];
        moves.push_back({pkt, queue_id(next.from, next.tx)});
      }
    }
    for (const Move& mv : moves) push_packet(mv.qid, mv.pkt, slot + 1);

    const int bucket = static_cast<int>(slot * 3 / cfg.horizon);
    backlog_sum[bucket] += backlog;
    ++backlog_cnt[bucket];
  }

  // Wind down statistics.
  res.in_flight = backlog;
  assert(res.generated == res.delivered + res.dropped + res.in_flight);
  res.queue_stats.resize(n_queues);
  const double window = static_cast<double>(res.window_slots);
  for (std::size_t q = 0; q < n_queues; ++q) {
    trackers[q].finish(cfg.horizon, cfg.warmup);
    res.queue_stats[q].max_len = trackers[q].max_post;
    res.queue_stats[q].time_avg =
        static_cast<double>(trackers[q].area) / window;
    res.max_queue_len = std::max(res.max_queue_len, trackers[q].max_post);
  }
  for (int i = 0; i < 3; ++i)
    res.backlog_mean_thirds[i] =
        backlog_cnt[i] > 0
            ? static_cast<double>(backlog_sum[i]) / backlog_cnt[i]
            : 0.0;
  res.stable = !(res.backlog_mean_thirds[2] >
                 4.0 * std::max(res.backlog_mean_thirds[0], 1.0));

  res.delivered_rate_per_node =
      static_cast<double>(res.window_delivered) / (window * n);
  res.empirical_avg_hops =
      res.window_delivered > 0
          ? static_cast<double>(res.window_hop_sum) / res.window_delivered
          : 0.0;

  // Transport-capacity sanity: N * rate * L_bar <= C with exact integers.
  if (res.window_delivered > 0) {
    Rational rate(res.window_delivered,
                  static_cast<std::int64_t>(n) * res.window_slots);
    Rational l_bar(res.window_hop_sum, res.window_delivered);
    res.tradeoff_ok = Rational(n) * rate * l_bar <= Rational(res.channels);
  } else {
    res.tradeoff_ok = true;
  }

  return res;
}

Rational saturation_search(const Assignment& a, RouterKind router,
                           const SimConfig& base, const Rational& lo,
                           const Rational& hi, const Rational& tol,
                           std::vector<SimResult>* trace) {
  if (!(lo < hi)) throw InvalidSpec("search bracket is empty");
  if (!(tol > Rational(0))) throw InvalidSpec("tolerance must be positive");

  RouteTable table(a, router);
  auto stable_at = [&](const Rational& lambda) {
    SimConfig cfg = base;
    cfg.lambda = lambda;
    SimResult r = run(a, table, cfg);
    bool stable = r.stable;
    if (trace) trace->push_back(std::move(r));
    return stable;
  };

  if (!stable_at(lo))
    throw NoStablePoint("unstable at the low end of the bracket");
  if (stable_at(hi)) return hi;

  Rational lo_ = lo, hi_ = hi;
  while (hi_ - lo_ > tol) {
    Rational mid = (lo_ + hi_) / Rational(2);
    if (stable_at(mid))
      lo_ = mid;
    else
      hi_ = mid;
  }
  return lo_;
}

}  // namespace parklot
