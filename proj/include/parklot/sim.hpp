#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "parklot/assignment.hpp"
#include "parklot/rational.hpp"
#include "parklot/routing.hpp"

namespace parklot {

// Slot-synchronous model: in each slot every channel carries at most one
// packet one hop. Whether an idle slot can be claimed by another group
// member is the scheduler's choice:
//   kStrictTdma       members own slots cyclically, backlogged or not
//   kWorkConservingRr the next backlogged member (round robin) transmits
// Either way, log2 Tx-2 channels are driven only by the group's first member.
enum class SchedulerKind { kStrictTdma, kWorkConservingRr };

const char* to_string(SchedulerKind k);
std::optional<SchedulerKind> scheduler_from_string(std::string_view name);

struct SimConfig {
  Rational lambda;                 // per-node arrival rate, packets/slot
  std::int64_t horizon = 200000;   // slots simulated
  std::int64_t warmup = 20000;     // slots excluded from window statistics
  std::uint64_t seed = 1;
  SchedulerKind scheduler = SchedulerKind::kStrictTdma;
  std::int64_t queue_capacity = 0;  // per (node, transceiver); 0 = unbounded
  bool log_events = false;          // record every transmission (tests only)
};

struct QueueStats {
  std::int64_t max_len = 0;  // over the measurement window
  double time_avg = 0.0;

  bool operator==(const QueueStats&) const = default;
};

struct TxEvent {
  std::int64_t slot = 0;
  int channel = 0;
  int from = 0;
  int to = 0;

  bool operator==(const TxEvent&) const = default;
};

struct SimResult {
  // Echo of what ran.
  int n_nodes = 0;
  int n_transceivers = 0;
  int channels = 0;
  Rational lambda;
  std::int64_t horizon = 0;
  std::int64_t warmup = 0;
  std::uint64_t seed = 0;
  SchedulerKind scheduler = SchedulerKind::kStrictTdma;
  std::int64_t queue_capacity = 0;

  // Whole-run packet accounting; generated == delivered + dropped + in_flight.
  std::int64_t generated = 0;
  std::int64_t delivered = 0;
  std::int64_t dropped = 0;
  std::int64_t in_flight = 0;

  // Measurement window [warmup, horizon).
  std::int64_t window_slots = 0;
  std::int64_t window_generated = 0;
  std::int64_t window_delivered = 0;
  std::int64_t window_hop_sum = 0;  // route lengths of window deliveries
  std::vector<std::int64_t> delivered_by_source;  // size N

  double delivered_rate_per_node = 0.0;  // window_delivered / (N * window)
  double empirical_avg_hops = 0.0;       // 0 when nothing was delivered

  std::vector<QueueStats> queue_stats;  // (node-1)*T + tx-1
  std::int64_t max_queue_len = 0;       // max over queue_stats

  // Backlog growth detector: mean total backlog over each third of the
  // horizon. A run is unstable when the last third's mean exceeds 4x the
  // first third's (floored at one packet), the signature of a queue growing
  // linearly instead of fluctuating around a fixed level.
  double backlog_mean_thirds[3] = {0.0, 0.0, 0.0};
  bool stable = false;

  // N * measured_rate * measured_avg_hops <= C, checked exactly.
  bool tradeoff_ok = false;

  std::vector<TxEvent> events;  // populated only when log_events

  bool operator==(const SimResult&) const = default;
};

// Runs the slot simulation. Routes are fixed at packet creation from the
// given router; the assignment must have every ordered pair routable.
SimResult run(const Assignment& a, RouterKind router, const SimConfig& cfg);

// As `run`, reusing a prebuilt route table (must match a and router).
SimResult run(const Assignment& a, const RouteTable& table,
              const SimConfig& cfg);

// Largest rate in [lo, hi] (to within tol) whose run is stable, by bisection
// on the stability verdict with everything else taken from base. Throws
// NoStablePoint when lo itself is unstable. When `trace` is given, every
// probe's full result is appended in probe order.
Rational saturation_search(const Assignment& a, RouterKind router,
                           const SimConfig& base, const Rational& lo,
                           const Rational& hi, const Rational& tol,
                           std::vector<SimResult>* trace = nullptr);

}  // namespace parklot
