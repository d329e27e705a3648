#pragma once

#include <cstdint>
#include <vector>

#include "parklot/assignment.hpp"
#include "parklot/rational.hpp"
#include "parklot/routing.hpp"

namespace parklot {

// Traffic model for all closed forms: every node generates packets at rate
// lambda (packets per slot), destinations uniform over the other N-1 nodes,
// so each ordered pair carries lambda/(N-1).

// Load offered to any single transceiver of a 2-transceiver hint assignment
// with base m: lambda * m * (m-1) / (N-1), N = m^2.
Rational hint2_transceiver_load(const Rational& lambda, int m);

// Largest lambda whose hint2 transceiver load stays within the 1/m share
// every group member gets: 1/m + 1/m^2.
Rational hint2_lambda_max(int m);

// General hint form: load on any transceiver k of any node is
// lambda * (m-1) * m^(t-1) / (m^t - 1), independent of k. The number of
// distinct source nodes whose traffic crosses a given node's transceiver k
// is m^(t-k); exposed separately for testing.
Rational hintT_transceiver_load(const Rational& lambda, int m, int t, int k);
std::int64_t hintT_source_count(int m, int t, int k);
Rational hintT_lambda_max(int m, int t);  // (m^t - 1) / (m^t * (m-1))

// Conservative upper bound on the busiest Tx-1 group's load in a log2
// assignment: m * (log2(m)+1) * (log2(m))^2 * lambda / (m*log2(m) - 1).
// Exceeds the exact load (and can exceed 1 where the exact load does not);
// pair it with offered_load_report for the exact load.
Rational log2_group_load_bound(const Rational& lambda, int m);

// Bound on delta1, the per-destination-group worst-case count of Tx-1 hops
// summed over all destination groups for flows leaving Tx-1 group 1.
std::int64_t log2_delta1_bound(int m);  // m * (log2(m) + 1)

// Brute-force delta1 over the actual routes: for every destination Tx-1
// group, the worst Tx-1-hop count among member pairs, summed. Unroutable
// pairs (base m = 2 only) contribute nothing.
std::int64_t log2_delta1_brute(const Assignment& a);

// Per-node rate each scheme is designed to carry, with the channel count it
// spends. For ring/grid the rate is the transport-capacity ceiling
// C / (N * L_bar) with the exact mean BFS path length; `upper_bound` marks it
// as a ceiling rather than an achieved rate.
struct AnalyticRate {
  Rational per_node_rate;
  std::int64_t channels = 0;
  bool upper_bound = false;
};
AnalyticRate analytic_rate(const Assignment& a);

std::int64_t channels_used(const Assignment& a);

// Fraction of raw channel capacity turned into end-to-end throughput:
// N * lambda / C.
Rational efficiency(std::int64_t n_nodes, const Rational& lambda,
                    std::int64_t channels);

// Transport-capacity feasibility: N * lambda * L_bar <= C.
bool tradeoff_check(std::int64_t n_nodes, const Rational& lambda,
                    const Rational& avg_hops, std::int64_t channels);

// Exact per-transceiver and per-channel load accounting obtained by walking
// every route once. The independent counterpart to the closed forms above.
struct LoadReport {
  Rational lambda;
  long long unroutable_pairs = 0;
  std::vector<std::vector<Rational>> node_tx_load;  // [node-1][tx-1]
  std::vector<Rational> channel_load;               // [channel-1]
  std::vector<std::vector<Rational>> capacity_share;  // [node-1][tx-1]
  bool per_transceiver_feasible = false;  // every load <= its share
  bool per_channel_feasible = false;      // every channel load <= 1
};
LoadReport offered_load_report(const Assignment& a, RouterKind kind,
                               const Rational& lambda);

// One analysis row: what `analyze` emits per (scheme, N).
struct EfficiencyReport {
  std::int64_t n_nodes = 0;
  std::int64_t n_transceivers = 0;
  std::int64_t channels = 0;
  Rational per_node_rate;
  bool rate_is_upper_bound = false;
  Rational avg_hops;
  Rational eta;  // N * rate / C
};
EfficiencyReport efficiency_report(const Assignment& a, RouterKind kind);

}  // namespace parklot
