#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "parklot/analysis.hpp"
#include "parklot/assignment.hpp"
#include "parklot/sim.hpp"

namespace parklot {

// Every serialized document carries this tag; readers reject others.
inline constexpr const char* kFormatVersion = "parklot/1";

using OrderedJson = nlohmann::ordered_json;

// Shortest representation that parses back to the same double.
std::string fmt_double(double v);

OrderedJson spec_to_json(const NetworkSpec& s);
NetworkSpec spec_from_json(const nlohmann::json& j);

// {"format", "spec", "groups": [{channel, tx_index, number, members}...]}.
// Parsing rebuilds the (node, transceiver) index, so a parsed assignment
// compares equal to the one serialized.
OrderedJson assignment_to_json(const Assignment& a);
Assignment assignment_from_json(const nlohmann::json& j);

// Full record of one simulation: network, router, config (with seed), and
// the result block. Rationals are rendered as "p/q" strings.
OrderedJson sim_result_to_json(const NetworkSpec& net, RouterKind router,
                               const SimResult& r);

// One experiment line: which assignment to build and how to probe it.
// lambda_grid, when present, brackets the saturation search as
// [front, back]; when absent the bracket is derived from the analytic rate.
struct ManifestEntry {
  Scheme scheme = Scheme::kHint;
  int n_nodes = 0;  // hint/ring/grid node count
  int m = 0;        // log2 group base
  int t = 2;        // hint transceiver count; fixed by the other schemes
  PaddingMode padding = PaddingMode::kStrict;
  std::vector<Rational> lambda_grid;
  std::vector<std::uint64_t> seeds{1};
  SchedulerKind scheduler = SchedulerKind::kStrictTdma;
  std::int64_t horizon = 200000;
  std::int64_t warmup = 20000;
  Rational tolerance{1, 256};
};

struct ExperimentManifest {
  std::string out_dir;  // empty: resolved by the caller
  std::vector<ManifestEntry> entries;
};

ExperimentManifest manifest_from_json(const nlohmann::json& j);
Assignment build_from_entry(const ManifestEntry& e);

// analyze output: one row per assignment, exact columns plus float twins.
struct AnalyzeRow {
  Scheme scheme = Scheme::kHint;
  RouterKind router = RouterKind::kBfs;
  EfficiencyReport report;
};
std::string analyze_csv(const std::vector<AnalyzeRow>& rows);

// sweep output: one row per (entry, seed) with the measured saturation rate.
struct SweepRow {
  Scheme scheme = Scheme::kHint;
  int n_nodes = 0;
  int n_transceivers = 0;
  std::int64_t channels = 0;
  Rational lambda_sat;
  Rational l_bar;
  Rational efficiency;  // N * lambda_sat / channels
  std::uint64_t seed = 0;
  std::int64_t horizon = 0;
  std::int64_t warmup = 0;
  SchedulerKind scheduler = SchedulerKind::kStrictTdma;
  Rational tolerance;
};
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Writes via a temporary in the same directory plus rename, creating parent
// directories as needed, so readers never observe a half-written file.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace parklot
