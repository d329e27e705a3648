#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parklot/errors.hpp"

namespace parklot {

// All nodes share one collision domain: any transmission is heard by every
// tuned receiver, so capacity comes purely from channel orthogonality. A
// static assignment fixes, per node, which channel each of its T transceivers
// listens on; nodes sharing a channel form a group.

enum class Scheme { kHint, kLog2, kRing, kGrid };
enum class PaddingMode { kStrict, kVirtual };

const char* to_string(Scheme s);
const char* to_string(PaddingMode p);
std::optional<Scheme> scheme_from_string(std::string_view name);
std::optional<PaddingMode> padding_from_string(std::string_view name);

struct NetworkSpec {
  Scheme scheme = Scheme::kHint;
  int n_nodes = 0;         // N; node ids are 1..N
  int n_transceivers = 0;  // T
  int group_base = 0;      // M for hint/log2; 0 for ring/grid
  PaddingMode padding = PaddingMode::kStrict;

  bool operator==(const NetworkSpec&) const = default;
};

struct Group {
  int channel = 0;   // unique, 1..C across the assignment
  int tx_index = 0;  // nominal transceiver index (see note on grid below)
  int number = 0;    // group number within its transceiver index
  std::vector<int> members;  // member order is meaningful for log2 and grid

  bool operator==(const Group&) const = default;
};

// An assignment binds every (node, transceiver) pair to exactly one group.
// For hint/log2/ring all members of a group use the same transceiver index,
// the group's tx_index. Grid groups are point-to-point links whose two
// members use different transceivers: members[0] is the link owner using
// tx_index (1 = east, 3 = south) and members[1] uses tx_index + 1
// (2 = west, 4 = north). The (node, transceiver) index below is therefore
// the authoritative map; it is rebuilt from (spec, groups) both after
// construction and after deserialization.
class Assignment {
 public:
  Assignment(NetworkSpec spec, std::vector<Group> groups);

  const NetworkSpec& spec() const { return spec_; }
  const std::vector<Group>& groups() const { return groups_; }
  int n_nodes() const { return spec_.n_nodes; }
  int n_transceivers() const { return spec_.n_transceivers; }
  int total_channels() const { return static_cast<int>(groups_.size()); }

  // Index of the group node uses on transceiver tx; throws InvalidSpec if the
  // pair is unbound (only possible for hand-built or corrupted inputs).
  int group_index(int node, int tx) const;
  const Group& group_of(int node, int tx) const {
    return groups_[static_cast<std::size_t>(group_index(node, tx))];
  }
  int channel_of(int node, int tx) const { return group_of(node, tx).channel; }

  const Group& group_by_channel(int channel) const;
  // Transceiver `node` uses on `channel`; throws if node is not a member.
  int tx_on_channel(int node, int channel) const;

  bool operator==(const Assignment& o) const {
    return spec_ == o.spec_ && groups_ == o.groups_;
  }

 private:
  void build_index();

  NetworkSpec spec_;
  std::vector<Group> groups_;
  std::vector<int> node_tx_group_;  // (node-1)*T + (tx-1) -> group index or -1
  std::vector<int> channel_group_;  // channel-1 -> group index or -1
};

// ---- Builders --------------------------------------------------------

// Hierarchical interleaved assignment for N = M^T nodes with T transceivers
// each, M = N^(1/T). Transceiver k's group (i-1)*M^(k-1) + j, for
// 1 <= i <= M^(T-k) and 1 <= j <= M^(k-1), contains the nodes
//   { (i-1)*M^k + j + c*M^(k-1) : c = 0..M-1 },
// i.e. Tx-1 groups are consecutive blocks and each higher index interleaves
// with stride M^(k-1). Channels: T*M^(T-1).
//
// Padding: kStrict throws DivisibilityError unless N is a perfect T-th
// power. kVirtual rounds N up to M^T with M = ceil(N^(1/T)), builds the
// ideal assignment, then deletes the virtual nodes from all groups (empty
// groups are dropped and channels renumbered densely).
Assignment build_hint(int n_nodes, int n_transceivers,
                      PaddingMode padding = PaddingMode::kStrict);

// Two-transceiver assignment for N = M*log2(M) nodes, M a power of two.
// Tx-1 group k holds the log2(M) consecutive nodes (k-1)*log2(M)+1 .. k*log2(M).
// The i-th member of Tx-2 group j is the i-th node of Tx-1 group
// ((j-1+2^(i-1)) mod M), where the residue is taken in 1..M (multiples of M
// map to M). Channels: 2M. Member order encodes the level i.
Assignment build_log2(int m);

// Four-transceiver ring-like assignment for N divisible by 4. Tx-1 groups
// are consecutive blocks of 4; Tx-r (r = 2,3,4) groups slide each block
// forward by r positions around the node-id circle. Channels: N.
Assignment build_ring(int n_nodes);

// Four-transceiver torus assignment for N = L*L nodes, L >= 3, laid out
// row-major. Every undirected link of the L x L torus is a 2-member group
// with its own channel: horizontal links own channels 1..N (numbered by the
// west endpoint), vertical links own channels N+1..2N (numbered by the north
// endpoint). Channels: 2N.
Assignment build_grid(int n_nodes);

// ---- Level sets (hint) -----------------------------------------------

// Nodes 1..M^T split, at every level k in 1..T, into M^(T-k) sets of M^k
// consecutive ids. level_index returns which level-k set `node` lies in,
// i.e. ceil(node / M^k).
int level_index(int node, int k, int m, int t);

// Smallest k in 1..T such that a and b share a level-k set; 0 when a == b.
int k_min(int a, int b, int m, int t);

// ---- Cover sets (log2) -----------------------------------------------

// Residue of a in 1..m: multiples of m map to m, otherwise a mod m.
int mod_one_based(int a, int m);

// For Tx-2 group j of a log2 assignment with base m, returns log2(m) sets of
// Tx-1 group numbers: set i starts at mod_one_based(j-1+2^(i-1), m) and holds
// 2^(i-1) consecutive numbers (wrapping), except the last set which holds
// 2^(i-1)+1. The sets partition {1..m}; traffic for a destination whose Tx-1
// group lies in set i is forwarded through member i of Tx-2 group j.
std::vector<std::vector<int>> cover_sets(int j, int m);

// ---- Validation ------------------------------------------------------

struct ValidationIssue {
  std::string invariant;  // short machine-ish name
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  // First violated invariant, or "ok".
  std::string summary() const;
};

// Checks structural invariants (membership, channel numbering, group sizes,
// scheme-specific structure, connectivity of the effective topology).
// Violations are returned as data, never thrown.
ValidationReport validate(const Assignment& a);

// Checked small integer power; throws InvalidSpec when the result would not
// fit the supported node-count range.
long long ipow_checked(long long base, int exp);

}  // namespace parklot
