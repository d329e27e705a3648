#include "parklot/assignment.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace parklot {

namespace {

constexpr long long kMaxNodes = 1 << 24;  // generous cap for desk-scale use

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(int v) {
  int l = 0;
  while ((1 << l) < v) ++l;
  return l;
}

// Smallest m with m^t >= n.
int integer_root_ceil(long long n, int t) {
  int m = 1;
  while (ipow_checked(m, t) < n) ++m;
  return m;
}

int isqrt_floor(int n) {
  int r = 0;
  while (static_cast<long long>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

long long ipow_checked(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > kMaxNodes) throw InvalidSpec("node count out of supported range");
  }
  return r;
}

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::kHint: return "hint";
    case Scheme::kLog2: return "log2";
    case Scheme::kRing: return "ring";
    case Scheme::kGrid: return "grid";
  }
  return "?";
}

const char* to_string(PaddingMode p) {
  return p == PaddingMode::kStrict ? "strict" : "virtual";
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
  if (name == "hint") return Scheme::kHint;
  if (name == "log2") return Scheme::kLog2;
  if (name == "ring") return Scheme::kRing;
  if (name == "grid") return Scheme::kGrid;
  return std::nullopt;
}

std::optional<PaddingMode> padding_from_string(std::string_view name) {
  if (name == "strict") return PaddingMode::kStrict;
  if (name == "virtual") return PaddingMode::kVirtual;
  return std::nullopt;
}

// ---- Assignment ------------------------------------------------------

Assignment::Assignment(NetworkSpec spec, std::vector<Group> groups)
    : spec_(spec), groups_(std::move(groups)) {
  if (spec_.n_nodes < 1 || spec_.n_transceivers < 1)
    throw InvalidSpec("assignment requires at least one node and transceiver");
  build_index();
}

void Assignment::build_index() {
  const int n = spec_.n_nodes;
  const int t = spec_.n_transceivers;
  node_tx_group_.assign(static_cast<std::size_t>(n) * t, -1);
  int max_channel = 0;
  for (const Group& g : groups_) max_channel = std::max(max_channel, g.channel);
  channel_group_.assign(static_cast<std::size_t>(std::max(max_channel, 0)), -1);

  // Lenient on malformed inputs: first binding wins, validate() reports the
  // conflicts from the group list itself.
  for (std::size_t gi = 0; gi < groups_.size(); ++gi) {
    const Group& g = groups_[gi];
    if (g.channel >= 1 && channel_group_[g.channel - 1] == -1)
      channel_group_[g.channel - 1] = static_cast<int>(gi);
    for (std::size_t pos = 0; pos < g.members.size(); ++pos) {
      int node = g.members[pos];
      int tx = g.tx_index;
      if (spec_.scheme == Scheme::kGrid && pos == 1) tx = g.tx_index + 1;
      if (node < 1 || node > n || tx < 1 || tx > t) continue;
      std::size_t slot = static_cast<std::size_t>(node - 1) * t + (tx - 1);
      if (node_tx_group_[slot] == -1)
        node_tx_group_[slot] = static_cast<int>(gi);
    }
  }
}

int Assignment::group_index(int node, int tx) const {
  if (node < 1 || node > spec_.n_nodes || tx < 1 || tx > spec_.n_transceivers)
    throw InvalidSpec("node or transceiver index out of range");
  int gi = node_tx_group_[static_cast<std::size_t>(node - 1) *
                              spec_.n_transceivers +
                          (tx - 1)];
  if (gi < 0)
    throw InvalidSpec("node " + std::to_string(node) +
                      " has no group on transceiver " + std::to_string(tx));
  return gi;
}

const Group& Assignment::group_by_channel(int channel) const {
  if (channel < 1 || channel > static_cast<int>(channel_group_.size()) ||
      channel_group_[channel - 1] < 0)
    throw InvalidSpec("no group holds channel " + std::to_string(channel));
  return groups_[static_cast<std::size_t>(channel_group_[channel - 1])];
}

int Assignment::tx_on_channel(int node, int channel) const {
  const Group& g = group_by_channel(channel);
  for (std::size_t pos = 0; pos < g.members.size(); ++pos) {
    if (g.members[pos] != node) continue;
    if (spec_.scheme == Scheme::kGrid && pos == 1) return g.tx_index + 1;
    return g.tx_index;
  }
  throw InvalidSpec("node " + std::to_string(node) + " is not on channel " +
                    std::to_string(channel));
}

// ---- Builders --------------------------------------------------------

Assignment build_hint(int n_nodes, int n_transceivers, PaddingMode padding) {
  if (n_transceivers < 2)
    throw InvalidSpec("hint requires at least 2 transceivers");
  if (n_nodes < 2) throw InvalidSpec("hint requires at least 2 nodes");

  const int t = n_transceivers;
  const int m = integer_root_ceil(n_nodes, t);
  const long long ideal = ipow_checked(m, t);
  if (padding == PaddingMode::kStrict && ideal != n_nodes)
    throw DivisibilityError(
        "n_nodes^(1/n_transceivers) is not an integer; pass padding=virtual "
        "to round up");

  const long long groups_per_index = ipow_checked(m, t - 1);
  std::vector<Group> groups;
  groups.reserve(static_cast<std::size_t>(t * groups_per_index));
  for (int k = 1; k <= t; ++k) {
    const long long stride = ipow_checked(m, k - 1);  // M^(k-1)
    const long long block = stride * m;                // M^k
    for (long long g = 1; g <= groups_per_index; ++g) {
      const long long i = (g - 1) / stride + 1;
      const long long j = (g - 1) % stride + 1;
      const long long base = (i - 1) * block + j;
      Group grp;
      grp.tx_index = k;
      grp.number = static_cast<int>(g);
      for (int c = 0; c < m; ++c) {
        long long node = base + c * stride;
        if (node <= n_nodes) grp.members.push_back(static_cast<int>(node));
      }
      if (!grp.members.empty()) groups.push_back(std::move(grp));
    }
  }
  // Channel ids are dense in (transceiver index, group number) order; with
  // virtual padding this runs over the surviving groups only.
  int channel = 0;
  for (Group& g : groups) g.channel = ++channel;

  NetworkSpec spec;
  spec.scheme = Scheme::kHint;
  spec.n_nodes = n_nodes;
  spec.n_transceivers = t;
  spec.group_base = m;
  spec.padding = padding;
  return Assignment(spec, std::move(groups));
}

Assignment build_log2(int m) {
  if (m < 2 || !is_power_of_two(m))
    throw InvalidSpec("log2 requires the group base to be a power of two >= 2");
  const int l = log2_exact(m);  // nodes per group
  const int n = m * l;

  std::vector<Group> groups;
  groups.reserve(static_cast<std::size_t>(2 * m));
  for (int k = 1; k <= m; ++k) {
    Group grp;
    grp.tx_index = 1;
    grp.number = k;
    grp.channel = k;
    for (int i = 1; i <= l; ++i) grp.members.push_back((k - 1) * l + i);
    groups.push_back(std::move(grp));
  }
  for (int j = 1; j <= m; ++j) {
    Group grp;
    grp.tx_index = 2;
    grp.number = j;
    grp.channel = m + j;
    // Member i is the i-th node of Tx-1 group (j-1+2^(i-1)) wrapped to 1..m;
    // member 1 is therefore always the first node of Tx-1 group j.
    for (int i = 1; i <= l; ++i) {
      int src_group = mod_one_based(j - 1 + (1 << (i - 1)), m);
      grp.members.push_back((src_group - 1) * l + i);
    }
    groups.push_back(std::move(grp));
  }

  NetworkSpec spec;
  spec.scheme = Scheme::kLog2;
  spec.n_nodes = n;
  spec.n_transceivers = 2;
  spec.group_base = m;
  spec.padding = PaddingMode::kStrict;
  return Assignment(spec, std::move(groups));
}

Assignment build_ring(int n_nodes) {
  if (n_nodes < 4 || n_nodes % 4 != 0)
    throw DivisibilityError("ring requires a node count divisible by 4");
  const int blocks = n_nodes / 4;

  std::vector<Group> groups;
  groups.reserve(static_cast<std::size_t>(4 * blocks));
  for (int r = 1; r <= 4; ++r) {
    const int shift = (r == 1) ? 0 : r;  // Tx-r slides the window by r
    for (int g = 1; g <= blocks; ++g) {
      Group grp;
      grp.tx_index = r;
      grp.number = g;
      grp.channel = (r - 1) * blocks + g;
      for (int off = 0; off < 4; ++off)
        grp.members.push_back((4 * (g - 1) + shift + off) % n_nodes + 1);
      groups.push_back(std::move(grp));
    }
  }

  NetworkSpec spec;
  spec.scheme = Scheme::kRing;
  spec.n_nodes = n_nodes;
  spec.n_transceivers = 4;
  spec.group_base = 0;
  spec.padding = PaddingMode::kStrict;
  return Assignment(spec, std::move(groups));
}

Assignment build_grid(int n_nodes) {
  const int side = isqrt_floor(std::max(n_nodes, 0));
  if (n_nodes < 9 || side * side != n_nodes)
    throw InvalidSpec("grid requires a square node count with side >= 3");

  auto node_at = [side](int row, int col) { return row * side + col + 1; };

  std::vector<Group> groups;
  groups.reserve(static_cast<std::size_t>(2 * n_nodes));
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      Group grp;
      grp.tx_index = 1;  // owner's east link; the east neighbor uses tx 2
      grp.number = node_at(row, col);
      grp.channel = node_at(row, col);
      grp.members = {node_at(row, col), node_at(row, (col + 1) % side)};
      groups.push_back(std::move(grp));
    }
  }
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      Group grp;
      grp.tx_index = 3;  // owner's south link; the south neighbor uses tx 4
      grp.number = node_at(row, col);
      grp.channel = n_nodes + node_at(row, col);
      grp.members = {node_at(row, col), node_at((row + 1) % side, col)};
      groups.push_back(std::move(grp));
    }
  }

  NetworkSpec spec;
  spec.scheme = Scheme::kGrid;
  spec.n_nodes = n_nodes;
  spec.n_transceivers = 4;
  spec.group_base = 0;
  spec.padding = PaddingMode::kStrict;
  return Assignment(spec, std::move(groups));
}

// ---- Level sets ------------------------------------------------------

int level_index(int node, int k, int m, int t) {
  if (m < 2 || t < 1) throw InvalidSpec("level sets require m >= 2, t >= 1");
  if (k < 1 || k > t) throw InvalidSpec("level k out of range");
  const long long total = ipow_checked(m, t);
  if (node < 1 || node > total) throw InvalidSpec("node id out of range");
  const long long size = ipow_checked(m, k);
  return static_cast<int>((node + size - 1) / size);
}

int k_min(int a, int b, int m, int t) {
  if (a == b) {
    level_index(a, 1, m, t);  // range check only
    return 0;
  }
  for (int k = 1; k <= t; ++k)
    if (level_index(a, k, m, t) == level_index(b, k, m, t)) return k;
  throw InvalidSpec("nodes share no level set");  // unreachable for valid ids
}

// ---- Cover sets ------------------------------------------------------

int mod_one_based(int a, int m) {
  if (m < 1) throw InvalidSpec("modulus must be positive");
  int r = a % m;
  if (r < 0) r += m;
  return r == 0 ? m : r;
}

std::vector<std::vector<int>> cover_sets(int j, int m) {
  if (m < 2 || !is_power_of_two(m))
    throw InvalidSpec("cover sets require a power-of-two base");
  const int l = log2_exact(m);
  if (j < 1 || j > m) throw InvalidSpec("group number out of range");

  std::vector<std::vector<int>> sets;
  sets.reserve(static_cast<std::size_t>(l));
  for (int i = 1; i <= l; ++i) {
    int count = (i == l) ? (1 << (i - 1)) + 1 : (1 << (i - 1));
    std::vector<int> set;
    set.reserve(static_cast<std::size_t>(count));
    int start = j - 1 + (1 << (i - 1));
    for (int c = 0; c < count; ++c)
      set.push_back(mod_one_based(start + c, m));
    sets.push_back(std::move(set));
  }
  return sets;
}

// ---- Validation ------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::string ValidationReport::summary() const {
  if (issues.empty()) return "ok";
  return issues.front().invariant + ": " + issues.front().detail;
}

ValidationReport validate(const Assignment& a) {
  ValidationReport report;
  auto issue = [&report](const std::string& inv, const std::string& detail) {
    report.issues.push_back({inv, detail});
  };

  const NetworkSpec& spec = a.spec();
  const int n = spec.n_nodes;
  const int t = spec.n_transceivers;
  const bool strict = spec.padding == PaddingMode::kStrict;

  if (n < 2) issue("spec", "fewer than 2 nodes");
  if (t < 2) issue("spec", "fewer than 2 transceivers");

  // Channel numbering: distinct and exactly 1..C.
  {
    std::set<int> seen;
    for (const Group& g : a.groups()) {
      if (!seen.insert(g.channel).second)
        issue("channel-unique", "duplicate channel " + std::to_string(g.channel));
      if (g.channel < 1 || g.channel > a.total_channels())
        issue("channel-range", "channel " + std::to_string(g.channel) +
                                   " outside 1.." +
                                   std::to_string(a.total_channels()));
    }
  }

  // Membership: per transceiver index, every node in exactly one group. The
  // grid's two-sided links are walked through the same (node, tx) lens.
  {
    std::vector<int> count(static_cast<std::size_t>(n) * t, 0);
    for (const Group& g : a.groups()) {
      std::set<int> in_group;
      for (std::size_t pos = 0; pos < g.members.size(); ++pos) {
        int node = g.members[pos];
        if (node < 1 || node > n) {
          issue("member-range", "node " + std::to_string(node) +
                                    " outside 1.." + std::to_string(n));
          continue;
        }
        if (!in_group.insert(node).second)
          issue("member-distinct", "node " + std::to_string(node) +
                                       " repeated in group on channel " +
                                       std::to_string(g.channel));
        int tx = g.tx_index;
        if (spec.scheme == Scheme::kGrid && pos == 1) tx = g.tx_index + 1;
        if (tx < 1 || tx > t) {
          issue("tx-range", "transceiver " + std::to_string(tx) +
                                " outside 1.." + std::to_string(t));
          continue;
        }
        ++count[static_cast<std::size_t>(node - 1) * t + (tx - 1)];
      }
    }
    for (int node = 1; node <= n; ++node) {
      for (int tx = 1; tx <= t; ++tx) {
        int c = count[static_cast<std::size_t>(node - 1) * t + (tx - 1)];
        if (c == 0)
          issue("coverage", "node " + std::to_string(node) +
                                " has no group for transceiver " +
                                std::to_string(tx));
        else if (c > 1)
          issue("coverage", "node " + std::to_string(node) +
                                " in two groups for transceiver " +
                                std::to_string(tx));
      }
    }
  }

  // Scheme-specific shape.
  switch (spec.scheme) {
    case Scheme::kHint: {
      const int m = spec.group_base;
      const long long per_index = ipow_checked(m, t - 1);
      if (strict) {
        if (a.total_channels() != t * per_index)
          issue("channel-count",
                "expected " + std::to_string(t * per_index) + " channels, got " +
                    std::to_string(a.total_channels()));
        for (const Group& g : a.groups())
          if (static_cast<int>(g.members.size()) != m)
            issue("group-size", "group on channel " + std::to_string(g.channel) +
                                    " has " + std::to_string(g.members.size()) +
                                    " members, expected " + std::to_string(m));
      }
      // No two nodes of a level-k set may share a Tx-(k+1) group: members of
      // a Tx-(k+1) group must sit in pairwise different level-k sets.
      for (const Group& g : a.groups()) {
        if (g.tx_index < 2) continue;
        const int k = g.tx_index - 1;
        std::set<int> levels;
        for (int node : g.members) {
          if (node < 1 || node > n) continue;
          if (!levels.insert(level_index(node, k, m, t)).second)
            issue("level-separation",
                  "two members of Tx-" + std::to_string(g.tx_index) +
                      " group " + std::to_string(g.number) +
                      " share a level-" + std::to_string(k) + " set");
        }
      }
      break;
    }
    case Scheme::kLog2: {
      const int m = spec.group_base;
      const int l = log2_exact(m);
      if (a.total_channels() != 2 * m)
        issue("channel-count", "expected " + std::to_string(2 * m) +
                                   " channels, got " +
                                   std::to_string(a.total_channels()));
      for (const Group& g : a.groups()) {
        if (static_cast<int>(g.members.size()) != l)
          issue("group-size", "group on channel " + std::to_string(g.channel) +
                                  " has " + std::to_string(g.members.size()) +
                                  " members, expected " + std::to_string(l));
        // The first node of Tx-2 group j is the first node of Tx-1 group j.
        if (g.tx_index == 2 && !g.members.empty() &&
            g.members[0] != (g.number - 1) * l + 1)
          issue("first-node", "Tx-2 group " + std::to_string(g.number) +
                                  " does not start at Tx-1 group " +
                                  std::to_string(g.number) + "'s first node");
      }
      break;
    }
    case Scheme::kRing:
      if (a.total_channels() != n)
        issue("channel-count", "expected " + std::to_string(n) +
                                   " channels, got " +
                                   std::to_string(a.total_channels()));
      for (const Group& g : a.groups())
        if (g.members.size() != 4)
          issue("group-size", "ring groups hold 4 members");
      break;
    case Scheme::kGrid:
      if (a.total_channels() != 2 * n)
        issue("channel-count", "expected " + std::to_string(2 * n) +
                                   " channels, got " +
                                   std::to_string(a.total_channels()));
      for (const Group& g : a.groups())
        if (g.members.size() != 2)
          issue("group-size", "grid groups hold 2 members");
      break;
  }

  // Connectivity of the effective topology (nodes adjacent iff they share a
  // group). Skipped if membership is already broken.
  if (report.ok() && n >= 2) {
    UnionFind uf(n + 1);
    for (const Group& g : a.groups())
      for (std::size_t i = 1; i < g.members.size(); ++i)
        uf.unite(g.members[0], g.members[i]);
    int root = uf.find(1);
    for (int node = 2; node <= n; ++node) {
      if (uf.find(node) != root) {
        issue("connectivity", "node " + std::to_string(node) +
                                  " unreachable from node 1");
        break;
      }
    }
  }

  return report;
}

}  // namespace parklot
