#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"

#include "parklot/assignment.hpp"
#include "parklot/topology.hpp"

using namespace parklot;

namespace {

std::vector<int> members_of(const Assignment& a, int tx, int number) {
  for (const Group& g : a.groups())
    if (g.tx_index == tx && g.number == number) return g.members;
  FAIL("missing group");
  return {};
}

}  // namespace

TEST_SUITE("assignment") {

TEST_CASE("hint 16/2 grouping") {
  Assignment a = build_hint(16, 2);
  CHECK(a.total_channels() == 8);
  for (int j = 1; j <= 4; ++j) {
    CHECK(members_of(a, 1, j) ==
          std::vector<int>{4 * j - 3, 4 * j - 2, 4 * j - 1, 4 * j});
    CHECK(members_of(a, 2, j) == std::vector<int>{j, j + 4, j + 8, j + 12});
  }
  // Channels 1..C follow (transceiver, group number) order.
  for (int c = 1; c <= 8; ++c) {
    const Group& g = a.group_by_channel(c);
    CHECK(g.tx_index == (c <= 4 ? 1 : 2));
    CHECK(g.number == (c <= 4 ? c : c - 4));
  }
  CHECK(validate(a).ok());
}

TEST_CASE("hint 27/3 grouping") {
  Assignment a = build_hint(27, 3);
  CHECK(a.total_channels() == 27);
  CHECK(members_of(a, 1, 1) == std::vector<int>{1, 2, 3});
  CHECK(members_of(a, 2, 3) == std::vector<int>{3, 6, 9});
  CHECK(members_of(a, 2, 4) == std::vector<int>{10, 13, 16});
  CHECK(members_of(a, 3, 1) == std::vector<int>{1, 10, 19});
  CHECK(validate(a).ok());
}

TEST_CASE("hint 4/2 grouping") {
  Assignment a = build_hint(4, 2);
  CHECK(a.total_channels() == 4);
  CHECK(members_of(a, 2, 1) == std::vector<int>{1, 3});
  CHECK(members_of(a, 2, 2) == std::vector<int>{2, 4});
  CHECK(validate(a).ok());
}

TEST_CASE("hint group sizes and membership are uniform") {
  for (auto [m, t] : {std::pair{2, 2}, {3, 2}, {4, 2}, {2, 3}, {3, 3},
                      {2, 4}}) {
    int n = 1;
    for (int i = 0; i < t; ++i) n *= m;
    Assignment a = build_hint(n, t);
    CHECK(a.total_channels() == t * n / m);
    for (const Group& g : a.groups()) CHECK(g.members.size() == (size_t)m);
    for (int node = 1; node <= n; ++node)
      for (int tx = 1; tx <= t; ++tx)
        CHECK(a.group_of(node, tx).tx_index == tx);
    CHECK(validate(a).ok());
  }
}

TEST_CASE("hint strict padding rejects non-powers") {
  CHECK_THROWS_AS(build_hint(10, 2), DivisibilityError);
  CHECK_THROWS_AS(build_hint(9, 3), DivisibilityError);
  CHECK_THROWS_WITH(build_hint(10, 2),
                    doctest::Contains("padding=virtual"));
}

TEST_CASE("hint virtual padding deletes phantom nodes") {
  Assignment a = build_hint(10, 2, PaddingMode::kVirtual);
  CHECK(a.spec().group_base == 4);
  CHECK(a.n_nodes() == 10);
  // Ideal 16-node layout minus nodes 11..16; the emptied Tx-1 group 4 is
  // gone and channels are renumbered densely.
  CHECK(a.total_channels() == 7);
  CHECK(members_of(a, 1, 3) == std::vector<int>{9, 10});
  CHECK(members_of(a, 2, 1) == std::vector<int>{1, 5, 9});
  CHECK(members_of(a, 2, 3) == std::vector<int>{3, 7});
  std::set<int> channels;
  for (const Group& g : a.groups()) channels.insert(g.channel);
  CHECK(*channels.begin() == 1);
  CHECK(*channels.rbegin() == 7);
  CHECK(validate(a).ok());
}

TEST_CASE("level sets and k_min") {
  CHECK(level_index(10, 2, 3, 3) == 2);
  CHECK(level_index(27, 3, 3, 3) == 1);
  CHECK(level_index(1, 1, 4, 2) == 1);
  CHECK(level_index(11, 1, 4, 2) == 3);
  CHECK(k_min(25, 14, 3, 3) == 3);
  CHECK(k_min(16, 14, 3, 3) == 2);
  CHECK(k_min(13, 14, 3, 3) == 1);
  CHECK(k_min(7, 7, 3, 3) == 0);
  // k_min is symmetric and positive off the diagonal.
  for (int x = 1; x <= 27; ++x)
    for (int y = x + 1; y <= 27; ++y) {
      CHECK(k_min(x, y, 3, 3) == k_min(y, x, 3, 3));
      CHECK(k_min(x, y, 3, 3) >= 1);
    }
}

TEST_CASE("log2 base 8 grouping") {
  Assignment a = build_log2(8);
  CHECK(a.n_nodes() == 24);
  CHECK(a.total_channels() == 16);
  for (int k = 1; k <= 8; ++k)
    CHECK(members_of(a, 1, k) ==
          std::vector<int>{3 * k - 2, 3 * k - 1, 3 * k});
  const std::vector<std::vector<int>> tx2 = {
      {1, 5, 12},  {4, 8, 15},  {7, 11, 18}, {10, 14, 21},
      {13, 17, 24}, {16, 20, 3}, {19, 23, 6}, {22, 2, 9}};
  for (int j = 1; j <= 8; ++j) CHECK(members_of(a, 2, j) == tx2[j - 1]);
  CHECK(validate(a).ok());
}

TEST_CASE("log2 base 4 grouping") {
  Assignment a = build_log2(4);
  CHECK(a.n_nodes() == 8);
  CHECK(a.total_channels() == 8);
  CHECK(members_of(a, 2, 1) == std::vector<int>{1, 4});
  CHECK(members_of(a, 2, 2) == std::vector<int>{3, 6});
  CHECK(members_of(a, 2, 3) == std::vector<int>{5, 8});
  CHECK(members_of(a, 2, 4) == std::vector<int>{7, 2});
  CHECK(validate(a).ok());
  CHECK(effective_topology(a).connected());
}

TEST_CASE("log2 base 2 is structurally degenerate") {
  Assignment a = build_log2(2);
  CHECK(a.n_nodes() == 2);
  // Every group is a singleton, so no channel joins the two nodes.
  for (const Group& g : a.groups()) CHECK(g.members.size() == 1);
  CHECK(members_of(a, 2, 1) == std::vector<int>{1});
  CHECK(members_of(a, 2, 2) == std::vector<int>{2});
  EffectiveTopology t = effective_topology(a);
  CHECK(t.edges.empty());
  CHECK_FALSE(t.connected());
  ValidationReport rep = validate(a);
  CHECK_FALSE(rep.ok());
  CHECK(rep.summary().find("connect") != std::string::npos);
}

TEST_CASE("log2 rejects non-powers") {
  CHECK_THROWS_AS(build_log2(6), InvalidSpec);
  CHECK_THROWS_AS(build_log2(1), InvalidSpec);
  CHECK_THROWS_AS(build_log2(0), InvalidSpec);
}

TEST_CASE("ring grouping slides windows by the transceiver index") {
  Assignment a = build_ring(16);
  CHECK(a.total_channels() == 16);
  CHECK(members_of(a, 1, 1) == std::vector<int>{1, 2, 3, 4});
  CHECK(members_of(a, 1, 4) == std::vector<int>{13, 14, 15, 16});
  CHECK(members_of(a, 2, 1) == std::vector<int>{3, 4, 5, 6});
  CHECK(members_of(a, 2, 4) == std::vector<int>{15, 16, 1, 2});
  CHECK(members_of(a, 3, 1) == std::vector<int>{4, 5, 6, 7});
  CHECK(members_of(a, 4, 1) == std::vector<int>{5, 6, 7, 8});
  CHECK(validate(a).ok());
  CHECK_THROWS_AS(build_ring(10), DivisibilityError);
  CHECK_THROWS_AS(build_ring(0), DivisibilityError);
}

TEST_CASE("grid links and transceiver mapping") {
  Assignment a = build_grid(9);
  CHECK(a.total_channels() == 18);
  // Horizontal channel v = eastward link of node v; vertical channel
  // 9 + v = southward link of node v.
  CHECK(a.group_by_channel(1).members == std::vector<int>{1, 2});
  CHECK(a.group_by_channel(3).members == std::vector<int>{3, 1});
  CHECK(a.group_by_channel(10).members == std::vector<int>{1, 4});
  CHECK(a.group_by_channel(16).members == std::vector<int>{7, 1});
  CHECK(a.tx_on_channel(1, 1) == 1);   // east
  CHECK(a.tx_on_channel(2, 1) == 2);   // west end of the same link
  CHECK(a.tx_on_channel(3, 3) == 1);
  CHECK(a.tx_on_channel(1, 3) == 2);
  CHECK(a.tx_on_channel(1, 10) == 3);  // south
  CHECK(a.tx_on_channel(4, 10) == 4);  // north end
  CHECK(validate(a).ok());
  EffectiveTopology t = effective_topology(a);
  CHECK(t.edges.size() == 18);
  for (int v = 1; v <= 9; ++v) CHECK(t.adjacency[v].size() == 4);
  CHECK_THROWS_AS(build_grid(8), InvalidSpec);
  CHECK_THROWS_AS(build_grid(4), InvalidSpec);  // side 2 < 3
}

TEST_CASE("mod convention maps multiples to the modulus") {
  CHECK(mod_one_based(8, 8) == 8);
  CHECK(mod_one_based(9, 8) == 1);
  CHECK(mod_one_based(0, 8) == 8);
  CHECK(mod_one_based(17, 8) == 1);
  CHECK(mod_one_based(-1, 8) == 7);
}

TEST_CASE("cover sets partition the group numbers") {
  auto u1 = cover_sets(1, 8);
  REQUIRE(u1.size() == 3);
  CHECK(u1[0] == std::vector<int>{1});
  CHECK(u1[1] == std::vector<int>{2, 3});
  CHECK(u1[2] == std::vector<int>{4, 5, 6, 7, 8});
  auto u7 = cover_sets(7, 8);
  CHECK(u7[0] == std::vector<int>{7});
  CHECK(u7[1] == std::vector<int>{8, 1});
  CHECK(u7[2] == std::vector<int>{2, 3, 4, 5, 6});
  auto u4 = cover_sets(4, 8);
  CHECK(u4[0] == std::vector<int>{4});
  CHECK(u4[1] == std::vector<int>{5, 6});
  CHECK(u4[2] == std::vector<int>{7, 8, 1, 2, 3});
  for (int m : {4, 8, 16, 32}) {
    for (int j = 1; j <= m; ++j) {
      auto sets = cover_sets(j, m);
      std::set<int> seen;
      std::size_t total = 0;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        std::size_t expect = std::size_t{1} << i;
        if (i + 1 == sets.size()) ++expect;
        CHECK(sets[i].size() == expect);
        for (int g : sets[i]) seen.insert(g);
        total += sets[i].size();
      }
      CHECK(total == (std::size_t)m);
      CHECK(seen.size() == (std::size_t)m);
    }
  }
}

TEST_CASE("validate flags seeded corruption") {
  Assignment a = build_hint(16, 2);
  std::vector<Group> gs = a.groups();

  SUBCASE("node in two groups for one transceiver") {
    gs[1].members[0] = 1;  // node 1 now sits in Tx-1 groups 1 and 2
    ValidationReport rep = validate(Assignment(a.spec(), gs));
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& issue : rep.issues)
      if (issue.detail.find("in two groups for transceiver 1") !=
          std::string::npos)
        found = true;
    CHECK(found);
  }

  SUBCASE("duplicate channel") {
    gs[3].channel = 1;
    ValidationReport rep = validate(Assignment(a.spec(), gs));
    CHECK_FALSE(rep.ok());
    bool found = false;
    for (const auto& issue : rep.issues)
      if (issue.detail.find("duplicate channel") != std::string::npos)
        found = true;
    CHECK(found);
  }

  SUBCASE("member out of range") {
    gs[0].members[2] = 99;
    CHECK_FALSE(validate(Assignment(a.spec(), gs)).ok());
  }

  SUBCASE("wrong group size for hint") {
    gs[0].members.pop_back();
    CHECK_FALSE(validate(Assignment(a.spec(), gs)).ok());
  }
}

TEST_CASE("assignment equality and index") {
  Assignment a = build_hint(16, 2);
  Assignment b = build_hint(16, 2);
  CHECK(a == b);
  CHECK(a.channel_of(6, 2) == 6);  // Tx-2 group 2 = {2,6,10,14} on channel 6
  CHECK(a.group_index(1, 1) == a.group_index(2, 1));
  CHECK(a.group_index(1, 1) != a.group_index(5, 1));
  CHECK_THROWS_AS(a.group_index(17, 1), InvalidSpec);
  CHECK_THROWS_AS(a.group_index(1, 3), InvalidSpec);
  CHECK_THROWS_AS(a.tx_on_channel(2, 5), InvalidSpec);  // 2 not in {1,5,9,13}
}

TEST_CASE("ipow_checked guards the node range") {
  CHECK(ipow_checked(3, 3) == 27);
  CHECK(ipow_checked(2, 10) == 1024);
  CHECK_THROWS_AS(ipow_checked(10, 10), InvalidSpec);
}

}  // TEST_SUITE
