#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

using namespace mintp;
using namespace mintp::testing;

namespace {

struct Stages {
  DirectedGraph g;
  RequirementSet rs;
  TransformGraph tg;
  CondensedGraph cg;
  FlowNetwork net;
};

Stages run_to_flow(const std::string& text) {
  Stages st{graph(text), {}, {}, {}, {}};
  st.rs = enumerate_prime_paths(st.g);
  st.tg = build_transform_graph(st.g, st.rs);
  st.cg = condense(st.tg);
  st.net = build_flow_network(st.cg);
  initialize_feasible_flow(st.net);
  decreasing_path_minimize(st.net);
  return st;
}

}  // namespace

TEST(Extract, RunningExample) {
  const auto st = run_to_flow(kRunningExample);
  const auto paths = extract_flow_paths(st.net);
  ASSERT_EQ(paths.size(), 3u);
  const auto s12t = TransformGraph::node_of(3);  // the source-to-sink prime path
  ASSERT_EQ(st.g.format(st.rs[3]), "s 1 2 t");
  EXPECT_NE(std::find(paths.begin(), paths.end(), NodePath{0, s12t, st.tg.sink()}), paths.end());
  for (const auto& p : paths) {
    EXPECT_EQ(p.front(), st.cg.source());
    EXPECT_EQ(p.back(), st.cg.sink());
  }
}

TEST(Extract, ConservesPerEdgeFlow) {
  for (const char* text : {kRunningExample, kSelfLoop, kDiamond}) {
    const auto st = run_to_flow(text);
    std::map<std::pair<NodeId, NodeId>, Flow> used, flow;
    for (const auto& p : extract_flow_paths(st.net))
      for (std::size_t i = 0; i + 1 < p.size(); ++i) ++used[{p[i], p[i + 1]}];
    for (const auto& a : st.net.arcs()) {
      const auto u = st.net.vertex_of(a.from), w = st.net.vertex_of(a.to);
      if (u != w && a.flow > 0) flow[{u, w}] += a.flow;
    }
    EXPECT_EQ(used, flow);
  }
}

TEST(Extract, Chain) {
  CondensedGraph cg(3, {{0, 1}, {1, 2}}, 0, 2);
  auto net = build_flow_network(cg);
  initialize_feasible_flow(net);
  decreasing_path_minimize(net);
  EXPECT_EQ(extract_flow_paths(net), (std::vector<NodePath>{{0, 1, 2}}));
}

TEST(Expand, NoCycleVerticesUnchanged) {
  const auto st = run_to_flow(kRunningExample);
  const NodePath p{0, 4, st.tg.sink()};
  EXPECT_EQ(expand_cycles(p, st.cg), p);
}

TEST(Expand, EveryMemberVisitedAndEdgesExist) {
  const auto st = run_to_flow(kRunningExample);
  for (const auto& fp : extract_flow_paths(st.net)) {
    const auto expanded = expand_cycles(fp, st.cg);
    for (NodeId v : fp) {
      if (!st.cg.is_cycle_vertex(v)) continue;
      // every transform node inside v occurs in the expansion
      for (NodeId b = 0; b < st.cg.base_count(); ++b) {
        NodeId x = b;
        while (x != CondensedGraph::kNone && x != v) x = st.cg.parent(x);
        if (x == v) {
          EXPECT_NE(std::find(expanded.begin(), expanded.end(), b), expanded.end());
        }
      }
    }
    const auto repaired = repair_connectivity(expanded, st.tg);
    for (std::size_t i = 0; i + 1 < repaired.size(); ++i) EXPECT_TRUE(st.tg.has_edge(repaired[i], repaired[i + 1]));
  }
}

TEST(Expand, EntersNestedCycleWhereThePredecessorConnects) {
  // 0 = s, 1 = a, 2 = b, 3 = c, 4 = t; s only reaches b.
  CondensedGraph cg(5, {{0, 2}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 4}}, 0, 4);
  cg = condense(cg);
  const auto top = cg.topological_order()[1];
  const auto out = expand_cycles({0, top, 4}, cg);
  EXPECT_EQ(out[1], 2u);
  EXPECT_EQ(out.back(), 4u);
  EXPECT_EQ(out[out.size() - 2], 3u);  // leaves through the member wired to t
}

TEST(Repair, InsertsShortestRoute) {
  const TransformGraph tg(3, {{0, 1, {}}, {1, 2, {}}, {2, 3, {}}, {3, 4, {}}});
  EXPECT_EQ(repair_connectivity({0, 1, 3, 4}, tg), (NodePath{0, 1, 2, 3, 4}));
  EXPECT_EQ(repair_connectivity({0, 1, 1, 2, 3, 4}, tg), (NodePath{0, 1, 2, 3, 4}));
  EXPECT_THROW(repair_connectivity({0, 3, 1}, tg), invariant_error);
}

TEST(Redundancy, RepeatedCycleKeptOnce) {
  // 9 8 9 three times in one path
  const std::vector<NodePath> in{{0, 9, 8, 9, 8, 9, 8, 9, 2, 12}};
  EXPECT_EQ(remove_redundancy(in), (std::vector<NodePath>{{0, 9, 8, 9, 2, 12}}));
}

TEST(Redundancy, DistinctCyclesUnchanged) {
  const std::vector<NodePath> in{{0, 1, 2, 1, 12}, {0, 3, 4, 3, 12}};
  EXPECT_EQ(remove_redundancy(in), in);
}

TEST(Redundancy, FirstOccurrenceAcrossPathsWins) {
  const std::vector<NodePath> in{{0, 5, 6, 5, 12}, {0, 5, 6, 5, 7, 12}};
  EXPECT_EQ(remove_redundancy(in), (std::vector<NodePath>{{0, 5, 6, 5, 12}, {0, 5, 7, 12}}));
}

TEST(Redundancy, InteriorSeenBefore) {
  // interior 9 6 of the cycle 7 9 6 7 already occurred
  const std::vector<NodePath> in{{0, 9, 6, 12}, {0, 7, 9, 6, 7, 2, 12}};
  EXPECT_EQ(remove_redundancy(in), (std::vector<NodePath>{{0, 9, 6, 12}, {0, 7, 2, 12}}));
}

TEST(Redundancy, NeverDropsANodeOrLengthensAPath) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    GenSpec spec{6 + seed % 6, 0.2, seed, 80, std::nullopt};
    const auto st = run_to_flow(serialize(generate_random_graph(spec)));
    std::vector<NodePath> before;
    for (const auto& fp : extract_flow_paths(st.net))
      before.push_back(repair_connectivity(expand_cycles(fp, st.cg), st.tg));
    const auto after = remove_redundancy(before);
    ASSERT_EQ(after.size(), before.size());
    std::set<NodeId> nodes_before, nodes_after;
    for (std::size_t i = 0; i < before.size(); ++i) {
      EXPECT_LE(after[i].size(), before[i].size());
      nodes_before.insert(before[i].begin(), before[i].end());
      nodes_after.insert(after[i].begin(), after[i].end());
      for (std::size_t k = 0; k + 1 < after[i].size(); ++k) EXPECT_TRUE(st.tg.has_edge(after[i][k], after[i][k + 1]));
    }
    EXPECT_EQ(nodes_after, nodes_before) << "seed " << seed;
  }
}

TEST(Splice, RunningExamplePaths) {
  const auto st = run_to_flow(kRunningExample);
  const PathMatcher m(st.rs.requirements, st.g.vertex_count());
  const auto direct = splice_to_g1({0, TransformGraph::node_of(3), st.tg.sink()}, st.rs, st.g, st.tg, m);
  EXPECT_EQ(st.g.format(direct.path), "s 1 2 t");
  EXPECT_EQ(direct.toured, (std::vector<std::size_t>{3}));

  // s, [s 1 3 4 5], [4 5 4], [5 4 1 2 t], t
  auto node = [&](const char* names) {
    for (std::size_t k = 0; k < st.rs.size(); ++k)
      if (st.g.format(st.rs[k]) == names) return TransformGraph::node_of(k);
    return NodeId{0};
  };
  const auto tp = splice_to_g1({0, node("s 1 3 4 5"), node("4 5 4"), node("5 4 1 2 t"), st.tg.sink()}, st.rs, st.g,
                               st.tg, m);
  EXPECT_EQ(st.g.format(tp.path), "s 1 3 4 5 4 1 2 t");
}
