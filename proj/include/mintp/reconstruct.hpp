#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <queue>
#include <span>
#include <vector>

#include "mintp/condense.hpp"
#include "mintp/error.hpp"
#include "mintp/graph.hpp"
#include "mintp/matcher.hpp"
#include "mintp/minflow.hpp"
#include "mintp/requirements.hpp"
#include "mintp/transform.hpp"

namespace mintp {

struct TestPath {
  Path path;                         // source-to-sink walk in the input graph
  std::vector<std::size_t> toured;   // requirement indices occurring in it
};

struct StageTimings {
  using ms = std::chrono::duration<double, std::milli>;
  ms requirements{0};  // enumeration
  ms transform{0};
  ms condense{0};
  ms min_flow{0};      // feasible flow + decreasing paths
  ms reconstruct{0};
  ms total{0};
};

struct TestPathReport {
  std::vector<TestPath> paths;
  std::size_t count = 0;
  std::size_t total_length = 0;
  std::size_t lower_bound = 0;
  Flow f_min = 0;
  StageTimings timings;
};

using NodePath = std::vector<NodeId>;

// Decomposes the flow into value() unit paths over condensed-graph vertices.
// Each path follows positive-flow arcs found by BFS and consumes one unit.
inline std::vector<NodePath> extract_flow_paths(const FlowNetwork& net) {
  const auto total = net.value();
  std::vector<Flow> flow;
  flow.reserve(net.arcs().size());
  for (const auto& a : net.arcs()) flow.push_back(a.flow);

  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<NodePath> paths;
  for (Flow i = 0; i < total; ++i) {
    std::vector<std::uint32_t> via(net.node_count(), kNone);
    std::vector<bool> seen(net.node_count(), false);
    std::queue<std::uint32_t> queue;
    seen[FlowNetwork::kSource] = true;
    queue.push(FlowNetwork::kSource);
    while (!queue.empty() && !seen[FlowNetwork::kSink]) {
      const auto u = queue.front();
      queue.pop();
      for (auto a : net.out_arcs(u)) {
        const auto w = net.arcs()[a].to;
        if (seen[w] || flow[a] <= 0) continue;
        seen[w] = true;
        via[w] = a;
        queue.push(w);
      }
    }
    check_invariant(seen[FlowNetwork::kSink], "flow ran out before all unit paths were extracted");

    NodePath path;
    for (auto x = FlowNetwork::kSink;;) {
      const NodeId v = net.vertex_of(x);
      if (path.empty() || path.back() != v) path.push_back(v);
      if (x == FlowNetwork::kSource) break;
      --flow[via[x]];
      x = net.arcs()[via[x]].from;
    }
    std::reverse(path.begin(), path.end());
    paths.push_back(std::move(path));
  }
  for (auto f : flow) check_invariant(f == 0, "flow left over after path extraction");
  return paths;
}

namespace detail {

// Member of `rec` that the predecessor (or the collapsed vertex containing it
// at collapse time) had an edge into.
inline std::optional<NodeId> entry_member(const CondensedGraph& cg, const CycleRecord& rec, NodeId pred) {
  for (NodeId x = pred; x != CondensedGraph::kNone; x = cg.parent(x))
    if (auto m = rec.entry_for(x)) return m;
  return std::nullopt;
}

// Member of `rec` with an edge towards `succ` (or into something `succ` has
// since absorbed).
inline std::optional<NodeId> exit_member(const CondensedGraph& cg, const CycleRecord& rec, NodeId succ) {
  for (const auto& [w, m] : rec.exit_map)
    for (NodeId x = w; x != CondensedGraph::kNone; x = cg.parent(x))
      if (x == succ) return m;
  return std::nullopt;
}

// Emits a walk through cycle vertex `c` entered from `pred` and left towards
// `succ`. A full walk visits every member once, starting at the entry member,
// then carries on round to the exit member; a partial one goes straight from
// entry to exit.
inline void walk_cycle(const CondensedGraph& cg, NodeId c, NodeId pred, NodeId succ, bool full, NodePath& out) {
  const auto& rec = cg.record(c);
  const auto& ms = rec.members;
  const auto k = ms.size();
  auto index = [&](std::optional<NodeId> m, std::size_t fallback) {
    return m ? static_cast<std::size_t>(std::find(ms.begin(), ms.end(), *m) - ms.begin()) : fallback;
  };
  const auto e = index(entry_member(cg, rec, pred), 0);
  const auto x = index(exit_member(cg, rec, succ), full ? (e + k - 1) % k : e);

  std::vector<std::size_t> seq;
  if (full)
    for (std::size_t i = 0; i < k; ++i) seq.push_back((e + i) % k);
  if (!full || x != (e + k - 1) % k)
    for (std::size_t i = e;; i = (i + 1) % k) {
      seq.push_back(i);
      if (i == x) break;
    }

  std::vector<bool> toured(k, false);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const NodeId m = ms[seq[i]];
    if (!cg.is_cycle_vertex(m)) {
      out.push_back(m);
    } else {
      const NodeId next = i + 1 < seq.size() ? ms[seq[i + 1]] : succ;
      walk_cycle(cg, m, out.back(), next, full && !toured[seq[i]], out);
    }
    toured[seq[i]] = true;
  }
}

}  // namespace detail

// Replaces cycle vertices by walks through their (possibly nested) cycles.
inline NodePath expand_cycles(const NodePath& g3_path, const CondensedGraph& cg) {
  NodePath out;
  for (std::size_t i = 0; i < g3_path.size(); ++i) {
    const NodeId v = g3_path[i];
    if (!cg.is_cycle_vertex(v)) {
      out.push_back(v);
    } else {
      check_invariant(!out.empty() && i + 1 < g3_path.size(), "cycle vertex at the end of a path");
      detail::walk_cycle(cg, v, out.back(), g3_path[i + 1], true, out);
    }
  }
  return out;
}

// Makes every consecutive pair adjacent in the transform graph by inserting a
// shortest route where an edge is missing; drops immediate repeats.
inline NodePath repair_connectivity(const NodePath& path, const TransformGraph& tg) {
  NodePath out;
  for (NodeId v : path) {
    if (out.empty()) {
      out.push_back(v);
      continue;
    }
    const NodeId u = out.back();
    if (u == v) continue;
    if (!tg.has_edge(u, v)) {
      const auto route = tg.shortest_route(u, v);
      check_invariant(!route.empty(), "no transform-graph route between " + tg.label(u) + " and " + tg.label(v));
      out.insert(out.end(), route.begin() + 1, route.end() - 1);
    }
    out.push_back(v);
  }
  return out;
}

namespace detail {

// True when `seq` occurs in an earlier path, or earlier in path `pi` ending at
// or before index `limit`.
inline bool occurs_before(const std::vector<NodePath>& paths, std::span<const NodeId> seq, std::size_t pi,
                          std::size_t limit) {
  for (std::size_t p = 0; p < pi; ++p)
    if (std::search(paths[p].begin(), paths[p].end(), seq.begin(), seq.end()) != paths[p].end()) return true;
  if (limit + 1 < seq.size()) return false;
  const auto& own = paths[pi];
  const auto end = own.begin() + static_cast<std::ptrdiff_t>(limit + 1);
  return std::search(own.begin(), end, seq.begin(), seq.end()) != end;
}

}  // namespace detail

// Drops repeated cycles. Scanning paths in order and positions left to right,
// a cycle x..x is cut back to x when the same cycle, or its interior, already
// occurred earlier in the path set. A cut is skipped if it would remove the
// last occurrence of some vertex.
inline std::vector<NodePath> remove_redundancy(std::vector<NodePath> paths) {
  NodeId top = 0;
  for (const auto& p : paths)
    for (NodeId v : p) top = std::max(top, v);
  std::vector<std::size_t> count(static_cast<std::size_t>(top) + 1, 0);
  for (const auto& p : paths)
    for (NodeId v : p) ++count[v];

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
      auto& path = paths[pi];
      for (std::size_t i = 0; i < path.size(); ++i) {
        for (;;) {
          const auto close = std::find(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.end(), path[i]);
          if (close == path.end()) break;
          const auto j = static_cast<std::size_t>(close - path.begin());
          const std::span<const NodeId> cycle(path.data() + i, j - i + 1);
          const std::span<const NodeId> interior(path.data() + i + 1, j - i - 1);

          bool redundant = detail::occurs_before(paths, cycle, pi, i);
          if (!redundant && !interior.empty()) redundant = detail::occurs_before(paths, interior, pi, i);
          if (!redundant) break;

          // path[j] duplicates path[i], so only the interior can lose coverage.
          std::vector<std::size_t> removed(count.size(), 0);
          bool keeps_coverage = true;
          for (NodeId v : interior)
            if (++removed[v] >= count[v]) keeps_coverage = false;
          if (!keeps_coverage) break;

          for (NodeId v : interior) --count[v];
          --count[path[j]];
          path.erase(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, close + 1);
          changed = true;
        }
      }
    }
  }
  return paths;
}

// Folds join over the requirement paths a transform-graph walk visits.
inline TestPath splice_to_g1(const NodePath& g2_path, const RequirementSet& rs, const DirectedGraph& g,
                             const TransformGraph& tg, const PathMatcher& matcher) {
  TestPath out;
  out.path = Path{{g.source()}};
  for (NodeId v : g2_path) {
    auto next = join(g, out.path, tg.path_of(v, rs, g));
    check_invariant(next.has_value(), "cannot splice " + tg.label(v) + " onto the test path");
    out.path = std::move(*next);
  }
  if (out.path.back() != g.sink()) out.path = join(g, out.path, Path{{g.sink()}}).value();
  check_invariant(out.path.front() == g.source() && out.path.back() == g.sink(), "test path is not source-to-sink");
  check_invariant(g.is_walk(out.path.vertices), "test path is not a walk in the input graph");
  for (auto id : matcher.toured(out.path.vertices)) out.toured.push_back(id);
  return out;
}

}  // namespace mintp
