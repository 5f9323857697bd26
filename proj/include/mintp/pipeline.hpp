#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "mintp/condense.hpp"
#include "mintp/error.hpp"
#include "mintp/graph.hpp"
#include "mintp/matcher.hpp"
#include "mintp/minflow.hpp"
#include "mintp/reconstruct.hpp"
#include "mintp/requirements.hpp"
#include "mintp/transform.hpp"

namespace mintp {

struct MinimizeOptions {
  TransformOptions transform;
};

// The report plus every intermediate structure, for dumps and tests.
struct MinimizeResult {
  RequirementSet requirements;
  CategoryCounts counts;
  TransformGraph transform;
  CondensedGraph condensed;
  FlowNetwork network;
  std::vector<NodePath> flow_paths;   // over condensed vertices
  std::vector<NodePath> node_paths;   // over transform nodes, after clean-up
  TestPathReport report;
  std::vector<std::string> warnings;
};

// Every requirement toured, every path a source-to-sink walk, and the count
// sitting between the lower bound and the flow value.
inline void check_report(const TestPathReport& report, const RequirementSet& rs, const DirectedGraph& g) {
  std::vector<bool> covered(rs.size(), false);
  std::size_t total = 0;
  for (const auto& tp : report.paths) {
    check_invariant(!tp.path.empty() && tp.path.front() == g.source() && tp.path.back() == g.sink(),
                    "test path is not source-to-sink");
    check_invariant(g.is_walk(tp.path.vertices), "test path is not a walk");
    for (auto id : tp.toured) covered[id] = true;
    total += tp.path.length();
  }
  for (std::size_t k = 0; k < rs.size(); ++k)
    check_invariant(covered[k], "requirement " + format_requirement(g, rs[k]) + " is not toured");
  check_invariant(report.count == report.paths.size(), "path count mismatch");
  check_invariant(report.total_length == total, "total length mismatch");
  check_invariant(report.lower_bound <= report.count, "fewer paths than the lower bound");
  check_invariant(static_cast<Flow>(report.count) == report.f_min, "path count differs from the minimum flow");
}

inline MinimizeResult minimize_test_paths(const DirectedGraph& g, CoverageCriterion criterion,
                                          const MinimizeOptions& opts = {}) {
  using clock = std::chrono::steady_clock;
  MinimizeResult r;
  auto& rep = r.report;
  const auto t0 = clock::now();
  auto lap = [last = t0]() mutable {
    const auto now = clock::now();
    const StageTimings::ms d = now - last;
    last = now;
    return d;
  };

  r.requirements = enumerate_requirements(g, criterion);
  r.counts = categorize(r.requirements, g).counts;
  rep.lower_bound = lower_bound(r.counts);
  rep.timings.requirements = lap();
  if (r.requirements.empty()) {
    rep.timings.total = clock::now() - t0;
    return r;
  }

  r.transform = build_transform_graph(g, r.requirements, opts.transform);
  rep.timings.transform = lap();

  r.condensed = condense(r.transform);
  rep.timings.condense = lap();

  r.network = build_flow_network(r.condensed);
  if (const auto f0 = initialize_feasible_flow(r.network); f0 > r.network.capacity())
    r.warnings.push_back("initial flow " + std::to_string(f0) + " exceeds the arc capacity " +
                         std::to_string(r.network.capacity()));
  check_feasible(r.network);
  decreasing_path_minimize(r.network);
  check_feasible(r.network);
  rep.f_min = r.network.value();
  rep.timings.min_flow = lap();

  r.flow_paths = extract_flow_paths(r.network);
  for (const auto& fp : r.flow_paths) r.node_paths.push_back(repair_connectivity(expand_cycles(fp, r.condensed), r.transform));
  auto lengths = [](const std::vector<NodePath>& ps) {
    std::vector<std::size_t> ls;
    for (const auto& p : ps) ls.push_back(p.size());
    return ls;
  };
  const auto before = lengths(r.node_paths);
  r.node_paths = remove_redundancy(std::move(r.node_paths));
  const auto after = lengths(r.node_paths);
  for (std::size_t i = 0; i < before.size(); ++i) check_invariant(after[i] <= before[i], "redundancy removal lengthened a path");
  const PathMatcher matcher(r.requirements.requirements, g.vertex_count());
  for (const auto& np : r.node_paths) rep.paths.push_back(splice_to_g1(np, r.requirements, g, r.transform, matcher));
  rep.count = rep.paths.size();
  for (const auto& tp : rep.paths) rep.total_length += tp.path.length();
  rep.timings.reconstruct = lap();
  rep.timings.total = clock::now() - t0;

  check_report(rep, r.requirements, g);
  return r;
}

}  // namespace mintp
