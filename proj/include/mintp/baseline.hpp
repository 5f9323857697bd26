#pragma once

#include <chrono>
#include <vector>

#include "mintp/error.hpp"
#include "mintp/graph.hpp"
#include "mintp/matcher.hpp"
#include "mintp/reconstruct.hpp"
#include "mintp/requirements.hpp"
#include "mintp/transform.hpp"

namespace mintp {

// Extends each requirement to a source-to-sink path on its own: shortest
// prefix from the source, the requirement, shortest suffix to the sink.
// With `dedup`, requirements already toured by an emitted path are skipped.
inline TestPathReport baseline_paths(const DirectedGraph& g, const RequirementSet& rs, bool dedup = true) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  TestPathReport rep;
  rep.lower_bound = lower_bound(rs, g);
  if (rs.empty()) return rep;

  const PathMatcher matcher(rs.requirements, g.vertex_count());
  const Path s{{g.source()}}, t{{g.sink()}};
  std::vector<bool> covered(rs.size(), false);
  for (std::size_t k = 0; k < rs.size(); ++k) {
    if (dedup && covered[k]) continue;
    auto head = join(g, s, rs[k]);
    if (!head) throw input_error("infeasible requirement " + format_requirement(g, rs[k]) + ": nothing can precede it");
    auto full = join(g, *head, t);
    if (!full) throw input_error("infeasible requirement " + format_requirement(g, rs[k]) + ": nothing can follow it");

    TestPath tp{std::move(*full), {}};
    for (auto id : matcher.toured(tp.path.vertices)) {
      tp.toured.push_back(id);
      covered[id] = true;
    }
    check_invariant(covered[k], "baseline path misses its own requirement");
    rep.total_length += tp.path.length();
    rep.paths.push_back(std::move(tp));
  }
  rep.count = rep.paths.size();
  rep.timings.total = clock::now() - t0;
  return rep;
}

}  // namespace mintp
