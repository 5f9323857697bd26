#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mintp/error.hpp"
#include "mintp/graph.hpp"

namespace mintp {

enum class CoverageCriterion { PrimePath, EdgePair, Edge, Node, SimpleRoundTrip, CompleteRoundTrip };

inline constexpr std::array<std::pair<CoverageCriterion, std::string_view>, 6> kCriterionNames{{
    {CoverageCriterion::PrimePath, "prime-path"},
    {CoverageCriterion::EdgePair, "edge-pair"},
    {CoverageCriterion::Edge, "edge"},
    {CoverageCriterion::Node, "node"},
    {CoverageCriterion::SimpleRoundTrip, "simple-round-trip"},
    {CoverageCriterion::CompleteRoundTrip, "complete-round-trip"},
}};

inline std::string_view to_string(CoverageCriterion c) {
  for (const auto& [k, name] : kCriterionNames)
    if (k == c) return name;
  return "?";
}

inline CoverageCriterion parse_criterion(std::string_view name) {
  for (const auto& [k, n] : kCriterionNames)
    if (n == name) return k;
  throw input_error("unknown coverage criterion '" + std::string(name) + "'");
}

// S: starts at the source. T: ends at the sink. C: closed cycle. P: anything else.
// A requirement running from source to sink is tagged T; see CategoryCounts.
enum class RequirementCategory { TypeS, TypeT, TypeC, TypeP };

inline std::string_view to_string(RequirementCategory c) {
  switch (c) {
    case RequirementCategory::TypeS: return "S";
    case RequirementCategory::TypeT: return "T";
    case RequirementCategory::TypeC: return "C";
    case RequirementCategory::TypeP: return "P";
  }
  return "?";
}

// Source-to-sink requirements are counted under both type_s and type_t, so the
// four counts can sum to more than the number of requirements.
struct CategoryCounts {
  std::size_t type_s = 0;
  std::size_t type_t = 0;
  std::size_t type_c = 0;
  std::size_t type_p = 0;

  friend bool operator==(const CategoryCounts&, const CategoryCounts&) = default;
};

struct RequirementSet {
  CoverageCriterion criterion = CoverageCriterion::PrimePath;
  std::vector<Path> requirements;
  std::vector<RequirementCategory> categories;

  std::size_t size() const { return requirements.size(); }
  bool empty() const { return requirements.empty(); }
  const Path& operator[](std::size_t i) const { return requirements[i]; }
};

inline RequirementCategory category_of(const Path& p, const DirectedGraph& g) {
  if (p.back() == g.sink()) return RequirementCategory::TypeT;
  if (p.front() == g.source()) return RequirementCategory::TypeS;
  if (p.is_cycle()) return RequirementCategory::TypeC;
  return RequirementCategory::TypeP;
}

struct Categorization {
  std::vector<RequirementCategory> tags;
  CategoryCounts counts;
};

inline Categorization categorize(const std::vector<Path>& reqs, const DirectedGraph& g) {
  Categorization out;
  out.tags.reserve(reqs.size());
  for (const auto& p : reqs) {
    const auto tag = category_of(p, g);
    out.tags.push_back(tag);
    if (p.front() == g.source()) ++out.counts.type_s;
    switch (tag) {
      case RequirementCategory::TypeT: ++out.counts.type_t; break;
      case RequirementCategory::TypeC: ++out.counts.type_c; break;
      case RequirementCategory::TypeP: ++out.counts.type_p; break;
      case RequirementCategory::TypeS: break;
    }
  }
  return out;
}

inline Categorization categorize(const RequirementSet& rs, const DirectedGraph& g) {
  return categorize(rs.requirements, g);
}

// No test path can tour two requirements that start at the source, or two that
// end at the sink, so the larger of those counts bounds the answer from below.
inline std::size_t lower_bound(const CategoryCounts& c) { return std::max(c.type_s, c.type_t); }

inline std::size_t lower_bound(const RequirementSet& rs, const DirectedGraph& g) {
  return lower_bound(categorize(rs, g).counts);
}

// Maximal simple paths. Every edge seeds a path that is grown at its tail
// until it closes a cycle or cannot grow without revisiting a vertex; the
// survivors are filtered largest-first against sub-path containment.
// Output: descending vertex count, ties in generation order.
inline std::vector<Path> prime_paths(const DirectedGraph& g) {
  std::deque<std::vector<Vertex>> queue;
  for (const auto& e : g.edges()) queue.push_back({e.from, e.to});

  std::vector<Path> candidates;
  while (!queue.empty()) {
    auto p = std::move(queue.front());
    queue.pop_front();
    if (p.front() == p.back()) {
      candidates.push_back({std::move(p)});
      continue;
    }
    bool extended = false;
    for (Vertex w : g.successors(p.back())) {
      if (w != p.front() && std::find(p.begin(), p.end(), w) != p.end()) continue;
      auto q = p;
      q.push_back(w);
      queue.push_back(std::move(q));
      extended = true;
    }
    if (!extended) candidates.push_back({std::move(p)});
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Path& a, const Path& b) { return a.size() > b.size(); });
  std::vector<Path> primes;
  for (auto& c : candidates) {
    const bool covered =
        std::any_of(primes.begin(), primes.end(), [&](const Path& p) { return tours(p, c); });
    if (!covered) primes.push_back(std::move(c));
  }
  return primes;
}

namespace detail {

inline RequirementSet finish(CoverageCriterion c, std::vector<Path> reqs, const DirectedGraph& g) {
  RequirementSet rs;
  rs.criterion = c;
  rs.categories = categorize(reqs, g).tags;
  rs.requirements = std::move(reqs);
  return rs;
}

}  // namespace detail

inline RequirementSet enumerate_prime_paths(const DirectedGraph& g) {
  return detail::finish(CoverageCriterion::PrimePath, prime_paths(g), g);
}

inline RequirementSet enumerate_requirements(const DirectedGraph& g, CoverageCriterion c) {
  std::vector<Path> reqs;
  switch (c) {
    case CoverageCriterion::PrimePath:
      return enumerate_prime_paths(g);

    case CoverageCriterion::Node:
      for (Vertex v = 0; v < g.vertex_count(); ++v) reqs.push_back({{v}});
      break;

    case CoverageCriterion::Edge:
      for (const auto& e : g.edges()) reqs.push_back({{e.from, e.to}});
      break;

    case CoverageCriterion::EdgePair:
      for (const auto& e : g.edges())
        for (Vertex w : g.successors(e.to)) reqs.push_back({{e.from, e.to, w}});
      // An edge that no two-edge path contains still has to be covered.
      for (const auto& e : g.edges())
        if (g.in_degree(e.from) == 0 && g.out_degree(e.to) == 0) reqs.push_back({{e.from, e.to}});
      break;

    case CoverageCriterion::CompleteRoundTrip:
      for (auto& p : prime_paths(g))
        if (p.is_cycle()) reqs.push_back(std::move(p));
      break;

    case CoverageCriterion::SimpleRoundTrip: {
      std::vector<Path> cycles;
      for (auto& p : prime_paths(g))
        if (p.is_cycle()) cycles.push_back(std::move(p));
      std::vector<std::optional<std::size_t>> best(g.vertex_count());
      for (std::size_t i = 0; i < cycles.size(); ++i) {
        auto& slot = best[cycles[i].front()];
        if (!slot || cycles[i].size() < cycles[*slot].size()) slot = i;
      }
      for (std::size_t i = 0; i < cycles.size(); ++i)
        if (best[cycles[i].front()] == i) reqs.push_back(cycles[i]);
      break;
    }
  }
  return detail::finish(c, std::move(reqs), g);
}

inline std::string format_requirement(const DirectedGraph& g, const Path& p) {
  return "[" + g.format(p) + "]";
}

}  // namespace mintp
