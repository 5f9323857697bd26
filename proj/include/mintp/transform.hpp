#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "mintp/error.hpp"
#include "mintp/graph.hpp"
#include "mintp/matcher.hpp"
#include "mintp/requirements.hpp"

namespace mintp {

using NodeId = std::uint32_t;

// Length (in vertices) of the longest suffix of `a` that is also a prefix of `b`.
inline std::size_t longest_overlap(std::span<const Vertex> a, std::span<const Vertex> b) {
  for (std::size_t k = std::min(a.size(), b.size()); k > 0; --k)
    if (std::equal(a.end() - static_cast<std::ptrdiff_t>(k), a.end(), b.begin())) return k;
  return 0;
}

// Splices `b` after `a`: on their longest overlap if they have one, otherwise
// through a shortest connecting path. Empty when `b` cannot follow `a`.
inline std::optional<Path> join(const DirectedGraph& g, const Path& a, const Path& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  Path out = a;
  if (const auto k = longest_overlap(a.vertices, b.vertices); k > 0) {
    out.vertices.insert(out.vertices.end(), b.vertices.begin() + static_cast<std::ptrdiff_t>(k),
                        b.vertices.end());
    return out;
  }
  const auto bridge = shortest_path(g, a.back(), b.front());
  if (!bridge) return std::nullopt;
  out.vertices.insert(out.vertices.end(), bridge->vertices.begin() + 1, bridge->vertices.end() - 1);
  out.vertices.insert(out.vertices.end(), b.vertices.begin(), b.vertices.end());
  return out;
}

// Which pairs of requirements get an edge.
enum class EdgeRule {
  // Edge when the single join (longest overlap or shortest bridge) tours no
  // third requirement.
  ShortestJoin,
  // Edge when any walk that starts with the first requirement and ends with the
  // second tours no third requirement.
  AnyWalk,
};

inline std::string_view to_string(EdgeRule r) {
  return r == EdgeRule::ShortestJoin ? "shortest-join" : "any-walk";
}

inline EdgeRule parse_edge_rule(std::string_view s) {
  if (s == "shortest-join") return EdgeRule::ShortestJoin;
  if (s == "any-walk") return EdgeRule::AnyWalk;
  throw input_error("unknown edge rule '" + std::string(s) + "'");
}

struct TransformOptions {
  EdgeRule rule = EdgeRule::ShortestJoin;
};

struct TransformEdge {
  NodeId from;
  NodeId to;
  Path witness;  // a walk in the input graph realising the connection
};

// Requirement graph. Node 0 is the source, nodes 1..n are requirements in set
// order, node n+1 is the sink.
class TransformGraph {
 public:
  TransformGraph() = default;

  TransformGraph(std::size_t requirement_count, std::vector<TransformEdge> edges)
      : n_(requirement_count), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end(),
              [](const auto& a, const auto& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
    out_.assign(node_count(), {});
    in_.assign(node_count(), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      out_[edges_[i].from].push_back(edges_[i].to);
      in_[edges_[i].to].push_back(edges_[i].from);
      index_.emplace(key(edges_[i].from, edges_[i].to), i);
    }
  }

  std::size_t requirement_count() const { return n_; }
  std::size_t node_count() const { return n_ + 2; }
  NodeId source() const { return 0; }
  NodeId sink() const { return static_cast<NodeId>(n_ + 1); }
  bool is_terminal(NodeId v) const { return v == source() || v == sink(); }
  static NodeId node_of(std::size_t requirement) { return static_cast<NodeId>(requirement + 1); }
  static std::size_t requirement_of(NodeId v) { return v - 1; }

  const std::vector<TransformEdge>& edges() const { return edges_; }
  const std::vector<NodeId>& successors(NodeId v) const { return out_[v]; }
  const std::vector<NodeId>& predecessors(NodeId v) const { return in_[v]; }
  bool has_edge(NodeId a, NodeId b) const { return index_.count(key(a, b)) != 0; }
  const TransformEdge& edge(NodeId a, NodeId b) const { return edges_.at(index_.at(key(a, b))); }

  std::string label(NodeId v) const {
    if (v == source()) return "s";
    if (v == sink()) return "t";
    return "p" + std::to_string(requirement_of(v));
  }

  // The path a node stands for: the requirement itself, or {s} / {t}.
  Path path_of(NodeId v, const RequirementSet& rs, const DirectedGraph& g) const {
    if (v == source()) return Path{{g.source()}};
    if (v == sink()) return Path{{g.sink()}};
    return rs[requirement_of(v)];
  }

  // Shortest node path a -> b (BFS in successor order); empty when unreachable.
  std::vector<NodeId> shortest_route(NodeId a, NodeId b) const {
    if (a == b) return {a};
    constexpr NodeId kNone = static_cast<NodeId>(-1);
    std::vector<NodeId> parent(node_count(), kNone);
    std::queue<NodeId> queue;
    parent[a] = a;
    queue.push(a);
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop();
      for (NodeId w : out_[v]) {
        if (parent[w] != kNone) continue;
        parent[w] = v;
        if (w == b) {
          std::vector<NodeId> route;
          for (NodeId x = b; x != a; x = parent[x]) route.push_back(x);
          route.push_back(a);
          std::reverse(route.begin(), route.end());
          return route;
        }
        queue.push(w);
      }
    }
    return {};
  }

  std::string serialize() const {
    std::string out = "source s\nsink t\n";
    for (const auto& e : edges_) out += "edge " + label(e.from) + " " + label(e.to) + "\n";
    return out;
  }

 private:
  static std::uint64_t key(NodeId a, NodeId b) { return (std::uint64_t{a} << 32) | b; }

  std::size_t n_ = 0;
  std::vector<TransformEdge> edges_;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

namespace detail {

// Shortest-join rule, one join per ordered pair.
inline std::vector<TransformEdge> shortest_join_edges(const DirectedGraph& g, const RequirementSet& rs,
                                                      const PathMatcher& matcher) {
  const auto n = rs.size();
  const NodeId s = 0;
  const auto t = static_cast<NodeId>(n + 1);
  auto path_of = [&](NodeId v) {
    if (v == s) return Path{{g.source()}};
    if (v == t) return Path{{g.sink()}};
    return rs[v - 1];
  };

  std::vector<TransformEdge> edges;
  for (NodeId i = 0; i <= n; ++i) {
    const Path a = path_of(i);
    for (NodeId j = 1; j <= n + 1; ++j) {
      if (i == j) continue;
      auto joined = join(g, a, path_of(j));
      if (!joined) continue;
      bool clean = true;
      for (auto id : matcher.toured(joined->vertices)) {
        const NodeId node = id + 1;
        if (node != i && node != j) {
          clean = false;
          break;
        }
      }
      if (clean) edges.push_back({i, j, std::move(*joined)});
    }
  }
  return edges;
}

// Any-walk rule: from each requirement (and from the source) search walks in
// (automaton state, vertex) space until a second requirement completes.
inline std::vector<TransformEdge> any_walk_edges(const DirectedGraph& g, const RequirementSet& rs,
                                                 const PathMatcher& matcher) {
  const auto n = rs.size();
  const auto nv = g.vertex_count();
  const auto t = static_cast<NodeId>(n + 1);
  std::vector<std::uint32_t> stamp(matcher.state_count() * nv, 0);
  std::uint32_t round = 0;

  struct Step {
    Vertex vertex;
    PathMatcher::State state;
    std::int64_t parent;
  };

  std::vector<TransformEdge> edges;
  for (NodeId origin = 0; origin <= n; ++origin) {
    ++round;
    const Path start = origin == 0 ? Path{{g.source()}} : rs[origin - 1];
    const auto s0 = matcher.feed(matcher.root(), start.vertices);
    std::vector<bool> found(n + 2, false);

    auto witness = [&](const std::vector<Step>& steps, std::int64_t at, Vertex last) {
      std::vector<Vertex> tail{last};
      for (auto k = at; k > 0; k = steps[k].parent) tail.push_back(steps[k].vertex);
      Path w = start;
      w.vertices.insert(w.vertices.end(), tail.rbegin(), tail.rend());
      return w;
    };

    if (origin == 0 && !matcher.matches(s0).empty()) {
      // The source itself is a requirement; nothing can precede it.
      if (matcher.matches(s0).size() == 1) edges.push_back({0, matcher.matches(s0)[0] + 1, start});
      continue;
    }

    if (origin != 0 && start.back() == g.sink()) {
      edges.push_back({origin, t, start});
      continue;
    }

    std::vector<Step> steps{{start.back(), s0, -1}};
    stamp[s0 * nv + start.back()] = round;
    for (std::size_t head = 0; head < steps.size(); ++head) {
      const Step cur = steps[head];
      for (Vertex w : g.successors(cur.vertex)) {
        const auto ns = matcher.next(cur.state, w);
        std::optional<NodeId> hit;
        std::size_t others = 0;
        for (auto id : matcher.matches(ns)) {
          if (id + 1 == origin) continue;
          ++others;
          hit = id + 1;
        }
        if (others > 1) continue;
        if (hit) {
          if (!found[*hit]) {
            found[*hit] = true;
            edges.push_back({origin, *hit, witness(steps, static_cast<std::int64_t>(head), w)});
          }
          continue;
        }
        if (w == g.sink()) {
          if (!found[t]) {
            found[t] = true;
            edges.push_back({origin, t, witness(steps, static_cast<std::int64_t>(head), w)});
          }
          continue;
        }
        auto& mark = stamp[ns * nv + w];
        if (mark == round) continue;
        mark = round;
        steps.push_back({w, ns, static_cast<std::int64_t>(head)});
      }
    }
  }
  return edges;
}

}  // namespace detail

inline TransformGraph build_transform_graph(const DirectedGraph& g, const RequirementSet& rs,
                                            const TransformOptions& opts = {}) {
  if (rs.empty()) throw input_error("empty requirement set");
  const PathMatcher matcher(rs.requirements, g.vertex_count());
  auto edges = opts.rule == EdgeRule::ShortestJoin ? detail::shortest_join_edges(g, rs, matcher)
                                                   : detail::any_walk_edges(g, rs, matcher);
  TransformGraph tg(rs.size(), std::move(edges));
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const auto v = TransformGraph::node_of(k);
    if (tg.predecessors(v).empty())
      throw input_error("infeasible requirement " + format_requirement(g, rs[k]) + ": nothing can precede it");
    if (tg.successors(v).empty())
      throw input_error("infeasible requirement " + format_requirement(g, rs[k]) + ": nothing can follow it");
  }
  return tg;
}

}  // namespace mintp
