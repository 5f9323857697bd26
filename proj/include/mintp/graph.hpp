#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "mintp/error.hpp"

namespace mintp {

using Vertex = std::uint32_t;

struct Edge {
  Vertex from;
  Vertex to;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// An ordered vertex sequence. Its length is counted in edges.
struct Path {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  bool is_cycle() const { return vertices.size() >= 2 && vertices.front() == vertices.back(); }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

// True when `sub` appears as a contiguous run inside `walk`.
inline bool tours(std::span<const Vertex> walk, std::span<const Vertex> sub) {
  if (sub.empty()) return true;
  return std::search(walk.begin(), walk.end(), sub.begin(), sub.end()) != walk.end();
}

inline bool tours(const Path& walk, const Path& sub) { return tours(walk.vertices, sub.vertices); }

inline bool is_valid_vertex_name(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '.' || c == '-';
  });
}

// Unvalidated vertex names plus edge list, the shape both the parser and the
// random generator produce before terminals are fixed.
struct EdgeListGraph {
  std::vector<std::string> names;
  std::vector<Edge> edges;
};

inline constexpr std::string_view kFreshSource = "__s";
inline constexpr std::string_view kFreshSink = "__t";

// Immutable directed graph with a single source (in-degree 0) and a single
// sink (out-degree 0) from which every vertex is reachable / which every
// vertex reaches. Edge-list order is preserved and drives every traversal.
class DirectedGraph {
 public:
  static DirectedGraph make(std::vector<std::string> names, std::vector<Edge> edges, Vertex source,
                            Vertex sink) {
    DirectedGraph g;
    g.names_ = std::move(names);
    g.edges_ = std::move(edges);
    g.source_ = source;
    g.sink_ = sink;
    g.index();
    g.validate();
    return g;
  }

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Vertex v) const { return names_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }
  Vertex source() const { return source_; }
  Vertex sink() const { return sink_; }

  std::optional<Vertex> find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  std::span<const Vertex> successors(Vertex v) const { return out_[v]; }
  std::span<const Vertex> predecessors(Vertex v) const { return in_[v]; }
  std::size_t out_degree(Vertex v) const { return out_[v].size(); }
  std::size_t in_degree(Vertex v) const { return in_[v].size(); }

  bool has_edge(Vertex from, Vertex to) const { return edge_set_.count(key(from, to)) != 0; }

  // True when consecutive vertices are joined by edges.
  bool is_walk(std::span<const Vertex> vs) const {
    if (vs.empty()) return false;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
      if (!has_edge(vs[i], vs[i + 1])) return false;
    return true;
  }

  std::string format(const Path& p) const {
    std::string out;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
      if (i) out += ' ';
      out += name(p.vertices[i]);
    }
    return out;
  }

 private:
  DirectedGraph() = default;

  static std::uint64_t key(Vertex a, Vertex b) { return (std::uint64_t{a} << 32) | b; }

  void index() {
    const auto n = names_.size();
    for (Vertex v = 0; v < n; ++v) {
      if (!is_valid_vertex_name(names_[v])) throw input_error("invalid vertex id '" + names_[v] + "'");
      if (!by_name_.emplace(names_[v], v).second) throw input_error("duplicate vertex '" + names_[v] + "'");
    }
    if (source_ >= n || sink_ >= n) throw input_error("unknown terminal vertex");
    out_.assign(n, {});
    in_.assign(n, {});
    for (const auto& e : edges_) {
      if (e.from >= n || e.to >= n) throw input_error("unknown vertex in edge");
      if (!edge_set_.insert(key(e.from, e.to)).second)
        throw input_error("duplicate edge " + names_[e.from] + " -> " + names_[e.to]);
      out_[e.from].push_back(e.to);
      in_[e.to].push_back(e.from);
    }
  }

  void validate() const {
    if (source_ == sink_) throw input_error("source and sink must differ");
    if (!in_[source_].empty()) throw input_error("in-edges on source '" + names_[source_] + "'");
    if (!out_[sink_].empty()) throw input_error("out-edges on sink '" + names_[sink_] + "'");
    const auto fwd = reach(source_, out_);
    const auto bwd = reach(sink_, in_);
    for (Vertex v = 0; v < names_.size(); ++v) {
      if (!fwd[v]) throw input_error("unreachable vertex '" + names_[v] + "'");
      if (!bwd[v]) throw input_error("dead-end vertex '" + names_[v] + "' does not reach the sink");
    }
  }

  static std::vector<bool> reach(Vertex from, const std::vector<std::vector<Vertex>>& adj) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<Vertex> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    return seen;
  }

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  Vertex source_ = 0;
  Vertex sink_ = 0;
  std::unordered_map<std::string, Vertex> by_name_;
  std::vector<std::vector<Vertex>> out_;
  std::vector<std::vector<Vertex>> in_;
  std::unordered_set<std::uint64_t> edge_set_;
};

namespace detail {

inline std::vector<std::size_t> in_degrees(const EdgeListGraph& g) {
  std::vector<std::size_t> d(g.names.size(), 0);
  for (const auto& e : g.edges) ++d.at(e.to);
  return d;
}

inline std::vector<std::size_t> out_degrees(const EdgeListGraph& g) {
  std::vector<std::size_t> d(g.names.size(), 0);
  for (const auto& e : g.edges) ++d.at(e.from);
  return d;
}

// Returns the single terminal, adding a fresh vertex wired to all of them when
// there are several.
inline Vertex merge_terminals(EdgeListGraph& g, const std::vector<Vertex>& terminals, bool is_source) {
  if (terminals.size() == 1) return terminals.front();
  const std::string fresh(is_source ? kFreshSource : kFreshSink);
  if (std::find(g.names.begin(), g.names.end(), fresh) != g.names.end())
    throw input_error("fresh terminal name '" + fresh + "' collides with an existing vertex");
  const auto v = static_cast<Vertex>(g.names.size());
  g.names.push_back(fresh);
  for (Vertex x : terminals) g.edges.push_back(is_source ? Edge{v, x} : Edge{x, v});
  return v;
}

}  // namespace detail

// Adds fresh `__s` / `__t` when the graph has several in-degree-0 or
// out-degree-0 vertices.
inline DirectedGraph normalize_terminals(EdgeListGraph g) {
  const auto in = detail::in_degrees(g);
  const auto out = detail::out_degrees(g);
  std::vector<Vertex> sources, sinks;
  for (Vertex v = 0; v < g.names.size(); ++v) {
    if (in[v] == 0) sources.push_back(v);
    if (out[v] == 0) sinks.push_back(v);
  }
  if (sources.empty()) throw input_error("no source vertex");
  if (sinks.empty()) throw input_error("no sink vertex");
  const Vertex s = detail::merge_terminals(g, sources, true);
  const Vertex t = detail::merge_terminals(g, sinks, false);
  return DirectedGraph::make(std::move(g.names), std::move(g.edges), s, t);
}

// Drops vertices not on any source-to-sink path. Returns the names removed.
inline std::vector<std::string> prune_unreachable(EdgeListGraph& g, Vertex& source, Vertex& sink) {
  const auto n = g.names.size();
  std::vector<std::vector<Vertex>> out(n), in(n);
  for (const auto& e : g.edges) {
    out[e.from].push_back(e.to);
    in[e.to].push_back(e.from);
  }
  auto reach = [&](Vertex from, const std::vector<std::vector<Vertex>>& adj) {
    std::vector<bool> seen(n, false);
    std::vector<Vertex> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
    return seen;
  };
  const auto fwd = reach(source, out);
  const auto bwd = reach(sink, in);

  std::vector<std::string> dropped;
  std::vector<Vertex> remap(n, 0);
  EdgeListGraph kept;
  for (Vertex v = 0; v < n; ++v) {
    if (fwd[v] && bwd[v]) {
      remap[v] = static_cast<Vertex>(kept.names.size());
      kept.names.push_back(g.names[v]);
    } else {
      dropped.push_back(g.names[v]);
    }
  }
  for (const auto& e : g.edges)
    if (fwd[e.from] && bwd[e.from] && fwd[e.to] && bwd[e.to]) kept.edges.push_back({remap[e.from], remap[e.to]});
  source = remap[source];
  sink = remap[sink];
  g = std::move(kept);
  return dropped;
}

struct ParseOptions {
  bool prune_unreachable = false;
};

// Reads the line-oriented graph format:
//   source <id> | sink <id> | node <id> | edge <from> <to>
// `#` starts a comment. Vertices are declared implicitly by any directive.
inline DirectedGraph parse_graph(std::string_view text, const ParseOptions& opts = {},
                                 std::vector<std::string>* warnings = nullptr) {
  EdgeListGraph g;
  std::unordered_map<std::string, Vertex> ids;
  std::unordered_set<std::uint64_t> seen_edges;
  std::vector<Vertex> sources, sinks;

  auto intern = [&](const std::string& id, std::size_t line) {
    if (!is_valid_vertex_name(id)) throw parse_error(line, "invalid vertex id '" + id + "'");
    auto [it, fresh] = ids.emplace(id, static_cast<Vertex>(g.names.size()));
    if (fresh) g.names.push_back(id);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::istringstream in{std::string(line)};
    std::vector<std::string> tok;
    for (std::string w; in >> w;) tok.push_back(std::move(w));
    if (tok.empty()) continue;

    const std::string& dir = tok[0];
    if (dir == "source" || dir == "sink" || dir == "node") {
      if (tok.size() != 2) throw parse_error(line_no, "'" + dir + "' expects exactly one vertex id");
      const Vertex v = intern(tok[1], line_no);
      if (dir == "node") continue;
      auto& list = dir == "source" ? sources : sinks;
      if (std::find(list.begin(), list.end(), v) != list.end())
        throw parse_error(line_no, "duplicate " + dir + " directive for '" + tok[1] + "'");
      list.push_back(v);
    } else if (dir == "edge") {
      if (tok.size() != 3) throw parse_error(line_no, "'edge' expects two vertex ids");
      const Vertex a = intern(tok[1], line_no);
      const Vertex b = intern(tok[2], line_no);
      if (!seen_edges.insert((std::uint64_t{a} << 32) | b).second)
        throw parse_error(line_no, "duplicate edge " + tok[1] + " -> " + tok[2]);
      g.edges.push_back({a, b});
    } else {
      throw parse_error(line_no, "unknown directive '" + dir + "'");
    }
  }

  if (sources.empty()) throw input_error("missing 'source' directive");
  if (sinks.empty()) throw input_error("missing 'sink' directive");
  const auto in = detail::in_degrees(g);
  const auto out = detail::out_degrees(g);
  for (Vertex s : sources)
    if (in[s] != 0) throw input_error("in-edges on source '" + g.names[s] + "'");
  for (Vertex t : sinks)
    if (out[t] != 0) throw input_error("out-edges on sink '" + g.names[t] + "'");
  for (Vertex s : sources)
    if (std::find(sinks.begin(), sinks.end(), s) != sinks.end())
      throw input_error("vertex '" + g.names[s] + "' is both source and sink");

  Vertex s = detail::merge_terminals(g, sources, true);
  Vertex t = detail::merge_terminals(g, sinks, false);
  if (opts.prune_unreachable) {
    for (auto& name : prune_unreachable(g, s, t))
      if (warnings) warnings->push_back("pruned vertex '" + name + "' (not on any source-to-sink path)");
  }
  return DirectedGraph::make(std::move(g.names), std::move(g.edges), s, t);
}

// Emits sources, sinks, isolated nodes, then edges in order.
inline std::string serialize(const DirectedGraph& g) {
  std::string out;
  out += "source " + g.name(g.source()) + "\n";
  out += "sink " + g.name(g.sink()) + "\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.in_degree(v) == 0 && g.out_degree(v) == 0) out += "node " + g.name(v) + "\n";
  for (const auto& e : g.edges()) out += "edge " + g.name(e.from) + " " + g.name(e.to) + "\n";
  return out;
}

// Breadth-first search expanding successors in edge-list order.
inline std::optional<Path> shortest_path(const DirectedGraph& g, Vertex from, Vertex to) {
  if (from == to) return Path{{from}};
  constexpr Vertex kNone = static_cast<Vertex>(-1);
  std::vector<Vertex> parent(g.vertex_count(), kNone);
  std::queue<Vertex> queue;
  parent[from] = from;
  queue.push(from);
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop();
    for (Vertex w : g.successors(v)) {
      if (parent[w] != kNone) continue;
      parent[w] = v;
      if (w == to) {
        Path p;
        for (Vertex x = to; x != from; x = parent[x]) p.vertices.push_back(x);
        p.vertices.push_back(from);
        std::reverse(p.vertices.begin(), p.vertices.end());
        return p;
      }
      queue.push(w);
    }
  }
  return std::nullopt;
}

}  // namespace mintp
