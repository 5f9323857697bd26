#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "mintp/error.hpp"
#include "mintp/transform.hpp"

namespace mintp {

// What a collapsed cycle looked like, kept so paths through the replacement
// vertex can be re-expanded.
struct CycleRecord {
  NodeId vertex = 0;
  // v1..vn; the closing edge vn -> v1 is implied. Members may be cycle vertices.
  std::vector<NodeId> members;
  // external predecessor -> first member it had an edge into
  std::vector<std::pair<NodeId, NodeId>> entry_map;
  // external successor -> first member that had an edge to it
  std::vector<std::pair<NodeId, NodeId>> exit_map;

  std::optional<NodeId> entry_for(NodeId outside) const {
    for (const auto& [from, member] : entry_map)
      if (from == outside) return member;
    return std::nullopt;
  }
  std::optional<NodeId> exit_for(NodeId outside) const {
    for (const auto& [to, member] : exit_map)
      if (to == outside) return member;
    return std::nullopt;
  }
};

// A mutable adjacency structure whose vertices can be retired and replaced.
// Ids below base_count() are transform-graph nodes; later ids are cycle vertices.
class CondensedGraph {
 public:
  static constexpr NodeId kNone = static_cast<NodeId>(-1);

  CondensedGraph() = default;

  CondensedGraph(std::size_t node_count, const std::vector<std::pair<NodeId, NodeId>>& edges, NodeId source,
                 NodeId sink)
      : base_(node_count), source_(source), sink_(sink) {
    out_.assign(node_count, {});
    in_.assign(node_count, {});
    alive_.assign(node_count, true);
    parent_.assign(node_count, kNone);
    for (const auto& [a, b] : edges) {
      if (std::find(out_[a].begin(), out_[a].end(), b) != out_[a].end()) continue;
      out_[a].push_back(b);
      in_[b].push_back(a);
    }
  }

  explicit CondensedGraph(const TransformGraph& tg)
      : CondensedGraph(tg.node_count(), edge_pairs(tg), tg.source(), tg.sink()) {}

  std::size_t base_count() const { return base_; }
  std::size_t id_bound() const { return out_.size(); }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  bool alive(NodeId v) const { return alive_[v]; }
  bool is_cycle_vertex(NodeId v) const { return v >= base_; }
  const std::vector<NodeId>& successors(NodeId v) const { return out_[v]; }
  const std::vector<NodeId>& predecessors(NodeId v) const { return in_[v]; }
  NodeId parent(NodeId v) const { return parent_[v]; }
  const CycleRecord& record(NodeId cycle_vertex) const { return records_.at(cycle_vertex - base_); }
  const std::vector<CycleRecord>& records() const { return records_; }

  std::vector<NodeId> vertices() const {
    std::vector<NodeId> vs;
    for (NodeId v = 0; v < alive_.size(); ++v)
      if (alive_[v]) vs.push_back(v);
    return vs;
  }

  std::size_t vertex_count() const { return static_cast<std::size_t>(std::count(alive_.begin(), alive_.end(), true)); }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (NodeId v = 0; v < alive_.size(); ++v)
      if (alive_[v]) m += out_[v].size();
    return m;
  }

  // Replaces the cycle members with one fresh vertex carrying all their
  // external edges, and records how it was wired.
  NodeId collapse(const std::vector<NodeId>& members) {
    const auto c = static_cast<NodeId>(out_.size());
    out_.emplace_back();
    in_.emplace_back();
    alive_.push_back(true);
    parent_.push_back(kNone);

    std::vector<bool> inside(out_.size(), false);
    for (NodeId m : members) inside[m] = true;

    CycleRecord rec;
    rec.vertex = c;
    rec.members = members;
    for (NodeId m : members) {
      for (NodeId u : in_[m])
        if (!inside[u] && !rec.entry_for(u)) rec.entry_map.emplace_back(u, m);
      for (NodeId w : out_[m])
        if (!inside[w] && !rec.exit_for(w)) rec.exit_map.emplace_back(w, m);
    }

    auto redirect = [&](std::vector<NodeId>& list) {
      std::vector<NodeId> next;
      bool placed = false;
      for (NodeId x : list) {
        if (!inside[x]) {
          next.push_back(x);
        } else if (!placed) {
          next.push_back(c);
          placed = true;
        }
      }
      list = std::move(next);
    };
    for (const auto& [u, m] : rec.entry_map) {
      redirect(out_[u]);
      in_[c].push_back(u);
    }
    for (const auto& [w, m] : rec.exit_map) {
      redirect(in_[w]);
      out_[c].push_back(w);
    }
    for (NodeId m : members) {
      alive_[m] = false;
      parent_[m] = c;
    }
    records_.push_back(std::move(rec));
    return c;
  }

  // Kahn's algorithm; ready vertices are released in ascending id order.
  std::vector<NodeId> topological_order() const {
    std::vector<std::size_t> indeg(out_.size(), 0);
    for (NodeId v : vertices())
      for (NodeId w : out_[v]) ++indeg[w];
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (NodeId v : vertices())
      if (indeg[v] == 0) ready.push(v);
    std::vector<NodeId> order;
    while (!ready.empty()) {
      const NodeId v = ready.top();
      ready.pop();
      order.push_back(v);
      for (NodeId w : out_[v])
        if (--indeg[w] == 0) ready.push(w);
    }
    return order;
  }

  bool is_acyclic() const { return topological_order().size() == vertex_count(); }

  std::string label(NodeId v) const {
    if (v == source_) return "s";
    if (v == sink_) return "t";
    if (is_cycle_vertex(v)) return "c" + std::to_string(v - base_);
    return "p" + std::to_string(v - 1);
  }

  // Graph text plus one comment line per cycle record.
  std::string serialize() const {
    std::string out = "source s\nsink t\n";
    for (NodeId v : vertices())
      for (NodeId w : out_[v]) out += "edge " + label(v) + " " + label(w) + "\n";
    for (const auto& rec : records_) {
      out += "# " + label(rec.vertex) + " = (";
      for (std::size_t i = 0; i < rec.members.size(); ++i) out += (i ? " " : "") + label(rec.members[i]);
      out += ") entry";
      for (const auto& [u, m] : rec.entry_map) out += " " + label(u) + ">" + label(m);
      out += " exit";
      for (const auto& [w, m] : rec.exit_map) out += " " + label(m) + ">" + label(w);
      out += "\n";
    }
    return out;
  }

 private:
  static std::vector<std::pair<NodeId, NodeId>> edge_pairs(const TransformGraph& tg) {
    std::vector<std::pair<NodeId, NodeId>> es;
    es.reserve(tg.edges().size());
    for (const auto& e : tg.edges()) es.emplace_back(e.from, e.to);
    return es;
  }

  std::size_t base_ = 0;
  NodeId source_ = 0;
  NodeId sink_ = 0;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;
  std::vector<bool> alive_;
  std::vector<NodeId> parent_;
  std::vector<CycleRecord> records_;
};

// First cycle met by a depth-first search that starts from live vertices in id
// order and follows successors in list order. Members in cycle order.
inline std::optional<std::vector<NodeId>> find_cycle(const CondensedGraph& g) {
  enum : unsigned char { kWhite, kGray, kBlack };
  std::vector<unsigned char> color(g.id_bound(), kWhite);
  std::vector<std::pair<NodeId, std::size_t>> stack;

  for (NodeId root : g.vertices()) {
    if (color[root] != kWhite) continue;
    stack.emplace_back(root, 0);
    color[root] = kGray;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& succ = g.successors(v);
      if (next == succ.size()) {
        color[v] = kBlack;
        stack.pop_back();
        continue;
      }
      const NodeId w = succ[next++];
      if (color[w] == kGray) {
        std::vector<NodeId> cycle;
        auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& f) { return f.first == w; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        return cycle;
      }
      if (color[w] == kWhite) {
        color[w] = kGray;
        stack.emplace_back(w, 0);
      }
    }
  }
  return std::nullopt;
}

// Collapses cycles one at a time until the graph is acyclic.
inline CondensedGraph condense(CondensedGraph g) {
  while (auto cycle = find_cycle(g)) g.collapse(*cycle);
  check_invariant(g.is_acyclic(), "condensed graph still has a cycle");
  return g;
}

inline CondensedGraph condense(const TransformGraph& tg) { return condense(CondensedGraph(tg)); }

}  // namespace mintp
