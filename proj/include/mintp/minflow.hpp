#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "mintp/condense.hpp"
#include "mintp/error.hpp"

namespace mintp {

using Flow = std::int64_t;

struct FlowArc {
  std::uint32_t from;
  std::uint32_t to;
  Flow lower;
  Flow capacity;
  Flow flow;
};

// Split-vertex network over an acyclic condensed graph. Every non-terminal
// vertex v becomes v+ -> v++ with lower bound 1; other arcs have lower bound 0.
// All capacities equal |V4|/2 - 1, the most s-t paths the graph can need.
class FlowNetwork {
 public:
  static constexpr std::uint32_t kSource = 0;
  static constexpr std::uint32_t kSink = 1;

  std::size_t node_count() const { return node_vertex_.size(); }
  const std::vector<FlowArc>& arcs() const { return arcs_; }
  std::vector<FlowArc>& arcs() { return arcs_; }
  const std::vector<std::uint32_t>& out_arcs(std::uint32_t n) const { return out_[n]; }
  const std::vector<std::uint32_t>& in_arcs(std::uint32_t n) const { return in_[n]; }
  Flow capacity() const { return capacity_; }

  // The condensed-graph vertex a network node was split from.
  NodeId vertex_of(std::uint32_t node) const { return node_vertex_[node]; }
  bool is_split_in(std::uint32_t node) const { return node >= 2 && node % 2 == 0; }

  std::string label(std::uint32_t node) const {
    if (node == kSource) return "s";
    if (node == kSink) return "t";
    return labels_[node] + (is_split_in(node) ? "+" : "++");
  }

  // Flow out of the source.
  Flow value() const {
    Flow f = 0;
    for (auto a : out_[kSource]) f += arcs_[a].flow;
    return f;
  }

  Flow inflow_to_sink() const {
    Flow f = 0;
    for (auto a : in_[kSink]) f += arcs_[a].flow;
    return f;
  }

  // Forward arcs as `from to lower cap flow`.
  std::string serialize() const {
    std::string out;
    for (const auto& a : arcs_)
      out += label(a.from) + " " + label(a.to) + " " + std::to_string(a.lower) + " " +
             std::to_string(a.capacity) + " " + std::to_string(a.flow) + "\n";
    return out;
  }

  friend FlowNetwork build_flow_network(const CondensedGraph& g3);

 private:
  std::uint32_t add_node(NodeId vertex, std::string label) {
    node_vertex_.push_back(vertex);
    labels_.push_back(std::move(label));
    out_.emplace_back();
    in_.emplace_back();
    return static_cast<std::uint32_t>(node_vertex_.size() - 1);
  }

  void add_arc(std::uint32_t from, std::uint32_t to, Flow lower) {
    const auto id = static_cast<std::uint32_t>(arcs_.size());
    arcs_.push_back({from, to, lower, capacity_, 0});
    out_[from].push_back(id);
    in_[to].push_back(id);
  }

  std::vector<NodeId> node_vertex_;
  std::vector<std::string> labels_;
  std::vector<FlowArc> arcs_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::vector<std::uint32_t>> in_;
  Flow capacity_ = 0;
};

inline FlowNetwork build_flow_network(const CondensedGraph& g3) {
  const auto order = g3.topological_order();
  check_invariant(order.size() == g3.vertex_count(), "flow network needs an acyclic graph");
  const auto v3 = order.size();

  FlowNetwork net;
  net.capacity_ = static_cast<Flow>(v3) - 2;  // |V4|/2 - 1 with |V4| = 2|V3| - 2
  net.add_node(g3.source(), "s");
  net.add_node(g3.sink(), "t");

  std::vector<std::uint32_t> in_node(g3.id_bound(), 0), out_node(g3.id_bound(), 0);
  in_node[g3.source()] = out_node[g3.source()] = FlowNetwork::kSource;
  in_node[g3.sink()] = out_node[g3.sink()] = FlowNetwork::kSink;
  for (NodeId v : order) {
    if (v == g3.source() || v == g3.sink()) continue;
    in_node[v] = net.add_node(v, g3.label(v));
    out_node[v] = net.add_node(v, g3.label(v));
    net.add_arc(in_node[v], out_node[v], 1);
  }
  for (NodeId v : order)
    for (NodeId w : g3.successors(v)) net.add_arc(out_node[v], in_node[w], 0);
  return net;
}

namespace detail {

// BFS over forward arcs ignoring flow; arc ids along the path.
inline std::optional<std::vector<std::uint32_t>> arc_path(const FlowNetwork& net, std::uint32_t from,
                                                           std::uint32_t to) {
  if (from == to) return std::vector<std::uint32_t>{};
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> via(net.node_count(), kNone);
  std::vector<bool> seen(net.node_count(), false);
  std::queue<std::uint32_t> queue;
  seen[from] = true;
  queue.push(from);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop();
    for (auto a : net.out_arcs(u)) {
      const auto w = net.arcs()[a].to;
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = a;
      if (w == to) {
        std::vector<std::uint32_t> path;
        for (auto x = to; x != from; x = net.arcs()[via[x]].from) path.push_back(via[x]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push(w);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// For every non-terminal node in order, route one unit along a BFS s -> i -> t
// path whenever that path still carries an arc below its lower bound.
// Returns the resulting flow value.
inline Flow initialize_feasible_flow(FlowNetwork& net) {
  auto& arcs = net.arcs();
  for (auto& a : arcs) a.flow = 0;
  for (std::uint32_t i = 2; i < net.node_count(); ++i) {
    auto head = detail::arc_path(net, FlowNetwork::kSource, i);
    if (!head) throw input_error("network node " + net.label(i) + " cannot be reached from the source");
    auto tail = detail::arc_path(net, i, FlowNetwork::kSink);
    if (!tail) throw input_error("network node " + net.label(i) + " cannot reach the sink");
    head->insert(head->end(), tail->begin(), tail->end());
    Flow k = std::numeric_limits<Flow>::max();
    for (auto a : *head) k = std::min(k, arcs[a].flow - arcs[a].lower);
    if (k < 0)
      for (auto a : *head) arcs[a].flow += 1;
  }
  return net.value();
}

// Reduces a feasible flow along residual s-t paths (forward residual f - l,
// backward residual c - f) until none is left. Returns the number of paths used.
inline std::size_t decreasing_path_minimize(FlowNetwork& net) {
  auto& arcs = net.arcs();
  const auto n = net.node_count();
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::size_t rounds = 0;
  for (;;) {
    // via[node] = arc id, backward[node] = arc traversed against its direction
    std::vector<std::uint32_t> via(n, kNone);
    std::vector<bool> backward(n, false), seen(n, false);
    std::queue<std::uint32_t> queue;
    seen[FlowNetwork::kSource] = true;
    queue.push(FlowNetwork::kSource);
    while (!queue.empty() && !seen[FlowNetwork::kSink]) {
      const auto u = queue.front();
      queue.pop();
      for (auto a : net.out_arcs(u)) {
        const auto w = arcs[a].to;
        if (seen[w] || arcs[a].flow - arcs[a].lower <= 0) continue;
        seen[w] = true;
        via[w] = a;
        queue.push(w);
      }
      for (auto a : net.in_arcs(u)) {
        const auto w = arcs[a].from;
        if (seen[w] || arcs[a].capacity - arcs[a].flow <= 0) continue;
        seen[w] = true;
        via[w] = a;
        backward[w] = true;
        queue.push(w);
      }
    }
    if (!seen[FlowNetwork::kSink]) break;

    Flow r_min = std::numeric_limits<Flow>::max();
    for (auto x = FlowNetwork::kSink; x != FlowNetwork::kSource;) {
      const auto& arc = arcs[via[x]];
      r_min = std::min(r_min, backward[x] ? arc.capacity - arc.flow : arc.flow - arc.lower);
      x = backward[x] ? arc.to : arc.from;
    }
    for (auto x = FlowNetwork::kSink; x != FlowNetwork::kSource;) {
      auto& arc = arcs[via[x]];
      arc.flow += backward[x] ? r_min : -r_min;
      x = backward[x] ? arc.to : arc.from;
    }
    ++rounds;
  }
  return rounds;
}

// Bounds on every arc, conservation at every inner node, and equal flow
// leaving the source and entering the sink. Throws invariant_error.
inline void check_feasible(const FlowNetwork& net) {
  for (const auto& a : net.arcs())
    check_invariant(a.flow >= a.lower && a.flow <= a.capacity,
                    "arc " + net.label(a.from) + "->" + net.label(a.to) + " violates its bounds");
  for (std::uint32_t v = 2; v < net.node_count(); ++v) {
    Flow in = 0, out = 0;
    for (auto a : net.in_arcs(v)) in += net.arcs()[a].flow;
    for (auto a : net.out_arcs(v)) out += net.arcs()[a].flow;
    check_invariant(in == out, "flow is not conserved at " + net.label(v));
  }
  check_invariant(net.value() == net.inflow_to_sink(), "source outflow differs from sink inflow");
}

}  // namespace mintp
