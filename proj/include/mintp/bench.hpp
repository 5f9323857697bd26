#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "mintp/baseline.hpp"
#include "mintp/error.hpp"
#include "mintp/graph.hpp"
#include "mintp/pipeline.hpp"
#include "mintp/requirements.hpp"

namespace mintp {

struct GenSpec {
  std::size_t num_vertices = 6;  // including source and sink
  double edge_prob = 0.2;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_prime_paths;
  std::optional<std::size_t> min_prime_paths;
  std::size_t max_retries = 1000;
};

namespace detail {

// Uniform draws from raw engine bits, so streams match across standard libraries.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }
inline double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline DirectedGraph random_graph_once(std::size_t n, double p, std::mt19937_64& rng) {
  std::vector<std::string> names{"s"};
  for (std::size_t i = 1; i + 1 < n; ++i) names.push_back(std::to_string(i));
  names.push_back("t");
  const auto s = Vertex{0};
  const auto t = static_cast<Vertex>(n - 1);

  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<Edge> edges;
  auto add = [&](Vertex a, Vertex b) {
    if (seen.emplace(a, b).second) edges.push_back({a, b});
  };
  // Spanning structure: a spine s -> 1 -> ... -> t through a random order of
  // the inner vertices, so everything is reachable and reaches the sink.
  std::vector<Vertex> order;
  for (Vertex v = 1; v < t; ++v) order.push_back(v);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw_below(rng, i)]);
  Vertex prev = s;
  for (Vertex v : order) {
    add(prev, v);
    prev = v;
  }
  add(prev, t);
  // Extra edges only between inner vertices (self-loops included), so the
  // terminals keep the few edges the spanning structure gave them.
  for (Vertex a = 1; a < t; ++a)
    for (Vertex b = 1; b < t; ++b)
      if (draw_unit(rng) < p) add(a, b);
  return DirectedGraph::make(std::move(names), std::move(edges), s, t);
}

}  // namespace detail

inline DirectedGraph generate_random_graph(const GenSpec& spec) {
  if (spec.num_vertices < 3) throw input_error("random graphs need at least 3 vertices");
  if (!(spec.edge_prob > 0.0 && spec.edge_prob <= 1.0)) throw input_error("edge probability must be in (0, 1]");
  std::mt19937_64 rng(spec.seed);
  for (std::size_t attempt = 0; attempt <= spec.max_retries; ++attempt) {
    auto g = detail::random_graph_once(spec.num_vertices, spec.edge_prob, rng);
    if (!spec.max_prime_paths && !spec.min_prime_paths) return g;
    const auto count = prime_paths(g).size();
    if (count <= spec.max_prime_paths.value_or(count) && count >= spec.min_prime_paths.value_or(count)) return g;
  }
  throw input_error("retry budget exhausted generating a graph within the prime-path limits");
}

// Exhaustive check of the minimum number of test paths, written without any
// of the pipeline's machinery.
struct OracleOptions {
  std::optional<std::size_t> max_len;  // walk length cap in edges
  std::size_t state_budget = 2'000'000;
};

struct OracleResult {
  bool completed = false;
  std::size_t min_paths = 0;
  std::size_t max_len = 0;
  std::size_t states = 0;
};

inline std::size_t default_oracle_cap(const DirectedGraph& g, const RequirementSet& rs) {
  std::size_t longest = 0;
  for (const auto& p : rs.requirements) longest = std::max(longest, p.size());
  return 2 * rs.size() * longest + g.vertex_count();
}

inline OracleResult oracle_min_paths(const DirectedGraph& g, const RequirementSet& rs, const OracleOptions& opts = {}) {
  if (rs.size() > 20) throw input_error("oracle supports at most 20 requirements");
  OracleResult res;
  res.max_len = opts.max_len.value_or(default_oracle_cap(g, rs));
  if (rs.empty()) {
    res.completed = true;
    return res;
  }
  std::size_t window = 1;
  for (const auto& p : rs.requirements) window = std::max(window, p.size());

  using Mask = std::uint32_t;
  const Mask full = (Mask{1} << rs.size()) - 1;

  // State: last (window - 1) vertices of the walk and the requirements toured.
  struct State {
    std::vector<Vertex> tail;
    Mask mask;
    bool operator<(const State& o) const { return std::tie(mask, tail) < std::tie(o.mask, o.tail); }
  };
  auto tour_mask = [&](const std::vector<Vertex>& recent) {
    Mask m = 0;
    for (std::size_t k = 0; k < rs.size(); ++k) {
      const auto& r = rs[k].vertices;
      if (r.size() <= recent.size() && std::equal(r.begin(), r.end(), recent.end() - static_cast<std::ptrdiff_t>(r.size())))
        m |= Mask{1} << k;
    }
    return m;
  };

  std::set<State> seen;
  std::vector<State> frontier{{{g.source()}, tour_mask({g.source()})}};
  seen.insert(frontier.front());
  std::set<Mask> finished;
  for (std::size_t depth = 0; !frontier.empty(); ++depth) {
    std::vector<State> next;
    for (const auto& st : frontier) {
      if (st.tail.back() == g.sink()) {
        finished.insert(st.mask);
        continue;
      }
      if (depth == res.max_len) continue;
      for (Vertex w : g.successors(st.tail.back())) {
        auto recent = st.tail;
        recent.push_back(w);
        State nx{recent, st.mask | tour_mask(recent)};
        if (nx.tail.size() > window - 1) nx.tail.erase(nx.tail.begin(), nx.tail.end() - static_cast<std::ptrdiff_t>(window - 1));
        if (nx.tail.empty()) nx.tail.push_back(w);
        if (!seen.insert(nx).second) continue;
        if (seen.size() > opts.state_budget) {
          res.states = seen.size();
          return res;
        }
        next.push_back(std::move(nx));
      }
    }
    frontier = std::move(next);
  }
  res.states = seen.size();

  // Smallest k such that k finished masks cover everything.
  std::set<Mask> reach{0};
  for (std::size_t k = 1; k <= rs.size(); ++k) {
    std::set<Mask> grown;
    for (Mask a : reach)
      for (Mask b : finished) grown.insert(a | b);
    if (grown.count(full)) {
      res.completed = true;
      res.min_paths = k;
      return res;
    }
    if (grown == reach) break;
    reach = std::move(grown);
  }
  // Truncated: some requirement is not toured by any walk within the cap.
  return res;
}

// Oracle with the cap doubled (up to `doublings` times) while it disagrees
// with `expected` or fails to cover everything.
inline OracleResult oracle_with_retries(const DirectedGraph& g, const RequirementSet& rs, std::size_t expected,
                                        std::size_t doublings = 2, std::size_t state_budget = 2'000'000) {
  OracleOptions opts;
  opts.state_budget = state_budget;
  opts.max_len = default_oracle_cap(g, rs);
  auto res = oracle_min_paths(g, rs, opts);
  for (std::size_t i = 0; i < doublings && res.completed && res.min_paths != expected; ++i) {
    opts.max_len = *opts.max_len * 2;
    auto again = oracle_min_paths(g, rs, opts);
    if (!again.completed) break;
    res = again;
  }
  return res;
}

struct ComparisonRow {
  std::string name;
  std::size_t prime_path_count = 0;
  std::size_t requirement_count = 0;
  std::size_t baseline_count = 0;
  std::size_t baseline_length = 0;
  std::size_t min_count = 0;
  std::size_t min_length = 0;
  std::size_t lower_bound = 0;
  StageTimings timings;
  std::string error;  // non-empty rows are left out of the aggregates

  bool ok() const { return error.empty(); }
};

struct ComparisonAggregate {
  std::size_t rows = 0;              // rows that entered the means
  double count_reduction_pct = 0;    // mean of (baseline - min) / baseline
  double length_reduction_pct = 0;
  double lower_bound_gap_pct = 0;    // mean of (min - bound) / min
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  ComparisonAggregate aggregate;
};

struct NamedGraph {
  std::string name;
  DirectedGraph graph;
};

inline ComparisonRow compare_one(const std::string& name, const DirectedGraph& g, CoverageCriterion criterion,
                                 bool dedup = false, const MinimizeOptions& opts = {}) {
  ComparisonRow row;
  row.name = name;
  try {
    row.prime_path_count = prime_paths(g).size();
    const auto r = minimize_test_paths(g, criterion, opts);
    row.requirement_count = r.requirements.size();
    row.min_count = r.report.count;
    row.min_length = r.report.total_length;
    row.lower_bound = r.report.lower_bound;
    row.timings = r.report.timings;
    const auto b = baseline_paths(g, r.requirements, dedup);
    row.baseline_count = b.count;
    row.baseline_length = b.total_length;
    check_invariant(row.lower_bound <= row.min_count, "lower bound exceeds minimized count");
    check_invariant(row.min_count <= row.baseline_count, "minimized count exceeds baseline count");
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

inline ComparisonAggregate aggregate(const std::vector<ComparisonRow>& rows) {
  ComparisonAggregate agg;
  for (const auto& r : rows) {
    if (!r.ok() || r.baseline_count == 0 || r.min_count == 0) continue;
    ++agg.rows;
    agg.count_reduction_pct +=
        100.0 * static_cast<double>(r.baseline_count - r.min_count) / static_cast<double>(r.baseline_count);
    if (r.baseline_length > 0)
      agg.length_reduction_pct += 100.0 * (static_cast<double>(r.baseline_length) - static_cast<double>(r.min_length)) /
                                  static_cast<double>(r.baseline_length);
    agg.lower_bound_gap_pct +=
        100.0 * static_cast<double>(r.min_count - r.lower_bound) / static_cast<double>(r.min_count);
  }
  if (agg.rows > 0) {
    const auto n = static_cast<double>(agg.rows);
    agg.count_reduction_pct /= n;
    agg.length_reduction_pct /= n;
    agg.lower_bound_gap_pct /= n;
  }
  return agg;
}

inline ComparisonReport run_comparison(const std::vector<NamedGraph>& graphs, CoverageCriterion criterion,
                                       bool dedup = false, const MinimizeOptions& opts = {}) {
  ComparisonReport rep;
  for (const auto& [name, g] : graphs) rep.rows.push_back(compare_one(name, g, criterion, dedup, opts));
  rep.aggregate = aggregate(rep.rows);
  return rep;
}

inline constexpr std::string_view kCsvHeader =
    "prime_paths,baseline_count,baseline_len,min_count,min_len,lower_bound,t_alg1,t_alg2,t_alg3,t_alg45,t_alg6,t_total";

// Timing columns in whole milliseconds; written as 0 when `timings` is off so
// the file is reproducible.
inline std::string to_csv(const std::vector<ComparisonRow>& rows, bool timings = true) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  auto ms = [&](StageTimings::ms d) { return timings ? std::llround(d.count()) : 0LL; };
  for (const auto& r : rows) {
    if (!r.ok()) continue;
    const auto& t = r.timings;
    out << r.prime_path_count << ',' << r.baseline_count << ',' << r.baseline_length << ',' << r.min_count << ','
        << r.min_length << ',' << r.lower_bound << ',' << ms(t.requirements) << ',' << ms(t.transform) << ','
        << ms(t.condense) << ',' << ms(t.min_flow) << ',' << ms(t.reconstruct) << ',' << ms(t.total) << "\n";
  }
  return out.str();
}

}  // namespace mintp
