// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>

#include "support.hpp"

using namespace mintp;
using namespace mintp::testing;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ". " << title << ": " << detail << std::endl;
}

std::string fmt(double x, int digits = 2) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(digits) << x;
  return o.str();
}

void criterion_running_example() {
  const auto t0 = Clock::now();
  const auto g = graph(read_data("running_example.g"));
  const auto rs = enumerate_prime_paths(g);
  const auto c = categorize(rs, g).counts;
  const auto r = minimize_test_paths(g, CoverageCriterion::PrimePath);
  const auto& rep = r.report;
  const double secs = seconds_since(t0);
  const bool ok = rs.size() == 10 && c.type_s == 2 && c.type_t == 3 && c.type_c == 5 && c.type_p == 1 &&
                  lower_bound(c) == 3 && rep.f_min == 3 && rep.count == 3 && covers_all(paths_of(rep), rs) &&
                  rep.total_length >= 27 && rep.total_length <= 33 && secs < 1.0;
  report(1, "running example", ok,
         "prime_paths=" + std::to_string(rs.size()) + " S/T/C/P=" + std::to_string(c.type_s) + "/" +
             std::to_string(c.type_t) + "/" + std::to_string(c.type_c) + "/" + std::to_string(c.type_p) +
             " lower_bound=" + std::to_string(lower_bound(c)) + " f_min=" + std::to_string(rep.f_min) +
             " paths=" + std::to_string(rep.count) + " total_length=" + std::to_string(rep.total_length) +
             " (allowed 27..33) time=" + fmt(secs, 3) + "s");
}

void criterion_self_loop() {
  const auto g = graph(read_data("self_loop.g"));
  const auto r = minimize_test_paths(g, CoverageCriterion::PrimePath);
  const auto rs = formatted(g, r.requirements.requirements);
  const bool ok = rs == std::set<std::string>{"1 2 3", "2 2"} && r.report.count == 2 &&
                  covers_all(paths_of(r.report), r.requirements);
  std::string paths;
  for (const auto& tp : r.report.paths) paths += (paths.empty() ? "" : " | ") + g.format(tp.path);
  report(2, "self-loop counterexample", ok, "paths=" + std::to_string(r.report.count) + " [" + paths + "]");
}

void criterion_optimality() {
  const auto t0 = Clock::now();
  std::size_t graphs = 0, completed = 0, agree = 0;
  std::vector<std::string> divergences;
  std::map<std::size_t, std::size_t> by_count;
  for (std::uint64_t i = 0; graphs < 240; ++i) {
    GenSpec spec;
    spec.num_vertices = 4 + i % 5;
    spec.edge_prob = std::min(1.0, 1.2 / static_cast<double>(spec.num_vertices));
    spec.seed = 500 + i;
    spec.max_prime_paths = 8;
    const auto g = generate_random_graph(spec);
    ++graphs;
    const auto rs = enumerate_prime_paths(g);
    const auto f = minimize_test_paths(g, CoverageCriterion::PrimePath).report.count;
    const auto o = oracle_with_retries(g, rs, f);
    if (!o.completed) continue;
    ++completed;
    ++by_count[f];
    if (o.min_paths == f)
      ++agree;
    else
      divergences.push_back("seed " + std::to_string(spec.seed) + ": f_min=" + std::to_string(f) +
                            " oracle=" + std::to_string(o.min_paths));
  }
  const double secs = seconds_since(t0);
  const double rate = static_cast<double>(completed) / static_cast<double>(graphs);
  for (const auto& d : divergences) std::cout << "  divergence " << d << "\n";
  std::string spread;
  for (const auto& [k, n] : by_count) spread += " f" + std::to_string(k) + ":" + std::to_string(n);
  report(3, "optimality vs oracle", agree == completed && rate >= 0.95 && secs < 300,
         "graphs=" + std::to_string(graphs) + " completed=" + std::to_string(completed) + " (" +
             fmt(100 * rate, 1) + "%) agree=" + std::to_string(agree) + " by_f_min" + spread + " time=" + fmt(secs, 1) + "s");
}

void criterion_soundness() {
  std::vector<DirectedGraph> corpus{graph(read_data("running_example.g")), graph(read_data("self_loop.g")),
                                    graph(read_data("diamond.g"))};
  for (std::uint64_t seed = 0; seed < 120; ++seed)
    corpus.push_back(generate_random_graph({5 + seed % 8, 0.15, seed, 120, std::nullopt}));

  std::size_t runs = 0;
  std::map<std::string, std::size_t> broken;
  for (const auto& g : corpus) {
    for (const auto& [c, name] : kCriterionNames) {
      ++runs;
      try {
        const auto r = minimize_test_paths(g, c);
        const auto& rep = r.report;
        if (!covers_all(paths_of(rep), r.requirements)) ++broken["coverage"];
        if (static_cast<Flow>(rep.count) != rep.f_min) ++broken["count=f_min"];
        if (rep.lower_bound > rep.count) ++broken["lower_bound<=f_min"];
        if (r.requirements.empty()) continue;
        if (rep.count > baseline_paths(g, r.requirements, true).count) ++broken["f_min<=baseline"];
        if (!r.condensed.is_acyclic()) ++broken["acyclic"];
        for (const auto& a : r.network.arcs())
          if (a.flow < a.lower || a.flow > a.capacity) {
            ++broken["bounds"];
            break;
          }
        for (std::uint32_t v = 2; v < r.network.node_count(); ++v) {
          Flow in = 0, out = 0;
          for (auto a : r.network.in_arcs(v)) in += r.network.arcs()[a].flow;
          for (auto a : r.network.out_arcs(v)) out += r.network.arcs()[a].flow;
          if (in != out) {
            ++broken["conservation"];
            break;
          }
        }
        if (r.network.value() != r.network.inflow_to_sink() || r.network.value() != rep.f_min) ++broken["value"];
      } catch (const std::exception& e) {
        ++broken[std::string("exception: ") + e.what()];
      }
    }
  }
  std::string detail = "runs=" + std::to_string(runs) + " (" + std::to_string(corpus.size()) + " graphs x " +
                       std::to_string(kCriterionNames.size()) + " criteria)";
  for (const auto& [what, n] : broken) detail += " " + what + "=" + std::to_string(n);
  report(4, "soundness suite", broken.empty(), detail);
}

void criterion_aggregate() {
  const auto t0 = Clock::now();
  std::vector<NamedGraph> graphs;
  std::size_t lo = SIZE_MAX, hi = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    GenSpec spec;
    spec.num_vertices = 8 + i % 9;
    spec.edge_prob = 1.2 / static_cast<double>(spec.num_vertices);
    spec.seed = 7000 + i;
    spec.min_prime_paths = 7;
    spec.max_prime_paths = 150;
    auto g = generate_random_graph(spec);
    const auto n = prime_paths(g).size();
    lo = std::min(lo, n);
    hi = std::max(hi, n);
    graphs.push_back({std::to_string(spec.seed), std::move(g)});
  }
  const auto rep = run_comparison(graphs, CoverageCriterion::PrimePath, /*dedup=*/false);
  const double secs = seconds_since(t0);
  const auto& a = rep.aggregate;
  report(5, "aggregate shape", a.rows == 500 && a.count_reduction_pct >= 50.0 && a.lower_bound_gap_pct <= 10.0 && secs < 600,
         "graphs=" + std::to_string(a.rows) + " prime_paths=" + std::to_string(lo) + ".." + std::to_string(hi) +
             " count_reduction=" + fmt(a.count_reduction_pct) + "% (need >=50) lower_bound_gap=" +
             fmt(a.lower_bound_gap_pct) + "% (need <=10) length_reduction=" + fmt(a.length_reduction_pct) +
             "% time=" + fmt(secs, 1) + "s");
}

void criterion_parity() {
  std::size_t node_graphs = 0, node_ok = 0;
  std::vector<DirectedGraph> corpus{graph(read_data("running_example.g")), graph(read_data("self_loop.g")),
                                    graph(read_data("diamond.g"))};
  for (std::uint64_t seed = 0; seed < 100; ++seed)
    corpus.push_back(generate_random_graph({3 + seed % 12, 0.2, seed, std::nullopt, std::nullopt}));
  for (const auto& g : corpus) {
    ++node_graphs;
    if (minimize_test_paths(g, CoverageCriterion::Node).report.lower_bound == 1) ++node_ok;
  }
  const auto d = graph(read_data("diamond.g"));
  const auto r = minimize_test_paths(d, CoverageCriterion::Edge);
  const auto expected = std::max(d.out_degree(d.source()), d.in_degree(d.sink()));
  const auto brute = oracle_min_paths(d, r.requirements);
  const bool ok = node_ok == node_graphs && r.report.count == 2 && r.report.lower_bound == 2 && expected == 2 &&
                  brute.completed && brute.min_paths == 2;
  report(6, "criterion parity", ok,
         "node lower_bound=1 on " + std::to_string(node_ok) + "/" + std::to_string(node_graphs) +
             " graphs; diamond edge count=" + std::to_string(r.report.count) +
             " lower_bound=" + std::to_string(r.report.lower_bound) + " max_degree=" + std::to_string(expected) +
             " brute_force=" + std::to_string(brute.min_paths));
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(MINTP_CLI) + " " + args + " 2>&1";
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int st = ::pclose(pipe);
  out += "\nexit=" + std::to_string(WIFEXITED(st) ? WEXITSTATUS(st) : -1);
  return out;
}

std::string read_tree(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    all += f.filename().string() + "\n" + ss.str();
  }
  return all;
}

void criterion_determinism() {
  const std::string data = MINTP_DATA_DIR;
  const auto tmp = std::filesystem::temp_directory_path() / ("mintp_accept_" + std::to_string(::getpid()));
  std::vector<std::string> commands;
  for (const auto& [c, name] : kCriterionNames)
    for (const char* file : {"running_example.g", "self_loop.g", "diamond.g"}) {
      const std::string in = " --input " + data + "/" + file + " --criterion " + std::string(name) + " --no-timings";
      commands.push_back("minimize" + in + " --dump-requirements --dump-transform --dump-acyclic --dump-flow");
      commands.push_back("baseline" + in);
      commands.push_back("baseline" + in + " --no-dedup");
    }
  commands.push_back("minimize --input " + data + "/running_example.g --edge-rule any-walk --no-timings");
  commands.push_back("minimize");  // usage error

  std::size_t same = 0, total = 0;
  for (const auto& cmd : commands) {
    ++total;
    if (run_cli(cmd) == run_cli(cmd)) ++same;
  }

  // gen-random twice into separate directories, then compare over the result
  std::string gen[2], cmp[2];
  for (int k = 0; k < 2; ++k) {
    const auto dir = tmp / ("gen" + std::to_string(k));
    std::filesystem::remove_all(dir);
    const auto log = run_cli("gen-random --vertices 10 --edge-prob 0.12 --seed 77 --count 40 --max-prime-paths 150 --out-dir " +
                             dir.string());
    gen[k] = log + read_tree(dir);
    const auto csv = tmp / ("cmp" + std::to_string(k) + ".csv");
    cmp[k] = run_cli("compare --criterion prime-path --glob '" + dir.string() + "/*.g' --no-dedup --no-timings --csv " +
                     csv.string());
    std::ifstream in(csv, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    cmp[k] += ss.str();
  }
  total += 2;
  same += (gen[0] == gen[1]) + (cmp[0] == cmp[1]);
  std::filesystem::remove_all(tmp);
  report(7, "determinism", same == total, std::to_string(same) + "/" + std::to_string(total) + " commands byte-identical across two runs");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_running_example();
  criterion_self_loop();
  criterion_optimality();
  criterion_soundness();
  criterion_aggregate();
  criterion_parity();
  criterion_determinism();
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << " (" << fmt(seconds_since(t0), 1) << "s)" << std::endl;
  return failures == 0 ? 0 : 1;
}
