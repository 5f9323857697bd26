// mintp: minimum test paths for structural coverage criteria.
#include <glob.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mintp/mintp.hpp"

namespace {

using namespace mintp;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << text;
}

DirectedGraph load_graph(const std::string& path, bool prune) {
  std::vector<std::string> warnings;
  auto g = parse_graph(read_file(path), ParseOptions{prune}, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return g;
}

long long whole_ms(StageTimings::ms d) { return std::llround(d.count()); }

std::string format_report(const DirectedGraph& g, const TestPathReport& rep, bool with_flow, bool timings) {
  std::ostringstream out;
  for (const auto& tp : rep.paths) out << g.format(tp.path) << "\n";
  out << "# stats\n";
  out << "# paths=" << rep.count << " total_length=" << rep.total_length << " lower_bound=" << rep.lower_bound;
  if (with_flow) out << " f_min=" << rep.f_min;
  out << "\n";
  if (timings) {
    const auto& t = rep.timings;
    out << "# timings_ms alg1=" << whole_ms(t.requirements) << " alg2=" << whole_ms(t.transform)
        << " alg3=" << whole_ms(t.condense) << " alg45=" << whole_ms(t.min_flow) << " alg6=" << whole_ms(t.reconstruct)
        << " total=" << whole_ms(t.total) << "\n";
  }
  return out.str();
}

std::string format_requirements(const DirectedGraph& g, const RequirementSet& rs) {
  std::string out;
  for (const auto& p : rs.requirements) out += format_requirement(g, p) + "\n";
  return out;
}

struct Common {
  std::string input;
  std::string criterion = "prime-path";
  std::string output;
  bool prune = false;
  bool no_timings = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("-i,--input", c.input, "graph file")->required();
  cmd->add_option("-c,--criterion", c.criterion, "prime-path, edge-pair, edge, node, simple-round-trip, complete-round-trip");
  cmd->add_option("-o,--output", c.output, "write paths here instead of stdout");
  cmd->add_flag("--prune-unreachable", c.prune, "drop vertices off every source-to-sink path instead of failing");
  cmd->add_flag("--no-timings", c.no_timings, "leave out timings so output is reproducible");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum test paths covering a structural coverage criterion"};
  app.require_subcommand(1);

  Common mc;
  std::string edge_rule = "shortest-join";
  bool dump_reqs = false, dump_transform = false, dump_acyclic = false, dump_flow = false;
  auto* minimize = app.add_subcommand("minimize", "minimum number of test paths (transform graph + minimum flow)");
  add_common(minimize, mc);
  minimize->add_option("--edge-rule", edge_rule, "transform-graph edge rule: shortest-join or any-walk");
  minimize->add_flag("--dump-requirements", dump_reqs, "print test requirements to stderr");
  minimize->add_flag("--dump-transform", dump_transform, "print the transform graph to stderr");
  minimize->add_flag("--dump-acyclic", dump_acyclic, "print the condensed graph and its cycle records to stderr");
  minimize->add_flag("--dump-flow", dump_flow, "print the minimum flow to stderr");

  Common bc;
  bool no_dedup = false, base_dump_reqs = false;
  auto* baseline = app.add_subcommand("baseline", "one extended path per requirement");
  add_common(baseline, bc);
  baseline->add_flag("--no-dedup", no_dedup, "emit a path even for requirements already toured");
  baseline->add_flag("--dump-requirements", base_dump_reqs, "print test requirements to stderr");

  GenSpec gen;
  std::size_t count = 1;
  std::string out_dir;
  auto* gen_cmd = app.add_subcommand("gen-random", "write seeded random graphs");
  gen_cmd->add_option("--vertices", gen.num_vertices, "vertices per graph, including source and sink")->required();
  gen_cmd->add_option("--edge-prob", gen.edge_prob, "probability of each extra edge")->required();
  gen_cmd->add_option("--seed", gen.seed, "seed of the first graph; graph k uses seed + k")->required();
  gen_cmd->add_option("--count", count, "number of graphs");
  gen_cmd->add_option("--out-dir", out_dir, "directory for g<k>.g files")->required();
  gen_cmd->add_option("--max-prime-paths", gen.max_prime_paths, "regenerate graphs with more prime paths");
  gen_cmd->add_option("--min-prime-paths", gen.min_prime_paths, "regenerate graphs with fewer prime paths");

  std::string cmp_criterion = "prime-path", pattern, csv_path, cmp_rule = "shortest-join";
  bool cmp_no_dedup = false, cmp_no_timings = false, cmp_prune = false;
  auto* compare = app.add_subcommand("compare", "baseline vs minimized over a set of graphs, as CSV");
  compare->add_option("-c,--criterion", cmp_criterion, "coverage criterion");
  compare->add_option("--glob", pattern, "graph files, e.g. 'dir/*.g'")->required();
  compare->add_option("--csv", csv_path, "CSV output file (default stdout)");
  compare->add_option("--edge-rule", cmp_rule, "transform-graph edge rule");
  compare->add_flag("--no-dedup", cmp_no_dedup, "baseline emits one path per requirement");
  compare->add_flag("--no-timings", cmp_no_timings, "write 0 in timing columns");
  compare->add_flag("--prune-unreachable", cmp_prune, "drop vertices off every source-to-sink path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*minimize) {
      MinimizeOptions opts;
      opts.transform.rule = parse_edge_rule(edge_rule);
      const auto criterion = parse_criterion(mc.criterion);
      const auto g = load_graph(mc.input, mc.prune);
      const auto r = minimize_test_paths(g, criterion, opts);
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      if (dump_reqs) std::cerr << "# requirements\n" << format_requirements(g, r.requirements);
      if (!r.requirements.empty()) {
        if (dump_transform) std::cerr << "# transform graph\n" << r.transform.serialize();
        if (dump_acyclic) std::cerr << "# acyclic graph\n" << r.condensed.serialize();
        if (dump_flow) std::cerr << "# flow\n" << r.network.serialize();
      }
      write_output(mc.output, format_report(g, r.report, true, !mc.no_timings));
    } else if (*baseline) {
      const auto criterion = parse_criterion(bc.criterion);
      const auto g = load_graph(bc.input, bc.prune);
      const auto rs = enumerate_requirements(g, criterion);
      if (base_dump_reqs) std::cerr << "# requirements\n" << format_requirements(g, rs);
      const auto rep = baseline_paths(g, rs, !no_dedup);
      write_output(bc.output, format_report(g, rep, false, !bc.no_timings));
    } else if (*gen_cmd) {
      std::filesystem::create_directories(out_dir);
      const auto first = gen.seed;
      const auto width = std::to_string(count > 0 ? count - 1 : 0).size();
      for (std::size_t k = 0; k < count; ++k) {
        gen.seed = first + k;
        std::ostringstream name;
        name << "g" << std::setw(static_cast<int>(width)) << std::setfill('0') << k << ".g";
        write_output((std::filesystem::path(out_dir) / name.str()).string(),
                     "# seed " + std::to_string(gen.seed) + "\n" + serialize(generate_random_graph(gen)));
      }
    } else if (*compare) {
      MinimizeOptions opts;
      opts.transform.rule = parse_edge_rule(cmp_rule);
      const auto criterion = parse_criterion(cmp_criterion);
      glob_t found{};
      const int rc = ::glob(pattern.c_str(), 0, nullptr, &found);
      std::vector<std::string> files;
      if (rc == 0)
        for (std::size_t i = 0; i < found.gl_pathc; ++i) files.emplace_back(found.gl_pathv[i]);
      globfree(&found);
      if (rc != 0 && rc != GLOB_NOMATCH) throw input_error("cannot expand '" + pattern + "'");

      std::vector<ComparisonRow> rows;
      for (const auto& f : files) {
        try {
          rows.push_back(compare_one(f, load_graph(f, cmp_prune), criterion, !cmp_no_dedup, opts));
        } catch (const input_error& e) {
          ComparisonRow row;
          row.name = f;
          row.error = e.what();
          rows.push_back(row);
        }
      }
      for (const auto& r : rows)
        if (!r.ok()) std::cerr << "error: " << r.name << ": " << r.error << "\n";
      const auto agg = aggregate(rows);
      std::cerr << std::fixed << std::setprecision(2) << "# rows=" << agg.rows
                << " count_reduction_pct=" << agg.count_reduction_pct
                << " length_reduction_pct=" << agg.length_reduction_pct
                << " lower_bound_gap_pct=" << agg.lower_bound_gap_pct << "\n";
      write_output(csv_path, to_csv(rows, !cmp_no_timings));
    }
  } catch (const invariant_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
