#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cycdisc/builder.hpp"
#include "cycdisc/dsep.hpp"
#include "cycdisc/errors.hpp"
#include "cycdisc/graph.hpp"
#include "cycdisc/harness.hpp"
#include "cycdisc/mec.hpp"
#include "cycdisc/partition.hpp"
#include "cycdisc/sccr.hpp"
#include "cycdisc/score.hpp"
#include "cycdisc/search.hpp"

namespace {

using namespace cycdisc;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

struct SeedOption {
  std::optional<std::uint64_t> value;

  std::uint64_t resolve() {
    if (!value) {
      std::random_device rd;
      value = (std::uint64_t{rd()} << 32) | rd();
      std::cerr << "seed: " << *value << "\n";
    }
    return *value;
  }
};

void log_config(const std::string& command, const std::vector<std::pair<std::string, std::string>>& items) {
  std::cerr << "config: " << command;
  for (const auto& [k, v] : items) std::cerr << " " << k << "=" << v;
  std::cerr << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal discovery for directed graphs with cycles"};
  app.require_subcommand(1);
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "More detail on standard error");

  std::function<int()> action;

  // dsep enumerate
  auto* dsep = app.add_subcommand("dsep", "d-separation queries");
  dsep->require_subcommand(1);
  auto* dsep_enum = dsep->add_subcommand("enumerate", "List every d-separation statement of a graph");
  std::string graph_file;
  std::string out_file;
  dsep_enum->add_option("graph", graph_file, "Graph file")->required();
  dsep_enum->add_option("-o,--output", out_file, "Output CI file (default standard output)");
  dsep_enum->callback([&] {
    action = [&] {
      log_config("dsep enumerate", {{"graph", graph_file}, {"output", out_file.empty() ? "-" : out_file}});
      const auto g = parse_graph(read_file(graph_file));
      write_output(out_file, format_ci(enumerate_ci(g)));
      return kOk;
    };
  });

  // mec compare
  auto* mec = app.add_subcommand("mec", "Markov equivalence");
  mec->require_subcommand(1);
  auto* mec_cmp = mec->add_subcommand("compare", "Compare two graphs by features and by CI sets");
  std::string graph_a;
  std::string graph_b;
  mec_cmp->add_option("first", graph_a, "Graph file")->required();
  mec_cmp->add_option("second", graph_b, "Graph file")->required();
  mec_cmp->callback([&] {
    action = [&] {
      log_config("mec compare", {{"first", graph_a}, {"second", graph_b}});
      const auto g1 = parse_graph(read_file(graph_a));
      const auto g2 = parse_graph(read_file(graph_b));
      if (g1.n() != g2.n()) throw ParseError("graphs have different vertex counts");
      const auto report = markov_equivalence_report(g1, g2);
      const bool features = markov_equivalent(g1, g2);
      std::cout << "features " << (features ? "equal" : "differ") << "\n";
      static const char* names[] = {"p-adjacencies", "conductors", "perfect non-conductors",
                                    "imperfect pairs", "itineraries", "itinerary triples"};
      for (std::size_t i = 0; i < report.conditions.size(); ++i) {
        std::cout << "  " << names[i] << ": " << (report.conditions[i] ? "same" : "different") << "\n";
      }
      if (g1.n() <= kCiGuard) std::cout << "ci-sets " << (ci_equivalent(g1, g2) ? "equal" : "differ") << "\n";
      return features ? kOk : kFailed;
    };
  });

  // score
  auto* score = app.add_subcommand("score", "Score a partition against a CI set");
  std::string ci_file;
  std::string partition_file;
  bool show_sets = false;
  score->add_option("ci", ci_file, "CI file")->required();
  score->add_option("partition", partition_file, "Partition file")->required();
  score->add_flag("--sets", show_sets, "Also print the underlying sets");
  score->callback([&] {
    action = [&] {
      log_config("score", {{"ci", ci_file}, {"partition", partition_file}});
      const auto ci = parse_ci(read_file(ci_file));
      const auto p = parse_partition(read_file(partition_file));
      if (p.n() != ci.n()) throw ParseError("partition and CI set disagree on n");
      std::cout << format_score(score_vector(ci, p)) << "\n";
      if (show_sets) std::cout << format_summary(compute_sets(ci, p));
      return kOk;
    };
  });

  // discover-mec
  auto* dmec = app.add_subcommand("discover-mec", "Greedy search for an optimal ordered partition");
  SeedOption seed;
  int plateau = 0;
  std::size_t plateau_out = 0;
  dmec->add_option("ci", ci_file, "CI file")->required();
  dmec->add_option("--plateau", plateau, "Equal-score steps before giving up (default by n)");
  dmec->add_option("--seed", seed.value, "Random seed");
  dmec->add_option("-o,--output", out_file, "Output partition file");
  dmec->add_option("--list-plateau", plateau_out, "Print up to this many equal-score partitions");
  dmec->callback([&] {
    action = [&] {
      const auto ci = parse_ci(read_file(ci_file));
      SearchConfig cfg;
      cfg.n_plateau = plateau > 0 ? plateau : default_plateau(ci.n());
      cfg.seed = seed.resolve();
      log_config("discover-mec", {{"ci", ci_file}, {"plateau", std::to_string(cfg.n_plateau)},
                                  {"seed", std::to_string(cfg.seed)}});
      const auto res = greedy_discover(ci, cfg);
      write_output(out_file, format_partition(res.best));
      std::cerr << "score " << format_score(res.best_score) << ", " << res.stats.evaluations << " evaluations\n";
      for (std::size_t i = 0; i < res.plateau.size() && i < plateau_out; ++i) std::cout << describe(res.plateau[i]) << "\n";
      return kOk;
    };
  });

  // discover-graph
  auto* dgraph = app.add_subcommand("discover-graph", "Greedy search followed by graph construction");
  std::string solver = "cc";
  std::size_t max_partitions = 300;
  int attempts = 20;
  int bound = 100;
  dgraph->add_option("ci", ci_file, "CI file")->required();
  dgraph->add_option("--solver", solver, "Component solver")->check(CLI::IsMember({"cc", "flow"}));
  dgraph->add_option("--max-partitions", max_partitions, "Equal-score partitions to try");
  dgraph->add_option("--attempts", attempts, "Construct-and-correct runs per block");
  dgraph->add_option("--bound", bound, "Attempt bound inside one construct-and-correct run");
  dgraph->add_option("--plateau", plateau, "Equal-score steps before giving up (default by n)");
  dgraph->add_option("--seed", seed.value, "Random seed");
  dgraph->add_option("-o,--output", out_file, "Output graph file");
  dgraph->callback([&] {
    action = [&] {
      const auto ci = parse_ci(read_file(ci_file));
      SearchConfig cfg;
      cfg.n_plateau = plateau > 0 ? plateau : default_plateau(ci.n());
      cfg.seed = seed.resolve();
      BuildLimits limits;
      limits.max_partitions = max_partitions;
      limits.runs = attempts;
      limits.cc_attempts = bound;
      limits.seed = cfg.seed;
      log_config("discover-graph", {{"ci", ci_file}, {"solver", solver}, {"max-partitions", std::to_string(max_partitions)},
                                    {"attempts", std::to_string(attempts)}, {"bound", std::to_string(bound)},
                                    {"plateau", std::to_string(cfg.n_plateau)}, {"seed", std::to_string(cfg.seed)}});
      const auto found = greedy_discover(ci, cfg);
      const auto built =
          build_graph(ci, found, solver == "flow" ? SolverKind::flow : SolverKind::construct_correct, limits);
      if (!built.graph) {
        std::cerr << "failed after " << built.partitions_tried << " partitions tried and " << built.partitions_screened
                  << " screened\n";
        for (const auto& [why, count] : built.screening_reasons) std::cerr << "  screened (" << why << "): " << count << "\n";
        for (const auto& f : built.failures) {
          if (verbosity > 0 || &f == &built.failures.back()) std::cerr << "  " << describe(f.partition) << ": " << f.reason << "\n";
        }
        return kFailed;
      }
      std::cerr << "partition " << describe(*built.partition) << " (" << built.partitions_tried << " tried)\n";
      write_output(out_file, format_graph(*built.graph));
      return kOk;
    };
  });

  // sccr cc / sccr flow
  auto* sccr = app.add_subcommand("sccr", "Solve one strongly connected component recovery instance");
  sccr->require_subcommand(1);
  std::string inst_file;
  auto* sccr_cc = sccr->add_subcommand("cc", "Construct and correct");
  sccr_cc->add_option("instance", inst_file, "Instance file")->required();
  sccr_cc->add_option("--attempts", bound, "Attempt bound N");
  sccr_cc->add_option("--runs", attempts, "Independent runs");
  sccr_cc->add_option("--seed", seed.value, "Random seed");
  auto* sccr_flow = sccr->add_subcommand("flow", "Exhaustive solver");
  sccr_flow->add_option("instance", inst_file, "Instance file")->required();
  auto print_outcome = [&](const SccrInstance& inst, const SccrOutcome& res) {
    if (!res.edges) {
      std::cerr << "failed: " << res.reason << "\n";
      return kFailed;
    }
    for (auto [u, v] : *res.edges) std::cout << u << " " << v << "\n";
    const auto check = validate_output(*res.edges, inst);
    for (const auto& msg : check.violations) std::cerr << "violation: " << msg << "\n";
    return check.ok ? kOk : kFailed;
  };
  sccr_cc->callback([&] {
    action = [&] {
      const auto inst = parse_instance(read_file(inst_file));
      const auto s = seed.resolve();
      log_config("sccr cc", {{"instance", inst_file}, {"attempts", std::to_string(bound)},
                             {"runs", std::to_string(attempts)}, {"seed", std::to_string(s)}});
      return print_outcome(inst, construct_correct_runs(inst, bound, attempts, s));
    };
  });
  sccr_flow->callback([&] {
    action = [&] {
      const auto inst = parse_instance(read_file(inst_file));
      log_config("sccr flow", {{"instance", inst_file}});
      return print_outcome(inst, solve_flow(inst));
    };
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "Random-graph experiments");
  ExperimentSpec spec;
  std::string algo = "mec";
  std::string csv_file;
  std::string json_file;
  bool no_timing = false;
  sim->add_option("--algo", algo, "Algorithm under test")->check(CLI::IsMember({"mec", "sccr-cc", "sccr-flow", "end2end"}));
  sim->add_option("--n", spec.n, "Vertex count")->check(CLI::Range(1, kCiGuard));
  sim->add_option("--p", spec.p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  sim->add_option("--trials", spec.trials, "Number of random graphs")->check(CLI::PositiveNumber);
  sim->add_option("--plateau", spec.n_plateau, "Equal-score steps (default by n)");
  sim->add_option("--bound", spec.sccr_bound, "Attempt bound inside one construct-and-correct run");
  sim->add_option("--attempts", spec.sccr_attempts, "Whole-graph attempts in the SCCR experiment");
  sim->add_option("--max-partitions", spec.max_partitions, "Partitions tried end to end");
  sim->add_option("--seed", seed.value, "Random seed");
  sim->add_option("--csv", csv_file, "Per-trial CSV (default standard output)");
  sim->add_option("--json", json_file, "Aggregate JSON (default standard error)");
  sim->add_flag("--no-timing", no_timing, "Leave timings out so reports are reproducible byte for byte");
  sim->callback([&] {
    action = [&] {
      spec.algorithm = parse_algorithm(algo);
      spec.seed = seed.resolve();
      log_config("simulate", {{"algo", algo}, {"n", std::to_string(spec.n)}, {"p", std::to_string(spec.p)},
                              {"trials", std::to_string(spec.trials)}, {"seed", std::to_string(spec.seed)}});
      const auto report = run_experiment(spec);
      write_output(csv_file, report_csv(report, !no_timing));
      const auto json = report_json(report, !no_timing);
      if (json_file.empty()) {
        std::cerr << json;
      } else {
        write_output(json_file, json);
      }
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    return action ? action() : kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
