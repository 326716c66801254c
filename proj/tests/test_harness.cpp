#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cycdisc/harness.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace cycdisc;

TEST_CASE("extreme edge probabilities give empty and complete graphs") {
  CHECK(gen_er_graph(6, 0.0, 1).edge_count() == 0);
  CHECK(gen_er_graph(6, 1.0, 1).edge_count() == 30);
  CHECK(gen_er_graph(6, 0.4, 9).edges() == gen_er_graph(6, 0.4, 9).edges());
}

TEST_CASE("edge frequencies track p") {
  constexpr int n = 5;
  constexpr int seeds = 10000;
  std::vector<std::vector<int>> hits(n + 1, std::vector<int>(n + 1, 0));
  long long total = 0;
  for (int s = 0; s < seeds; ++s) {
    for (const auto& [u, v] : gen_er_graph(n, 0.3, static_cast<std::uint64_t>(s)).edges()) {
      ++hits[u][v];
      ++total;
    }
  }
  CHECK(std::abs(static_cast<double>(total) / (seeds * n * (n - 1)) - 0.3) < 0.01);
  for (int u = 1; u <= n; ++u) {
    for (int v = 1; v <= n; ++v) {
      if (u == v) {
        CHECK(hits[u][v] == 0);
      } else {
        CHECK(std::abs(hits[u][v] / static_cast<double>(seeds) - 0.3) < 0.025);
      }
    }
  }
}

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a : {Algorithm::mec, Algorithm::sccr_cc, Algorithm::sccr_flow, Algorithm::end2end}) {
    CHECK(parse_algorithm(algorithm_name(a)) == a);
  }
  CHECK_THROWS_AS(parse_algorithm("nope"), std::invalid_argument);
}

TEST_CASE("default plateau sizes") {
  CHECK(default_plateau(7) == 30);
  CHECK(default_plateau(8) == 30);
  CHECK(default_plateau(9) == 40);
  CHECK(default_plateau(12) == 50);
}

TEST_CASE("reports without timing repeat byte for byte") {
  for (Algorithm a : {Algorithm::mec, Algorithm::sccr_cc, Algorithm::sccr_flow, Algorithm::end2end}) {
    ExperimentSpec spec;
    spec.n = 5;
    spec.p = 0.3;
    spec.trials = 2;
    spec.algorithm = a;
    spec.seed = 12;
    const auto r1 = run_experiment(spec);
    const auto r2 = run_experiment(spec);
    CHECK(report_csv(r1, false) == report_csv(r2, false));
    CHECK(report_json(r1, false) == report_json(r2, false));
    CHECK(r1.trials.size() == 2);
  }
}

TEST_CASE("report layouts") {
  ExperimentSpec spec;
  spec.n = 4;
  spec.p = 0.25;
  spec.trials = 3;
  spec.seed = 1;
  const auto r = run_experiment(spec);
  const std::string csv = report_csv(r);
  CHECK(csv.rfind("seed,n,p,algorithm,outcome,millis,reason\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find(",4,0.25,mec,") != std::string::npos);

  const auto j = nlohmann::json::parse(report_json(r));
  CHECK(j["trials"] == 3);
  CHECK(j["algorithm"] == "mec");
  CHECK(j["successes"].get<int>() == static_cast<int>(r.successes()));
  CHECK(j.contains("millis"));
  CHECK_FALSE(nlohmann::json::parse(report_json(r, false)).contains("millis"));
}

TEST_CASE("the MEC experiment succeeds on small sparse graphs") {
  ExperimentSpec spec;
  spec.n = 5;
  spec.p = 0.2;
  spec.trials = 10;
  spec.seed = 3;
  const auto r = run_experiment(spec);
  CHECK(r.success_rate() >= 0.8);
  for (const auto& t : r.trials) CHECK(t.success == t.reason.empty());
}
