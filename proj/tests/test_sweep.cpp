#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ydsim/sweep.hpp"
#include "ydsim/thresholds.hpp"

using namespace ydsim;

namespace {
SweepConfig small_config() {
  SweepConfig cfg;
  cfg.d = 2;
  cfg.n_list = {30};
  cfg.c_min = 2.0;
  cfg.c_max = 3.0;
  cfg.c_step = 1.0;
  cfg.trials = 4;
  cfg.seed = 9;
  cfg.stats = {Statistic::core_f1, Statistic::core_f2, Statistic::betti,
               Statistic::collapsible_fraction};
  return cfg;
}
}  // namespace

TEST_CASE("sweep reproducibility") {
  auto cfg = small_config();
  auto rows1 = run_sweep(cfg);
  auto rows2 = run_sweep(cfg);
  CHECK(emit_csv(rows1) == emit_csv(rows2));
  cfg.threads = 3;  // trial-level threading must not change the bytes
  auto rows3 = run_sweep(cfg);
  CHECK(emit_csv(rows1) == emit_csv(rows3));
}

TEST_CASE("zero density point") {
  SweepConfig cfg = small_config();
  cfg.c_min = cfg.c_max = 0.0;
  cfg.trials = 1;
  auto rows = run_sweep(cfg);
  for (const auto& r : rows) {
    CHECK(r.mean == (r.stat == "collapsible_fraction" ? 1.0 : 0.0));
    CHECK(r.theory == (r.stat == "collapsible_fraction" ? 1.0 : 0.0));
  }
}

TEST_CASE("theory column matches the thresholds module") {
  auto rows = run_sweep(small_config());
  for (const auto& r : rows) {
    RegimeDensities rd = regime_densities(r.c, r.d);
    double expected = 0;
    if (r.stat == "core_f1") expected = rd.core_dminus1_density;
    else if (r.stat == "core_f2") expected = rd.core_d_density;
    else if (r.stat == "betti") expected = rd.betti_density;
    else continue;
    CHECK(std::fabs(r.theory - expected) < 1e-10);
  }
}

TEST_CASE("csv format") {
  auto rows = run_sweep(small_config());
  std::string csv = emit_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.front() == '#');
  std::getline(in, line);
  CHECK(line == "d,n,c,stat,mean,stderr,theory,trials");
  size_t data_lines = 0;
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 7);  // 8 columns
    ++data_lines;
  }
  CHECK(data_lines == rows.size());
}

TEST_CASE("json round trip") {
  auto rows = run_sweep(small_config());
  auto parsed = nlohmann::json::parse(emit_json(rows));
  REQUIRE(parsed.size() == rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i]["stat"] == rows[i].stat);
    CHECK(parsed[i]["mean"].get<double>() == doctest::Approx(rows[i].mean));
  }
}

TEST_CASE("r_shadow cost cap") {
  SweepConfig cfg = small_config();
  cfg.stats = {Statistic::r_shadow};
  cfg.n_list = {400};
  CHECK_THROWS_AS(run_sweep(cfg), std::runtime_error);
  cfg.n_list = {20};
  CHECK_NOTHROW(run_sweep(cfg));
}

TEST_CASE("config file parsing") {
  const char* path = "/tmp/ydsim_test_sweep.cfg";
  {
    std::ofstream out(path);
    out << "# comment line\n";
    out << "d = 2\n";
    out << "n 25,30\n";
    out << "c_min = 2.0\nc_max = 3.0\nc_step = 0.5\n";
    out << "trials = 3\nseed = 123\n";
    out << "stats core_f1,betti\n";
    out << "field rational\n";
  }
  SweepConfig cfg = parse_sweep_config(path);
  CHECK(cfg.d == 2);
  CHECK(cfg.n_list == std::vector<uint32_t>{25, 30});
  CHECK(cfg.c_step == 0.5);
  CHECK(cfg.trials == 3);
  CHECK(cfg.seed == 123);
  REQUIRE(cfg.stats.size() == 2);
  CHECK(cfg.stats[1] == Statistic::betti);
  CHECK(cfg.field.kind == FieldKind::rationals);
  std::remove(path);

  {
    std::ofstream out(path);
    out << "bogus_key = 1\n";
  }
  CHECK_THROWS_AS(parse_sweep_config(path), std::invalid_argument);
  std::remove(path);
}

TEST_CASE("delta_k sweep statistic") {
  SweepConfig cfg;
  cfg.d = 2;
  cfg.n_list = {120};
  cfg.c_min = cfg.c_max = 3.0;
  cfg.c_step = 1.0;
  cfg.trials = 2;
  cfg.seed = 77;
  cfg.stats = {Statistic::delta_k};
  cfg.delta_k_phases = 4;
  cfg.delta_k_roots = 400;
  auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 1);
  auto ts = t_sequence(3.0, 2, 3);
  CHECK(rows[0].theory ==
        doctest::Approx(3.0 * (1 - ts[3]) * (1 - ts[3])).epsilon(1e-10));
  CHECK(std::fabs(rows[0].mean - rows[0].theory) < 0.5);
}
