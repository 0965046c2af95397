#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ydsim/homology.hpp"

namespace ydsim {

enum class Statistic {
  core_f1,
  core_f2,
  betti,
  c_shadow,
  r_shadow,
  collapsible_fraction,
  gravel_fraction,
  delta_k,
};

Statistic statistic_from_name(const std::string& name);
std::string statistic_name(Statistic s);

struct SweepConfig {
  uint32_t d = 2;
  std::vector<uint32_t> n_list;
  double c_min = 1.0, c_max = 1.0, c_step = 0.5;
  uint32_t trials = 1;
  uint64_t seed = 0;
  std::vector<Statistic> stats;
  FieldChoice field = FieldChoice::prime();
  uint32_t threads = 1;
  uint32_t delta_k_phases = 6;
  uint32_t delta_k_roots = 1000;
  uint32_t rshadow_n_cap = 250;  // r_shadow refuses above this without force
  bool force = false;
};

// parse a flat key-value config file ("key = value" or "key value" lines,
// '#' comments); unknown keys are an error
SweepConfig parse_sweep_config(const std::string& path);

struct SweepRow {
  uint32_t d = 2;
  uint32_t n = 0;
  double c = 0;
  std::string stat;
  double mean = 0;
  double stderr_mean = 0;
  double theory = 0;
  uint32_t trials = 0;
};

// Monte Carlo sweep over the (n, c) grid. Normalization conventions:
// core_f1, core_f2 and betti are densities per C(n,d) (the figure-style
// normalization), shadows per C(n,d+1), fractions and delta_k are plain
// averages. The theory column carries the matching limit expression.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

std::string emit_csv(const std::vector<SweepRow>& rows);
std::string emit_json(const std::vector<SweepRow>& rows);
void emit_file(const std::vector<SweepRow>& rows, const std::string& path,
               bool json);

}  // namespace ydsim
