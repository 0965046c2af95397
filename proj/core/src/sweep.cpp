#include "ydsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "ydsim/sampling.hpp"
#include "ydsim/shadow.hpp"
#include "ydsim/stats.hpp"
#include "ydsim/thresholds.hpp"

namespace ydsim {

Statistic statistic_from_name(const std::string& name) {
  if (name == "core_f1") return Statistic::core_f1;
  if (name == "core_f2") return Statistic::core_f2;
  if (name == "betti") return Statistic::betti;
  if (name == "c_shadow") return Statistic::c_shadow;
  if (name == "r_shadow") return Statistic::r_shadow;
  if (name == "collapsible_fraction") return Statistic::collapsible_fraction;
  if (name == "gravel_fraction") return Statistic::gravel_fraction;
  if (name == "delta_k") return Statistic::delta_k;
  throw std::invalid_argument("unknown statistic: " + name);
}

std::string statistic_name(Statistic s) {
  switch (s) {
    case Statistic::core_f1: return "core_f1";
    case Statistic::core_f2: return "core_f2";
    case Statistic::betti: return "betti";
    case Statistic::c_shadow: return "c_shadow";
    case Statistic::r_shadow: return "r_shadow";
    case Statistic::collapsible_fraction: return "collapsible_fraction";
    case Statistic::gravel_fraction: return "gravel_fraction";
    case Statistic::delta_k: return "delta_k";
  }
  return "?";
}

namespace {

double factorial(uint32_t k) {
  double f = 1.0;
  for (uint32_t i = 2; i <= k; ++i) f *= i;
  return f;
}

double theory_value(Statistic s, const RegimeDensities& rd,
                    const SweepConfig& cfg) {
  switch (s) {
    case Statistic::core_f1: return rd.core_dminus1_density;
    case Statistic::core_f2: return rd.core_d_density;
    case Statistic::betti: return rd.betti_density;
    case Statistic::c_shadow: return rd.shadow_density;
    case Statistic::r_shadow:
      return rd.betti_density > 0.0 ? rd.shadow_density : 0.0;
    case Statistic::collapsible_fraction: {
      // below gamma_d the core is a.a.s. a gravel whose component count is
      // Poisson with mean c^{d+2}/(d+2)!
      double lambda =
          std::pow(rd.c, static_cast<double>(cfg.d + 2)) / factorial(cfg.d + 2);
      return rd.t >= 1.0 ? std::exp(-lambda) : 0.0;
    }
    case Statistic::gravel_fraction: return rd.t >= 1.0 ? 1.0 : 0.0;
    case Statistic::delta_k: {
      auto ts = t_sequence(rd.c, cfg.d, cfg.delta_k_phases);
      double tkm1 = cfg.delta_k_phases >= 1 ? ts[cfg.delta_k_phases - 1] : 0.0;
      return rd.c * std::pow(1.0 - tkm1, static_cast<double>(cfg.d));
    }
  }
  return 0.0;
}

struct TrialValues {
  std::vector<double> by_stat;  // parallel to cfg.stats
};

TrialValues run_trial(const SweepConfig& cfg, uint32_t n, double c,
                      uint64_t trial_seed) {
  TrialValues out;
  out.by_stat.resize(cfg.stats.size(), 0.0);

  SampleConfig sc;
  sc.n = n;
  sc.d = cfg.d;
  sc.c = c;
  sc.seed = trial_seed;
  Complex y = sample_binomial(sc);

  const double cn_d = static_cast<double>(binomial(n, cfg.d));
  const double cn_dp1 = static_cast<double>(binomial(n, cfg.d + 1));

  bool need_core = false, need_betti = false;
  for (Statistic s : cfg.stats)
    switch (s) {
      case Statistic::core_f1:
      case Statistic::core_f2:
      case Statistic::collapsible_fraction:
      case Statistic::gravel_fraction:
        need_core = true;
        break;
      case Statistic::betti:
        need_betti = true;
        break;
      default:
        break;
    }

  std::optional<CoreResult> core;
  if (need_core) core = collapse_to_core(y);
  uint64_t betti = 0;
  if (need_betti) betti = betti_via_core(y, cfg.field);

  for (size_t i = 0; i < cfg.stats.size(); ++i) {
    switch (cfg.stats[i]) {
      case Statistic::core_f1:
        out.by_stat[i] = core->core_dminus1_count / cn_d;
        break;
      case Statistic::core_f2:
        out.by_stat[i] = core->core.f_d() / cn_d;
        break;
      case Statistic::betti:
        out.by_stat[i] = betti / cn_d;
        break;
      case Statistic::c_shadow:
        out.by_stat[i] = c_shadow_size(y) / cn_dp1;
        break;
      case Statistic::r_shadow:
        out.by_stat[i] =
            r_shadow_size(y, cfg.field, trial_seed) / cn_dp1;
        break;
      case Statistic::collapsible_fraction:
        out.by_stat[i] = core->is_collapsible ? 1.0 : 0.0;
        break;
      case Statistic::gravel_fraction:
        out.by_stat[i] = core->is_gravel ? 1.0 : 0.0;
        break;
      case Statistic::delta_k: {
        IncidenceIndex idx(y);
        RootedScratch scratch(idx);
        auto rng = SplitMix64::substream(trial_seed, 0x726f6f74ULL);
        const uint64_t total = binomial(n, cfg.d);
        RunningStat deg;
        for (uint32_t r = 0; r < cfg.delta_k_roots; ++r) {
          uint64_t tau = rng.next_below(total);
          deg.add(static_cast<double>(rooted_collapse_degree(
              idx, tau, cfg.delta_k_phases, &scratch)));
        }
        out.by_stat[i] = deg.mean();
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("run_sweep: trials >= 1");
  if (cfg.n_list.empty()) throw std::invalid_argument("run_sweep: empty n list");
  if (cfg.c_step <= 0.0) throw std::invalid_argument("run_sweep: c_step > 0");
  for (Statistic s : cfg.stats)
    if (s == Statistic::r_shadow && !cfg.force)
      for (uint32_t n : cfg.n_list)
        if (n > cfg.rshadow_n_cap)
          throw std::runtime_error(
              "run_sweep: r_shadow at n=" + std::to_string(n) +
              " exceeds the cost cap (" + std::to_string(cfg.rshadow_n_cap) +
              "); pass force to run anyway");

  std::vector<double> c_grid;
  for (double c = cfg.c_min; c <= cfg.c_max + 1e-12; c += cfg.c_step)
    c_grid.push_back(c);

  std::vector<SweepRow> rows;
  for (uint32_t n : cfg.n_list) {
    for (size_t ci = 0; ci < c_grid.size(); ++ci) {
      double c = c_grid[ci];
      RegimeDensities rd;
      if (c > 0.0) {
        rd = regime_densities(c, cfg.d);
      } else {  // empty model: every density is zero, collapse is certain
        rd.c = 0.0;
        rd.d = cfg.d;
        rd.t = 1.0;
      }

      std::vector<TrialValues> values(cfg.trials);
      uint64_t point_key = (static_cast<uint64_t>(n) << 32) ^
                           (static_cast<uint64_t>(ci) << 8) ^ cfg.d;
      auto trial_seed = [&](uint32_t t) {
        return SplitMix64::mix(cfg.seed ^ SplitMix64::mix(point_key)) + t;
      };

      uint32_t nthreads = std::max<uint32_t>(1, cfg.threads);
      if (nthreads == 1) {
        for (uint32_t t = 0; t < cfg.trials; ++t)
          values[t] = run_trial(cfg, n, c, trial_seed(t));
      } else {
        std::vector<std::thread> workers;
        std::atomic<uint32_t> next{0};
        for (uint32_t w = 0; w < nthreads; ++w)
          workers.emplace_back([&]() {
            for (;;) {
              uint32_t t = next.fetch_add(1);
              if (t >= cfg.trials) return;
              values[t] = run_trial(cfg, n, c, trial_seed(t));
            }
          });
        for (auto& th : workers) th.join();
      }

      for (size_t i = 0; i < cfg.stats.size(); ++i) {
        RunningStat agg;
        for (uint32_t t = 0; t < cfg.trials; ++t)
          agg.add(values[t].by_stat[i]);
        SweepRow row;
        row.d = cfg.d;
        row.n = n;
        row.c = c;
        row.stat = statistic_name(cfg.stats[i]);
        row.mean = agg.mean();
        row.stderr_mean = agg.stderr_mean();
        row.theory = theory_value(cfg.stats[i], rd, cfg);
        row.trials = cfg.trials;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

namespace {
std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}
}  // namespace

std::string emit_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "# densities: core_f1,core_f2,betti per C(n,d); c_shadow,r_shadow "
         "per C(n,d+1); fractions and delta_k are plain trial averages\n";
  out << "d,n,c,stat,mean,stderr,theory,trials\n";
  for (const auto& r : rows)
    out << r.d << ',' << r.n << ',' << format_double(r.c) << ',' << r.stat
        << ',' << format_double(r.mean) << ',' << format_double(r.stderr_mean)
        << ',' << format_double(r.theory) << ',' << r.trials << '\n';
  return out.str();
}

std::string emit_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows)
    arr.push_back({{"d", r.d},
                   {"n", r.n},
                   {"c", r.c},
                   {"stat", r.stat},
                   {"mean", r.mean},
                   {"stderr", r.stderr_mean},
                   {"theory", r.theory},
                   {"trials", r.trials}});
  return arr.dump(2);
}

void emit_file(const std::vector<SweepRow>& rows, const std::string& path,
               bool json) {
  if (rows.empty()) throw std::invalid_argument("emit_file: no rows");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_file: cannot write " + path);
  out << (json ? emit_json(rows) : emit_csv(rows));
}

SweepConfig parse_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  SweepConfig cfg;
  cfg.stats.clear();
  std::string line;
  auto split_list = [](const std::string& v) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : v) {
      if (ch == ',') {
        if (!cur.empty()) parts.push_back(cur);
        cur.clear();
      } else if (!isspace(static_cast<unsigned char>(ch))) {
        cur.push_back(ch);
      }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
  };
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    // strip '=' and whitespace
    rest.erase(std::remove(rest.begin(), rest.end(), '='), rest.end());
    while (!rest.empty() && isspace(static_cast<unsigned char>(rest.front())))
      rest.erase(rest.begin());
    while (!rest.empty() && isspace(static_cast<unsigned char>(rest.back())))
      rest.pop_back();

    if (key == "d") cfg.d = std::stoul(rest);
    else if (key == "n")
      for (auto& s : split_list(rest)) cfg.n_list.push_back(std::stoul(s));
    else if (key == "c_min") cfg.c_min = std::stod(rest);
    else if (key == "c_max") cfg.c_max = std::stod(rest);
    else if (key == "c_step") cfg.c_step = std::stod(rest);
    else if (key == "trials") cfg.trials = std::stoul(rest);
    else if (key == "seed") cfg.seed = std::stoull(rest);
    else if (key == "stats")
      for (auto& s : split_list(rest)) cfg.stats.push_back(statistic_from_name(s));
    else if (key == "field")
      cfg.field = rest == "rational" ? FieldChoice::rationals()
                                     : FieldChoice::prime();
    else if (key == "prime") cfg.field = FieldChoice::prime(std::stoul(rest));
    else if (key == "threads") cfg.threads = std::stoul(rest);
    else if (key == "delta_k") cfg.delta_k_phases = std::stoul(rest);
    else if (key == "delta_k_roots") cfg.delta_k_roots = std::stoul(rest);
    else if (key == "rshadow_n_cap") cfg.rshadow_n_cap = std::stoul(rest);
    else if (key == "force") cfg.force = rest == "1" || rest == "true";
    else throw std::invalid_argument("config: unknown key " + key);
  }
  return cfg;
}

}  // namespace ydsim
