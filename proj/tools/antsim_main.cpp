// Command-line front end: single runs, parameter sweeps, packaged acceptance
// experiments, and the exact-oracle comparison.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "antsim/antsim.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("ANTSIM_OUT");
  return env ? std::string(env) : std::string(".");
}

antsim::SimConfig load_config(const std::string& path,
                              const std::vector<std::string>& overrides,
                              std::optional<std::uint64_t> seed,
                              std::optional<std::int64_t> horizon) {
  antsim::KvConfig kv = antsim::parse_config_file(path);
  for (const auto& o : overrides) antsim::apply_override(kv, o);
  if (seed) kv["sim"]["seed"] = std::to_string(*seed);
  if (horizon) kv["sim"]["horizon"] = std::to_string(*horizon);
  return antsim::build_sim_config(kv);
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides,
            std::optional<std::uint64_t> seed, std::optional<std::int64_t> horizon,
            std::string out_prefix) {
  antsim::SimConfig cfg = load_config(config_path, overrides, seed, horizon);
  const antsim::ValidationReport report = antsim::validate_config(cfg);
  for (const auto& w : report.warnings)
    std::cerr << "warning: " << w.name << ": " << w.message << "\n";
  if (!report.ok()) {
    for (const auto& e : report.errors)
      std::cerr << "error: " << e.name << ": " << e.message << "\n";
    return 1;
  }
  const antsim::Trace trace = antsim::run(cfg);
  if (out_prefix.empty())
    out_prefix = default_out_dir() + "/run-" + std::to_string(cfg.seed);
  antsim::write_trace_csv(trace, out_prefix + ".csv");
  std::ofstream js(out_prefix + ".json");
  if (!js) {
    std::cerr << "error: cannot write " << out_prefix << ".json\n";
    return 1;
  }
  js << antsim::summary_json(trace, &report).dump(2) << "\n";
  std::cout << out_prefix << ".csv\n" << out_prefix << ".json\n";
  return 0;
}

struct SweepAxis {
  std::string path;  // section.key
  std::vector<std::string> values;
};

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& axis_specs,
              int seeds, const std::string& out_path, int jobs) {
  if (seeds < 1) {
    std::cerr << "error: --seeds must be >= 1\n";
    return 1;
  }
  std::vector<SweepAxis> axes;
  for (const auto& spec : axis_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: axis must be section.key=v1,v2,...: '" << spec << "'\n";
      return 1;
    }
    SweepAxis ax;
    ax.path = spec.substr(0, eq);
    for (const auto& v : antsim::io_detail::split(spec.substr(eq + 1), ','))
      ax.values.push_back(v);
    if (ax.values.empty() || (ax.values.size() == 1 && ax.values[0].empty())) {
      std::cerr << "error: axis '" << ax.path << "' has an empty value list\n";
      return 1;
    }
    axes.push_back(std::move(ax));
  }

  // Cartesian product of axis values.
  std::vector<std::vector<std::string>> cells{{}};
  for (const auto& ax : axes) {
    std::vector<std::vector<std::string>> grown;
    for (const auto& cell : cells)
      for (const auto& v : ax.values) {
        auto c = cell;
        c.push_back(v);
        grown.push_back(std::move(c));
      }
    cells = std::move(grown);
  }

  struct Row {
    std::vector<std::string> cell;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double avg_regret = 0.0, post_avg = 0.0, closeness = 0.0;
    std::int64_t exception_rounds = 0;
  };
  std::vector<Row> rows(cells.size() * std::size_t(seeds));

  antsim::exp_detail::parallel_for(
      std::int64_t(rows.size()), jobs, [&](std::int64_t i) {
        Row& row = rows[i];
        const auto& cell = cells[std::size_t(i) / seeds];
        const int seed_index = int(i % seeds);
        row.cell = cell;
        try {
          antsim::KvConfig kv = antsim::parse_config_file(config_path);
          for (std::size_t a = 0; a < axes.size(); ++a)
            antsim::apply_override(kv, axes[a].path + "=" + cell[a]);
          antsim::SimConfig cfg = antsim::build_sim_config(kv);
          cfg.seed += std::uint64_t(seed_index);
          row.seed = cfg.seed;
          const auto report = antsim::validate_config(cfg);
          if (!report.ok()) {
            row.error = "invalid-config";
            for (const auto& e : report.errors) row.error += ":" + e.name;
            return;
          }
          const antsim::Trace tr = antsim::run(cfg);
          row.avg_regret =
              double(tr.summary.total_regret) / double(std::max<std::int64_t>(cfg.horizon, 1));
          row.post_avg = antsim::exp_detail::post_burnin_avg_regret(tr);
          const double gs = antsim::critical_value(cfg.noise, cfg.demands, cfg.num_ants);
          row.closeness =
              gs > 0.0 ? antsim::closeness(tr, gs, cfg.demands, tr.burn_in) : 0.0;
          row.exception_rounds = tr.summary.exception_rounds;
          row.ok = true;
        } catch (const std::exception& e) {
          row.error = e.what();
        }
      });

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 1;
  }
  try {
    const antsim::SimConfig base = antsim::build_sim_config(antsim::parse_config_file(config_path));
    for (const auto& [key, value] : antsim::config_to_kv(base))
      out << "# base." << key << " = " << value << "\n";
  } catch (const std::exception& e) {
    out << "# base config unresolved: " << e.what() << "\n";
  }
  out << "# seeds_per_cell = " << seeds << "\n";
  for (const auto& ax : axes) out << ax.path << ",";
  out << "seed,avg_regret,post_burnin_avg_regret,closeness,exception_rounds,status\n";
  int failures = 0;
  for (const auto& row : rows) {
    for (const auto& v : row.cell) out << v << ",";
    out << row.seed << "," << row.avg_regret << "," << row.post_avg << ","
        << row.closeness << "," << row.exception_rounds << ","
        << (row.ok ? "ok" : row.error) << "\n";
    if (!row.ok) ++failures;
  }
  std::cout << out_path << " (" << rows.size() << " rows, " << failures
            << " failed cells)\n";
  return failures == int(rows.size()) && !rows.empty() ? 1 : 0;
}

int cmd_accept(const std::string& suite, int jobs) {
  std::vector<std::string> to_run;
  if (suite == "all") to_run = antsim::suite_names();
  else to_run.push_back(suite);
  bool all_pass = true;
  try {
    for (const auto& name : to_run) {
      const antsim::SuiteResult result = antsim::run_suite(name, jobs);
      antsim::print_suite(result, std::cout);
      all_pass = all_pass && result.pass();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << (all_pass ? "ALL SUITES PASS" : "SUITE FAILURES PRESENT") << "\n";
  return all_pass ? 0 : 1;
}

int cmd_oracle(const std::string& config_path, const std::vector<std::string>& overrides,
               std::int64_t runs) {
  const antsim::SimConfig cfg = load_config(config_path, overrides, std::nullopt, std::nullopt);
  const antsim::DivergenceReport rep = antsim::compare_mc_oracle(cfg, runs);
  nlohmann::json j{{"tv_distance", rep.tv_distance}, {"tolerance", rep.tolerance},
                   {"support", rep.support},         {"runs", rep.runs},
                   {"pass", rep.pass}};
  std::cout << j.dump(2) << "\n";
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic simulator for distributed task allocation under noisy binary feedback"};
  app.require_subcommand(1);

  std::string config_path, out, suite = "all";
  std::vector<std::string> overrides, axis_specs;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> horizon;
  int jobs = int(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  int seeds = 1;
  std::int64_t runs = 100000;

  auto* run_cmd = app.add_subcommand("run", "Run one simulation; write trace CSV + summary JSON");
  run_cmd->add_option("--config", config_path, "Config file")->required();
  run_cmd->add_option("--override", overrides, "Override section.key=value");
  run_cmd->add_option("--seed", seed, "Seed override");
  run_cmd->add_option("--horizon", horizon, "Horizon override");
  run_cmd->add_option("--out", out, "Output path prefix (default $ANTSIM_OUT/run-<seed>)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep; combined summary CSV");
  sweep_cmd->add_option("--config", config_path, "Base config file")->required();
  sweep_cmd->add_option("--axis", axis_specs, "Sweep axis section.key=v1,v2,...")->required();
  sweep_cmd->add_option("--seeds", seeds, "Seeds per cell (base seed + 0..s-1)");
  sweep_cmd->add_option("--out", out, "Output CSV path")->required();
  sweep_cmd->add_option("--jobs", jobs, "Parallel cells");

  auto* accept_cmd = app.add_subcommand("accept", "Run packaged acceptance experiments");
  accept_cmd->add_option("suite", suite, "Suite name or 'all'");
  accept_cmd->add_option("--jobs", jobs, "Parallel runs inside suites");

  auto* oracle_cmd = app.add_subcommand("oracle", "Compare Monte Carlo runs to the exact chain");
  oracle_cmd->add_option("--config", config_path, "Config file (tiny instance)")->required();
  oracle_cmd->add_option("--override", overrides, "Override section.key=value");
  oracle_cmd->add_option("--runs", runs, "Monte Carlo sample size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, overrides, seed, horizon, out);
    if (sweep_cmd->parsed()) return cmd_sweep(config_path, axis_specs, seeds, out, jobs);
    if (accept_cmd->parsed()) return cmd_accept(suite, jobs);
    if (oracle_cmd->parsed()) return cmd_oracle(config_path, overrides, runs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
