#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "antsim/noise.hpp"
#include "antsim/types.hpp"

namespace antsim {

// Load of task j: number of ants assigned to it.
inline std::vector<std::int64_t> compute_loads(std::span<const TaskId> assignment,
                                               std::int32_t num_tasks) {
  std::vector<std::int64_t> loads(num_tasks, 0);
  for (TaskId a : assignment) {
    if (a == kIdle) continue;
    if (a < 0 || a >= num_tasks)
      throw std::invalid_argument("malformed-assignment: task index " +
                                  std::to_string(a) + " outside [0, " +
                                  std::to_string(num_tasks) + ")");
    ++loads[a];
  }
  return loads;
}

// Deficit of task j: demand minus load. Negative means overload.
inline std::vector<std::int64_t> deficits(std::span<const std::int64_t> loads,
                                          std::span<const std::int64_t> demands) {
  if (loads.size() != demands.size())
    throw std::invalid_argument("dimension-mismatch: loads/demands lengths differ");
  std::vector<std::int64_t> out(loads.size());
  for (std::size_t j = 0; j < loads.size(); ++j) out[j] = demands[j] - loads[j];
  return out;
}

// Assignment vector plus the derived per-task loads and deficits at one step.
struct WorldState {
  std::int64_t round = 0;
  std::vector<TaskId> assignment;
  std::vector<std::int64_t> loads;
  std::vector<std::int64_t> deficit;

  static WorldState from_assignment(std::int64_t round, std::vector<TaskId> assignment,
                                    std::span<const std::int64_t> demands) {
    WorldState ws;
    ws.round = round;
    ws.assignment = std::move(assignment);
    ws.loads = compute_loads(ws.assignment, std::int32_t(demands.size()));
    ws.deficit = deficits(ws.loads, demands);
    return ws;
  }
};

namespace detail {

// Algorithm Ant's input contract is gamma in [gamma*, 1/16]; the algorithm
// still runs outside it, so violations are warnings. Warn too when the
// critical value itself exceeds 1/2.
inline void check_gamma_range(const SimConfig& c, ValidationReport& report) {
  if (c.num_ants < 2 && std::holds_alternative<SigmoidNoise>(c.noise))
    return;  // gamma* is defined through n^-8, meaningless for one ant
  const double gamma_star = critical_value(c.noise, c.demands, c.num_ants);
  if (gamma_star > 0.5)
    report.warnings.push_back(
        {"critical-value-above-half",
         "gamma* = " + std::to_string(gamma_star) + " exceeds 1/2"});
  if (c.algorithm == AlgorithmKind::kAnt &&
      (c.gamma < gamma_star || c.gamma > 1.0 / 16.0))
    report.warnings.push_back(
        {"gamma-outside-ant-range",
         "gamma = " + std::to_string(c.gamma) + " outside [gamma* = " +
             std::to_string(gamma_star) + ", 1/16]"});
}

}  // namespace detail

// Structural errors make a config unrunnable; theory-assumption violations are
// warnings so the simulator can explore where the guarantees break.
inline ValidationReport validate_config(const SimConfig& c) {
  ValidationReport report;
  auto error = [&](std::string name, std::string msg) {
    report.errors.push_back({std::move(name), std::move(msg)});
  };
  auto warn = [&](std::string name, std::string msg) {
    report.warnings.push_back({std::move(name), std::move(msg)});
  };

  if (c.num_ants < 1) error("ants-not-positive", "n must be >= 1");
  if (c.num_tasks < 1) error("tasks-not-positive", "k must be >= 1");
  if (std::int64_t(c.demands.size()) != c.num_tasks)
    error("dimension-mismatch", "k = " + std::to_string(c.num_tasks) + " but " +
                                    std::to_string(c.demands.size()) + " demands given");
  for (std::size_t j = 0; j < c.demands.size(); ++j)
    if (c.demands[j] < 1)
      error("demand-not-positive", "demand " + std::to_string(j + 1) + " must be >= 1");
  if (c.horizon == 0) error("horizon-zero", "horizon must be >= 1");
  if (c.horizon < 0) error("horizon-negative", "horizon must be >= 1");
  if (!(c.gamma > 0.0 && c.gamma < 1.0))
    error("gamma-out-of-range", "gamma must lie in (0, 1)");
  const bool uses_epsilon = c.algorithm == AlgorithmKind::kPreciseSigmoid ||
                            c.algorithm == AlgorithmKind::kPreciseAdversarial;
  if (uses_epsilon && !(c.epsilon > 0.0 && c.epsilon <= 1.0))
    error("epsilon-out-of-range", "epsilon must lie in (0, 1]");
  if (c.trace_stride < 1) error("stride-not-positive", "trace_stride must be >= 1");

  if (const auto* s = std::get_if<SigmoidNoise>(&c.noise)) {
    if (!(s->lambda > 0.0)) error("lambda-not-positive", "sigmoid lambda must be > 0");
  } else if (const auto* a = std::get_if<AdversarialNoise>(&c.noise)) {
    if (!(a->gamma_ad > 0.0 && a->gamma_ad < 0.5))
      error("gamma-ad-out-of-range", "gamma_ad must lie in (0, 1/2)");
    const auto& st = a->strategy;
    if (st.kind == AdversaryStrategy::Kind::kCorrectOutsideRandomInside &&
        !(st.flip_probability >= 0.0 && st.flip_probability <= 1.0))
      error("flip-probability-out-of-range", "flip probability must lie in [0, 1]");
  }

  if (const auto* e = std::get_if<ExplicitInit>(&c.initial_assignment)) {
    if (std::int64_t(e->assignment.size()) != c.num_ants)
      error("initial-assignment-length", "explicit assignment must list all n ants");
    for (TaskId a : e->assignment)
      if (a != kIdle && (a < 0 || a >= c.num_tasks)) {
        error("initial-assignment-range", "explicit assignment has an out-of-range task");
        break;
      }
  }

  if (!report.ok()) return report;

  // Assumption 1: sum of demands at most n/2, demands Omega(log n). The
  // validator checks d_j >= log2(n); the proofs additionally need a larger
  // constant (50000 log n / gamma^2 appears inside them), which is documented
  // but not enforced.
  const std::int64_t demand_sum =
      std::accumulate(c.demands.begin(), c.demands.end(), std::int64_t{0});
  if (2 * demand_sum > c.num_ants)
    warn("demand-sum-exceeds-half-n", "sum of demands " + std::to_string(demand_sum) +
                                          " exceeds n/2 = " +
                                          std::to_string(c.num_ants / 2));
  const double log2n = std::log2(double(c.num_ants));
  for (std::size_t j = 0; j < c.demands.size(); ++j)
    if (double(c.demands[j]) < log2n) {
      warn("demand-below-log2n", "some demand is below log2(n)");
      break;
    }

  detail::check_gamma_range(c, report);
  return report;
}

}  // namespace antsim
