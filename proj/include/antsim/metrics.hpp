#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "antsim/engine.hpp"
#include "antsim/types.hpp"

namespace antsim {

// r(t) = sum over tasks of |demand - load|. Exact integer arithmetic.
inline std::int64_t instantaneous_regret(std::span<const std::int64_t> loads,
                                         std::span<const std::int64_t> demands) {
  if (loads.size() != demands.size())
    throw std::invalid_argument("dimension-mismatch: loads/demands lengths differ");
  std::int64_t r = 0;
  for (std::size_t j = 0; j < loads.size(); ++j) r += std::llabs(demands[j] - loads[j]);
  return r;
}

// Split of r into overload / near-demand / underload parts. The thresholds
// (1 + c+ gamma) d_j and (1 - c- gamma) d_j are real-valued, so r+ and r- are
// doubles; r~ is defined as the remainder, making the identity exact.
struct RegretDecomposition {
  double r_plus = 0.0;
  double r_approx = 0.0;
  double r_minus = 0.0;
};

inline RegretDecomposition regret_decomposition(std::span<const std::int64_t> loads,
                                                std::span<const std::int64_t> demands,
                                                double gamma) {
  if (loads.size() != demands.size())
    throw std::invalid_argument("dimension-mismatch: loads/demands lengths differ");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma-not-positive");
  RegretDecomposition out;
  for (std::size_t j = 0; j < loads.size(); ++j) {
    const double w = double(loads[j]);
    const double d = double(demands[j]);
    out.r_plus += std::max(0.0, w - (1.0 + kCplus * gamma) * d);
    out.r_minus += std::max(0.0, (1.0 - kCminus * gamma) * d - w);
  }
  out.r_approx = double(instantaneous_regret(loads, demands)) - out.r_plus - out.r_minus;
  return out;
}

// All tasks saturated: load_j >= (1 - gamma) d_j for every j.
inline bool saturation(std::span<const std::int64_t> loads,
                       std::span<const std::int64_t> demands, double gamma) {
  for (std::size_t j = 0; j < loads.size(); ++j)
    if (double(loads[j]) < (1.0 - gamma) * double(demands[j])) return false;
  return true;
}

// Per-round regret with its running sum and three-way split, evaluated over
// the recorded rounds of a trace.
struct RegretSeries {
  std::vector<std::int64_t> round;
  std::vector<std::int64_t> r;           // r(t)
  std::vector<std::int64_t> cumulative;  // R(t) over recorded rounds
  std::vector<RegretDecomposition> parts;
};

inline RegretSeries regret_series(const Trace& trace, double gamma) {
  RegretSeries out;
  std::int64_t total = 0;
  for (const auto& rec : trace.records) {
    total += rec.regret;
    out.round.push_back(rec.round);
    out.r.push_back(rec.regret);
    out.cumulative.push_back(total);
    out.parts.push_back(regret_decomposition(rec.loads, trace.config.demands, gamma));
  }
  return out;
}

// Phi and Psi evaluated at even rounds (phase starts): total shortfall below
// (1 + gamma) d_j and the count of tasks below it.
struct PotentialSeries {
  std::vector<std::int64_t> phase;  // phase number t (round 2t)
  std::vector<double> phi;
  std::vector<std::int64_t> psi;
};

inline PotentialSeries potentials(const Trace& trace, double gamma) {
  PotentialSeries out;
  const auto& demands = trace.config.demands;
  for (const auto& rec : trace.records) {
    if (rec.round % 2 != 0) continue;
    double phi = 0.0;
    std::int64_t psi = 0;
    for (std::size_t j = 0; j < demands.size(); ++j) {
      const double gap = (1.0 + gamma) * double(demands[j]) - double(rec.loads[j]);
      if (gap > 0.0) {
        phi += gap;
        ++psi;
      }
    }
    out.phase.push_back(rec.round / 2);
    out.phi.push_back(phi);
    out.psi.push_back(psi);
  }
  return out;
}

// Estimate of the c in c-closeness: mean post-burn-in regret per round divided
// by gamma* times the demand sum. The paper's additive O(1) slack is not
// folded in; tolerances live in the acceptance harness.
inline double closeness(const Trace& trace, double gamma_star,
                        std::span<const std::int64_t> demands, std::int64_t burn_in) {
  const std::int64_t horizon = std::int64_t(trace.regret_per_round.size());
  if (burn_in >= horizon) throw std::invalid_argument("burn-in-exceeds-horizon");
  std::int64_t demand_sum = 0;
  for (auto d : demands) demand_sum += d;
  const double denom = gamma_star * double(demand_sum);
  if (denom == 0.0) throw std::invalid_argument("closeness-undefined: gamma* or demands zero");
  std::int64_t total = 0;
  for (std::int64_t t = burn_in; t < horizon; ++t) total += trace.regret_per_round[t];
  const double mean = double(total) / double(horizon - burn_in);
  return mean / denom;
}

// Sliding-window oscillation amplitudes plus the exception-round budget
// (rounds with |deficit_j| > 5 gamma d_j + 3). Requires an undecimated trace.
struct TaskOscillation {
  std::int64_t windows = 0;
  std::int64_t flagged = 0;         // windows with amplitude >= threshold * d_j
  std::int64_t max_amplitude = 0;
  std::int64_t exception_rounds = 0;
};

struct OscillationReport {
  std::vector<TaskOscillation> tasks;
  std::int64_t exception_rounds_any = 0;  // rounds where some task violates the bound
};

inline OscillationReport oscillation_report(const Trace& trace, std::int64_t window,
                                            std::span<const double> threshold_fractions,
                                            double gamma) {
  if (window < 2) throw std::invalid_argument("window-too-small");
  if (trace.config.trace_stride != 1)
    throw std::invalid_argument("oscillation-needs-undecimated-trace");
  const std::int32_t k = trace.config.num_tasks;
  if (std::int64_t(threshold_fractions.size()) != k)
    throw std::invalid_argument("dimension-mismatch: one threshold per task");
  const auto& recs = trace.records;
  const std::int64_t T = std::int64_t(recs.size());
  OscillationReport out;
  out.tasks.assign(k, {});
  for (std::int32_t j = 0; j < k; ++j) {
    auto& task = out.tasks[j];
    const double flag_at = threshold_fractions[j] * double(trace.config.demands[j]);
    for (std::int64_t start = 0; start + window <= T; ++start) {
      std::int64_t lo = recs[start].deficit[j], hi = lo;
      for (std::int64_t i = 1; i < window; ++i) {
        lo = std::min(lo, recs[start + i].deficit[j]);
        hi = std::max(hi, recs[start + i].deficit[j]);
      }
      const std::int64_t amp = hi - lo;
      ++task.windows;
      if (double(amp) >= flag_at) ++task.flagged;
      task.max_amplitude = std::max(task.max_amplitude, amp);
    }
    const double limit = 5.0 * gamma * double(trace.config.demands[j]) + 3.0;
    for (const auto& rec : recs)
      if (double(std::llabs(rec.deficit[j])) > limit) ++task.exception_rounds;
  }
  for (const auto& rec : recs) {
    for (std::int32_t j = 0; j < k; ++j) {
      if (double(std::llabs(rec.deficit[j])) >
          5.0 * gamma * double(trace.config.demands[j]) + 3.0) {
        ++out.exception_rounds_any;
        break;
      }
    }
  }
  return out;
}

}  // namespace antsim
