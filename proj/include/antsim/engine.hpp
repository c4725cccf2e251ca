#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "antsim/agents.hpp"
#include "antsim/core.hpp"
#include "antsim/noise.hpp"
#include "antsim/rng.hpp"
#include "antsim/types.hpp"

namespace antsim {

struct RoundRecord {
  std::int64_t round = 0;
  std::vector<std::int64_t> loads;
  std::vector<std::int64_t> deficit;
  std::int64_t regret = 0;          // r(t)
  std::int64_t actions_changed = 0; // ants whose assignment differs from round t-1
};

struct TraceSummary {
  std::int64_t total_regret = 0;          // R(horizon)
  double r_plus_total = 0.0;              // R+ with threshold (1 + c+ gamma) d_j
  double r_minus_total = 0.0;             // R- with threshold (1 - c- gamma) d_j
  double r_approx_total = 0.0;            // R - R+ - R-
  std::int64_t exception_rounds = 0;      // rounds with any |deficit_j| > 5 gamma d_j + 3
  std::vector<std::int64_t> exception_rounds_by_task;
  std::int64_t post_burnin_rounds = 0;
  std::int64_t post_burnin_regret = 0;
  std::int64_t post_burnin_exception_rounds = 0;
  double phi_final = 0.0;                 // at the last even round
  std::int64_t psi_final = 0;
};

// Time series of a run. Records may be decimated by trace_stride; the summary
// accumulators and regret_per_round stay exact regardless.
struct Trace {
  SimConfig config;
  std::int64_t burn_in = 0;  // resolved value
  std::vector<RoundRecord> records;
  std::vector<std::int64_t> regret_per_round;  // index t-1 = r(t)
  TraceSummary summary;
  std::vector<TaskId> final_assignment;
  std::vector<std::string> final_agent_states;  // serialized, one per ant
};

// Decomposition constants: c+ = 1.2 c_s = 2.8 and c- = 1 + 1.2 c_s = 3.8.
inline constexpr double kCplus = 2.8;
inline constexpr double kCminus = 3.8;

// Default burn-in mirrors the overload exception budget 4 k c_d log2(n) / gamma,
// clamped to half the horizon so short runs keep a measurable steady window.
inline std::int64_t default_burn_in(const SimConfig& c) {
  const double budget =
      4.0 * kCd * double(c.num_tasks) * std::log2(double(std::max<std::int64_t>(c.num_ants, 2))) /
      c.gamma;
  return std::min<std::int64_t>(std::int64_t(std::ceil(budget)), c.horizon / 2);
}

inline std::int64_t resolved_burn_in(const SimConfig& c) {
  return c.burn_in ? *c.burn_in : default_burn_in(c);
}

namespace detail {

inline std::vector<TaskId> materialize_initial(const SimConfig& c,
                                               const RandomnessContext& ctx) {
  if (std::holds_alternative<AllIdleInit>(c.initial_assignment))
    return std::vector<TaskId>(c.num_ants, kIdle);
  if (std::holds_alternative<UniformRandomInit>(c.initial_assignment)) {
    std::vector<TaskId> a(c.num_ants);
    for (std::int64_t i = 0; i < c.num_ants; ++i) {
      const auto v = ctx.pick(0, std::uint32_t(i), Draw::kInit,
                              std::uint32_t(c.num_tasks) + 1);
      a[i] = v == 0 ? kIdle : TaskId(v - 1);
    }
    return a;
  }
  const auto& e = std::get<ExplicitInit>(c.initial_assignment);
  if (std::int64_t(e.assignment.size()) != c.num_ants)
    throw std::invalid_argument("initial-assignment-length");
  return e.assignment;
}

inline void throw_on_errors(const ValidationReport& report) {
  if (report.ok()) return;
  std::string msg = "invalid config:";
  for (const auto& e : report.errors) msg += " " + e.name;
  throw std::invalid_argument(msg);
}

// Shared per-round bookkeeping for both timing models.
class TraceBuilder {
 public:
  TraceBuilder(const SimConfig& c, std::vector<TaskId> initial)
      : trace_(), demands_(c.demands) {
    trace_.config = c;
    trace_.burn_in = resolved_burn_in(c);
    trace_.summary.exception_rounds_by_task.assign(c.num_tasks, 0);
    trace_.regret_per_round.reserve(c.horizon);
    trace_.final_assignment = std::move(initial);
    exception_limits_.resize(c.num_tasks);
    for (std::int32_t j = 0; j < c.num_tasks; ++j)
      exception_limits_[j] = 5.0 * c.gamma * double(demands_[j]) + 3.0;
  }

  void observe(std::int64_t round, std::span<const std::int64_t> loads,
               std::span<const std::int64_t> defs, std::int64_t actions_changed) {
    const SimConfig& c = trace_.config;
    std::int64_t regret = 0;
    bool any_exception = false;
    double r_plus = 0.0, r_minus = 0.0;
    for (std::int32_t j = 0; j < c.num_tasks; ++j) {
      const std::int64_t a = std::llabs(defs[j]);
      regret += a;
      if (double(a) > exception_limits_[j]) {
        ++trace_.summary.exception_rounds_by_task[j];
        any_exception = true;
      }
      const double d = double(demands_[j]);
      const double w = double(loads[j]);
      r_plus += std::max(0.0, w - (1.0 + kCplus * c.gamma) * d);
      r_minus += std::max(0.0, (1.0 - kCminus * c.gamma) * d - w);
    }
    trace_.regret_per_round.push_back(regret);
    auto& s = trace_.summary;
    s.total_regret += regret;
    s.r_plus_total += r_plus;
    s.r_minus_total += r_minus;
    s.r_approx_total += double(regret) - r_plus - r_minus;
    if (any_exception) ++s.exception_rounds;
    if (round > trace_.burn_in) {
      ++s.post_burnin_rounds;
      s.post_burnin_regret += regret;
      if (any_exception) ++s.post_burnin_exception_rounds;
    }
    if (round % 2 == 0) {
      double phi = 0.0;
      std::int64_t psi = 0;
      for (std::int32_t j = 0; j < c.num_tasks; ++j) {
        const double gap = (1.0 + c.gamma) * double(demands_[j]) - double(loads[j]);
        if (gap > 0.0) {
          phi += gap;
          ++psi;
        }
      }
      s.phi_final = phi;
      s.psi_final = psi;
    }
    if (round % c.trace_stride == 0 || round == c.horizon) {
      RoundRecord rec;
      rec.round = round;
      rec.loads.assign(loads.begin(), loads.end());
      rec.deficit.assign(defs.begin(), defs.end());
      rec.regret = regret;
      rec.actions_changed = actions_changed;
      trace_.records.push_back(std::move(rec));
    }
  }

  Trace finish(std::vector<TaskId> final_assignment,
               std::vector<std::string> final_states) {
    trace_.final_assignment = std::move(final_assignment);
    trace_.final_agent_states = std::move(final_states);
    return std::move(trace_);
  }

 private:
  Trace trace_;
  std::vector<std::int64_t> demands_;
  std::vector<double> exception_limits_;
};

template <class Agent>
Trace run_sync_impl(const SimConfig& cfg, const Agent& agent,
                    std::vector<typename Agent::State>* out_states = nullptr) {
  const RandomnessContext ctx(cfg.seed);
  std::vector<TaskId> assignment = materialize_initial(cfg, ctx);
  TraceBuilder builder(cfg, assignment);
  if (cfg.horizon == 0) return builder.finish(assignment, {});

  const std::int64_t n = cfg.num_ants;
  const std::int32_t k = cfg.num_tasks;
  std::vector<std::int64_t> loads = compute_loads(assignment, k);
  std::vector<std::int64_t> defs = deficits(loads, cfg.demands);
  std::vector<typename Agent::State> states(n, agent.initial_state());
  FeedbackMatrix fb;

  for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
    // Sub-round 1: every ant sees the load situation at time t-1.
    detail::fill_matrix(fb, cfg.noise, defs, cfg.demands, ctx, t, n);
    // Sub-round 2: all ants decide simultaneously.
    std::int64_t changed = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      AgentRng rng(ctx, std::uint64_t(t), std::uint32_t(i));
      const TaskId a = agent.step(states[i], assignment[i], fb.row(i), t, rng);
      if (a != assignment[i]) {
        if (assignment[i] != kIdle) --loads[assignment[i]];
        if (a != kIdle) ++loads[a];
        assignment[i] = a;
        ++changed;
      }
    }
    for (std::int32_t j = 0; j < k; ++j) defs[j] = cfg.demands[j] - loads[j];
    builder.observe(t, loads, defs, changed);
  }

  std::vector<std::string> final_states(n);
  for (std::int64_t i = 0; i < n; ++i)
    final_states[i] = states[i].serialize() + " a=" + std::to_string(assignment[i]);
  if (out_states) *out_states = std::move(states);
  return builder.finish(std::move(assignment), std::move(final_states));
}

}  // namespace detail

// Synchronous model: all ants step on feedback from the end of the previous
// round; phases are globally aligned (round indexing starts at t = 1).
inline Trace run_synchronous(const SimConfig& cfg) {
  if (cfg.horizon == 0) {
    // An empty run is well defined whatever the validator thinks of it.
    const RandomnessContext ctx(cfg.seed);
    auto a = detail::materialize_initial(cfg, ctx);
    detail::TraceBuilder builder(cfg, a);
    return builder.finish(std::move(a), {});
  }
  detail::throw_on_errors(validate_config(cfg));
  switch (cfg.algorithm) {
    case AlgorithmKind::kAnt:
      return detail::run_sync_impl(cfg, AntAgent(cfg.num_tasks, cfg.gamma));
    case AlgorithmKind::kPreciseSigmoid:
      return detail::run_sync_impl(cfg,
                                   PreciseSigmoidAgent(cfg.num_tasks, cfg.gamma, cfg.epsilon));
    case AlgorithmKind::kPreciseAdversarial:
      return detail::run_sync_impl(
          cfg, PreciseAdversarialAgent(cfg.num_tasks, cfg.gamma, cfg.epsilon));
    case AlgorithmKind::kTrivialSync:
      return detail::run_sync_impl(cfg, TrivialAgent(cfg.num_tasks));
    case AlgorithmKind::kTrivialSeq:
      throw std::invalid_argument(
          "unsupported-model: trivial-seq runs in the sequential model");
  }
  throw std::logic_error("unreachable");
}

// Sequential model: one uniformly chosen ant steps per round on feedback from
// the end of the previous round. Defined for the trivial algorithm only; the
// phase-based algorithms assume global alignment.
inline Trace run_sequential(const SimConfig& cfg) {
  if (cfg.algorithm != AlgorithmKind::kTrivialSeq)
    throw std::invalid_argument(
        "unsupported-model: sequential timing is defined for trivial-seq only");
  const RandomnessContext ctx(cfg.seed);
  std::vector<TaskId> assignment = detail::materialize_initial(cfg, ctx);
  detail::TraceBuilder builder(cfg, assignment);
  if (cfg.horizon == 0) return builder.finish(assignment, {});
  detail::throw_on_errors(validate_config(cfg));

  const std::int64_t n = cfg.num_ants;
  const std::int32_t k = cfg.num_tasks;
  std::vector<std::int64_t> loads = compute_loads(assignment, k);
  std::vector<std::int64_t> defs = deficits(loads, cfg.demands);
  const TrivialAgent agent(k);
  TrivialState state;
  std::vector<Feedback> row(k);

  for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
    const std::int64_t actor = ctx.pick(std::uint64_t(t), 0, Draw::kSequentialPick,
                                        std::uint32_t(n));
    detail::fill_row(row, cfg.noise, defs, cfg.demands, ctx, t, std::uint32_t(actor));
    AgentRng rng(ctx, std::uint64_t(t), std::uint32_t(actor));
    const TaskId a = agent.step(state, assignment[actor], row, t, rng);
    std::int64_t changed = 0;
    if (a != assignment[actor]) {
      if (assignment[actor] != kIdle) --loads[assignment[actor]];
      if (a != kIdle) ++loads[a];
      assignment[actor] = a;
      changed = 1;
    }
    for (std::int32_t j = 0; j < k; ++j) defs[j] = cfg.demands[j] - loads[j];
    builder.observe(t, loads, defs, changed);
  }

  std::vector<std::string> final_states(n, std::string("-"));
  for (std::int64_t i = 0; i < n; ++i)
    final_states[i] = "- a=" + std::to_string(assignment[i]);
  return builder.finish(std::move(assignment), std::move(final_states));
}

inline Trace run(const SimConfig& cfg) {
  return cfg.algorithm == AlgorithmKind::kTrivialSeq ? run_sequential(cfg)
                                                     : run_synchronous(cfg);
}

// Config for a follow-on experiment: starts from the trace's final assignment
// with new demands. The continuation uses a seed derived via splitmix64 (a
// fresh stream, so it is statistically a continuation) and phase positions
// restart at round 1.
inline SimConfig snapshot_and_resume(const Trace& trace,
                                     std::vector<std::int64_t> new_demands) {
  if (std::int64_t(new_demands.size()) != trace.config.num_tasks)
    throw std::invalid_argument("dimension-mismatch: new demands must have length k");
  SimConfig c = trace.config;
  c.demands = std::move(new_demands);
  c.initial_assignment = ExplicitInit{trace.final_assignment};
  c.seed = splitmix64(c.seed);
  return c;
}

}  // namespace antsim
