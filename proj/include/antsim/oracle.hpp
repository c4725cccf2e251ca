#pragma once

// Exact forward evolution of the Markov chain an algorithm induces on a tiny
// instance. Ants are exchangeable, so the system state is aggregated to
// (per-ant class -> count); per-ant transition distributions are re-derived
// here from the algorithm definitions, independently of the sampling path in
// agents.hpp, and propagated with long double arithmetic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "antsim/agents.hpp"
#include "antsim/engine.hpp"
#include "antsim/types.hpp"

namespace antsim {

// Canonical per-ant class. Layout is algorithm-specific; element 0 is always
// the ant's current assignment. Fields that are dead at the current phase
// position (overwritten before the next read) are canonicalized so that
// behaviourally identical states merge.
using OracleClass = std::vector<std::int32_t>;

// Aggregated system state: sorted (class, count) pairs.
using AggState = std::vector<std::pair<OracleClass, std::int32_t>>;

using ExactDistribution = std::map<AggState, long double>;

struct OracleEvolution {
  std::vector<ExactDistribution> per_round;  // index t = distribution after round t
  std::int64_t max_support = 0;
  const ExactDistribution& final_dist() const { return per_round.back(); }
};

struct DivergenceReport {
  double tv_distance = 0.0;
  double tolerance = 0.0;
  std::int64_t support = 0;
  std::int64_t runs = 0;
  bool pass = false;
};

namespace oracle_detail {

// Mirrored like the double version so both agree to rounding error.
inline long double sigmoid_ld(long double x, long double lambda) {
  const long double e = expl(-lambda * fabsl(x));
  const long double lo = e / (1.0L + e);
  return x < 0 ? lo : 1.0L - lo;
}

// Per-task lack probabilities given the previous round's deficits.
inline std::vector<long double> lack_probabilities(const NoiseSpec& noise,
                                                   std::span<const std::int64_t> defs,
                                                   std::span<const std::int64_t> demands) {
  std::vector<long double> p(defs.size());
  if (const auto* s = std::get_if<SigmoidNoise>(&noise)) {
    if (s->common_random)
      throw std::invalid_argument("oracle-unsupported: common-random sigmoid mode");
    for (std::size_t j = 0; j < defs.size(); ++j) {
      p[j] = sigmoid_ld((long double)defs[j], (long double)s->lambda);
      if (p[j] < 0x1.0p-53L) p[j] = 0.0L;  // mirror the engine's draw resolution
    }
    return p;
  }
  if (const auto* a = std::get_if<AdversarialNoise>(&noise)) {
    const auto& st = a->strategy;
    if (st.kind == AdversaryStrategy::Kind::kPerAntAlternating)
      throw std::invalid_argument(
          "oracle-unsupported: per-ant-alternating breaks exchangeability");
    for (std::size_t j = 0; j < defs.size(); ++j) {
      const long double thr = (long double)a->gamma_ad * (long double)demands[j];
      const long double d = (long double)defs[j];
      if (d > thr) { p[j] = 1.0L; continue; }
      if (d < -thr) { p[j] = 0.0L; continue; }
      switch (st.kind) {
        case AdversaryStrategy::Kind::kAllLackInGrey: p[j] = 1.0L; break;
        case AdversaryStrategy::Kind::kAllOverloadInGrey: p[j] = 0.0L; break;
        case AdversaryStrategy::Kind::kCorrectOutsideRandomInside:
          p[j] = defs[j] >= 0 ? 1.0L - (long double)st.flip_probability
                              : (long double)st.flip_probability;
          break;
        case AdversaryStrategy::Kind::kIndistinguishability:
          if (st.shifted) p[j] = d >= thr ? 1.0L : 0.0L;
          else p[j] = d >= -thr ? 1.0L : 0.0L;
          break;
        default: break;
      }
    }
    return p;
  }
  for (std::size_t j = 0; j < defs.size(); ++j) p[j] = defs[j] >= 0 ? 1.0L : 0.0L;
  return p;
}

using Branches = std::vector<std::pair<OracleClass, long double>>;

// ---- Per-algorithm models -------------------------------------------------

// Class layout ant: [a, latch, paused, s1mask]
struct AntOracle {
  using EngineAgent = AntAgent;
  std::int32_t k;
  double gamma;

  explicit AntOracle(const SimConfig& c) : k(c.num_tasks), gamma(c.gamma) {}
  std::int64_t phase_length() const { return 2; }
  EngineAgent make_agent(const SimConfig& c) const { return AntAgent(c.num_tasks, c.gamma); }

  OracleClass fresh(TaskId a) const { return {a, kIdle, 0, 0}; }
  OracleClass initial_class(TaskId a) const { return fresh(a); }

  OracleClass encode_engine(const AntState& st, TaskId a, std::int64_t pos) const {
    if (pos % 2 == 0) return fresh(a);
    std::int32_t mask = 0;
    for (std::int32_t j = 0; j < k; ++j)
      if (st.sample1[j] == Feedback::kLack) mask |= 1 << j;
    return {a, st.current_task, st.paused ? 1 : 0, mask};
  }

  void transitions(const OracleClass& c, std::int32_t fbmask, std::int64_t pos,
                   Branches& out) const {
    const TaskId a = c[0];
    if (pos == 1) {
      const TaskId latch = a;
      if (latch != kIdle) {
        const long double q = (long double)(cs_ratio() * gamma);
        out.push_back({{kIdle, latch, 1, fbmask}, q});
        out.push_back({{latch, latch, 0, fbmask}, 1.0L - q});
      } else {
        out.push_back({{kIdle, kIdle, 0, fbmask}, 1.0L});
      }
      return;
    }
    const TaskId latch = c[1];
    const std::int32_t s1 = c[3];
    if (latch == kIdle) {
      std::vector<TaskId> under;
      for (std::int32_t j = 0; j < k; ++j)
        if ((s1 >> j & 1) && (fbmask >> j & 1)) under.push_back(j);
      if (under.empty()) {
        out.push_back({fresh(kIdle), 1.0L});
      } else {
        const long double q = 1.0L / (long double)under.size();
        for (TaskId j : under) out.push_back({fresh(j), q});
      }
      return;
    }
    const bool both_overload = !(s1 >> latch & 1) && !(fbmask >> latch & 1);
    if (both_overload) {
      const long double q = (long double)(gamma / kCd);
      out.push_back({fresh(kIdle), q});
      out.push_back({fresh(latch), 1.0L - q});
    } else {
      out.push_back({fresh(latch), 1.0L});
    }
  }
};

// Class layout precise sigmoid: [a, latch, paused, m1mask, w1_0..w1_{k-1}, w2_0..w2_{k-1}]
struct PreciseSigmoidOracle {
  using EngineAgent = PreciseSigmoidAgent;
  std::int32_t k;
  double gamma;
  double epsilon;
  std::int64_t m;

  explicit PreciseSigmoidOracle(const SimConfig& c)
      : k(c.num_tasks), gamma(c.gamma), epsilon(c.epsilon) {
    m = PreciseSigmoidAgent(c.num_tasks, c.gamma, c.epsilon).window_size();
  }
  std::int64_t phase_length() const { return 2 * m; }
  EngineAgent make_agent(const SimConfig& c) const {
    return PreciseSigmoidAgent(c.num_tasks, c.gamma, c.epsilon);
  }

  OracleClass fresh(TaskId a) const {
    OracleClass c(4 + 2 * k, 0);
    c[0] = a;
    c[1] = kIdle;
    return c;
  }
  OracleClass initial_class(TaskId a) const { return fresh(a); }

  bool median_lack(std::int64_t lack_count) const { return 2 * lack_count > m; }

  OracleClass encode_engine(const PreciseSigmoidState& st, TaskId a, std::int64_t pos) const {
    if (pos == 0) return fresh(a);
    OracleClass c(4 + 2 * k, 0);
    c[0] = a;
    c[1] = st.current_task;
    c[2] = st.paused ? 1 : 0;
    if (pos >= m) {  // first window closed: w1 dead, median live
      for (std::int32_t j = 0; j < k; ++j)
        if (st.median1[j] == Feedback::kLack) c[3] |= 1 << j;
      for (std::int32_t j = 0; j < k; ++j) c[4 + k + j] = std::int32_t(st.window2[j]);
    } else {  // inside first window: median stale, w2 naturally zero
      for (std::int32_t j = 0; j < k; ++j) c[4 + j] = std::int32_t(st.window1[j]);
    }
    return c;
  }

  void transitions(const OracleClass& c, std::int32_t fbmask, std::int64_t pos,
                   Branches& out) const {
    const TaskId a = c[0];
    if (pos >= 1 && pos <= m) {
      OracleClass nc = c;
      if (pos == 1) {
        nc = fresh(a);
        nc[1] = a;  // latch
      }
      for (std::int32_t j = 0; j < k; ++j) nc[4 + j] += (fbmask >> j) & 1;
      if (pos < m) {
        out.push_back({std::move(nc), 1.0L});
        return;
      }
      // pos == m: close window one, thin out.
      nc[3] = 0;
      for (std::int32_t j = 0; j < k; ++j)
        if (median_lack(nc[4 + j])) nc[3] |= 1 << j;
      for (std::int32_t j = 0; j < k; ++j) nc[4 + j] = 0;  // w1 dead
      const TaskId latch = nc[1];
      if (latch != kIdle) {
        const long double q = (long double)(epsilon * cs_ratio() * gamma / kCchi);
        OracleClass paused = nc;
        paused[0] = kIdle;
        paused[2] = 1;
        out.push_back({std::move(paused), q});
        nc[0] = latch;
        nc[2] = 0;
        out.push_back({std::move(nc), 1.0L - q});
      } else {
        nc[0] = a;
        out.push_back({std::move(nc), 1.0L});
      }
      return;
    }
    // Second window: positions m+1..2m-1 and 0.
    OracleClass nc = c;
    for (std::int32_t j = 0; j < k; ++j) nc[4 + k + j] += (fbmask >> j) & 1;
    if (pos != 0) {
      out.push_back({std::move(nc), 1.0L});
      return;
    }
    const TaskId latch = nc[1];
    const std::int32_t m1 = nc[3];
    if (latch == kIdle) {
      std::vector<TaskId> under;
      for (std::int32_t j = 0; j < k; ++j)
        if ((m1 >> j & 1) && median_lack(nc[4 + k + j])) under.push_back(j);
      if (under.empty()) {
        out.push_back({fresh(kIdle), 1.0L});
      } else {
        const long double q = 1.0L / (long double)under.size();
        for (TaskId j : under) out.push_back({fresh(j), q});
      }
      return;
    }
    const bool both_overload =
        !(m1 >> latch & 1) && !median_lack(nc[4 + k + latch]);
    if (both_overload) {
      const long double q = (long double)(gamma / (double(kCchi) * kCd));
      out.push_back({fresh(kIdle), q});
      out.push_back({fresh(latch), 1.0L - q});
    } else {
      out.push_back({fresh(latch), 1.0L});
    }
  }
};

// Class layout precise adversarial: [a, latch, replay (-2 = unset), lackmask, overmask]
struct PreciseAdversarialOracle {
  using EngineAgent = PreciseAdversarialAgent;
  static constexpr std::int32_t kUnset = -2;
  std::int32_t k;
  double gamma;
  double epsilon;
  std::int64_t r1;
  std::int64_t r2;

  explicit PreciseAdversarialOracle(const SimConfig& c)
      : k(c.num_tasks), gamma(c.gamma), epsilon(c.epsilon) {
    PreciseAdversarialAgent a(c.num_tasks, c.gamma, c.epsilon);
    r1 = a.r1();
    r2 = a.r2();
  }
  std::int64_t phase_length() const { return r1 + r2; }
  EngineAgent make_agent(const SimConfig& c) const {
    return PreciseAdversarialAgent(c.num_tasks, c.gamma, c.epsilon);
  }

  std::int32_t full_mask() const { return (1 << k) - 1; }
  OracleClass fresh(TaskId a) const { return {a, kIdle, kUnset, full_mask(), full_mask()}; }
  OracleClass initial_class(TaskId a) const { return fresh(a); }

  OracleClass encode_engine(const PreciseAdversarialState& st, TaskId a,
                            std::int64_t pos) const {
    if (pos == 0) return fresh(a);
    std::int32_t lack = 0, over = 0;
    for (std::int32_t j = 0; j < k; ++j) {
      if (st.all_lack[j]) lack |= 1 << j;
      if (st.all_overload[j]) over |= 1 << j;
    }
    return {a, st.current_task, st.replay_set ? st.replay : kUnset, lack, over};
  }

  void transitions(const OracleClass& c, std::int32_t fbmask, std::int64_t pos,
                   Branches& out) const {
    const TaskId a = c[0];
    const long double q_move = (long double)(epsilon * gamma / 32.0);
    auto recorded = [&](OracleClass& nc) {
      nc[3] &= fbmask;
      nc[4] &= ~fbmask & full_mask();
    };
    if (pos == 1) {
      OracleClass nc = {a, a, kUnset, fbmask, ~fbmask & full_mask()};
      if (a != kIdle && (fbmask >> a & 1)) nc[2] = a;  // first lack already here
      out.push_back({std::move(nc), 1.0L});
      return;
    }
    const TaskId latch = c[1];
    if (pos >= 2 && pos < r1) {
      OracleClass nc = c;
      recorded(nc);
      if (latch == kIdle) {
        nc[0] = kIdle;
        out.push_back({std::move(nc), 1.0L});
        return;
      }
      const bool lack_now = (fbmask >> latch) & 1;
      OracleClass paused = nc;
      paused[0] = kIdle;
      if (paused[2] == kUnset && lack_now) paused[2] = kIdle;
      out.push_back({std::move(paused), q_move});
      nc[0] = latch;
      if (nc[2] == kUnset && lack_now) nc[2] = latch;
      out.push_back({std::move(nc), 1.0L - q_move});
      return;
    }
    if (pos == r1) {
      OracleClass nc = c;
      recorded(nc);
      if (latch == kIdle) {
        nc[0] = kIdle;
      } else {
        if (nc[2] == kUnset) nc[2] = latch;  // feedback never flipped: keep working
        nc[0] = nc[2];
      }
      out.push_back({std::move(nc), 1.0L});
      return;
    }
    if (pos != 0) {  // replay sub-phase, nothing recorded
      OracleClass nc = c;
      nc[0] = latch == kIdle ? kIdle : nc[2];
      out.push_back({std::move(nc), 1.0L});
      return;
    }
    // pos == 0: final sample, then join/leave.
    OracleClass nc = c;
    recorded(nc);
    if (latch == kIdle) {
      std::vector<TaskId> under;
      for (std::int32_t j = 0; j < k; ++j)
        if (nc[3] >> j & 1) under.push_back(j);
      if (under.empty()) {
        out.push_back({fresh(kIdle), 1.0L});
      } else {
        const long double q = 1.0L / (long double)under.size();
        for (TaskId j : under) out.push_back({fresh(j), q});
      }
      return;
    }
    if (nc[4] >> latch & 1) {
      out.push_back({fresh(kIdle), q_move});
      out.push_back({fresh(latch), 1.0L - q_move});
    } else {
      out.push_back({fresh(latch), 1.0L});
    }
  }
};

// Class layout trivial: [a]
struct TrivialOracle {
  using EngineAgent = TrivialAgent;
  std::int32_t k;

  explicit TrivialOracle(const SimConfig& c) : k(c.num_tasks) {}
  std::int64_t phase_length() const { return 1; }
  EngineAgent make_agent(const SimConfig& c) const { return TrivialAgent(c.num_tasks); }

  OracleClass initial_class(TaskId a) const { return {a}; }
  OracleClass encode_engine(const TrivialState&, TaskId a, std::int64_t) const { return {a}; }

  void transitions(const OracleClass& c, std::int32_t fbmask, std::int64_t,
                   Branches& out) const {
    const TaskId a = c[0];
    if (a == kIdle) {
      std::vector<TaskId> lacking;
      for (std::int32_t j = 0; j < k; ++j)
        if (fbmask >> j & 1) lacking.push_back(j);
      if (lacking.empty()) {
        out.push_back({{kIdle}, 1.0L});
      } else {
        const long double q = 1.0L / (long double)lacking.size();
        for (TaskId j : lacking) out.push_back({{j}, q});
      }
      return;
    }
    if (fbmask >> a & 1) out.push_back({{a}, 1.0L});
    else out.push_back({{kIdle}, 1.0L});
  }
};

// ---- Generic exact evolution ----------------------------------------------

inline void add_to_agg(std::map<OracleClass, std::int32_t>& agg, const OracleClass& c,
                       std::int32_t n) {
  agg[c] += n;
}

inline AggState agg_from_map(const std::map<OracleClass, std::int32_t>& m) {
  AggState s(m.begin(), m.end());
  return s;  // std::map iteration is already sorted
}

// Visit every composition of `count` over the outcome probabilities `q`
// with its multinomial probability.
template <class Fn>
void for_each_split(std::int32_t count, std::span<const long double> q,
                    std::vector<std::int32_t>& counts, std::size_t idx, long double acc,
                    Fn&& fn) {
  if (idx + 1 == q.size()) {
    counts[idx] = count;
    fn(counts, acc * powl(q[idx], count));
    return;
  }
  long double choose = 1.0L;  // C(count, c) accumulated incrementally
  long double pw = 1.0L;      // q[idx]^c
  for (std::int32_t c = 0; c <= count; ++c) {
    if (c > 0) {
      choose = choose * (long double)(count - c + 1) / (long double)c;
      pw *= q[idx];
    }
    if (q[idx] == 0.0L && c > 0) break;
    counts[idx] = c;
    for_each_split(count - c, q, counts, idx + 1, acc * choose * pw,
                   std::forward<Fn>(fn));
  }
}

template <class Model>
OracleEvolution evolve(const SimConfig& cfg, const Model& model, std::int64_t max_states) {
  OracleEvolution evo;
  const std::int32_t k = cfg.num_tasks;
  const std::int64_t L = model.phase_length();

  // Initial distribution.
  ExactDistribution dist;
  if (std::holds_alternative<UniformRandomInit>(cfg.initial_assignment)) {
    std::vector<long double> q(k + 1, 1.0L / (long double)(k + 1));
    std::vector<std::int32_t> counts(k + 1, 0);
    for_each_split(std::int32_t(cfg.num_ants), q, counts, 0, 1.0L,
                   [&](const std::vector<std::int32_t>& cnt, long double p) {
                     std::map<OracleClass, std::int32_t> agg;
                     for (std::int32_t v = 0; v <= k; ++v)
                       if (cnt[v] > 0)
                         add_to_agg(agg, model.initial_class(v == 0 ? kIdle : v - 1), cnt[v]);
                     dist[agg_from_map(agg)] += p;
                   });
  } else {
    const RandomnessContext ctx(cfg.seed);
    auto a0 = detail::materialize_initial(cfg, ctx);
    std::map<OracleClass, std::int32_t> agg;
    for (TaskId a : a0) add_to_agg(agg, model.initial_class(a), 1);
    dist[agg_from_map(agg)] = 1.0L;
  }
  evo.per_round.push_back(dist);
  evo.max_support = std::int64_t(dist.size());

  Branches branches;
  for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
    const std::int64_t pos = t % L;
    ExactDistribution next;
    for (const auto& [state, p_state] : dist) {
      // Loads and deficits determined by the class assignments.
      std::vector<std::int64_t> loads(k, 0);
      for (const auto& [cls, cnt] : state)
        if (cls[0] != kIdle) loads[cls[0]] += cnt;
      std::vector<std::int64_t> defs(k);
      for (std::int32_t j = 0; j < k; ++j) defs[j] = cfg.demands[j] - loads[j];
      const auto p_lack = lack_probabilities(cfg.noise, defs, cfg.demands);

      // Per-class distribution over next classes: feedback marginalized out.
      std::vector<std::vector<OracleClass>> outcomes(state.size());
      std::vector<std::vector<long double>> outcome_probs(state.size());
      for (std::size_t ci = 0; ci < state.size(); ++ci) {
        std::map<OracleClass, long double> q;
        for (std::int32_t fb = 0; fb < (1 << k); ++fb) {
          long double p_fb = 1.0L;
          for (std::int32_t j = 0; j < k; ++j)
            p_fb *= (fb >> j & 1) ? p_lack[j] : 1.0L - p_lack[j];
          if (p_fb == 0.0L) continue;
          branches.clear();
          model.transitions(state[ci].first, fb, pos, branches);
          for (auto& [nc, bp] : branches) q[nc] += p_fb * bp;
        }
        for (auto& [nc, qq] : q) {
          outcomes[ci].push_back(nc);
          outcome_probs[ci].push_back(qq);
        }
      }

      // Product of independent multinomials across classes.
      struct Frame {
        std::map<OracleClass, std::int32_t> agg;
        long double p;
      };
      std::vector<Frame> partial{{{}, p_state}};
      for (std::size_t ci = 0; ci < state.size(); ++ci) {
        std::vector<Frame> grown;
        std::vector<std::int32_t> counts(outcomes[ci].size(), 0);
        for (const auto& frame : partial) {
          for_each_split(state[ci].second, outcome_probs[ci], counts, 0, 1.0L,
                         [&](const std::vector<std::int32_t>& cnt, long double mp) {
                           Frame f = frame;
                           f.p *= mp;
                           if (f.p == 0.0L) return;
                           for (std::size_t oi = 0; oi < cnt.size(); ++oi)
                             if (cnt[oi] > 0) add_to_agg(f.agg, outcomes[ci][oi], cnt[oi]);
                           grown.push_back(std::move(f));
                         });
        }
        partial = std::move(grown);
      }
      for (auto& frame : partial) next[agg_from_map(frame.agg)] += frame.p;
    }

    long double mass = 0.0L;
    for (const auto& [s, p] : next) mass += p;
    if (fabsl(mass - 1.0L) > 1e-12L)
      throw std::runtime_error("oracle-mass-leak: |mass-1| exceeds 1e-12 at round " +
                               std::to_string(t));
    if (std::int64_t(next.size()) > max_states)
      throw std::runtime_error("state-cap-exceeded: " + std::to_string(next.size()) +
                               " aggregated states at round " + std::to_string(t) +
                               " (cap " + std::to_string(max_states) + ")");
    evo.max_support = std::max(evo.max_support, std::int64_t(next.size()));
    dist = std::move(next);
    evo.per_round.push_back(dist);
  }
  return evo;
}

template <class Model>
DivergenceReport compare_impl(const SimConfig& cfg, const Model& model,
                              std::int64_t num_runs, std::int64_t max_states) {
  if (num_runs <= 0) throw std::invalid_argument("empty-sample: num_mc_runs must be >= 1");
  OracleEvolution evo = evolve(cfg, model, max_states);
  const ExactDistribution& exact = evo.final_dist();

  const std::int64_t pos = cfg.horizon % model.phase_length();
  std::map<AggState, std::int64_t> counts;
  const auto agent = model.make_agent(cfg);
  for (std::int64_t r = 0; r < num_runs; ++r) {
    SimConfig c = cfg;
    c.seed = cfg.seed + std::uint64_t(r);
    c.trace_stride = std::max<std::int64_t>(c.horizon, 1);
    std::vector<typename Model::EngineAgent::State> states;
    Trace tr = detail::run_sync_impl(c, agent, &states);
    std::map<OracleClass, std::int32_t> agg;
    for (std::int64_t i = 0; i < c.num_ants; ++i)
      add_to_agg(agg, model.encode_engine(states[i], tr.final_assignment[i], pos), 1);
    ++counts[agg_from_map(agg)];
  }

  long double tv = 0.0L;
  std::map<AggState, long double> merged(exact);
  for (const auto& [s, c] : counts) merged.try_emplace(s, 0.0L);
  for (const auto& [s, p_exact] : merged) {
    const auto it = counts.find(s);
    const long double emp =
        it == counts.end() ? 0.0L : (long double)it->second / (long double)num_runs;
    tv += fabsl(emp - p_exact);
  }
  tv *= 0.5L;

  DivergenceReport rep;
  rep.tv_distance = double(tv);
  rep.support = std::int64_t(exact.size());
  rep.runs = num_runs;
  // Mean bound (Cauchy-Schwarz) plus a 99% McDiarmid deviation: TV changes by
  // at most 1/N when one sample changes.
  rep.tolerance = 0.5 * std::sqrt(double(rep.support) / double(num_runs)) +
                  std::sqrt(std::log(1.0 / 0.01) / (2.0 * double(num_runs)));
  rep.pass = rep.tv_distance < rep.tolerance;
  return rep;
}

}  // namespace oracle_detail

// Exact per-round distributions for a tiny instance; refuses once the
// aggregated support exceeds max_states.
inline OracleEvolution exact_evolution(const SimConfig& cfg,
                                       std::int64_t max_states = 1'000'000) {
  switch (cfg.algorithm) {
    case AlgorithmKind::kAnt:
      return oracle_detail::evolve(cfg, oracle_detail::AntOracle(cfg), max_states);
    case AlgorithmKind::kPreciseSigmoid:
      return oracle_detail::evolve(cfg, oracle_detail::PreciseSigmoidOracle(cfg), max_states);
    case AlgorithmKind::kPreciseAdversarial:
      return oracle_detail::evolve(cfg, oracle_detail::PreciseAdversarialOracle(cfg),
                                   max_states);
    case AlgorithmKind::kTrivialSync:
      return oracle_detail::evolve(cfg, oracle_detail::TrivialOracle(cfg), max_states);
    case AlgorithmKind::kTrivialSeq:
      throw std::invalid_argument("oracle-unsupported: sequential model");
  }
  throw std::logic_error("unreachable");
}

// Monte Carlo engine runs with distinct seeds against the exact distribution.
inline DivergenceReport compare_mc_oracle(const SimConfig& cfg, std::int64_t num_mc_runs,
                                          std::int64_t max_states = 1'000'000) {
  switch (cfg.algorithm) {
    case AlgorithmKind::kAnt:
      return oracle_detail::compare_impl(cfg, oracle_detail::AntOracle(cfg), num_mc_runs,
                                         max_states);
    case AlgorithmKind::kPreciseSigmoid:
      return oracle_detail::compare_impl(cfg, oracle_detail::PreciseSigmoidOracle(cfg),
                                         num_mc_runs, max_states);
    case AlgorithmKind::kPreciseAdversarial:
      return oracle_detail::compare_impl(cfg, oracle_detail::PreciseAdversarialOracle(cfg),
                                         num_mc_runs, max_states);
    case AlgorithmKind::kTrivialSync:
      return oracle_detail::compare_impl(cfg, oracle_detail::TrivialOracle(cfg), num_mc_runs,
                                         max_states);
    case AlgorithmKind::kTrivialSeq:
      throw std::invalid_argument("oracle-unsupported: sequential model");
  }
  throw std::logic_error("unreachable");
}

}  // namespace antsim
