#pragma once

// Packaged acceptance experiments, one suite per claim family. Every
// tolerance is pinned here; the CLI `accept` subcommand and the acceptance
// test binary both run these.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "antsim/core.hpp"
#include "antsim/engine.hpp"
#include "antsim/metrics.hpp"
#include "antsim/noise.hpp"
#include "antsim/oracle.hpp"
#include "antsim/types.hpp"

namespace antsim {

struct CriterionResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  std::string relation;  // "<=", ">=", "in"
  double bound = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CriterionResult> criteria;
  bool pass() const {
    for (const auto& c : criteria)
      if (!c.pass) return false;
    return true;
  }
};

inline void print_suite(const SuiteResult& s, std::ostream& out) {
  out << "== suite " << s.suite << " ==\n";
  for (const auto& c : s.criteria) {
    out << (c.pass ? "  [PASS] " : "  [FAIL] ") << c.name << ": measured "
        << std::setprecision(6) << c.measured << " " << c.relation << " " << c.bound;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << "\n";
  }
}

namespace exp_detail {

template <class Fn>
void parallel_for(std::int64_t count, int jobs, Fn&& fn) {
  jobs = int(std::max<std::int64_t>(1, std::min<std::int64_t>(jobs, count)));
  if (jobs == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (std::int64_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  for (auto& t : workers) t.join();
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / double(v.size());
}

inline InitialAssignmentSpec explicit_loads(std::int64_t n,
                                            const std::vector<std::int64_t>& loads) {
  std::vector<TaskId> a(n, kIdle);
  std::int64_t pos = 0;
  for (std::size_t j = 0; j < loads.size(); ++j)
    for (std::int64_t i = 0; i < loads[j]; ++i) a[pos++] = TaskId(j);
  return ExplicitInit{std::move(a)};
}

inline double post_burnin_avg_regret(const Trace& t) {
  return t.summary.post_burnin_rounds
             ? double(t.summary.post_burnin_regret) / double(t.summary.post_burnin_rounds)
             : 0.0;
}

// The workhorse configuration of the sigmoid-noise experiments:
// n = 10^4 ants, four tasks of demand 1250, lambda chosen so gamma* = 0.05.
inline SimConfig sigmoid_base_config() {
  SimConfig c;
  c.num_ants = 10000;
  c.num_tasks = 4;
  c.demands = {1250, 1250, 1250, 1250};
  const double lambda = 8.0 * std::log(10000.0) / (0.05 * 1250.0);
  c.noise = SigmoidNoise{lambda, false};
  c.algorithm = AlgorithmKind::kAnt;
  c.horizon = 20000;
  c.trace_stride = 1000;
  return c;
}

}  // namespace exp_detail

// --- Suite: oracle-equivalence ----------------------------------------------
// Monte Carlo engine runs against the exact aggregated-state distribution for
// each of the four algorithms, at a mid-phase point (internal state live) and
// at a phase boundary.
inline SuiteResult suite_oracle_equivalence(int jobs) {
  struct Case {
    std::string name;
    SimConfig cfg;
  };
  std::vector<Case> cases;

  {
    SimConfig c;
    c.num_ants = 4;
    c.num_tasks = 2;
    c.demands = {1, 1};
    c.noise = SigmoidNoise{1.0, false};
    c.algorithm = AlgorithmKind::kTrivialSync;
    c.gamma = 0.1;
    c.horizon = 4;
    c.seed = 10'000;
    cases.push_back({"trivial-4-rounds", c});
  }
  {
    SimConfig c;
    c.num_ants = 3;
    c.num_tasks = 2;
    c.demands = {1, 1};
    c.noise = SigmoidNoise{1.0, false};
    c.algorithm = AlgorithmKind::kAnt;
    c.gamma = 0.1;
    c.seed = 20'000;
    c.horizon = 3;
    cases.push_back({"ant-mid-phase", c});
    c.horizon = 4;
    cases.push_back({"ant-two-phases", c});
  }
  {
    SimConfig c;
    c.num_ants = 2;
    c.num_tasks = 1;
    c.demands = {1};
    c.noise = SigmoidNoise{1.0, false};
    c.algorithm = AlgorithmKind::kPreciseSigmoid;
    c.gamma = 0.1;
    c.epsilon = 1.0;  // m = 21, phase 42
    c.seed = 30'000;
    c.horizon = 5;
    cases.push_back({"precise-sigmoid-mid-window", c});
    c.horizon = 42;
    cases.push_back({"precise-sigmoid-full-phase", c});
  }
  {
    SimConfig c;
    c.num_ants = 2;
    c.num_tasks = 1;
    c.demands = {3};
    AdversarialNoise a;
    a.gamma_ad = 0.4;  // grey zone [-1.2, 1.2] contains deficit 1
    a.strategy.kind = AdversaryStrategy::Kind::kCorrectOutsideRandomInside;
    a.strategy.flip_probability = 0.5;
    c.noise = a;
    c.algorithm = AlgorithmKind::kPreciseAdversarial;
    c.gamma = 0.5;    // large branch probabilities give the comparison power
    c.epsilon = 1.0;  // r1 = 32, phase 160
    c.seed = 40'000;
    // Start working: load 2 puts the deficit inside the grey zone, so the
    // random adversary and the pause/replay machinery are all exercised.
    c.initial_assignment = ExplicitInit{{0, 0}};
    c.horizon = 6;
    cases.push_back({"precise-adversarial-sub-phase-1", c});
    c.horizon = 160;
    cases.push_back({"precise-adversarial-full-phase", c});
  }

  constexpr std::int64_t kMcRuns = 100'000;
  std::vector<CriterionResult> results(cases.size());
  exp_detail::parallel_for(std::int64_t(cases.size()), jobs, [&](std::int64_t i) {
    const DivergenceReport rep = compare_mc_oracle(cases[i].cfg, kMcRuns);
    CriterionResult r;
    r.name = cases[i].name;
    r.measured = rep.tv_distance;
    r.relation = "<=";
    r.bound = rep.tolerance;
    r.pass = rep.pass;
    std::ostringstream d;
    d << "TV over " << rep.support << " states, " << rep.runs << " runs";
    r.detail = d.str();
    results[i] = r;
  });
  return {"oracle-equivalence", results};
}

// --- Suite: ant-closeness -----------------------------------------------------
// Steady-state closeness of the two-sample algorithm at gamma = gamma*, the
// per-round deficit bound, and the linear-in-gamma regret scaling.
inline SuiteResult suite_ant_closeness(int jobs) {
  SimConfig base = exp_detail::sigmoid_base_config();
  const double gamma_star =
      critical_value(base.noise, base.demands, base.num_ants);
  constexpr int kSeeds = 20;

  std::vector<double> closeness_by_seed(kSeeds);
  std::vector<double> regret1(kSeeds), regret2(kSeeds), regret4(kSeeds);
  std::int64_t pooled_exceptions = 0, pooled_rounds = 0;
  std::vector<std::int64_t> exc(kSeeds), rounds(kSeeds);

  struct Job {
    int seed;
    int mult;
  };
  std::vector<Job> grid;
  for (int m : {1, 2, 4})
    for (int s = 1; s <= kSeeds; ++s) grid.push_back({s, m});

  exp_detail::parallel_for(std::int64_t(grid.size()), jobs, [&](std::int64_t i) {
    const Job job = grid[i];
    SimConfig c = base;
    c.gamma = gamma_star * job.mult;
    c.seed = std::uint64_t(job.seed);
    const Trace tr = run_synchronous(c);
    const double avg = exp_detail::post_burnin_avg_regret(tr);
    const int s = job.seed - 1;
    if (job.mult == 1) {
      regret1[s] = avg;
      closeness_by_seed[s] = closeness(tr, gamma_star, c.demands, tr.burn_in);
      exc[s] = tr.summary.post_burnin_exception_rounds;
      rounds[s] = tr.summary.post_burnin_rounds;
    } else if (job.mult == 2) {
      regret2[s] = avg;
    } else {
      regret4[s] = avg;
    }
  });
  for (int s = 0; s < kSeeds; ++s) {
    pooled_exceptions += exc[s];
    pooled_rounds += rounds[s];
  }

  std::vector<CriterionResult> out;
  {
    CriterionResult r;
    r.name = "mean-closeness-at-gamma-star";
    r.measured = exp_detail::mean(closeness_by_seed);
    r.relation = "<=";
    r.bound = 5.0 + 0.5;
    r.pass = r.measured <= r.bound;
    r.detail = "20 seeds, n=10^4, k=4, d_j=1250, horizon 2e4, burn-in 1e4";
    out.push_back(r);
  }
  {
    CriterionResult r;
    r.name = "deficit-within-5-gamma-d-plus-3";
    const double frac_ok =
        1.0 - double(pooled_exceptions) / double(std::max<std::int64_t>(pooled_rounds, 1));
    r.measured = frac_ok;
    r.relation = ">=";
    r.bound = 0.99;
    r.pass = r.measured >= r.bound;
    r.detail = "fraction of post-burn-in rounds with every |deficit_j| <= 5 gamma d_j + 3";
    out.push_back(r);
  }
  {
    const double m1 = exp_detail::mean(regret1);
    const double m2 = exp_detail::mean(regret2);
    const double m4 = exp_detail::mean(regret4);
    CriterionResult r;
    r.name = "regret-increases-with-gamma";
    r.measured = (m1 < m2 && m2 < m4) ? 1.0 : 0.0;
    r.relation = ">=";
    r.bound = 1.0;
    r.pass = r.measured >= 1.0;
    std::ostringstream d;
    d << "mean regret/round " << m1 << " (g*), " << m2 << " (2g*), " << m4 << " (4g*)";
    r.detail = d.str();
    out.push_back(r);
    CriterionResult q;
    q.name = "regret-ratio-4x-gamma";
    q.measured = m4 / m1;
    q.relation = "in";
    q.bound = 8.0;
    q.pass = q.measured >= 2.0 && q.measured <= 8.0;
    q.detail = "regret(4 gamma*) / regret(gamma*), linear prediction with factor-2 slack";
    out.push_back(q);
  }
  return {"ant-closeness", out};
}

// --- Suite: precise-sigmoid ---------------------------------------------------
// The median-amplified variant beats the plain algorithm and lands under the
// epsilon-scaled regret bound.
inline SuiteResult suite_precise_sigmoid(int jobs) {
  SimConfig base = exp_detail::sigmoid_base_config();
  const double gamma_star = critical_value(base.noise, base.demands, base.num_ants);
  constexpr int kSeeds = 5;

  SimConfig ps = base;
  ps.algorithm = AlgorithmKind::kPreciseSigmoid;
  ps.gamma = gamma_star;
  ps.epsilon = 0.25;  // m = 81, phase 162
  ps.horizon = 40500;  // 250 phases
  // Near-steady start: the leave rate gamma/(c_chi c_d) per 162-round phase
  // makes a cold-start overshoot drain far longer than any desk-scale run.
  ps.initial_assignment = exp_detail::explicit_loads(ps.num_ants, {1254, 1254, 1254, 1254});

  SimConfig ant = base;
  ant.gamma = gamma_star;

  std::int64_t demand_sum = 0;
  for (auto d : base.demands) demand_sum += d;

  std::vector<double> ps_avg(kSeeds), ant_avg(kSeeds);
  exp_detail::parallel_for(2 * kSeeds, jobs, [&](std::int64_t i) {
    const bool is_ps = i < kSeeds;
    const int seed = int(i % kSeeds) + 1;
    SimConfig c = is_ps ? ps : ant;
    c.seed = std::uint64_t(seed);
    const Trace tr = run_synchronous(c);
    (is_ps ? ps_avg : ant_avg)[seed - 1] = exp_detail::post_burnin_avg_regret(tr);
  });

  std::vector<CriterionResult> out;
  {
    CriterionResult r;
    r.name = "regret-under-epsilon-bound";
    r.measured = exp_detail::mean(ps_avg);
    r.relation = "<=";
    r.bound = 2.0 * ps.gamma * ps.epsilon * double(demand_sum) + 4.0 * ps.num_tasks;
    r.pass = r.measured <= r.bound;
    r.detail =
        "mean post-burn-in regret/round, eps=0.25, 250 phases of 162; at this "
        "demand scale the eps-shrunk reliable margin (~1.6 ants) sits below the "
        "thin-out noise, so join avalanches are expected — see README";
    out.push_back(r);
  }
  {
    CriterionResult r;
    r.name = "beats-ant-on-matched-seeds";
    int wins = 0;
    for (int s = 0; s < kSeeds; ++s)
      if (ps_avg[s] < ant_avg[s]) ++wins;
    r.measured = double(wins);
    r.relation = ">=";
    r.bound = double(kSeeds);
    r.pass = wins == kSeeds;
    std::ostringstream d;
    d << "precise-sigmoid vs ant regret/round: ";
    for (int s = 0; s < kSeeds; ++s)
      d << (s ? ", " : "") << ps_avg[s] << "<" << ant_avg[s];
    r.detail = d.str();
    out.push_back(r);
  }
  return {"precise-sigmoid", out};
}

// --- Suite: adversarial-lower-bound --------------------------------------------
// The indistinguishability adversary forces regret of order gamma_ad * sum d
// on every algorithm, even from an optimal start.
inline SuiteResult suite_adversarial_lower_bound(int jobs) {
  SimConfig base;
  base.num_ants = 4000;
  base.num_tasks = 2;
  base.demands = {1000, 1000};
  AdversarialNoise noise;
  noise.gamma_ad = 0.05;
  noise.strategy.kind = AdversaryStrategy::Kind::kIndistinguishability;
  noise.strategy.shifted = false;
  base.noise = noise;
  base.gamma = 0.05;
  base.epsilon = 0.25;
  base.horizon = 60000;
  base.burn_in = 10000;
  base.trace_stride = 1000;
  base.initial_assignment = exp_detail::explicit_loads(base.num_ants, {1000, 1000});

  const std::vector<AlgorithmKind> algs = {AlgorithmKind::kAnt,
                                           AlgorithmKind::kPreciseSigmoid,
                                           AlgorithmKind::kPreciseAdversarial};
  constexpr int kSeeds = 3;
  std::vector<double> avg(algs.size() * kSeeds);
  exp_detail::parallel_for(std::int64_t(avg.size()), jobs, [&](std::int64_t i) {
    SimConfig c = base;
    c.algorithm = algs[i / kSeeds];
    c.seed = std::uint64_t(i % kSeeds + 1);
    avg[i] = exp_detail::post_burnin_avg_regret(run_synchronous(c));
  });

  const double floor_bound = 0.8 * noise.gamma_ad * 2000.0;
  std::vector<CriterionResult> out;
  for (std::size_t a = 0; a < algs.size(); ++a) {
    std::vector<double> v(avg.begin() + a * kSeeds, avg.begin() + (a + 1) * kSeeds);
    CriterionResult r;
    r.name = std::string("regret-floor-") + algorithm_name(algs[a]);
    r.measured = exp_detail::mean(v);
    r.relation = ">=";
    r.bound = floor_bound;
    r.pass = r.measured >= r.bound;
    r.detail = "indistinguishability adversary, start at demands, 3 seeds";
    out.push_back(r);
  }
  return {"adversarial-lower-bound", out};
}

// --- Suite: precise-adversarial -------------------------------------------------
// The replay algorithm under the two worst fixed grey-zone strategies.
inline SuiteResult suite_precise_adversarial(int jobs) {
  SimConfig base;
  base.num_ants = 4000;
  base.num_tasks = 2;
  base.demands = {1000, 1000};
  base.algorithm = AlgorithmKind::kPreciseAdversarial;
  base.gamma = 0.05;
  base.epsilon = 0.25;  // r1 = 128, r2 = 512, phase 640
  base.horizon = 384000;  // 600 phases
  base.burn_in = 256000;  // the all-overload drain needs ~350 phases
  base.trace_stride = 1000;
  base.initial_assignment = exp_detail::explicit_loads(base.num_ants, {1052, 1052});

  constexpr int kSeeds = 3;
  const std::vector<AdversaryStrategy::Kind> strategies = {
      AdversaryStrategy::Kind::kAllLackInGrey,
      AdversaryStrategy::Kind::kAllOverloadInGrey};
  std::vector<double> avg(strategies.size() * kSeeds);
  exp_detail::parallel_for(std::int64_t(avg.size()), jobs, [&](std::int64_t i) {
    SimConfig c = base;
    AdversarialNoise noise;
    noise.gamma_ad = 0.05;
    noise.strategy.kind = strategies[i / kSeeds];
    c.noise = noise;
    c.seed = std::uint64_t(i % kSeeds + 1);
    avg[i] = exp_detail::post_burnin_avg_regret(run_synchronous(c));
  });

  std::int64_t demand_sum = 2000;
  const double bound =
      2.0 * base.gamma * (1.0 + base.epsilon) * double(demand_sum) + 4.0 * base.num_tasks;
  std::vector<CriterionResult> out;
  const char* names[] = {"regret-under-all-lack", "regret-under-all-overload"};
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    std::vector<double> v(avg.begin() + s * kSeeds, avg.begin() + (s + 1) * kSeeds);
    CriterionResult r;
    r.name = names[s];
    r.measured = exp_detail::mean(v);
    r.relation = "<=";
    r.bound = bound;
    r.pass = r.measured <= r.bound;
    r.detail = "mean post-burn-in regret/round, gamma = gamma_ad = 0.05, eps = 0.25";
    out.push_back(r);
  }
  return {"precise-adversarial", out};
}

// --- Suite: trivial-oscillation --------------------------------------------------
// Synchronous: colony-scale oscillation every window. Sequential: load climbs
// from zero and the steady deficit sits at order gamma* d.
inline SuiteResult suite_trivial_oscillation(int jobs) {
  (void)jobs;
  std::vector<CriterionResult> out;
  {
    SimConfig c;
    c.num_ants = 2000;
    c.num_tasks = 1;
    c.demands = {500};
    const double lambda = 8.0 * std::log(2000.0) / (0.3 * 500.0);  // gamma* = 0.3
    c.noise = SigmoidNoise{lambda, false};
    c.algorithm = AlgorithmKind::kTrivialSync;
    c.gamma = 0.3;
    c.horizon = 2000;
    c.seed = 7;
    const Trace tr = run_synchronous(c);
    const std::vector<double> thresholds = {double(c.num_ants) / 2.0 / 500.0};
    const OscillationReport rep = oscillation_report(tr, 10, thresholds, c.gamma);
    CriterionResult r;
    r.name = "sync-oscillation-every-window";
    r.measured = double(rep.tasks[0].flagged);
    r.relation = ">=";
    r.bound = double(rep.tasks[0].windows);
    r.pass = rep.tasks[0].flagged == rep.tasks[0].windows && rep.tasks[0].windows >= 1000;
    std::ostringstream d;
    d << "windows with amplitude >= n/2: " << rep.tasks[0].flagged << "/"
      << rep.tasks[0].windows << ", max amplitude " << rep.tasks[0].max_amplitude;
    r.detail = d.str();
    out.push_back(r);
  }
  {
    SimConfig c;
    c.num_ants = 2000;
    c.num_tasks = 1;
    c.demands = {45};  // ~sqrt(n)
    const double gamma_star = 0.45;
    const double lambda = 8.0 * std::log(2000.0) / (gamma_star * 45.0);
    c.noise = SigmoidNoise{lambda, false};
    c.algorithm = AlgorithmKind::kTrivialSeq;
    c.gamma = gamma_star;
    c.horizon = 200000;
    c.burn_in = 20000;
    c.seed = 7;
    const Trace tr = run_sequential(c);

    bool rises = false;
    std::int64_t load_at_5000 = 0;
    for (const auto& rec : tr.records) {
      if (rec.round == 200 && rec.loads[0] > 0) rises = true;
      if (rec.round == 5000) load_at_5000 = rec.loads[0];
    }
    CriterionResult r;
    r.name = "seq-load-rises-from-zero";
    r.measured = double(load_at_5000);
    r.relation = ">=";
    r.bound = 40.0;
    r.pass = rises && load_at_5000 >= 40;
    r.detail = "load at round 5000 (demand 45), started all-idle";
    out.push_back(r);

    const double lo = gamma_star * 45.0 / 40.0;
    const double hi = 4.0 * gamma_star * 45.0;
    std::int64_t in_band = 0, total = 0;
    for (const auto& rec : tr.records) {
      if (rec.round <= *c.burn_in) continue;
      ++total;
      const double a = double(std::llabs(rec.deficit[0]));
      if (a >= lo && a <= hi) ++in_band;
    }
    CriterionResult q;
    q.name = "seq-deficit-in-band";
    q.measured = total ? double(in_band) / double(total) : 0.0;
    q.relation = ">=";
    q.bound = 0.9;
    q.pass = q.measured >= q.bound;
    std::ostringstream d;
    d << "fraction of post-burn-in rounds with |deficit| in [" << lo << ", " << hi << "]";
    q.detail = d.str();
    out.push_back(q);
  }
  return {"trivial-oscillation", out};
}

inline std::vector<std::string> suite_names() {
  return {"oracle-equivalence", "ant-closeness",        "precise-sigmoid",
          "precise-adversarial", "adversarial-lower-bound", "trivial-oscillation"};
}

inline SuiteResult run_suite(const std::string& name, int jobs) {
  if (name == "oracle-equivalence") return suite_oracle_equivalence(jobs);
  if (name == "ant-closeness") return suite_ant_closeness(jobs);
  if (name == "precise-sigmoid") return suite_precise_sigmoid(jobs);
  if (name == "precise-adversarial") return suite_precise_adversarial(jobs);
  if (name == "adversarial-lower-bound") return suite_adversarial_lower_bound(jobs);
  if (name == "trivial-oscillation") return suite_trivial_oscillation(jobs);
  std::string known;
  for (const auto& n : suite_names()) known += " " + n;
  throw std::invalid_argument("unknown suite '" + name + "'; valid suites:" + known);
}

}  // namespace antsim
