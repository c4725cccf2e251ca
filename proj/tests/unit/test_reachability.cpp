// Assumption-2 check: for every algorithm, every pair of ant states
// (idle or working on task j) is connected by some feedback sequence with
// positive probability. Witnesses force branch outcomes that have positive
// probability and drive whole phases with chosen feedback patterns; the
// one-phase edge relation is then searched for strong connectivity.

#include <gtest/gtest.h>

#include <functional>
#include <queue>
#include <set>
#include <vector>

#include "antsim/agents.hpp"
#include "branch_enum.hpp"

namespace antsim {
namespace {

template <class Agent>
std::set<TaskId> phase_end_states(const Agent& agent, std::int32_t k, TaskId start,
                                  const std::function<std::int32_t(std::int64_t)>& mask_at) {
  std::set<TaskId> ends;
  for (bool leave : {false, true})
    for (std::uint32_t pick = 0; pick < std::uint32_t(k); ++pick) {
      auto st = agent.initial_state();
      TaskId a = start;
      testutil::ForcedRng rng;
      rng.pause_choice = false;
      rng.leave_choice = leave;
      rng.pick_choice = pick;
      for (std::int64_t t = 1; t <= agent.phase_length(); ++t) {
        std::vector<Feedback> row(k);
        const std::int32_t mask = mask_at(t);
        for (std::int32_t j = 0; j < k; ++j)
          row[j] = (mask >> j & 1) ? Feedback::kLack : Feedback::kOverload;
        a = agent.step(st, a, row, t, rng);
      }
      if (rng.feasible()) ends.insert(a);
    }
  return ends;
}

template <class Agent>
void expect_strongly_connected(const Agent& agent, std::int32_t k) {
  const std::int64_t phase = agent.phase_length();
  const std::int64_t half = std::max<std::int64_t>(phase / 2, 1);
  std::vector<std::set<TaskId>> edges(k + 1);  // index 0 = idle, j+1 = task j
  auto node = [](TaskId a) { return a == kIdle ? 0 : a + 1; };
  for (TaskId start = kIdle; start < k; ++start) {
    for (std::int32_t m1 = 0; m1 < (1 << k); ++m1)
      for (std::int32_t m2 = 0; m2 < (1 << k); ++m2) {
        const auto ends = phase_end_states<Agent>(
            agent, k, start, [&](std::int64_t t) { return t <= half ? m1 : m2; });
        for (TaskId e : ends) edges[node(start)].insert(e);
      }
  }
  for (std::int32_t from = 0; from <= k; ++from) {
    std::set<std::int32_t> seen{from};
    std::queue<std::int32_t> q;
    q.push(from);
    while (!q.empty()) {
      const auto cur = q.front();
      q.pop();
      for (TaskId e : edges[cur])
        if (seen.insert(node(e)).second) q.push(node(e));
    }
    EXPECT_EQ(seen.size(), std::size_t(k + 1))
        << "not all states reachable from node " << from;
  }
}

TEST(Reachability, AntStronglyConnectedUpToThreeTasks) {
  for (std::int32_t k : {1, 2, 3}) expect_strongly_connected(AntAgent(k, 1.0 / 16), k);
}

TEST(Reachability, TrivialStronglyConnectedUpToThreeTasks) {
  for (std::int32_t k : {1, 2, 3}) expect_strongly_connected(TrivialAgent(k), k);
}

TEST(Reachability, PreciseSigmoidStronglyConnectedUpToThreeTasks) {
  for (std::int32_t k : {1, 2, 3})
    expect_strongly_connected(PreciseSigmoidAgent(k, 1.0 / 16, 1.0), k);
}

TEST(Reachability, PreciseAdversarialStronglyConnectedUpToThreeTasks) {
  for (std::int32_t k : {1, 2, 3})
    expect_strongly_connected(PreciseAdversarialAgent(k, 1.0 / 16, 1.0), k);
}

}  // namespace
}  // namespace antsim
