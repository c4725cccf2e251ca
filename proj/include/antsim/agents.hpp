#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "antsim/rng.hpp"
#include "antsim/types.hpp"

namespace antsim {

// Algorithm constants. c_s is kept as the exact ratio 7/3: the analysis needs
// 0.9*c_s >= 2, which fails under decimal truncation.
inline constexpr int kCd = 19;
inline constexpr int kCsNum = 7;
inline constexpr int kCsDen = 3;
inline constexpr int kCchi = 10;

inline constexpr double cs_ratio() { return double(kCsNum) / double(kCsDen); }

// Every agent exposes
//   State initial_state() const;
//   int64 phase_length() const;
//   template <class Rng>
//   Action step(State&, TaskId prev, span<const Feedback> row, int64 round, Rng&) const;
// step consumes O(1) draws and never moves a worker directly between tasks:
// work(j) with j != current task only ever follows idle.

namespace detail {

// Uniform pick among the tasks satisfying `match`, without materializing the
// candidate set. One draw, indexed in ascending task order.
template <class Pred, class Rng>
TaskId pick_uniform_match(std::int32_t k, Pred&& match, Rng& rng) {
  std::int32_t count = 0;
  for (std::int32_t j = 0; j < k; ++j) count += match(j) ? 1 : 0;
  if (count == 0) return kIdle;
  std::uint32_t idx = rng.pick(Draw::kJoinChoice, std::uint32_t(count));
  for (std::int32_t j = 0; j < k; ++j)
    if (match(j)) {
      if (idx == 0) return j;
      --idx;
    }
  return kIdle;
}

inline std::string feedback_bits(std::span<const Feedback> v) {
  std::string s;
  s.reserve(v.size());
  for (Feedback f : v) s.push_back(f == Feedback::kLack ? 'L' : 'O');
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Two-round phases: sample, thin out, sample again, then join/leave.

struct AntState {
  TaskId current_task = kIdle;    // latch taken at the first round of the phase
  std::vector<Feedback> sample1;  // s1, one entry per task
  bool paused = false;            // temporarily idle within the phase

  // Compact text form; field order: latch, paused, s1.
  std::string serialize() const {
    std::ostringstream os;
    os << "c=" << current_task << " p=" << int(paused)
       << " s1=" << detail::feedback_bits(sample1);
    return os.str();
  }
};

class AntAgent {
 public:
  using State = AntState;

  AntAgent(std::int32_t num_tasks, double gamma) : k_(num_tasks), gamma_(gamma) {}

  std::int64_t phase_length() const { return 2; }
  double pause_probability() const { return cs_ratio() * gamma_; }
  double leave_probability() const { return gamma_ / kCd; }

  AntState initial_state() const {
    AntState s;
    s.sample1.assign(k_, Feedback::kOverload);
    return s;
  }

  template <class Rng>
  Action step(AntState& st, TaskId prev, std::span<const Feedback> row,
              std::int64_t round, Rng& rng) const {
    if (round % 2 == 1) {
      st.current_task = prev;
      st.sample1.assign(row.begin(), row.end());
      st.paused = false;
      if (st.current_task != kIdle && rng.bernoulli(Draw::kPause, pause_probability())) {
        st.paused = true;
        return kIdle;
      }
      return prev;
    }
    // Even round: row is s2.
    if (st.current_task == kIdle) {
      return detail::pick_uniform_match(
          k_,
          [&](std::int32_t j) {
            return st.sample1[j] == Feedback::kLack && row[j] == Feedback::kLack;
          },
          rng);
    }
    const TaskId c = st.current_task;
    st.paused = false;
    if (st.sample1[c] == Feedback::kOverload && row[c] == Feedback::kOverload &&
        rng.bernoulli(Draw::kLeave, leave_probability()))
      return kIdle;
    return c;  // paused ants return here
  }

 private:
  std::int32_t k_;
  double gamma_;
};

// ---------------------------------------------------------------------------
// Ant with median-amplified samples: phases of 2m rounds, m = ceil(2 c_chi / eps + 1),
// a window of m samples per task on each side of the thin-out.

struct PreciseSigmoidState {
  TaskId current_task = kIdle;
  std::vector<std::uint32_t> window1;  // lack counts, rounds 1..m
  std::vector<std::uint32_t> window2;  // lack counts, rounds m+1..2m-1 and 0
  std::vector<Feedback> median1;       // per-task s-hat-1, fixed at round m
  bool paused = false;

  std::string serialize() const {
    std::ostringstream os;
    os << "c=" << current_task << " p=" << int(paused) << " w1=";
    for (std::size_t j = 0; j < window1.size(); ++j)
      os << (j ? "," : "") << window1[j];
    os << " w2=";
    for (std::size_t j = 0; j < window2.size(); ++j)
      os << (j ? "," : "") << window2[j];
    os << " m1=" << detail::feedback_bits(median1);
    return os.str();
  }
};

class PreciseSigmoidAgent {
 public:
  using State = PreciseSigmoidState;

  PreciseSigmoidAgent(std::int32_t num_tasks, double gamma, double epsilon)
      : k_(num_tasks), gamma_(gamma) {
    if (!(epsilon > 0.0 && epsilon <= 1.0))
      throw std::invalid_argument("epsilon-out-of-range");
    epsilon_ = epsilon;
    m_ = std::int64_t(std::ceil(2.0 * kCchi / epsilon + 1.0));
  }

  std::int64_t window_size() const { return m_; }
  std::int64_t phase_length() const { return 2 * m_; }
  double pause_probability() const { return epsilon_ * cs_ratio() * gamma_ / kCchi; }
  double leave_probability() const { return gamma_ / (double(kCchi) * kCd); }

  PreciseSigmoidState initial_state() const {
    PreciseSigmoidState s;
    s.window1.assign(k_, 0);
    s.window2.assign(k_, 0);
    s.median1.assign(k_, Feedback::kOverload);
    return s;
  }

  // Median of a window: lack iff more than half the samples were lack.
  // A tie (possible only when the count is even) resolves to overload.
  Feedback median(std::uint32_t lack_count) const {
    return 2 * std::int64_t(lack_count) > m_ ? Feedback::kLack : Feedback::kOverload;
  }

  template <class Rng>
  Action step(PreciseSigmoidState& st, TaskId prev, std::span<const Feedback> row,
              std::int64_t round, Rng& rng) const {
    const std::int64_t r = round % phase_length();
    if (r == 1) {
      st.current_task = prev;
      st.window1.assign(k_, 0);
      st.window2.assign(k_, 0);
      st.paused = false;
    }
    if (r >= 1 && r <= m_) {
      for (std::int32_t j = 0; j < k_; ++j)
        st.window1[j] += row[j] == Feedback::kLack;
      if (r < m_) return prev;
      // r == m: close the first window, then thin out.
      for (std::int32_t j = 0; j < k_; ++j) st.median1[j] = median(st.window1[j]);
      if (st.current_task != kIdle && rng.bernoulli(Draw::kPause, pause_probability())) {
        st.paused = true;
        return kIdle;
      }
      return st.current_task == kIdle ? prev : st.current_task;
    }
    // Second window: rounds m+1 .. 2m-1 and 0.
    for (std::int32_t j = 0; j < k_; ++j)
      st.window2[j] += row[j] == Feedback::kLack;
    if (r != 0) return prev;
    // r == 0: close the phase.
    if (st.current_task == kIdle) {
      return detail::pick_uniform_match(
          k_,
          [&](std::int32_t j) {
            return st.median1[j] == Feedback::kLack &&
                   median(st.window2[j]) == Feedback::kLack;
          },
          rng);
    }
    const TaskId c = st.current_task;
    st.paused = false;
    if (st.median1[c] == Feedback::kOverload &&
        median(st.window2[c]) == Feedback::kOverload &&
        rng.bernoulli(Draw::kLeave, leave_probability()))
      return kIdle;
    return c;
  }

 private:
  std::int32_t k_;
  double gamma_;
  double epsilon_;
  std::int64_t m_;
};

// ---------------------------------------------------------------------------
// Adversarial-noise variant: sub-phase one thins out and looks for the first
// lack, sub-phase two replays the assignment held at that round.

struct PreciseAdversarialState {
  TaskId current_task = kIdle;
  TaskId replay = kIdle;       // assignment held at round r_min
  bool replay_set = false;     // a lack was seen before round r1
  std::int32_t r_min = 0;      // 1..r1, diagnostics
  std::vector<std::uint8_t> all_lack;      // per task: every recorded sample was lack
  std::vector<std::uint8_t> all_overload;  // per task: every recorded sample was overload

  std::string serialize() const {
    std::ostringstream os;
    os << "c=" << current_task << " r=" << replay << " rs=" << int(replay_set)
       << " rm=" << r_min << " al=";
    for (auto b : all_lack) os << int(b);
    os << " ao=";
    for (auto b : all_overload) os << int(b);
    return os.str();
  }
};

class PreciseAdversarialAgent {
 public:
  using State = PreciseAdversarialState;

  PreciseAdversarialAgent(std::int32_t num_tasks, double gamma, double epsilon)
      : k_(num_tasks), gamma_(gamma) {
    if (!(epsilon > 0.0 && epsilon <= 1.0))
      throw std::invalid_argument("epsilon-out-of-range");
    epsilon_ = epsilon;
    r1_ = std::int64_t(std::ceil(32.0 / epsilon));
    r2_ = 4 * r1_;
  }

  std::int64_t r1() const { return r1_; }
  std::int64_t r2() const { return r2_; }
  std::int64_t phase_length() const { return r1_ + r2_; }
  double pause_probability() const { return epsilon_ * gamma_ / 32.0; }
  double leave_probability() const { return epsilon_ * gamma_ / 32.0; }

  PreciseAdversarialState initial_state() const {
    PreciseAdversarialState s;
    s.all_lack.assign(k_, 1);
    s.all_overload.assign(k_, 1);
    return s;
  }

  template <class Rng>
  Action step(PreciseAdversarialState& st, TaskId prev, std::span<const Feedback> row,
              std::int64_t round, Rng& rng) const {
    const std::int64_t r = round % phase_length();
    if (r == 1) {
      st.current_task = prev;
      st.replay = prev;
      st.replay_set = false;
      st.r_min = std::int32_t(r1_);
      st.all_lack.assign(k_, 1);
      st.all_overload.assign(k_, 1);
      record(st, row);
      // No thin-out at r = 1; continue the previous assignment.
      note_first_lack(st, row, 1, prev);
      return prev;
    }
    if (r >= 2 && r < r1_) {
      record(st, row);
      TaskId out = kIdle;
      if (st.current_task != kIdle)
        out = rng.bernoulli(Draw::kPause, pause_probability()) ? kIdle : st.current_task;
      note_first_lack(st, row, r, out);
      return out;
    }
    if (r == r1_) {
      record(st, row);
      if (st.current_task == kIdle) return kIdle;
      if (!st.replay_set) {
        // Feedback never flipped to lack in sub-phase one: keep working.
        st.replay = st.current_task;
        st.replay_set = true;
        st.r_min = std::int32_t(r1_);
      }
      return st.replay;
    }
    if (r != 0) {
      // Replay sub-phase; no samples recorded here.
      return st.current_task == kIdle ? kIdle : st.replay;
    }
    // r == 0: final sample of the phase, then join/leave.
    record(st, row);
    if (st.current_task == kIdle) {
      return detail::pick_uniform_match(
          k_, [&](std::int32_t j) { return st.all_lack[j] != 0; }, rng);
    }
    if (st.all_overload[st.current_task] &&
        rng.bernoulli(Draw::kLeave, leave_probability()))
      return kIdle;
    return st.current_task;
  }

 private:
  void record(PreciseAdversarialState& st, std::span<const Feedback> row) const {
    for (std::int32_t j = 0; j < k_; ++j) {
      st.all_lack[j] &= row[j] == Feedback::kLack;
      st.all_overload[j] &= row[j] == Feedback::kOverload;
    }
  }

  // r_min = min{r' < r1 : sample r' for the current task was lack}; the replay
  // assignment is whatever the ant outputs in that round (it may be paused).
  void note_first_lack(PreciseAdversarialState& st, std::span<const Feedback> row,
                       std::int64_t r, TaskId output_this_round) const {
    if (st.current_task == kIdle || st.replay_set) return;
    if (row[st.current_task] == Feedback::kLack) {
      st.replay = output_this_round;
      st.replay_set = true;
      st.r_min = std::int32_t(r);
    }
  }

  std::int32_t k_;
  double gamma_;
  double epsilon_;
  std::int64_t r1_;
  std::int64_t r2_;
};

// ---------------------------------------------------------------------------
// Single-sample algorithm: join any lacking task when idle, drop out on the
// first overload when working. No memory beyond the current task.

struct TrivialState {
  std::string serialize() const { return std::string("-"); }
};

class TrivialAgent {
 public:
  using State = TrivialState;

  explicit TrivialAgent(std::int32_t num_tasks) : k_(num_tasks) {}

  std::int64_t phase_length() const { return 1; }

  TrivialState initial_state() const { return {}; }

  template <class Rng>
  Action step(TrivialState&, TaskId prev, std::span<const Feedback> row,
              std::int64_t /*round*/, Rng& rng) const {
    if (prev == kIdle) {
      return detail::pick_uniform_match(
          k_, [&](std::int32_t j) { return row[j] == Feedback::kLack; }, rng);
    }
    return row[prev] == Feedback::kOverload ? kIdle : prev;
  }

 private:
  std::int32_t k_;
};

inline std::int64_t phase_length_of(const SimConfig& c) {
  switch (c.algorithm) {
    case AlgorithmKind::kAnt: return 2;
    case AlgorithmKind::kPreciseSigmoid:
      return PreciseSigmoidAgent(c.num_tasks, c.gamma, c.epsilon).phase_length();
    case AlgorithmKind::kPreciseAdversarial:
      return PreciseAdversarialAgent(c.num_tasks, c.gamma, c.epsilon).phase_length();
    case AlgorithmKind::kTrivialSync:
    case AlgorithmKind::kTrivialSeq: return 1;
  }
  return 1;
}

}  // namespace antsim
