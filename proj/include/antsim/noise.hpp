#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "antsim/rng.hpp"
#include "antsim/types.hpp"

namespace antsim {

// s(x) = 1 / (1 + e^{-lambda x}), computed on the small side and mirrored:
// the sum s(x) + s(-x) rounds to exactly 1.0, and probabilities as small as
// ~1e-300 keep full relative precision. Saturates to exact 0/1 only at the
// limits of double range.
inline double sigmoid(double x, double lambda) {
  const double a = std::exp(-lambda * std::abs(x));
  const double lo = a / (1.0 + a);
  return x < 0 ? lo : 1.0 - lo;
}

// Least x' with s(-x' d_j) <= n^-8 for all j; attained at d_min, closed form
// x' = ln(n^8 - 1) / (lambda d_min). For the adversarial model the critical
// value is gamma_ad itself.
inline double critical_value(double lambda, std::span<const std::int64_t> demands,
                             std::int64_t num_ants) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda-not-positive");
  if (num_ants < 2) throw std::invalid_argument("critical-value-needs-n-ge-2");
  if (demands.empty()) throw std::invalid_argument("demands-empty");
  const std::int64_t d_min = *std::min_element(demands.begin(), demands.end());
  const double n = double(num_ants);
  const double n8 = std::pow(n, 8.0);
  // n^8 - 1 == n^8 in double once n^8 > 2^53; ln(n^8) = 8 ln n is then exact enough.
  const double log_term = n8 > 0x1.0p53 ? 8.0 * std::log(n) : std::log(n8 - 1.0);
  return log_term / (lambda * double(d_min));
}

inline double critical_value(const NoiseSpec& noise, std::span<const std::int64_t> demands,
                             std::int64_t num_ants) {
  if (const auto* s = std::get_if<SigmoidNoise>(&noise))
    return critical_value(s->lambda, demands, num_ants);
  if (const auto* a = std::get_if<AdversarialNoise>(&noise)) return a->gamma_ad;
  return 0.0;  // noise-free: feedback is always correct
}

// Per-task deficit interval in which feedback is unreliable.
struct GreyZone {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double deficit) const { return deficit >= lo && deficit <= hi; }
};

inline std::vector<GreyZone> grey_zones(std::span<const std::int64_t> demands,
                                        double gamma_star) {
  if (gamma_star < 0.0) throw std::invalid_argument("gamma-star-negative");
  std::vector<GreyZone> zones(demands.size());
  for (std::size_t j = 0; j < demands.size(); ++j) {
    const double half = gamma_star * double(demands[j]);
    zones[j] = {-half, half};
  }
  return zones;
}

// Per-ant, per-task lack/overload signals for one round, row-major by ant.
struct FeedbackMatrix {
  std::int64_t round = 0;
  std::int64_t num_ants = 0;
  std::int32_t num_tasks = 0;
  std::vector<Feedback> cells;

  void resize(std::int64_t n, std::int32_t k) {
    num_ants = n;
    num_tasks = k;
    cells.assign(std::size_t(n) * k, Feedback::kLack);
  }
  Feedback at(std::int64_t ant, std::int32_t task) const {
    return cells[std::size_t(ant) * num_tasks + task];
  }
  std::span<const Feedback> row(std::int64_t ant) const {
    return {cells.data() + std::size_t(ant) * num_tasks, std::size_t(num_tasks)};
  }
  std::span<Feedback> row(std::int64_t ant) {
    return {cells.data() + std::size_t(ant) * num_tasks, std::size_t(num_tasks)};
  }
};

namespace detail {

// Entry rules shared by the matrix builders and the sequential engine path.

// Probabilities below the 2^-53 resolution of the uniform grid round to never;
// p == 1.0 is bit-identical to drawing since u < 1 always. Everything in
// between draws one uniform keyed by (seed, round, ant, task).
inline bool lack_certain(double p_lack) { return p_lack >= 1.0; }
inline bool overload_certain(double p_lack) { return p_lack < 0x1.0p-53; }

inline Feedback sigmoid_entry(double p_lack, const RandomnessContext& ctx,
                              std::int64_t round, std::uint32_t ant, std::uint32_t task,
                              bool common_random) {
  if (lack_certain(p_lack)) return Feedback::kLack;
  if (overload_certain(p_lack)) return Feedback::kOverload;
  const Draw purpose = common_random ? Draw::kCommonFeedback : Draw::kFeedback;
  const std::uint32_t who = common_random ? 0u : ant;
  return ctx.uniform01(std::uint64_t(round), who, purpose, task) < p_lack
             ? Feedback::kLack
             : Feedback::kOverload;
}

inline Feedback adversarial_entry(std::int64_t deficit, std::int64_t demand,
                                  double gamma_ad, const AdversaryStrategy& strategy,
                                  const RandomnessContext& ctx, std::int64_t round,
                                  std::uint32_t ant, std::uint32_t task) {
  const double thr = gamma_ad * double(demand);
  const double d = double(deficit);
  if (d > thr) return Feedback::kLack;
  if (d < -thr) return Feedback::kOverload;
  switch (strategy.kind) {
    case AdversaryStrategy::Kind::kAllLackInGrey:
      return Feedback::kLack;
    case AdversaryStrategy::Kind::kAllOverloadInGrey:
      return Feedback::kOverload;
    case AdversaryStrategy::Kind::kCorrectOutsideRandomInside: {
      const Feedback correct = deficit >= 0 ? Feedback::kLack : Feedback::kOverload;
      const bool flip = ctx.bernoulli(std::uint64_t(round), ant, Draw::kAdversaryFlip,
                                      strategy.flip_probability, task);
      return flip ? opposite(correct) : correct;
    }
    case AdversaryStrategy::Kind::kIndistinguishability:
      if (strategy.shifted) return d >= thr ? Feedback::kLack : Feedback::kOverload;
      return d >= -thr ? Feedback::kLack : Feedback::kOverload;
    case AdversaryStrategy::Kind::kPerAntAlternating:
      return ((ant + std::uint32_t(round)) & 1u) == 0 ? Feedback::kLack
                                                      : Feedback::kOverload;
  }
  return Feedback::kLack;
}

inline Feedback noise_free_entry(std::int64_t deficit) {
  // Baseline model of prior work: lack iff load <= demand.
  return deficit >= 0 ? Feedback::kLack : Feedback::kOverload;
}

// One ant's row, identical to the corresponding matrix row.
inline void fill_row(std::span<Feedback> out, const NoiseSpec& noise,
                     std::span<const std::int64_t> prev_deficits,
                     std::span<const std::int64_t> demands, const RandomnessContext& ctx,
                     std::int64_t round, std::uint32_t ant) {
  const std::int32_t k = std::int32_t(out.size());
  if (const auto* s = std::get_if<SigmoidNoise>(&noise)) {
    for (std::int32_t j = 0; j < k; ++j) {
      const double p = sigmoid(double(prev_deficits[j]), s->lambda);
      out[j] = sigmoid_entry(p, ctx, round, ant, std::uint32_t(j), s->common_random);
    }
  } else if (const auto* a = std::get_if<AdversarialNoise>(&noise)) {
    for (std::int32_t j = 0; j < k; ++j)
      out[j] = adversarial_entry(prev_deficits[j], demands[j], a->gamma_ad, a->strategy,
                                 ctx, round, ant, std::uint32_t(j));
  } else {
    for (std::int32_t j = 0; j < k; ++j) out[j] = noise_free_entry(prev_deficits[j]);
  }
}

inline void fill_matrix(FeedbackMatrix& m, const NoiseSpec& noise,
                        std::span<const std::int64_t> prev_deficits,
                        std::span<const std::int64_t> demands, const RandomnessContext& ctx,
                        std::int64_t round, std::int64_t num_ants) {
  const std::int32_t k = std::int32_t(prev_deficits.size());
  m.round = round;
  if (m.num_ants != num_ants || m.num_tasks != k) m.resize(num_ants, k);
  if (const auto* s = std::get_if<SigmoidNoise>(&noise)) {
    std::vector<double> p(k);
    std::vector<Feedback> base(k);
    std::vector<std::int32_t> draw_cols;
    for (std::int32_t j = 0; j < k; ++j) {
      p[j] = sigmoid(double(prev_deficits[j]), s->lambda);
      if (lack_certain(p[j])) base[j] = Feedback::kLack;
      else if (overload_certain(p[j])) base[j] = Feedback::kOverload;
      else draw_cols.push_back(j);
    }
    for (std::int64_t i = 0; i < num_ants; ++i) {
      auto row = m.row(i);
      std::copy(base.begin(), base.end(), row.begin());
      for (std::int32_t j : draw_cols)
        row[j] = sigmoid_entry(p[j], ctx, round, std::uint32_t(i), std::uint32_t(j),
                               s->common_random);
    }
  } else {
    for (std::int64_t i = 0; i < num_ants; ++i)
      fill_row(m.row(i), noise, prev_deficits, demands, ctx, round, std::uint32_t(i));
  }
}

}  // namespace detail

// Each (ant, task) entry is independently lack with probability s(deficit_j);
// a pure function of (seed, round, ant, task).
inline FeedbackMatrix sample_feedback_sigmoid(std::span<const std::int64_t> prev_deficits,
                                              double lambda, const RandomnessContext& ctx,
                                              std::int64_t round, std::int64_t num_ants,
                                              bool common_random = false) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda-not-positive");
  FeedbackMatrix m;
  NoiseSpec spec = SigmoidNoise{lambda, common_random};
  detail::fill_matrix(m, spec, prev_deficits, {}, ctx, round, num_ants);
  return m;
}

// Correct outside the grey zone; the strategy fills the inside.
inline FeedbackMatrix adversarial_feedback(std::span<const std::int64_t> prev_deficits,
                                           std::span<const std::int64_t> demands,
                                           double gamma_ad, const AdversaryStrategy& strategy,
                                           const RandomnessContext& ctx, std::int64_t round,
                                           std::int64_t num_ants) {
  if (!(gamma_ad > 0.0 && gamma_ad < 0.5))
    throw std::invalid_argument("gamma-ad-out-of-range");
  if (prev_deficits.size() != demands.size())
    throw std::invalid_argument("dimension-mismatch");
  FeedbackMatrix m;
  NoiseSpec spec = AdversarialNoise{gamma_ad, strategy};
  detail::fill_matrix(m, spec, prev_deficits, demands, ctx, round, num_ants);
  return m;
}

inline FeedbackMatrix noise_free_feedback(std::span<const std::int64_t> prev_deficits,
                                          std::int64_t round, std::int64_t num_ants) {
  FeedbackMatrix m;
  NoiseSpec spec = NoiseFree{};
  RandomnessContext ctx;
  detail::fill_matrix(m, spec, prev_deficits, {}, ctx, round, num_ants);
  return m;
}

}  // namespace antsim
