#include "antsim/noise.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace antsim {
namespace {

TEST(Sigmoid, FixedPoints) {
  EXPECT_EQ(sigmoid(0.0, 1.0), 0.5);
  EXPECT_EQ(sigmoid(0.0, 17.3), 0.5);
  // 1/(1 + e^{-ln 3}) = 1/(1 + 1/3) = 3/4.
  EXPECT_NEAR(sigmoid(1.0, std::log(3.0)), 0.75, 1e-15);
  EXPECT_EQ(sigmoid(1e9, 1.0), 1.0);
  EXPECT_EQ(sigmoid(-1e9, 1.0), 0.0);
}

TEST(Sigmoid, AntisymmetryWithinOneUlp) {
  const double grid[] = {0.0,  1e-8, 0.37, 0.5, 1.0,  2.5,   3.7,
                         10.0, 35.0, 99.5, 700.0, 5e4, 1e300};
  const double lambdas[] = {0.3, 1.0, 1.0986122886681098, 4.0, 1e-3};
  for (double l : lambdas)
    for (double x : grid) {
      const double sum = sigmoid(x, l) + sigmoid(-x, l);
      EXPECT_LE(std::abs(sum - 1.0), 0x1.0p-52) << "x=" << x << " lambda=" << l;
    }
}

TEST(Sigmoid, StrictlyIncreasingAwayFromSaturation) {
  const double lambda = 1.3;
  double prev = sigmoid(-30.0 / lambda, lambda);
  for (double x = -30.0 / lambda + 0.25; x <= 30.0 / lambda; x += 0.25) {
    const double s = sigmoid(x, lambda);
    EXPECT_LT(prev, s) << "at x=" << x;
    prev = s;
  }
}

TEST(Sigmoid, ResolvesTinyProbabilities) {
  // Values at the n^-8 scale must keep relative precision.
  const double p = sigmoid(-73.682876, 1.0);
  EXPECT_GT(p, 0.0);
  EXPECT_NEAR(std::log(p), -73.682876, 1e-6);
}

// Independent oracle: bisect for the least x with s(-x d_j) <= n^-8 for all j.
double bisect_gamma_star(double lambda, const std::vector<std::int64_t>& demands,
                         std::int64_t n) {
  const double target = std::pow(double(n), -8.0);
  auto ok = [&](double x) {
    for (auto d : demands)
      if (sigmoid(-x * double(d), lambda) > target) return false;
    return true;
  };
  double lo = 0.0, hi = 1.0;
  while (!ok(hi)) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

TEST(CriticalValue, ClosedFormMatchesBisectionOracle) {
  struct Case {
    double lambda;
    std::vector<std::int64_t> demands;
    std::int64_t n;
  };
  const Case cases[] = {
      {1.0, {100}, 16},
      {1.0, {100, 50}, 16},
      {0.5, {321, 500, 77}, 1000},
      {2.3, {1250, 1250, 1250, 1250}, 10000},
  };
  for (const auto& c : cases) {
    const double closed = critical_value(c.lambda, c.demands, c.n);
    const double bisected = bisect_gamma_star(c.lambda, c.demands, c.n);
    EXPECT_NEAR(closed, bisected, 1e-9 * std::max(1.0, closed));
  }
}

TEST(CriticalValue, SpecValues) {
  // ln(16^8 - 1)/100 and the d_min = 50 variant.
  EXPECT_NEAR(critical_value(1.0, std::vector<std::int64_t>{100}, 16), 0.221807, 5e-7);
  EXPECT_NEAR(critical_value(1.0, std::vector<std::int64_t>{100, 50}, 16), 0.443614, 5e-7);
}

TEST(CriticalValue, DefiningInequality) {
  struct Case {
    double lambda;
    std::vector<std::int64_t> demands;
    std::int64_t n;
  };
  const Case cases[] = {{1.0, {100}, 16}, {1.17, {1250, 1300}, 10000}, {4.0, {45}, 2000}};
  for (const auto& c : cases) {
    const double gs = critical_value(c.lambda, c.demands, c.n);
    const double target = std::pow(double(c.n), -8.0);
    for (auto d : c.demands)
      EXPECT_LE(sigmoid(-gs * double(d), c.lambda), target * (1.0 + 1e-12));
    const std::int64_t d_min = *std::min_element(c.demands.begin(), c.demands.end());
    EXPECT_GT(sigmoid(-gs * (1.0 - 1e-6) * double(d_min), c.lambda), target);
  }
}

TEST(CriticalValue, AdversarialModelReturnsGammaAd) {
  AdversarialNoise a;
  a.gamma_ad = 0.05;
  const NoiseSpec noise = a;
  EXPECT_EQ(critical_value(noise, std::vector<std::int64_t>{100}, 16), 0.05);
}

TEST(GreyZone, Examples) {
  const auto z1 = grey_zones(std::vector<std::int64_t>{100}, 0.05);
  EXPECT_DOUBLE_EQ(z1[0].lo, -5.0);
  EXPECT_DOUBLE_EQ(z1[0].hi, 5.0);
  const auto z2 = grey_zones(std::vector<std::int64_t>{100}, 0.0);
  EXPECT_DOUBLE_EQ(z2[0].lo, 0.0);
  EXPECT_DOUBLE_EQ(z2[0].hi, 0.0);
  const auto z3 = grey_zones(std::vector<std::int64_t>{10, 20}, 0.1);
  EXPECT_DOUBLE_EQ(z3[0].hi, 1.0);
  EXPECT_DOUBLE_EQ(z3[1].lo, -2.0);
  EXPECT_DOUBLE_EQ(z3[1].hi, 2.0);
}

TEST(SigmoidFeedback, SaturatedColumnAllLack) {
  const RandomnessContext ctx(5);
  const std::vector<std::int64_t> defs = {60, -60};  // lambda 1: both saturated
  const auto m = sample_feedback_sigmoid(defs, 1.0, ctx, 3, 50);
  for (std::int64_t i = 0; i < 50; ++i) {
    EXPECT_EQ(m.at(i, 0), Feedback::kLack);
    EXPECT_EQ(m.at(i, 1), Feedback::kOverload);
  }
}

TEST(SigmoidFeedback, DeterministicGivenSeedAndRound) {
  const RandomnessContext ctx(5);
  const std::vector<std::int64_t> defs = {0, 2};
  const auto a = sample_feedback_sigmoid(defs, 0.7, ctx, 3, 40);
  const auto b = sample_feedback_sigmoid(defs, 0.7, ctx, 3, 40);
  EXPECT_EQ(a.cells, b.cells);
  const auto c = sample_feedback_sigmoid(defs, 0.7, ctx, 4, 40);
  EXPECT_NE(a.cells, c.cells);
}

TEST(SigmoidFeedback, ZeroDeficitColumnConcentratesAtHalf) {
  const RandomnessContext ctx(11);
  const std::vector<std::int64_t> defs = {0};
  const std::int64_t n = 100000;
  const auto m = sample_feedback_sigmoid(defs, 1.0, ctx, 1, n);
  std::int64_t lacks = 0;
  for (std::int64_t i = 0; i < n; ++i) lacks += m.at(i, 0) == Feedback::kLack;
  EXPECT_NEAR(double(lacks) / double(n), 0.5, 0.005);
}

TEST(SigmoidFeedback, CommonRandomModeSharesDrawAcrossAnts) {
  const RandomnessContext ctx(5);
  const std::vector<std::int64_t> defs = {0};
  const auto m = sample_feedback_sigmoid(defs, 1.0, ctx, 2, 100, true);
  for (std::int64_t i = 1; i < 100; ++i) EXPECT_EQ(m.at(i, 0), m.at(0, 0));
  // Independent mode: 100 ants at p = 1/2 all equal has probability 2^-99.
  const auto ind = sample_feedback_sigmoid(defs, 1.0, ctx, 2, 100, false);
  bool all_same = true;
  for (std::int64_t i = 1; i < 100; ++i) all_same &= ind.at(i, 0) == ind.at(0, 0);
  EXPECT_FALSE(all_same);
}

AdversaryStrategy strategy_of(AdversaryStrategy::Kind k) {
  AdversaryStrategy s;
  s.kind = k;
  s.flip_probability = 0.5;
  return s;
}

TEST(AdversarialFeedback, ForcedOutsideGreyZone) {
  const RandomnessContext ctx(5);
  const std::vector<std::int64_t> demands = {100};
  // Deficit 2 gamma_ad d: lack regardless of strategy.
  const std::vector<std::int64_t> lack_defs = {20};
  // Deficit -2 gamma_ad d: overload regardless.
  const std::vector<std::int64_t> over_defs = {-20};
  for (auto kind : {AdversaryStrategy::Kind::kAllLackInGrey,
                    AdversaryStrategy::Kind::kAllOverloadInGrey,
                    AdversaryStrategy::Kind::kCorrectOutsideRandomInside,
                    AdversaryStrategy::Kind::kIndistinguishability,
                    AdversaryStrategy::Kind::kPerAntAlternating}) {
    const auto a = adversarial_feedback(lack_defs, demands, 0.1, strategy_of(kind), ctx, 1, 8);
    const auto b = adversarial_feedback(over_defs, demands, 0.1, strategy_of(kind), ctx, 1, 8);
    for (std::int64_t i = 0; i < 8; ++i) {
      EXPECT_EQ(a.at(i, 0), Feedback::kLack);
      EXPECT_EQ(b.at(i, 0), Feedback::kOverload);
    }
  }
}

TEST(AdversarialFeedback, GreyZoneStrategies) {
  const RandomnessContext ctx(5);
  const std::vector<std::int64_t> demands = {100};
  const std::vector<std::int64_t> zero = {0};
  const auto all_over = adversarial_feedback(
      zero, demands, 0.1, strategy_of(AdversaryStrategy::Kind::kAllOverloadInGrey), ctx, 1, 5);
  const auto all_lack = adversarial_feedback(
      zero, demands, 0.1, strategy_of(AdversaryStrategy::Kind::kAllLackInGrey), ctx, 1, 5);
  for (std::int64_t i = 0; i < 5; ++i) {
    EXPECT_EQ(all_over.at(i, 0), Feedback::kOverload);
    EXPECT_EQ(all_lack.at(i, 0), Feedback::kLack);
  }
  // Indistinguishability at deficit 0: unshifted says lack, shifted overload.
  AdversaryStrategy ind = strategy_of(AdversaryStrategy::Kind::kIndistinguishability);
  ind.shifted = false;
  EXPECT_EQ(adversarial_feedback(zero, demands, 0.1, ind, ctx, 1, 1).at(0, 0),
            Feedback::kLack);
  ind.shifted = true;
  EXPECT_EQ(adversarial_feedback(zero, demands, 0.1, ind, ctx, 1, 1).at(0, 0),
            Feedback::kOverload);
  // Per-ant alternation differs across adjacent ants inside the grey zone.
  const auto alt = adversarial_feedback(
      zero, demands, 0.1, strategy_of(AdversaryStrategy::Kind::kPerAntAlternating), ctx, 1, 4);
  EXPECT_NE(alt.at(0, 0), alt.at(1, 0));
  EXPECT_EQ(alt.at(0, 0), alt.at(2, 0));
}

TEST(AdversarialFeedback, StrategyIndependentOutsideGreyZone) {
  const RandomnessContext ctx(17);
  std::mt19937 gen(3);
  const std::vector<std::int64_t> demands = {50, 200};
  const double gamma_ad = 0.12;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::int64_t> defs(2);
    for (int j = 0; j < 2; ++j) {
      // Sample outside the grey zone of task j.
      const std::int64_t edge = std::int64_t(gamma_ad * double(demands[j])) + 1;
      const std::int64_t mag = edge + std::int64_t(gen() % 100);
      defs[j] = (gen() % 2 ? mag : -mag);
    }
    FeedbackMatrix first;
    bool have_first = false;
    for (auto kind : {AdversaryStrategy::Kind::kAllLackInGrey,
                      AdversaryStrategy::Kind::kAllOverloadInGrey,
                      AdversaryStrategy::Kind::kCorrectOutsideRandomInside,
                      AdversaryStrategy::Kind::kIndistinguishability,
                      AdversaryStrategy::Kind::kPerAntAlternating}) {
      const auto m =
          adversarial_feedback(defs, demands, gamma_ad, strategy_of(kind), ctx, 2, 6);
      if (!have_first) {
        first = m;
        have_first = true;
      } else {
        EXPECT_EQ(m.cells, first.cells);
      }
    }
  }
}

// The lower-bound construction: one threshold function legal for two demand
// vectors 2*tau apart. With integer loads the matrices coincide exactly for
// (d, shifted) and (d - 2 tau, unshifted), tau = round(gamma_ad * d).
TEST(AdversarialFeedback, IndistinguishabilityPairsTwoDemandVectors) {
  const RandomnessContext ctx(5);
  const double gamma_ad = 0.05;
  const std::int64_t d_big = 222;
  const std::int64_t tau = std::llround(gamma_ad * double(d_big));
  ASSERT_EQ(tau, 11);
  const std::int64_t d_small = d_big - 2 * tau;

  AdversaryStrategy shifted = strategy_of(AdversaryStrategy::Kind::kIndistinguishability);
  shifted.shifted = true;
  AdversaryStrategy unshifted = strategy_of(AdversaryStrategy::Kind::kIndistinguishability);
  unshifted.shifted = false;

  for (std::int64_t load = 0; load <= 2 * d_big; ++load) {
    const std::vector<std::int64_t> defs_big = {d_big - load};
    const std::vector<std::int64_t> defs_small = {d_small - load};
    const auto a = adversarial_feedback(defs_big, std::vector<std::int64_t>{d_big},
                                        gamma_ad, shifted, ctx, 1, 3);
    const auto b = adversarial_feedback(defs_small, std::vector<std::int64_t>{d_small},
                                        gamma_ad, unshifted, ctx, 1, 3);
    EXPECT_EQ(a.cells, b.cells) << "load " << load;
  }
}

TEST(AdversarialFeedback, RejectsBadGammaAd) {
  const RandomnessContext ctx(5);
  const std::vector<std::int64_t> d = {10};
  EXPECT_THROW(adversarial_feedback(d, d, 0.6, {}, ctx, 1, 2), std::invalid_argument);
}

}  // namespace
}  // namespace antsim
