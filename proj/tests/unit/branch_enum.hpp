#pragma once

// Exact branch enumeration for agent step calls: an Rng whose draws follow a
// scripted path, plus an odometer driver that visits every positive-probability
// outcome of a (sequence of) step calls with its exact probability.

#include <cstdint>
#include <functional>
#include <vector>

#include "antsim/rng.hpp"
#include "antsim/types.hpp"

namespace antsim::testutil {

class EnumRng {
 public:
  explicit EnumRng(std::vector<int>* path) : path_(path) {}

  bool bernoulli(Draw, double p) {
    const int c = next(2);
    weight_ *= c == 1 ? (long double)p : 1.0L - (long double)p;
    return c == 1;
  }
  std::uint32_t pick(Draw, std::uint32_t m) {
    const int c = next(int(m));
    weight_ *= 1.0L / (long double)m;
    return std::uint32_t(c);
  }

  long double weight() const { return weight_; }
  const std::vector<int>& arities() const { return arities_; }

 private:
  int next(int arity) {
    if (pos_ >= path_->size()) path_->push_back(0);
    arities_.push_back(arity);
    return (*path_)[pos_++];
  }

  std::vector<int>* path_;
  std::size_t pos_ = 0;
  long double weight_ = 1.0L;
  std::vector<int> arities_;
};

// run_once(rng) executes the call(s) under test against the scripted rng and
// returns an outcome value; visit(outcome, probability) is called once per
// distinct draw path. Paths with probability zero are skipped.
template <class RunFn, class VisitFn>
void enumerate_outcomes(RunFn&& run_once, VisitFn&& visit) {
  std::vector<int> path;
  while (true) {
    EnumRng rng(&path);
    auto outcome = run_once(rng);
    if (rng.weight() > 0.0L) visit(outcome, rng.weight());
    const auto& arities = rng.arities();
    int i = int(path.size()) - 1;
    for (; i >= 0; --i) {
      if (path[i] + 1 < arities[i]) {
        ++path[i];
        path.resize(i + 1);
        break;
      }
    }
    if (i < 0) break;
  }
}

// Rng that forces named branch outcomes; a witness is valid only when every
// forced outcome has positive probability.
class ForcedRng {
 public:
  bool pause_choice = false;
  bool leave_choice = false;
  std::uint32_t pick_choice = 0;

  bool bernoulli(Draw purpose, double p) {
    const bool want = purpose == Draw::kPause ? pause_choice : leave_choice;
    if (want && !(p > 0.0)) feasible_ = false;
    if (!want && !(p < 1.0)) feasible_ = false;
    return want;
  }
  std::uint32_t pick(Draw, std::uint32_t m) {
    if (pick_choice >= m) {
      feasible_ = false;
      return 0;
    }
    return pick_choice;
  }
  bool feasible() const { return feasible_; }

 private:
  bool feasible_ = true;
};

}  // namespace antsim::testutil
