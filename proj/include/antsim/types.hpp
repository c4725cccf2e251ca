#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace antsim {

// Binary feedback signal an ant receives about one task.
enum class Feedback : std::uint8_t { kLack = 0, kOverload = 1 };

inline Feedback opposite(Feedback f) {
  return f == Feedback::kLack ? Feedback::kOverload : Feedback::kLack;
}

// Tasks are 0-based internally; external formats (config files, CSV) use 1..k.
// kIdle marks an unassigned ant. An Action is the assignment an ant outputs
// for the round: kIdle or a task index.
using TaskId = std::int32_t;
inline constexpr TaskId kIdle = -1;
using Action = TaskId;

enum class AlgorithmKind {
  kAnt,
  kPreciseSigmoid,
  kPreciseAdversarial,
  kTrivialSync,
  kTrivialSeq,
};

// How the adversary fills grey-zone entries. Outside the grey zone feedback
// is forced correct regardless of strategy.
struct AdversaryStrategy {
  enum class Kind {
    kAllLackInGrey,
    kAllOverloadInGrey,
    kCorrectOutsideRandomInside,  // flips the sign-correct answer w.p. flip_probability
    kIndistinguishability,        // fixed threshold at -gamma_ad*d (shifted=false) or +gamma_ad*d (true)
    kPerAntAlternating,           // lack iff (ant + round) is even
  };
  Kind kind = Kind::kAllLackInGrey;
  double flip_probability = 0.0;
  bool shifted = false;
};

struct SigmoidNoise {
  double lambda = 1.0;
  // One shared draw per (round, task) instead of per (round, ant, task):
  // fully correlated marginals. Off by default.
  bool common_random = false;
};

struct AdversarialNoise {
  double gamma_ad = 0.1;
  AdversaryStrategy strategy;
};

// Diagnostic oracle: feedback is correct everywhere (lack iff deficit >= 0).
struct NoiseFree {};

using NoiseSpec = std::variant<SigmoidNoise, AdversarialNoise, NoiseFree>;

struct AllIdleInit {};
struct UniformRandomInit {};  // each ant uniform over {idle, 1..k}
struct ExplicitInit {
  std::vector<TaskId> assignment;  // length n
};
using InitialAssignmentSpec = std::variant<AllIdleInit, UniformRandomInit, ExplicitInit>;

// Full experiment description. Value type; safe to copy and share read-only.
struct SimConfig {
  std::int64_t num_ants = 0;           // n
  std::int32_t num_tasks = 0;          // k
  std::vector<std::int64_t> demands;   // d_j, one per task, each >= 1
  NoiseSpec noise = SigmoidNoise{};
  AlgorithmKind algorithm = AlgorithmKind::kAnt;
  double gamma = 0.05;                 // learning rate, in (0,1)
  double epsilon = 0.25;               // precision, (0,1]; Precise variants only
  std::int64_t horizon = 0;            // rounds to simulate
  std::uint64_t seed = 0;
  InitialAssignmentSpec initial_assignment = AllIdleInit{};
  std::int64_t trace_stride = 1;       // record every s-th round (accumulators stay exact)
  std::optional<std::int64_t> burn_in; // rounds excluded from steady-state stats; default derived
};

struct ValidationIssue {
  std::string name;     // stable predicate name, e.g. "demand-sum-exceeds-half-n"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;
  bool ok() const { return errors.empty(); }
  bool has(const std::string& name) const {
    for (const auto& e : errors)
      if (e.name == name) return true;
    for (const auto& w : warnings)
      if (w.name == name) return true;
    return false;
  }
};

inline const char* algorithm_name(AlgorithmKind a) {
  switch (a) {
    case AlgorithmKind::kAnt: return "ant";
    case AlgorithmKind::kPreciseSigmoid: return "precise-sigmoid";
    case AlgorithmKind::kPreciseAdversarial: return "precise-adversarial";
    case AlgorithmKind::kTrivialSync: return "trivial-sync";
    case AlgorithmKind::kTrivialSeq: return "trivial-seq";
  }
  return "?";
}

}  // namespace antsim
