#include "antsim/config_io.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace antsim {
namespace {

const char* kSampleConfig = R"(# sample experiment
[sim]
ants = 100
tasks = 2
demands = 30, 20
horizon = 50
seed = 9

[algorithm]
kind = ant
gamma = 0.05

[noise]
kind = sigmoid
lambda = 1.5

[init]
kind = explicit
assignment = idle,1,2,1,idle,idle,1,2,2,1,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle,idle
)";

TEST(ConfigIo, ParsesSampleConfig) {
  std::istringstream in(kSampleConfig);
  const KvConfig kv = parse_config_text(in);
  const SimConfig c = build_sim_config(kv);
  EXPECT_EQ(c.num_ants, 100);
  EXPECT_EQ(c.num_tasks, 2);
  EXPECT_EQ(c.demands, (std::vector<std::int64_t>{30, 20}));
  EXPECT_EQ(c.horizon, 50);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.algorithm, AlgorithmKind::kAnt);
  const auto* s = std::get_if<SigmoidNoise>(&c.noise);
  ASSERT_NE(s, nullptr);
  EXPECT_DOUBLE_EQ(s->lambda, 1.5);
  const auto* e = std::get_if<ExplicitInit>(&c.initial_assignment);
  ASSERT_NE(e, nullptr);
  ASSERT_EQ(e->assignment.size(), 100u);
  EXPECT_EQ(e->assignment[0], kIdle);
  EXPECT_EQ(e->assignment[1], 0);  // external task 1
  EXPECT_EQ(e->assignment[2], 1);  // external task 2
  EXPECT_TRUE(validate_config(c).ok());
}

TEST(ConfigIo, OverridesAndErrors) {
  std::istringstream in(kSampleConfig);
  KvConfig kv = parse_config_text(in);
  apply_override(kv, "algorithm.gamma=0.2");
  apply_override(kv, "noise.lambda=2.5");
  const SimConfig c = build_sim_config(kv);
  EXPECT_DOUBLE_EQ(c.gamma, 0.2);
  EXPECT_DOUBLE_EQ(std::get<SigmoidNoise>(c.noise).lambda, 2.5);

  EXPECT_THROW(apply_override(kv, "nodots"), std::invalid_argument);
  EXPECT_THROW(apply_override(kv, "noise.lambda"), std::invalid_argument);

  // Bad values name the failing field.
  KvConfig bad = kv;
  bad["noise"]["lambda"] = "fast";
  try {
    build_sim_config(bad);
    FAIL() << "expected parse failure";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("noise.lambda"), std::string::npos);
  }
  KvConfig missing = kv;
  missing["sim"].erase("demands");
  try {
    build_sim_config(missing);
    FAIL() << "expected missing-field failure";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("sim.demands"), std::string::npos);
  }
}

TEST(ConfigIo, MissingFileNamed) {
  try {
    parse_config_file("/nonexistent/antsim.ini");
    FAIL() << "expected error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("config not found"), std::string::npos);
  }
}

TEST(ConfigIo, AdversarialAndNoiseFreeKinds) {
  std::istringstream in(kSampleConfig);
  KvConfig kv = parse_config_text(in);
  apply_override(kv, "noise.kind=adversarial");
  apply_override(kv, "noise.gamma_ad=0.1");
  apply_override(kv, "noise.strategy=indistinguishability");
  apply_override(kv, "noise.shifted=true");
  const SimConfig c = build_sim_config(kv);
  const auto* a = std::get_if<AdversarialNoise>(&c.noise);
  ASSERT_NE(a, nullptr);
  EXPECT_DOUBLE_EQ(a->gamma_ad, 0.1);
  EXPECT_EQ(a->strategy.kind, AdversaryStrategy::Kind::kIndistinguishability);
  EXPECT_TRUE(a->strategy.shifted);

  apply_override(kv, "noise.kind=noise-free");
  EXPECT_TRUE(std::holds_alternative<NoiseFree>(build_sim_config(kv).noise));

  apply_override(kv, "noise.kind=pink");
  EXPECT_THROW(build_sim_config(kv), std::invalid_argument);
}

// Golden bytes of a fixed-seed tiny run; guards the CSV schema.
TEST(ConfigIo, GoldenTraceCsv) {
  SimConfig c;
  c.num_ants = 3;
  c.num_tasks = 2;
  c.demands = {1, 1};
  c.noise = SigmoidNoise{1.0, false};
  c.algorithm = AlgorithmKind::kTrivialSync;
  c.gamma = 0.1;
  c.horizon = 3;
  c.seed = 123;
  std::ostringstream os;
  write_trace_csv(run_synchronous(c), os);
  const std::string expected =
      "# sim.ants = 3\n"
      "# sim.tasks = 2\n"
      "# sim.demands = 1,1\n"
      "# sim.horizon = 3\n"
      "# sim.seed = 123\n"
      "# sim.trace_stride = 1\n"
      "# algorithm.kind = trivial-sync\n"
      "# algorithm.gamma = 0.1\n"
      "# noise.kind = sigmoid\n"
      "# noise.lambda = 1\n"
      "# init.kind = all-idle\n"
      "# burn_in_resolved = 1\n"
      "round,task,load,deficit,regret\n"
      "1,1,1,0,1\n"
      "1,2,2,-1,1\n"
      "2,1,1,0,1\n"
      "2,2,0,1,1\n"
      "3,1,1,0,0\n"
      "3,2,1,0,0\n";
  EXPECT_EQ(os.str(), expected);
}

TEST(ConfigIo, SummaryJsonFields) {
  SimConfig c;
  c.num_ants = 50;
  c.num_tasks = 2;
  c.demands = {5, 5};
  c.noise = SigmoidNoise{1.0, false};
  c.algorithm = AlgorithmKind::kAnt;
  c.gamma = 0.2;  // above 1/16: validator warning
  c.horizon = 40;
  c.seed = 6;
  const auto report = validate_config(c);
  const Trace tr = run_synchronous(c);
  const nlohmann::json j = summary_json(tr, &report);
  for (const char* field :
       {"config", "total_regret", "avg_regret", "closeness", "exception_rounds",
        "r_plus", "r_approx", "r_minus", "phi_final", "psi_final", "warnings"})
    EXPECT_TRUE(j.contains(field)) << field;
  EXPECT_EQ(j["config"]["sim.seed"], "6");
  bool has_gamma_warning = false;
  for (const auto& w : j["warnings"])
    has_gamma_warning |= w["name"] == "gamma-outside-ant-range";
  EXPECT_TRUE(has_gamma_warning);
  // Identity of the decomposition aggregates.
  const double r_sum = j["r_plus"].get<double>() + j["r_approx"].get<double>() +
                       j["r_minus"].get<double>();
  EXPECT_NEAR(r_sum, double(j["total_regret"].get<std::int64_t>()), 1e-6);
}

}  // namespace
}  // namespace antsim
