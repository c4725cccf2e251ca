#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "antsim/core.hpp"
#include "antsim/engine.hpp"
#include "antsim/metrics.hpp"
#include "antsim/types.hpp"

namespace antsim {

// Nested key/value config text: [section] headers, key = value lines,
// '#' comments. Overrides use dotted paths, e.g. "noise.lambda=2.0".
using KvConfig = std::map<std::string, std::map<std::string, std::string>>;

namespace io_detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

template <class T>
T parse_number(const std::string& field, const std::string& text);

template <>
inline std::int64_t parse_number<std::int64_t>(const std::string& field,
                                               const std::string& text) {
  try {
    std::size_t pos = 0;
    const std::int64_t v = std::stoll(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    throw std::invalid_argument(field + ": not an integer: '" + text + "'");
  }
}

template <>
inline std::uint64_t parse_number<std::uint64_t>(const std::string& field,
                                                 const std::string& text) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    throw std::invalid_argument(field + ": not an unsigned integer: '" + text + "'");
  }
}

template <>
inline double parse_number<double>(const std::string& field, const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    throw std::invalid_argument(field + ": not a number: '" + text + "'");
  }
}

inline bool parse_bool(const std::string& field, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument(field + ": not a boolean: '" + text + "'");
}

}  // namespace io_detail

inline KvConfig parse_config_text(std::istream& in) {
  KvConfig kv;
  std::string line, section = "sim";
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = io_detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      section = io_detail::trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    kv[section][io_detail::trim(line.substr(0, eq))] =
        io_detail::trim(line.substr(eq + 1));
  }
  return kv;
}

inline KvConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config not found: " + path);
  return parse_config_text(in);
}

// "section.key=value"
inline void apply_override(KvConfig& kv, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override must be section.key=value: '" + spec + "'");
  const std::string path = io_detail::trim(spec.substr(0, eq));
  const std::string value = io_detail::trim(spec.substr(eq + 1));
  const auto dot = path.find('.');
  if (dot == std::string::npos)
    throw std::invalid_argument("override path must contain a dot: '" + spec + "'");
  kv[path.substr(0, dot)][path.substr(dot + 1)] = value;
}

inline SimConfig build_sim_config(const KvConfig& kv) {
  using io_detail::parse_bool;
  using io_detail::parse_number;
  SimConfig c;
  auto get = [&](const std::string& section, const std::string& key,
                 const char* fallback = nullptr) -> std::string {
    const auto s = kv.find(section);
    if (s != kv.end()) {
      const auto it = s->second.find(key);
      if (it != s->second.end()) return it->second;
    }
    if (fallback) return fallback;
    throw std::invalid_argument(section + "." + key + ": missing required field");
  };
  auto has = [&](const std::string& section, const std::string& key) {
    const auto s = kv.find(section);
    return s != kv.end() && s->second.count(key) > 0;
  };

  c.num_ants = parse_number<std::int64_t>("sim.ants", get("sim", "ants"));
  c.num_tasks =
      std::int32_t(parse_number<std::int64_t>("sim.tasks", get("sim", "tasks")));
  for (const auto& d : io_detail::split(get("sim", "demands"), ','))
    c.demands.push_back(parse_number<std::int64_t>("sim.demands", d));
  c.horizon = parse_number<std::int64_t>("sim.horizon", get("sim", "horizon"));
  c.seed = parse_number<std::uint64_t>("sim.seed", get("sim", "seed", "1"));
  c.trace_stride =
      parse_number<std::int64_t>("sim.trace_stride", get("sim", "trace_stride", "1"));
  if (has("sim", "burn_in"))
    c.burn_in = parse_number<std::int64_t>("sim.burn_in", get("sim", "burn_in"));

  const std::string alg = get("algorithm", "kind");
  if (alg == "ant") c.algorithm = AlgorithmKind::kAnt;
  else if (alg == "precise-sigmoid") c.algorithm = AlgorithmKind::kPreciseSigmoid;
  else if (alg == "precise-adversarial") c.algorithm = AlgorithmKind::kPreciseAdversarial;
  else if (alg == "trivial-sync") c.algorithm = AlgorithmKind::kTrivialSync;
  else if (alg == "trivial-seq") c.algorithm = AlgorithmKind::kTrivialSeq;
  else throw std::invalid_argument("algorithm.kind: unknown algorithm '" + alg + "'");
  c.gamma = parse_number<double>("algorithm.gamma", get("algorithm", "gamma", "0.05"));
  c.epsilon =
      parse_number<double>("algorithm.epsilon", get("algorithm", "epsilon", "0.25"));

  const std::string noise = get("noise", "kind");
  if (noise == "sigmoid") {
    SigmoidNoise s;
    s.lambda = parse_number<double>("noise.lambda", get("noise", "lambda"));
    s.common_random =
        parse_bool("noise.common_random", get("noise", "common_random", "false"));
    c.noise = s;
  } else if (noise == "adversarial") {
    AdversarialNoise a;
    a.gamma_ad = parse_number<double>("noise.gamma_ad", get("noise", "gamma_ad"));
    const std::string st = get("noise", "strategy", "all-lack");
    if (st == "all-lack") a.strategy.kind = AdversaryStrategy::Kind::kAllLackInGrey;
    else if (st == "all-overload")
      a.strategy.kind = AdversaryStrategy::Kind::kAllOverloadInGrey;
    else if (st == "random-in-grey") {
      a.strategy.kind = AdversaryStrategy::Kind::kCorrectOutsideRandomInside;
      a.strategy.flip_probability = parse_number<double>(
          "noise.flip_probability", get("noise", "flip_probability", "0.5"));
    } else if (st == "indistinguishability") {
      a.strategy.kind = AdversaryStrategy::Kind::kIndistinguishability;
      a.strategy.shifted = parse_bool("noise.shifted", get("noise", "shifted", "false"));
    } else if (st == "per-ant-alternating") {
      a.strategy.kind = AdversaryStrategy::Kind::kPerAntAlternating;
    } else {
      throw std::invalid_argument("noise.strategy: unknown strategy '" + st + "'");
    }
    c.noise = a;
  } else if (noise == "noise-free") {
    c.noise = NoiseFree{};
  } else {
    throw std::invalid_argument("noise.kind: unknown noise model '" + noise + "'");
  }

  const std::string init = has("init", "kind") ? get("init", "kind") : "all-idle";
  if (init == "all-idle") c.initial_assignment = AllIdleInit{};
  else if (init == "uniform-random") c.initial_assignment = UniformRandomInit{};
  else if (init == "explicit") {
    ExplicitInit e;
    for (const auto& tok : io_detail::split(get("init", "assignment"), ',')) {
      if (tok == "idle") e.assignment.push_back(kIdle);
      else e.assignment.push_back(
          TaskId(parse_number<std::int64_t>("init.assignment", tok)) - 1);
    }
    c.initial_assignment = std::move(e);
  } else {
    throw std::invalid_argument("init.kind: unknown initialization '" + init + "'");
  }
  return c;
}

// Flattened (section, key, value) echo of a config, the provenance record
// embedded in every output file.
inline std::vector<std::pair<std::string, std::string>> config_to_kv(const SimConfig& c) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("sim.ants", std::to_string(c.num_ants));
  kv.emplace_back("sim.tasks", std::to_string(c.num_tasks));
  std::string ds;
  for (std::size_t j = 0; j < c.demands.size(); ++j)
    ds += (j ? "," : "") + std::to_string(c.demands[j]);
  kv.emplace_back("sim.demands", ds);
  kv.emplace_back("sim.horizon", std::to_string(c.horizon));
  kv.emplace_back("sim.seed", std::to_string(c.seed));
  kv.emplace_back("sim.trace_stride", std::to_string(c.trace_stride));
  if (c.burn_in) kv.emplace_back("sim.burn_in", std::to_string(*c.burn_in));
  kv.emplace_back("algorithm.kind", algorithm_name(c.algorithm));
  {
    std::ostringstream os;
    os << c.gamma;
    kv.emplace_back("algorithm.gamma", os.str());
  }
  if (c.algorithm == AlgorithmKind::kPreciseSigmoid ||
      c.algorithm == AlgorithmKind::kPreciseAdversarial) {
    std::ostringstream os;
    os << c.epsilon;
    kv.emplace_back("algorithm.epsilon", os.str());
  }
  if (const auto* s = std::get_if<SigmoidNoise>(&c.noise)) {
    kv.emplace_back("noise.kind", "sigmoid");
    std::ostringstream os;
    os << s->lambda;
    kv.emplace_back("noise.lambda", os.str());
    if (s->common_random) kv.emplace_back("noise.common_random", "true");
  } else if (const auto* a = std::get_if<AdversarialNoise>(&c.noise)) {
    kv.emplace_back("noise.kind", "adversarial");
    std::ostringstream os;
    os << a->gamma_ad;
    kv.emplace_back("noise.gamma_ad", os.str());
    switch (a->strategy.kind) {
      case AdversaryStrategy::Kind::kAllLackInGrey:
        kv.emplace_back("noise.strategy", "all-lack");
        break;
      case AdversaryStrategy::Kind::kAllOverloadInGrey:
        kv.emplace_back("noise.strategy", "all-overload");
        break;
      case AdversaryStrategy::Kind::kCorrectOutsideRandomInside: {
        kv.emplace_back("noise.strategy", "random-in-grey");
        std::ostringstream fs;
        fs << a->strategy.flip_probability;
        kv.emplace_back("noise.flip_probability", fs.str());
        break;
      }
      case AdversaryStrategy::Kind::kIndistinguishability:
        kv.emplace_back("noise.strategy", "indistinguishability");
        kv.emplace_back("noise.shifted", a->strategy.shifted ? "true" : "false");
        break;
      case AdversaryStrategy::Kind::kPerAntAlternating:
        kv.emplace_back("noise.strategy", "per-ant-alternating");
        break;
    }
  } else {
    kv.emplace_back("noise.kind", "noise-free");
  }
  if (std::holds_alternative<AllIdleInit>(c.initial_assignment)) {
    kv.emplace_back("init.kind", "all-idle");
  } else if (std::holds_alternative<UniformRandomInit>(c.initial_assignment)) {
    kv.emplace_back("init.kind", "uniform-random");
  } else {
    kv.emplace_back("init.kind", "explicit");
  }
  return kv;
}

// Long-format trace CSV: '#' provenance lines, then the stable header
// round,task,load,deficit,regret with one row per (recorded round, task).
// The regret column carries the round total r(t). Task indices are 1-based.
inline void write_trace_csv(const Trace& trace, std::ostream& out) {
  for (const auto& [key, value] : config_to_kv(trace.config))
    out << "# " << key << " = " << value << "\n";
  out << "# burn_in_resolved = " << trace.burn_in << "\n";
  out << "round,task,load,deficit,regret\n";
  for (const auto& rec : trace.records)
    for (std::int32_t j = 0; j < trace.config.num_tasks; ++j)
      out << rec.round << ',' << (j + 1) << ',' << rec.loads[j] << ',' << rec.deficit[j]
          << ',' << rec.regret << "\n";
}

inline void write_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace: " + path);
  write_trace_csv(trace, out);
}

// Run summary with the config echo, regret aggregates and diagnostics.
inline nlohmann::json summary_json(const Trace& trace,
                                   const ValidationReport* report = nullptr) {
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [key, value] : config_to_kv(trace.config)) cfg[key] = value;
  const auto& s = trace.summary;
  const double rounds = double(std::max<std::int64_t>(trace.config.horizon, 1));
  nlohmann::json j{
      {"config", cfg},
      {"total_regret", s.total_regret},
      {"avg_regret", double(s.total_regret) / rounds},
      {"exception_rounds", s.exception_rounds},
      {"r_plus", s.r_plus_total},
      {"r_approx", s.r_approx_total},
      {"r_minus", s.r_minus_total},
      {"phi_final", s.phi_final},
      {"psi_final", s.psi_final},
      {"burn_in", trace.burn_in},
      {"post_burnin_rounds", s.post_burnin_rounds},
      {"post_burnin_avg_regret",
       s.post_burnin_rounds
           ? double(s.post_burnin_regret) / double(s.post_burnin_rounds)
           : 0.0},
  };
  const double gamma_star =
      critical_value(trace.config.noise, trace.config.demands, trace.config.num_ants);
  j["gamma_star"] = gamma_star;
  if (gamma_star > 0.0 && trace.burn_in < trace.config.horizon)
    j["closeness"] = closeness(trace, gamma_star, trace.config.demands, trace.burn_in);
  else
    j["closeness"] = nullptr;
  if (report) {
    nlohmann::json warnings = nlohmann::json::array();
    for (const auto& w : report->warnings)
      warnings.push_back({{"name", w.name}, {"message", w.message}});
    j["warnings"] = warnings;
  }
  return j;
}

}  // namespace antsim
