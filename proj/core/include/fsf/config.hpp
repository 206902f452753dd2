#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsf/router.hpp"
#include "fsf/selfishness.hpp"
#include "fsf/simulator.hpp"
#include "fsf/trace.hpp"

namespace fsf {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything one run needs except the router kind, buffer size, thresholds
/// and seed, which the experiment grid fills in.
struct RunConfig {
  std::optional<std::string> trace_file;  // synthetic when unset
  std::vector<CommunityId> trace_community;  // per node, file traces only
  SyntheticScenarioConfig synthetic;
  ScenarioConfig scenario;
  RouterConfig router;
  std::optional<std::string> training_csv;  // built-in training set when unset
  double smoothing = 0.0;
  MaturityParams maturity;
};

struct ExperimentConfig {
  RunConfig base;
  std::vector<RouterKind> routers = {RouterKind::fsf, RouterKind::epidemic, RouterKind::prophet};
  std::vector<double> buffers_mb = {10, 20, 30, 40, 50, 60, 70, 80};
  std::vector<double> alphas = {0.30};
  std::vector<double> betas = {0.70};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  unsigned threads = 0;  // 0: hardware concurrency

  void check() const;
};

/// INI text: `[section]` headers and `key = value` lines, `#` or `;` comments.
/// Unknown sections or keys are errors.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// Renders every key with its current value; parse_config(render) round-trips.
void write_config(const ExperimentConfig& config, std::ostream& out);

/// Loads the training data and fits the model into config.router.model.
void prepare_model(RunConfig& config);

}  // namespace fsf
