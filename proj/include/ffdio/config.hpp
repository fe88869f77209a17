#pragma once

/**
 * Experiment configuration.
 *
 * A config is a JSON object:
 *
 *   {
 *     "mode": "verify",                 // verify | wang | reduce
 *     "M": 1, "q": 3,
 *     "S": ["t", "inf"],
 *     "points": ["1", "t^a"],
 *     "hyperplanes": [["1","0"], ["0","1"], ["1","-1"]],
 *     "window": [1, 200],
 *     "epsilon": "1/10", "delta": "1", "s_max": 12,
 *     "thresholds": {"tail_fraction": "1/4", "smallness_delta": "1/10",
 *                    "coherence_degree": 1, "infinite_subset": "3/4"},
 *     "seed": 7, "profile": "random-gp"
 *   }
 *
 * Rationals are "p/q" strings, places are polynomial expressions or "inf",
 * and point/hyperplane entries are index expressions in t and a. Validation
 * errors name the offending field, e.g. hyperplanes[2][1].
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffdio/moving.hpp"

namespace ffdio {

using Json = nlohmann::ordered_json;

enum class Mode { Verify, Wang, Reduce };
Mode parse_mode(const std::string& text);
std::string to_string(Mode m);

struct Thresholds {
  Rat tail_fraction{1, 4};
  Rat smallness_delta{1, 10};
  unsigned coherence_degree = 1;
  std::optional<Rat> infinite_subset;  // density accepted by the weaker PASS rule
};

struct ExperimentConfig {
  Mode mode = Mode::Verify;
  std::size_t M = 1;
  std::size_t q = 0;
  std::vector<PrimeDivisor> S;
  std::vector<std::string> point_text;
  std::vector<std::vector<std::string>> hyperplane_text;
  Window window;
  Rat epsilon{1, 10};
  Rat delta{1};
  unsigned s_max = 12;
  Thresholds thresholds;
  std::optional<std::uint64_t> seed;
  std::string profile;

  PointSequence xs;
  MovingHyperplaneFamily family;

  PlaceSet places() const { return PlaceSet(S); }
  // Canonical JSON; parse_experiment(to_json()) reproduces the config.
  Json to_json() const;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what) : Error(field + ": " + what) {}
};

// Parses and validates against `mode` (defaults to the config's own mode).
ExperimentConfig parse_experiment(const Json& j, std::optional<Mode> mode = std::nullopt);
ExperimentConfig load_experiment(const std::string& path, std::optional<Mode> mode = std::nullopt);
// Re-runs validation, e.g. after command-line overrides.
void validate(const ExperimentConfig& cfg);

}  // namespace ffdio
