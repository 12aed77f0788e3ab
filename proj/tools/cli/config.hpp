#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <tprophet/distribution.hpp>
#include <tprophet/matroid.hpp>
#include <tprophet/rational.hpp>

namespace tprophet::cli {

/// A malformed config. `where` is "line:col" for syntax errors and a JSON
/// pointer such as "/model/distribution/2/prob" for field errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

enum class ModelType { kIid, kMarginals, kGenerator, kRandomOrder };

struct GeneratorSpec {
  /// matroid_hardness, uniform_ratio_hardness or half_hardness.
  std::string name;
  std::size_t k = 0;
  /// Rank parameter of matroid_hardness.
  std::size_t r = 0;
  std::optional<Rational> epsilon;
};

struct ModelSpec {
  ModelType type = ModelType::kIid;
  std::optional<JointDiscreteDistribution> distribution;
  std::vector<MarginalDistribution> marginals;
  GeneratorSpec generator;
  std::vector<JointDiscreteDistribution> distributions;
};

struct CertifySpec {
  std::optional<std::size_t> trials;
  std::vector<std::pair<std::string, std::size_t>> overrides;
};

struct ExperimentConfig {
  std::string id = "experiment";
  std::optional<std::string> mode;
  std::optional<Matroid> matroid;
  std::optional<Matroid> offline_matroid;
  std::optional<ModelSpec> model;
  std::optional<std::size_t> horizon;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<Rational> bound;
  std::vector<Rational> epsilons;
  CertifySpec certify;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Generator output at a given epsilon: a joint distribution for
/// matroid_hardness, otherwise the marginals of a product instance.
struct Generated {
  std::optional<JointDiscreteDistribution> joint;
  std::vector<MarginalDistribution> marginals;
};

Generated generate(const GeneratorSpec& spec, const Rational& epsilon);

}  // namespace tprophet::cli
