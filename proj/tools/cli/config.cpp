#include "config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include <tprophet/errors.hpp>
#include <tprophet/hardness.hpp>

namespace tprophet::cli {

namespace {

using nlohmann::json;

// A JSON value together with its pointer path, for diagnostics.
struct Node {
  const json& value;
  std::string path;

  Node operator[](const std::string& key) const { return {value.at(key), path + "/" + key}; }
  Node operator[](std::size_t i) const { return {value.at(i), path + "/" + std::to_string(i)}; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(path.empty() ? "/" : path, message);
  }

  bool has(const std::string& key) const { return value.contains(key); }

  const json& object() const {
    if (!value.is_object()) fail("expected an object");
    return value;
  }
  const json& array() const {
    if (!value.is_array()) fail("expected an array");
    return value;
  }
  std::size_t size() const { return array().size(); }

  std::string string() const {
    if (!value.is_string()) fail("expected a string");
    return value.get<std::string>();
  }

  std::uint64_t unsigned_integer() const {
    if (!value.is_number_unsigned()) {
      if (value.is_number_integer()) fail("expected a non-negative integer");
      fail("expected an integer");
    }
    return value.get<std::uint64_t>();
  }

  std::size_t positive() const {
    const auto v = unsigned_integer();
    if (v == 0) fail("expected a positive integer");
    return static_cast<std::size_t>(v);
  }

  // Rationals are strings ("p/q", "3", "0.25"); plain JSON integers are also
  // accepted, floating-point literals are not.
  Rational rational() const {
    if (value.is_number_integer()) return make_rational(value.get<std::int64_t>());
    if (value.is_number_float()) fail("write rationals as strings such as \"1/10\"");
    try {
      return parse_rational(string());
    } catch (const InputError& e) {
      fail(e.what());
    }
  }

  // One-based element id in 1..k, returned zero-based.
  std::size_t element(std::size_t k) const {
    const auto v = unsigned_integer();
    if (v == 0 || v > k) fail("element id " + std::to_string(v) + " outside 1.." + std::to_string(k));
    return static_cast<std::size_t>(v - 1);
  }
};

void reject_unknown(const Node& node, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : node.object().items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) ==
        allowed.end()) {
      Node{node.value[key], node.path + "/" + key}.fail("unknown field");
    }
  }
}

Node required(const Node& node, const std::string& key) {
  if (!node.object().contains(key)) node.fail("missing field '" + key + "'");
  return node[key];
}

// Library validation errors are reported at the node that produced them.
template <class F>
auto at_node(const Node& node, F&& build) {
  try {
    return build();
  } catch (const CapacityError&) {
    throw;
  } catch (const Error& e) {
    node.fail(e.what());
  }
}

StockSet element_set(const Node& node, std::size_t k) {
  StockSet s;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::size_t e = node[i].element(k);
    if (s.contains(e)) node[i].fail("duplicate element id");
    s.insert(e);
  }
  return s;
}

Matroid parse_matroid(const Node& node) {
  const std::string kind = required(node, "kind").string();
  if (kind == "uniform") {
    reject_unknown(node, {"kind", "k", "cap"});
    const std::size_t k = required(node, "k").positive();
    const std::size_t cap = required(node, "cap").positive();
    return at_node(node, [&] { return Matroid::uniform(k, cap); });
  }
  if (kind == "partition") {
    reject_unknown(node, {"kind", "k", "blocks"});
    const std::size_t k = required(node, "k").positive();
    if (k > StockSet::kMaxElements) node["k"].fail("at most 64 stocks are supported");
    const Node blocks = required(node, "blocks");
    std::vector<PartitionBlock> parsed;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const Node block = blocks[b];
      reject_unknown(block, {"elements", "cap"});
      parsed.push_back({element_set(required(block, "elements"), k), required(block, "cap").positive()});
    }
    return at_node(node, [&] { return Matroid::partition(k, std::move(parsed)); });
  }
  if (kind == "graphic") {
    reject_unknown(node, {"kind", "edges"});
    const Node edges = required(node, "edges");
    std::vector<GraphicEdge> parsed;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Node edge = edges[e];
      if (edge.size() != 2) edge.fail("an edge is a pair of vertex ids");
      const auto u = edge[0].positive();
      const auto v = edge[1].positive();
      parsed.push_back({u - 1, v - 1});
    }
    return at_node(node, [&] { return Matroid::graphic(std::move(parsed)); });
  }
  if (kind == "explicit") {
    reject_unknown(node, {"kind", "k", "family"});
    const std::size_t k = required(node, "k").positive();
    if (k > kEnumerationLimit) {
      node["k"].fail("explicit families support at most " + std::to_string(kEnumerationLimit) +
                     " stocks");
    }
    const Node family = required(node, "family");
    std::vector<StockSet> sets;
    for (std::size_t i = 0; i < family.size(); ++i) sets.push_back(element_set(family[i], k));
    Matroid m = at_node(node, [&] { return Matroid::explicit_family(k, sets); });
    if (const auto report = verify_matroid_axioms(m); !report) {
      node.fail("family is not a matroid (" + report.violation + ")");
    }
    return m;
  }
  node["kind"].fail("unknown matroid kind '" + kind +
                    "' (expected uniform, partition, graphic or explicit)");
}

JointDiscreteDistribution parse_joint(const Node& node) {
  std::vector<Atom> atoms;
  for (std::size_t j = 0; j < node.size(); ++j) {
    const Node atom = node[j];
    reject_unknown(atom, {"atom", "prob"});
    const Node prices = required(atom, "atom");
    PriceVector p;
    for (std::size_t s = 0; s < prices.size(); ++s) p.push_back(prices[s].rational());
    atoms.push_back({std::move(p), required(atom, "prob").rational()});
  }
  return at_node(node, [&] { return JointDiscreteDistribution(std::move(atoms)); });
}

MarginalDistribution parse_marginal(const Node& node) {
  std::vector<ValueProb> atoms;
  for (std::size_t j = 0; j < node.size(); ++j) {
    const Node atom = node[j];
    reject_unknown(atom, {"value", "prob"});
    atoms.push_back({required(atom, "value").rational(), required(atom, "prob").rational()});
  }
  return at_node(node, [&] { return MarginalDistribution(std::move(atoms)); });
}

ModelSpec parse_model(const Node& node) {
  ModelSpec spec;
  const std::string type = required(node, "type").string();
  if (type == "iid") {
    reject_unknown(node, {"type", "distribution"});
    spec.type = ModelType::kIid;
    spec.distribution = parse_joint(required(node, "distribution"));
  } else if (type == "marginals") {
    reject_unknown(node, {"type", "marginals"});
    spec.type = ModelType::kMarginals;
    const Node list = required(node, "marginals");
    if (list.size() == 0) list.fail("expected at least one marginal");
    for (std::size_t s = 0; s < list.size(); ++s) spec.marginals.push_back(parse_marginal(list[s]));
  } else if (type == "generator") {
    reject_unknown(node, {"type", "name", "params"});
    spec.type = ModelType::kGenerator;
    const Node name = required(node, "name");
    spec.generator.name = name.string();
    const bool needs_rank = spec.generator.name == "matroid_hardness";
    if (!needs_rank && spec.generator.name != "uniform_ratio_hardness" &&
        spec.generator.name != "half_hardness") {
      name.fail("unknown generator '" + spec.generator.name +
                "' (expected matroid_hardness, uniform_ratio_hardness or half_hardness)");
    }
    const Node params = required(node, "params");
    if (needs_rank) {
      reject_unknown(params, {"k", "r", "epsilon"});
      spec.generator.r = required(params, "r").positive();
    } else {
      reject_unknown(params, {"k", "epsilon"});
    }
    spec.generator.k = required(params, "k").positive();
    if (params.has("epsilon")) {
      spec.generator.epsilon = params["epsilon"].rational();
      at_node(params["epsilon"], [&] { return generate(spec.generator, *spec.generator.epsilon); });
    }
  } else if (type == "random_order") {
    reject_unknown(node, {"type", "distributions"});
    spec.type = ModelType::kRandomOrder;
    const Node list = required(node, "distributions");
    for (std::size_t i = 0; i < list.size(); ++i) spec.distributions.push_back(parse_joint(list[i]));
    if (spec.distributions.size() < 2) list.fail("random-order models need at least 2 distributions");
    for (std::size_t i = 1; i < spec.distributions.size(); ++i) {
      if (spec.distributions[i].dimension() != spec.distributions[0].dimension()) {
        list[i].fail("all distributions must have the same number of stocks");
      }
    }
  } else {
    node["type"].fail("unknown model type '" + type +
                      "' (expected iid, marginals, generator or random_order)");
  }
  return spec;
}

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

Generated generate(const GeneratorSpec& spec, const Rational& epsilon) {
  Generated out;
  if (spec.name == "matroid_hardness") {
    out.joint = matroid_hardness_instance(spec.k, spec.r, epsilon);
  } else if (spec.name == "uniform_ratio_hardness") {
    out.marginals = uniform_ratio_hardness_instance(spec.k, epsilon);
  } else if (spec.name == "half_hardness") {
    out.marginals = half_hardness_instance(spec.k, epsilon);
  } else {
    throw InputError("unknown generator '" + spec.name + "'");
  }
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string message = e.what();
    if (const auto pos = message.find("syntax error"); pos != std::string::npos) {
      message = message.substr(pos);
    }
    throw ConfigError(line_col(text, e.byte), message);
  }

  const Node root{doc, ""};
  root.object();
  reject_unknown(root, {"id", "mode", "matroid", "offline_matroid", "model", "horizon", "seed",
                        "trials", "bound", "epsilons", "certify"});

  ExperimentConfig config;
  if (root.has("id")) config.id = root["id"].string();
  if (root.has("mode")) config.mode = root["mode"].string();
  if (root.has("matroid")) config.matroid = parse_matroid(root["matroid"]);
  if (root.has("offline_matroid")) config.offline_matroid = parse_matroid(root["offline_matroid"]);
  if (root.has("model")) config.model = parse_model(root["model"]);
  if (root.has("horizon")) config.horizon = root["horizon"].positive();
  if (root.has("seed")) config.seed = root["seed"].unsigned_integer();
  if (root.has("trials")) config.trials = root["trials"].positive();
  if (root.has("bound")) config.bound = root["bound"].rational();
  if (root.has("epsilons")) {
    const Node list = root["epsilons"];
    for (std::size_t i = 0; i < list.size(); ++i) config.epsilons.push_back(list[i].rational());
    if (config.epsilons.empty()) list.fail("expected at least one epsilon");
  } else {
    config.epsilons = {make_rational(1, 10), make_rational(1, 100), make_rational(1, 1000)};
  }
  if (root.has("certify")) {
    const Node c = root["certify"];
    reject_unknown(c, {"trials", "overrides"});
    if (c.has("trials")) config.certify.trials = c["trials"].positive();
    if (c.has("overrides")) {
      const Node o = c["overrides"];
      for (const auto& [name, _] : o.object().items()) {
        config.certify.overrides.emplace_back(name, o[name].positive());
      }
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace tprophet::cli
