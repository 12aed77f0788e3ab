#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include <tprophet/analytics.hpp>
#include <tprophet/certify.hpp>
#include <tprophet/csv.hpp>
#include <tprophet/engine.hpp>
#include <tprophet/errors.hpp>

#include "config.hpp"

namespace tprophet::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::size_t kDefaultTrials = 1000;
constexpr std::uint64_t kDefaultSeed = 1;
constexpr const char* kSeedVariable = "TPROPHET_SEED";

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  bool quiet = false;
};

struct Context {
  std::string command;
  Options options;
  ExperimentConfig config;
  std::ostream& out;
  std::ostream& err;

  std::uint64_t seed() const {
    if (options.seed) return *options.seed;
    if (const char* env = std::getenv(kSeedVariable); env != nullptr && *env != '\0') {
      std::uint64_t value = 0;
      std::istringstream in(env);
      if (!(in >> value) || !in.eof()) {
        throw ConfigError(kSeedVariable, "expected an unsigned integer, got '" + std::string(env) + "'");
      }
      return value;
    }
    return config.seed.value_or(kDefaultSeed);
  }

  std::size_t trials(std::size_t fallback = kDefaultTrials) const {
    if (options.trials) return *options.trials;
    return config.trials.value_or(fallback);
  }

  std::ofstream open(const std::string& name) const {
    fs::create_directories(options.out_dir);
    const fs::path path = fs::path(options.out_dir) / name;
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw InputError("cannot write " + path.string());
    return file;
  }

  std::ostream& summary() const {
    static std::ostream null(nullptr);
    return options.quiet ? null : out;
  }
};

const Matroid& require_matroid(const ExperimentConfig& c) {
  if (!c.matroid) throw ConfigError("/matroid", "missing field 'matroid'");
  return *c.matroid;
}

const ModelSpec& require_model(const ExperimentConfig& c) {
  if (!c.model) throw ConfigError("/model", "missing field 'model'");
  return *c.model;
}

// Product-form models: explicit marginals or one of the independent generators.
std::optional<std::vector<MarginalDistribution>> product_marginals(const ModelSpec& model) {
  if (model.type == ModelType::kMarginals) return model.marginals;
  if (model.type == ModelType::kGenerator && model.generator.name != "matroid_hardness") {
    if (!model.generator.epsilon) {
      throw ConfigError("/model/params", "missing field 'epsilon'");
    }
    return generate(model.generator, *model.generator.epsilon).marginals;
  }
  return std::nullopt;
}

JointDiscreteDistribution iid_distribution(const ModelSpec& model) {
  switch (model.type) {
    case ModelType::kIid:
      return *model.distribution;
    case ModelType::kMarginals:
      return product(model.marginals);
    case ModelType::kGenerator: {
      if (!model.generator.epsilon) throw ConfigError("/model/params", "missing field 'epsilon'");
      auto g = generate(model.generator, *model.generator.epsilon);
      return g.joint ? std::move(*g.joint) : product(g.marginals);
    }
    case ModelType::kRandomOrder:
      break;
  }
  throw ConfigError("/model/type", "this command needs an iid, marginals or generator model");
}

void check_ground_size(const Matroid& m, std::size_t k, const std::string& path) {
  if (m.ground_size() != k) {
    throw ConfigError(path, "model has " + std::to_string(k) + " stocks but the matroid has " +
                                std::to_string(m.ground_size()));
  }
}

const UniformKind* as_uniform(const Matroid& m) { return std::get_if<UniformKind>(&m.kind()); }

// min{1/2, l/k} applies to product instances on uniform matroids; everything
// else gets 1/(1+d).
Rational default_bound(const Matroid& online, const std::optional<Matroid>& offline,
                       bool is_product) {
  const auto* u = as_uniform(online);
  const bool uniform_offline = !offline || as_uniform(*offline) != nullptr;
  if (is_product && u != nullptr && uniform_offline) {
    return independent_bound(online.ground_size(), u->cap);
  }
  return matroid_bound(online);
}

std::string decimal(const Rational& r) {
  std::ostringstream s;
  s << std::setprecision(6) << r.get_d();
  return s.str();
}

void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  if (rows.empty()) return;
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c == 0 ? "" : "  ") << std::left << std::setw(static_cast<int>(widths[c])) << row[c];
    }
    out << '\n';
  }
}

int cmd_density(const Context& ctx) {
  ctx.out << to_string(density(require_matroid(ctx.config))) << '\n';
  return kExitOk;
}

int cmd_simulate(const Context& ctx) {
  const Matroid& m = require_matroid(ctx.config);
  const ModelSpec& model = require_model(ctx.config);
  const std::uint64_t seed = ctx.seed();
  const std::size_t trials = ctx.trials();

  std::optional<MarketInstance> inst;
  Policy online_policy = Policy::kOnlineIid;
  if (model.type == ModelType::kRandomOrder) {
    check_ground_size(m, model.distributions.front().dimension(), "/model/distributions");
    if (ctx.config.horizon && *ctx.config.horizon != model.distributions.size()) {
      throw ConfigError("/horizon", "random-order horizon must equal the number of distributions");
    }
    inst = MarketInstance::random_order(m, model.distributions, seed);
    online_policy = Policy::kOnlineRandomOrder;
  } else {
    if (!ctx.config.horizon) throw ConfigError("/horizon", "missing field 'horizon'");
    auto d = iid_distribution(model);
    check_ground_size(m, d.dimension(), "/model");
    inst = MarketInstance::iid(m, std::move(d), *ctx.config.horizon, seed);
  }

  // Trial 0 is exported as the representative trace.
  RandomStream rng = trial_stream(seed, 0);
  const Trace online_trace = online_policy == Policy::kOnlineIid ? run_online_iid(*inst, rng)
                                                                 : run_online_random_order(*inst, rng);
  const OfflineResult offline = run_offline_optimal(online_trace.prices, m);
  {
    auto file = ctx.open("trace_online.csv");
    write_trace_csv(file, online_trace);
  }
  {
    auto file = ctx.open("trace_offline.csv");
    write_trace_csv(file, offline.trace);
  }

  const auto online_stats = monte_carlo(*inst, online_policy, trials);
  const auto offline_stats = monte_carlo(*inst, Policy::kOffline, trials);
  {
    auto file = ctx.open("stats.csv");
    write_stats_header(file);
    write_stats_row(file, policy_name(online_policy), online_stats);
    write_stats_row(file, policy_name(Policy::kOffline), offline_stats);
  }

  std::vector<std::vector<std::string>> rows{{"policy", "trials", "mean", "stderr", "per_step_mean"}};
  for (const auto& [policy, stats] :
       {std::pair{online_policy, online_stats}, std::pair{Policy::kOffline, offline_stats}}) {
    rows.push_back({std::string(policy_name(policy)), std::to_string(stats.trials),
                    format_double(stats.mean_profit), format_double(stats.std_error),
                    format_double(stats.per_step_mean)});
  }
  print_table(ctx.summary(), rows);
  return kExitOk;
}

int cmd_exact(const Context& ctx) {
  const Matroid& m = require_matroid(ctx.config);
  const ModelSpec& model = require_model(ctx.config);
  const auto marginals = product_marginals(model);
  const JointDiscreteDistribution d = iid_distribution(model);
  check_ground_size(m, d.dimension(), "/model");
  const Matroid& offline_m = ctx.config.offline_matroid ? *ctx.config.offline_matroid : m;
  if (ctx.config.offline_matroid) {
    check_ground_size(offline_m, d.dimension(), "/offline_matroid");
  }

  const Rational bound = ctx.config.bound.value_or(
      default_bound(m, ctx.config.offline_matroid, marginals.has_value()));
  const RatioRow row{ctx.config.id, std::string(m.kind_name()), density(m),
                     exact_ratio(m, offline_m, d, bound)};
  {
    auto file = ctx.open("ratio_report.csv");
    write_ratio_header(file);
    write_ratio_row(file, row);
  }
  const auto& r = row.report;
  print_table(ctx.summary(),
              {{"instance", "kind", "density", "online", "offline", "ratio", "bound", "satisfied"},
               {row.instance_id, row.matroid_kind, to_string(row.density), to_string(r.online_per_step),
                to_string(r.offline_per_step), r.ratio ? to_string(*r.ratio) : "undefined",
                to_string(r.bound), r.satisfied ? "true" : "false"}});
  return kExitOk;
}

int cmd_hardness_sweep(const Context& ctx) {
  const Matroid& m = require_matroid(ctx.config);
  const ModelSpec& model = require_model(ctx.config);
  if (model.type != ModelType::kGenerator) {
    throw ConfigError("/model/type", "hardness-sweep needs a generator model");
  }
  const GeneratorSpec& gen = model.generator;
  check_ground_size(m, gen.k, "/model/params/k");
  const Matroid& offline_m = ctx.config.offline_matroid ? *ctx.config.offline_matroid : m;
  check_ground_size(offline_m, gen.k, "/offline_matroid");

  // The value the ratio approaches as epsilon goes to 0.
  Rational limit;
  if (gen.name == "matroid_hardness") {
    limit = matroid_bound(m);
  } else if (gen.name == "half_hardness") {
    limit = make_rational(1, 2);
  } else {
    const auto* u = as_uniform(m);
    if (u == nullptr) throw ConfigError("/matroid/kind", "uniform_ratio_hardness needs a uniform matroid");
    limit = make_rational(static_cast<std::int64_t>(u->cap), static_cast<std::int64_t>(gen.k));
  }
  const Rational bound = ctx.config.bound.value_or(limit);

  auto file = ctx.open("hardness_sweep.csv");
  file << "generator,k,epsilon,online,offline,ratio,limit,ratio_minus_limit\n";
  std::vector<std::vector<std::string>> rows{{"epsilon", "online", "offline", "ratio", "ratio~", "limit"}};
  std::optional<Rational> previous;
  bool decreasing = true;
  for (std::size_t i = 0; i < ctx.config.epsilons.size(); ++i) {
    const Rational& eps = ctx.config.epsilons[i];
    Generated g;
    try {
      g = generate(gen, eps);
    } catch (const InputError& e) {
      throw ConfigError("/epsilons/" + std::to_string(i), e.what());
    }
    const auto d = g.joint ? std::move(*g.joint) : product(g.marginals);
    const RatioReport r = exact_ratio(m, offline_m, d, bound);
    const std::string ratio = r.ratio ? to_string(*r.ratio) : "undefined";
    const std::string gap = r.ratio ? to_string(Rational(*r.ratio - limit)) : "undefined";
    file << gen.name << ',' << gen.k << ',' << to_string(eps) << ',' << to_string(r.online_per_step)
         << ',' << to_string(r.offline_per_step) << ',' << ratio << ',' << to_string(limit) << ','
         << gap << '\n';
    rows.push_back({to_string(eps), decimal(r.online_per_step), decimal(r.offline_per_step), ratio,
                    r.ratio ? decimal(*r.ratio) : "undefined", to_string(limit)});
    if (r.ratio) {
      if (previous && !(*r.ratio < *previous)) decreasing = false;
      previous = *r.ratio;
    }
  }
  print_table(ctx.summary(), rows);
  ctx.summary() << "ratio " << (decreasing ? "decreases" : "does not decrease")
                << " along the epsilon schedule\n";
  return kExitOk;
}

int cmd_random_order(const Context& ctx) {
  const Matroid& m = require_matroid(ctx.config);
  const ModelSpec& model = require_model(ctx.config);
  if (model.type != ModelType::kRandomOrder) {
    throw ConfigError("/model/type", "random-order needs a random_order model");
  }
  const auto& ds = model.distributions;
  check_ground_size(m, ds.front().dimension(), "/model/distributions");

  const Rational d = density(m);
  const Rational n = make_rational(static_cast<std::int64_t>(ds.size()));
  const Rational bound = ctx.config.bound.value_or(Rational(1 / (1 + d) - 2 / n));
  const RatioReport r =
      make_ratio_report(exact_random_order_online(m, ds), exact_random_order_offline(m, ds), bound);

  const auto inst = MarketInstance::random_order(m, ds, ctx.seed());
  const std::size_t trials = ctx.trials();
  const auto online = monte_carlo(inst, Policy::kOnlineRandomOrder, trials);
  const auto offline = monte_carlo(inst, Policy::kOffline, trials);

  auto file = ctx.open("random_order.csv");
  file << "instance_id,n,matroid_kind,density,online,offline,ratio,bound,satisfied,trials,"
          "online_mc_per_step,online_mc_stderr,offline_mc_per_step,offline_mc_stderr\n";
  const double steps = static_cast<double>(ds.size() - 1);
  file << ctx.config.id << ',' << ds.size() << ',' << m.kind_name() << ',' << to_string(d) << ','
       << to_string(r.online_per_step) << ',' << to_string(r.offline_per_step) << ','
       << (r.ratio ? to_string(*r.ratio) : "undefined") << ',' << to_string(r.bound) << ','
       << (r.satisfied ? "true" : "false") << ',' << trials << ','
       << format_double(online.per_step_mean) << ',' << format_double(online.std_error / steps)
       << ',' << format_double(offline.per_step_mean) << ','
       << format_double(offline.std_error / steps) << '\n';

  print_table(ctx.summary(),
              {{"quantity", "exact", "monte_carlo_per_step"},
               {"online", to_string(r.online_per_step), format_double(online.per_step_mean)},
               {"offline", to_string(r.offline_per_step), format_double(offline.per_step_mean)},
               {"ratio", r.ratio ? to_string(*r.ratio) : "undefined", ""},
               {"bound", to_string(r.bound), ""},
               {"satisfied", r.satisfied ? "true" : "false", ""}});
  return kExitOk;
}

int cmd_certify(const Context& ctx) {
  CertifyOptions options;
  options.seed = ctx.seed();
  options.trials = ctx.options.trials.value_or(
      ctx.config.certify.trials.value_or(ctx.config.trials.value_or(CertifyOptions{}.trials)));
  for (const auto& [name, count] : ctx.config.certify.overrides) {
    if (std::find(property_names().begin(), property_names().end(), name) ==
        property_names().end()) {
      throw ConfigError("/certify/overrides/" + name, "unknown property");
    }
    // An explicit --trials applies to every property.
    if (!ctx.options.trials) options.trial_overrides[name] = count;
  }
  const auto results = run_certification(options);

  auto file = ctx.open("certify.csv");
  file << "property,trials,failures,status\n";
  std::vector<std::vector<std::string>> rows{{"property", "trials", "failures", "status"}};
  std::vector<const PropertyResult*> failed;
  for (const auto& r : results) {
    const std::string status = r.passed() ? "pass" : "FAIL";
    file << r.name << ',' << r.trials << ',' << r.failures << ',' << status << '\n';
    rows.push_back({r.name, std::to_string(r.trials), std::to_string(r.failures), status});
    if (!r.passed()) failed.push_back(&r);
  }
  print_table(ctx.summary(), rows);
  if (failed.empty()) return kExitOk;
  for (const auto* r : failed) {
    ctx.err << "violated: " << r->name << " (" << r->failures << " of " << r->trials
            << " trials; first failing trials:";
    for (auto t : r->failing_trials) ctx.err << ' ' << t;
    ctx.err << ")\n";
  }
  return kExitCertifyFailed;
}

using Handler = int (*)(const Context&);

struct Command {
  const char* name;
  const char* description;
  Handler handler;
};

constexpr Command kCommands[] = {
    {"simulate", "Monte Carlo traces and statistics for the online and offline policies", cmd_simulate},
    {"exact", "exact per-step online/offline values and their ratio", cmd_exact},
    {"hardness-sweep", "exact ratio of a hardness generator over a schedule of epsilons",
     cmd_hardness_sweep},
    {"random-order", "exact and simulated values of the random-order policy", cmd_random_order},
    {"density", "print the exact density of the matroid", cmd_density},
    {"certify", "run the randomized lemma and theorem property suite", cmd_certify},
};

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trading prophets over matroids: simulation and exact analysis", "tprophet"};
  app.require_subcommand(1);
  Options options;
  std::vector<std::pair<CLI::App*, const Command*>> subcommands;
  for (const auto& command : kCommands) {
    CLI::App* sub = app.add_subcommand(command.name, command.description);
    sub->add_option("--config", options.config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", options.out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", options.seed, "seed; overrides the config and TPROPHET_SEED");
    sub->add_option("--trials", options.trials, "trial count; overrides the config")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", options.quiet, "suppress the summary table");
    subcommands.emplace_back(sub, &command);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  const Command* command = nullptr;
  for (const auto& [sub, cmd] : subcommands) {
    if (sub->parsed()) command = cmd;
  }

  try {
    Context ctx{command->name, options, load_config(options.config_path), out, err};
    if (ctx.config.mode && *ctx.config.mode != command->name) {
      throw ConfigError("/mode", "config is for '" + *ctx.config.mode + "' but the command is '" +
                                     command->name + "'");
    }
    return command->handler(ctx);
  } catch (const ConfigError& e) {
    err << "config error at " << e.what() << '\n';
    return kExitInputError;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tprophet::cli
