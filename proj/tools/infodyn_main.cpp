// Batch front end: one job per invocation, structured JSON in and out.
//
//   infodyn <command> --in job.json [--out result.json] [flags]
//
// The input document holds the matrices/tables for the command; flags carry
// the scalar options. Results are emitted as a JSON document where every
// numeric field records the library operation that produced it. Estimator
// commands can additionally dump a flat CSV table (one row per trial or per
// depth) for external plotting.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "infodyn/info_gain.hpp"
#include "infodyn/involution.hpp"
#include "infodyn/symbolic.hpp"
#include "infodyn/tfca.hpp"
#include "infodyn/thermo.hpp"

using nlohmann::json;
using namespace infodyn;

namespace {

constexpr int kSchemaVersion = 1;

struct Options {
  std::string base = "e";
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  std::size_t depth = 8;
  std::size_t nodes = 64;
  std::string rule = "gauss-legendre";
  double tol = 0.0;  // 0 = library defaults
  std::string mode;
  std::string in_path;
  std::string out_path;
  std::string csv_path;
  std::size_t iters = 200;
  double step = 1.0;
};

LogBase parse_base(const std::string& b) {
  if (b == "e") return LogBase::natural;
  if (b == "2") return LogBase::two;
  if (b == "10") return LogBase::ten;
  throw SchemaError("base must be one of e, 2, 10");
}

json load_input(const Options& opt) {
  if (opt.in_path.empty()) throw SchemaError("missing required --in job file");
  json j;
  if (opt.in_path == "-") {
    try {
      std::cin >> j;
    } catch (const json::exception& e) {
      throw SchemaError(std::string("invalid JSON on stdin: ") + e.what());
    }
    return j;
  }
  std::ifstream f(opt.in_path);
  if (!f) throw SchemaError("cannot open job file: " + opt.in_path);
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid JSON in job file: ") + e.what());
  }
  if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion)
    throw SchemaError("unsupported schema_version");
  return j;
}

std::vector<double> parse_vector(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array())
    throw SchemaError("expected numeric array field '" + key + "'");
  std::vector<double> v;
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw SchemaError("field '" + key + "' must be numeric");
    v.push_back(x.get<double>());
  }
  return v;
}

std::vector<std::vector<double>> parse_matrix(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array())
    throw SchemaError("expected matrix field '" + key + "'");
  std::vector<std::vector<double>> m;
  for (const auto& row : j[key]) {
    if (!row.is_array()) throw SchemaError("field '" + key + "' must be a matrix");
    std::vector<double> r;
    for (const auto& x : row) {
      if (!x.is_number()) throw SchemaError("field '" + key + "' must be numeric");
      r.push_back(x.get<double>());
    }
    m.push_back(std::move(r));
  }
  return m;
}

MarkovMeasure parse_chain(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_object())
    throw SchemaError("expected chain object field '" + key + "'");
  const json& c = j[key];
  try {
    StochasticMatrix p(parse_matrix(c, "p"));
    if (c.contains("pi")) return MarkovMeasure(std::move(p), parse_vector(c, "pi"));
    return MarkovMeasure(std::move(p));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(std::string("invalid chain '") + key + "': " + e.what());
  }
}

AprioriWeights parse_weights(const json& j) {
  if (!j.contains("weights")) throw SchemaError("expected field 'weights'");
  const json& w = j["weights"];
  if (w.is_object() && w.contains("values"))
    return AprioriWeights(parse_vector(w, "values"));
  if (w.is_object() && w.contains("kind")) {
    const auto kind = w["kind"].get<std::string>();
    if (!w.contains("d")) throw SchemaError("weights kind requires field 'd'");
    const auto d = w["d"].get<std::size_t>();
    if (kind == "counting") return AprioriWeights::counting(d);
    if (kind == "uniform") return AprioriWeights::uniform(d);
    throw SchemaError("weights kind must be counting or uniform");
  }
  if (w.is_array()) {
    std::vector<double> v;
    for (const auto& x : w) v.push_back(x.get<double>());
    return AprioriWeights(std::move(v));
  }
  throw SchemaError("weights must be an array, {values}, or {kind,d}");
}

Potential parse_potential(const json& j) {
  if (!j.contains("potential") || !j["potential"].is_object())
    throw SchemaError("expected object field 'potential'");
  const json& p = j["potential"];
  if (!p.contains("d") || !p.contains("k"))
    throw SchemaError("potential requires fields 'd' and 'k'");
  const auto d = p["d"].get<std::size_t>();
  const auto k = p["k"].get<std::size_t>();
  if (!p.contains("table")) throw SchemaError("potential requires field 'table'");
  std::vector<double> flat;
  if (p["table"].is_array() && !p["table"].empty() && p["table"][0].is_array()) {
    for (const auto& row : p["table"])
      for (const auto& x : row) flat.push_back(x.get<double>());
  } else {
    flat = parse_vector(p, "table");
  }
  try {
    return Potential(d, k, std::move(flat));
  } catch (const Error& e) {
    throw SchemaError(std::string("invalid potential: ") + e.what());
  }
}

ContinuousPotential parse_continuous(const json& j) {
  if (!j.contains("potential") || !j["potential"].is_object())
    throw SchemaError("expected object field 'potential'");
  const json& p = j["potential"];
  const auto family = p.value("family", std::string{});
  try {
    if (family == "constant") return ContinuousPotential::constant(p.at("c").get<double>());
    if (family == "separable")
      return ContinuousPotential::separable(p.value("a", 0.0), p.value("b", 0.0));
    if (family == "bilinear")
      return ContinuousPotential::bilinear(p.value("alpha", 0.0), p.value("beta", 0.0),
                                           p.value("gamma", 0.0));
    if (family == "cosine")
      return ContinuousPotential::cosine_coupling(p.value("alpha", 1.0));
    if (family == "grid") return ContinuousPotential::grid(parse_matrix(p, "values"));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("invalid potential parameters: ") + e.what());
  } catch (const Error& e) {
    throw SchemaError(std::string("invalid potential: ") + e.what());
  }
  throw SchemaError("potential family must be constant|separable|bilinear|cosine|grid");
}

QuadratureMeasure parse_quadrature(const json& j, const Options& opt) {
  if (j.contains("quadrature") && j["quadrature"].is_object()) {
    const json& q = j["quadrature"];
    if (q.contains("nodes"))
      return QuadratureMeasure::explicit_nodes(parse_vector(q, "nodes"),
                                               parse_vector(q, "weights"));
    const auto rule = q.value("rule", opt.rule);
    const auto n = q.value("n", opt.nodes);
    if (rule == "midpoint") return QuadratureMeasure::midpoint(n);
    if (rule == "gauss-legendre") return QuadratureMeasure::gauss_legendre(n);
    throw SchemaError("quadrature rule must be midpoint or gauss-legendre");
  }
  if (opt.rule == "midpoint") return QuadratureMeasure::midpoint(opt.nodes);
  if (opt.rule == "gauss-legendre") return QuadratureMeasure::gauss_legendre(opt.nodes);
  throw SchemaError("rule must be midpoint or gauss-legendre");
}

json number_or_inf(const ExtReal& v) {
  if (v.is_infinite()) return json("inf");
  return json(v.value());
}

json tagged(const json& value, const std::string& op) {
  return json{{"value", value}, {"op", op}};
}

json tagged(double value, const std::string& op) {
  return json{{"value", value}, {"op", op}};
}

json chain_json(const MarkovMeasure& mu) {
  return json{{"p", mu.transitions().rows()}, {"pi", mu.stationary()}};
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream f(path);
  if (!f) throw SchemaError("cannot open csv file: " + path);
  f << header << "\n";
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      f << (i ? "," : "") << buf;
    }
    f << "\n";
  }
}

json run_command(const std::string& cmd, const Options& opt) {
  const json in = load_input(opt);
  const LogBase base = parse_base(opt.base);
  const double factor = log_base_factor(base);
  json results = json::object();
  json options = json::object();
  options["base"] = opt.base;

  if (cmd == "entropy") {
    results["entropy"] = tagged(shannon_entropy(parse_vector(in, "P"), base),
                                "shannon_entropy");
  } else if (cmd == "infogain") {
    const JointDistribution pi(parse_matrix(in, "pi"));
    results["information_gain"] = tagged(information_gain(pi, base), "information_gain");
    results["marginal_entropy"] =
        tagged(shannon_entropy(pi.x_marginal(), base), "shannon_entropy");
    results["conditional_entropy"] =
        tagged(conditional_entropy(pi, base), "conditional_entropy");
  } else if (cmd == "kl") {
    results["kl_divergence"] = tagged(
        number_or_inf(
            kl_divergence(parse_vector(in, "P"), parse_vector(in, "nu")).scaled(factor)),
        "kl_divergence");
  } else if (cmd == "kernel-ig") {
    const JointDistribution pi(parse_matrix(in, "pi"));
    const ProbabilityKernel k(parse_matrix(in, "kernel"));
    results["kernel_information_gain"] =
        tagged(number_or_inf(kernel_information_gain(pi, k).scaled(factor)),
               "kernel_information_gain");
  } else if (cmd == "spectral") {
    const Potential a = parse_potential(in);
    const AprioriWeights nu = parse_weights(in);
    const SpectralData s = spectral_data(a, nu);
    results["lambda"] = tagged(s.lambda, "spectral_data");
    results["pressure"] = tagged(s.pressure() * factor, "spectral_data");
    results["h"] = tagged(json(s.h), "spectral_data");
    results["rho"] = tagged(json(s.rho), "spectral_data");
    results["normalized"] =
        tagged(json(is_normalized(a, nu)), "is_normalized");
  } else if (cmd == "equilibrium") {
    const Potential a = parse_potential(in);
    const AprioriWeights nu = parse_weights(in);
    const MarkovMeasure mu = equilibrium_measure(a, nu);
    results["equilibrium"] = tagged(chain_json(mu), "equilibrium_measure");
  } else if (cmd == "relent") {
    const MarkovMeasure mu = parse_chain(in, "chain");
    const AprioriWeights nu = parse_weights(in);
    results["relative_entropy"] =
        tagged(relative_entropy(mu, nu) * factor, "relative_entropy");
  } else if (cmd == "specgain") {
    const std::string mode = opt.mode.empty() ? "formula" : opt.mode;
    options["mode"] = mode;
    if (mode == "formula") {
      const MarkovMeasure eta = parse_chain(in, "eta");
      const Potential a = parse_potential(in);
      const AprioriWeights nu = parse_weights(in);
      results["specific_gain"] =
          tagged(specific_gain(eta, a, nu) * factor, "specific_gain");
    } else if (mode == "cylinder") {
      const MarkovMeasure eta = parse_chain(in, "eta");
      const MarkovMeasure mu = parse_chain(in, "mu");
      options["depth"] = opt.depth;
      const GainReport r = cylinder_gain_estimate(eta, mu, opt.depth);
      results["cylinder_estimate"] =
          tagged(number_or_inf(r.value.scaled(factor)), "cylinder_gain_estimate");
      results["depth"] = tagged(json(r.n), "cylinder_gain_estimate");
      if (!opt.csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t n = 2; n <= opt.depth; ++n) {
          const GainReport g = cylinder_gain_estimate(eta, mu, n);
          const double v = g.value.is_infinite()
                               ? std::numeric_limits<double>::infinity()
                               : g.value.value() * factor;
          rows.push_back({static_cast<double>(n), v,
                          v * static_cast<double>(n) / static_cast<double>(n - 1)});
        }
        write_csv(opt.csv_path, "n,estimate,scaled_estimate", rows);
      }
    } else if (mode == "orbit") {
      const MarkovMeasure eta = parse_chain(in, "eta");
      const MarkovMeasure mu = parse_chain(in, "mu");
      options["depth"] = opt.depth;
      options["trials"] = opt.trials;
      options["seed"] = opt.seed;
      const GainReport r = orbit_gain_estimate(eta, mu, opt.depth, opt.trials, opt.seed);
      results["orbit_estimate"] =
          tagged(number_or_inf(r.value.scaled(factor)), "orbit_gain_estimate");
      results["stderr"] = tagged(r.stderr_value * factor, "orbit_gain_estimate");
      if (!opt.csv_path.empty()) {
        const std::vector<double> exps =
            orbit_gain_trials(eta, mu, opt.depth, opt.trials, opt.seed);
        std::vector<std::vector<double>> rows;
        for (std::size_t t = 0; t < exps.size(); ++t)
          rows.push_back({static_cast<double>(t), exps[t] * factor});
        write_csv(opt.csv_path, "trial,exponent", rows);
      }
    } else {
      throw SchemaError("specgain mode must be formula, cylinder, or orbit");
    }
  } else if (cmd == "ep") {
    const std::string mode = opt.mode.empty() ? "markov" : opt.mode;
    options["mode"] = mode;
    if (mode == "markov") {
      const MarkovMeasure mu = parse_chain(in, "chain");
      results["entropy_production"] =
          tagged(number_or_inf(entropy_production_markov(mu).scaled(factor)),
                 "entropy_production_markov");
    } else if (mode == "potential") {
      const Potential a = parse_potential(in);
      const AprioriWeights nu = parse_weights(in);
      results["entropy_production"] =
          tagged(entropy_production_potential(a, nu) * factor,
                 "entropy_production_potential");
    } else {
      throw SchemaError("ep mode must be markov or potential");
    }
  } else if (cmd == "involution") {
    const Potential a = parse_potential(in);
    const InvolutionData data = in.contains("gauge")
                                    ? involution_kernel(a, parse_vector(in, "gauge"))
                                    : involution_kernel(a);
    results["W"] = tagged(json(data.w), "involution_kernel");
    results["a_minus"] = tagged(json{{"d", data.a_minus.alphabet_size()},
                                     {"k", data.a_minus.depth()},
                                     {"table", data.a_minus.table()}},
                                "involution_kernel");
    results["gauge"] = tagged(json(data.gauge), "involution_kernel");
  } else if (cmd == "symmetric") {
    const Potential a = parse_potential(in);
    const AprioriWeights nu = parse_weights(in);
    const SymmetryResult r =
        opt.tol > 0.0 ? is_symmetric(a, nu, opt.tol) : is_symmetric(a, nu);
    if (opt.tol > 0.0) options["tol"] = opt.tol;
    results["symmetric"] = tagged(json(r.symmetric), "is_symmetric");
    results["strict"] = tagged(json(r.strict), "is_symmetric");
    if (r.gauge) results["gauge"] = tagged(json(*r.gauge), "is_symmetric");
  } else if (cmd == "tfca-spectral") {
    const ContinuousPotential a = parse_continuous(in);
    const QuadratureMeasure q = parse_quadrature(in, opt);
    options["nodes"] = q.size();
    const SpectralData s = nystrom_spectral(a, q);
    results["lambda"] = tagged(s.lambda, "nystrom_spectral");
    results["pressure"] = tagged(s.pressure() * factor, "nystrom_spectral");
    results["entropy"] = tagged(tfca_entropy(a, q) * factor, "tfca_entropy");
  } else if (cmd == "tfca-ep") {
    const ContinuousPotential a = parse_continuous(in);
    const QuadratureMeasure q = parse_quadrature(in, opt);
    options["nodes"] = q.size();
    results["entropy_production"] =
        tagged(tfca_entropy_production(a, q) * factor, "tfca_entropy_production");
  } else if (cmd == "variational-oracle") {
    const JointDistribution pi(parse_matrix(in, "pi"));
    const auto iters = in.value("iters", opt.iters);
    const auto step = in.value("step", opt.step);
    options["iters"] = iters;
    options["step"] = step;
    results["achieved_sup"] =
        tagged(variational_entropy_oracle(pi, iters, step) * factor,
               "variational_entropy_oracle");
    results["minus_conditional_entropy"] =
        tagged(-conditional_entropy(pi, base), "conditional_entropy");
  } else {
    throw SchemaError("unknown command: " + cmd);
  }

  return json{{"schema_version", kSchemaVersion},
              {"command", cmd},
              {"options", options},
              {"results", results}};
}

void emit(const json& doc, const Options& opt) {
  const std::string text = doc.dump(2) + "\n";
  if (opt.out_path.empty() || opt.out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out_path);
  if (!f) throw SchemaError("cannot open output file: " + opt.out_path);
  f << text;
}

const char* error_name(const Error& e) {
  if (dynamic_cast<const SchemaError*>(&e)) return "SchemaError";
  if (dynamic_cast<const ReducibleChain*>(&e)) return "ReducibleChain";
  if (dynamic_cast<const ConvergenceFailure*>(&e)) return "ConvergenceFailure";
  if (dynamic_cast<const NotNormalized*>(&e)) return "NotNormalized";
  if (dynamic_cast<const EnumerationTooLarge*>(&e)) return "EnumerationTooLarge";
  return "Error";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"information gain, relative entropy, and entropy production "
               "for symbolic dynamics"};
  app.require_subcommand(1);

  Options opt;
  const std::vector<std::string> commands = {
      "entropy",   "infogain",   "kl",         "kernel-ig", "spectral",
      "equilibrium", "relent",   "specgain",   "ep",        "involution",
      "symmetric", "tfca-spectral", "tfca-ep", "variational-oracle"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--in", opt.in_path, "job JSON file ('-' for stdin)");
    sub->add_option("--out", opt.out_path, "result file (default stdout)");
    sub->add_option("--base", opt.base, "log base: e, 2, or 10");
    sub->add_option("--seed", opt.seed, "PRNG seed");
    sub->add_option("--trials", opt.trials, "Monte Carlo trials");
    sub->add_option("--depth", opt.depth, "cylinder/orbit depth n");
    sub->add_option("--nodes", opt.nodes, "quadrature node count");
    sub->add_option("--rule", opt.rule, "quadrature rule");
    sub->add_option("--tol", opt.tol, "tolerance override");
    sub->add_option("--mode", opt.mode, "command mode");
    sub->add_option("--csv", opt.csv_path, "flat table output for sweeps");
    sub->add_option("--iters", opt.iters, "oracle iterations");
    sub->add_option("--step", opt.step, "oracle step size");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    emit(run_command(cmd, opt), opt);
    return 0;
  } catch (const Error& e) {
    json err{{"schema_version", kSchemaVersion},
             {"error", {{"type", error_name(e)}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"schema_version", kSchemaVersion},
             {"error", {{"type", "Error"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
}
