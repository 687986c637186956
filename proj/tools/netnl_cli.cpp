// Batch interface for network nonlocality-breaking channel analysis:
// classify channels, print noise thresholds, sweep parameter grids to CSV,
// construct preserving witnesses, and run the numerical verification suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netnl/criteria.hpp"
#include "netnl/errors.hpp"
#include "netnl/oracle.hpp"
#include "netnl/serialization.hpp"
#include "netnl/sweep.hpp"

namespace {

using namespace netnl;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitNoWitness = 3;

struct CommonOptions {
  std::string channel_text;
  std::string topology = "linear";
  int n = 2;
  int k = -1;
  int m1 = -1;
  int m2 = -1;
  double tol = -1.0;
  std::string out;
  std::string format = "json";
  uint64_t seed = 0;
  bool seed_given = false;
};

Tolerances make_tolerances(const CommonOptions& opt) {
  Tolerances t;
  if (opt.tol > 0.0) {
    t.equality = opt.tol;
    t.properness = opt.tol;
  }
  return t;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw ParseError("cannot open output file '" + out_path + "'");
  os << text;
}

// Resolves the (k, m1, m2) triple. Both forms may be given if consistent.
struct PatternCounts {
  int k = -1;
  int m1 = -1;
  int m2 = -1;
  bool has_split() const { return m1 >= 0 && m2 >= 0; }
  bool has_k() const { return k >= 0; }
};

PatternCounts resolve_pattern(const CommonOptions& opt) {
  PatternCounts p;
  p.k = opt.k;
  p.m1 = opt.m1;
  p.m2 = opt.m2;
  if ((opt.m1 >= 0) != (opt.m2 >= 0))
    throw ParseError("--m1 and --m2 must be given together");
  if (p.has_split() && p.has_k() && p.k != p.m1 + 2 * p.m2)
    throw ParseError("inconsistent pattern: k must equal m1 + 2*m2");
  if (p.has_split() && !p.has_k()) p.k = p.m1 + 2 * p.m2;
  return p;
}

int cmd_classify(const CommonOptions& opt) {
  const ChannelSpec spec = parse_channel(opt.channel_text);
  const Topology topology = topology_from_string(opt.topology);
  const Tolerances tol = make_tolerances(opt);
  PatternCounts pattern = resolve_pattern(opt);
  const int n = topology == Topology::star_fnn3 ? 3 : opt.n;
  if (topology == Topology::star_fnn3 && opt.n != 2 && opt.n != 3)
    throw ParseError("the full-network topology fixes n = 3");
  const int k = pattern.has_k() ? pattern.k : 1;

  json verdicts = json::array();
  if (spec.is_random_unitary()) {
    switch (topology) {
      case Topology::linear:
        verdicts.push_back(to_json(thm1_unital_linear(spec.ru, k, tol)));
        verdicts.push_back(to_json(thm2_unital_preserving(spec.ru, n, k, tol)));
        break;
      case Topology::star:
        verdicts.push_back(to_json(thm4_unital_star(spec.ru, k, n, tol)));
        verdicts.push_back(to_json(thm5_unital_preserving_star(spec.ru, n, k, tol)));
        break;
      case Topology::star_fnn3:
        verdicts.push_back(to_json(thm8_unital_fnn(spec.ru, k, tol)));
        break;
    }
  } else if (spec.is_pauli_damping()) {
    switch (topology) {
      case Topology::linear:
        verdicts.push_back(to_json(thm3_nonunital_linear(spec.nu)));
        break;
      case Topology::star: {
        if (!pattern.has_split())
          throw ParseError("star criteria for damping channels need --m1 and --m2");
        verdicts.push_back(to_json(thm6_nonunital_star(spec.nu, pattern.m1, pattern.m2, n)));
        verdicts.push_back(
            to_json(thm7_nonunital_preserving_star(spec.nu, pattern.m1, pattern.m2, n)));
        break;
      }
      case Topology::star_fnn3: {
        if (!pattern.has_split())
          throw ParseError("the full-network criterion for damping channels needs --m1 and --m2");
        verdicts.push_back(to_json(thm9_nonunital_fnn(spec.nu, pattern.m1, pattern.m2)));
        break;
      }
    }
  } else {
    Verdict v;
    v.theorem_id = "none";
    v.status = VerdictStatus::inconclusive;
    v.notes = "no criterion covers generic affine channels";
    verdicts.push_back(to_json(v));
  }
  emit(verdicts.dump(2) + "\n", opt.out);
  return kExitOk;
}

int cmd_threshold(const CommonOptions& opt, const std::string& family) {
  if (family != "depolarizing") {
    std::cerr << "unsupported channel family '" << family << "'\n";
    return kExitBadInput;
  }
  const Topology topology = topology_from_string(opt.topology);
  if (opt.k < 1) throw ParseError("threshold needs --k >= 1");
  double value = 0.0;
  switch (topology) {
    case Topology::linear:
      value = depol_threshold_linear(opt.k);
      break;
    case Topology::star:
      value = depol_threshold_star(opt.k, opt.n);
      break;
    case Topology::star_fnn3:
      value = depol_threshold_fnn(opt.k);
      break;
  }
  std::string line = format_17g(value);
  if (value < 0.0) line += "  # all q certified";
  emit(line + "\n", opt.out);
  return kExitOk;
}

int cmd_sweep(const CommonOptions& opt, const std::string& criterion, const std::string& grid,
              const std::string& fixed_spec) {
  const std::vector<GridAxis> axes = parse_grid(grid);
  std::map<std::string, double> fixed;
  if (!fixed_spec.empty()) {
    std::stringstream ss(fixed_spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
      const size_t eq = part.find('=');
      if (eq == std::string::npos)
        throw ParseError("fixed parameter '" + part + "' must have the form name=value");
      fixed[part.substr(0, eq)] = std::stod(part.substr(eq + 1));
    }
  }
  const SweepResult result = run_sweep(criterion, axes, fixed);
  std::ostringstream os;
  if (opt.format == "csv") {
    write_csv(result, os);
  } else if (opt.format == "json") {
    json rows = json::array();
    for (const auto& row : result.rows) {
      json r;
      for (size_t a = 0; a < row.axis_values.size(); ++a)
        r[result.columns[a]] = row.axis_values[a];
      r["lhs"] = row.lhs;
      r["rhs"] = row.rhs;
      r["verdict"] = row.verdict;
      rows.push_back(r);
    }
    os << rows.dump(2) << "\n";
  } else {
    throw ParseError("unknown format '" + opt.format + "'");
  }
  emit(os.str(), opt.out);
  return kExitOk;
}

int cmd_witness(const CommonOptions& opt) {
  const ChannelSpec spec = parse_channel(opt.channel_text);
  const Topology topology = topology_from_string(opt.topology);
  const Tolerances tol = make_tolerances(opt);
  const PatternCounts pattern = resolve_pattern(opt);
  const int n = opt.n;

  std::optional<WitnessResult> witness;
  if (spec.is_random_unitary() && topology != Topology::star_fnn3) {
    const auto case_id = improper_case(spec.ru, tol.properness);
    if (case_id) {
      const int k = pattern.has_k() ? pattern.k : 1;
      const WitnessResult w = witness_appB(spec.ru, n, k, *case_id, topology, tol);
      if (w.closed_form_bound > 1.0 + kMinWitnessMargin) witness = w;
    }
  } else if (spec.is_pauli_damping() && topology == Topology::star) {
    if (!pattern.has_split())
      throw ParseError("damping witnesses need --m1 and --m2");
    const Verdict v = thm7_nonunital_preserving_star(spec.nu, pattern.m1, pattern.m2, n);
    if (v.status == VerdictStatus::preserving_certified)
      witness = witness_appE(spec.nu, n, pattern.m1, pattern.m2, tol);
  }
  if (!witness) {
    std::cerr << "no certified witness for this channel/topology\n";
    return kExitNoWitness;
  }
  json j = to_json(*witness);
  j["transformed"] =
      to_json(apply_usage(spec.to_affine(), witness->scenario, witness->pattern));
  emit(j.dump(2) + "\n", opt.out);
  return kExitOk;
}

int cmd_verify(const CommonOptions& opt, const std::string& suite, long samples) {
  if (!opt.seed_given) {
    std::cerr << "--seed is required for randomized commands\n";
    return kExitBadInput;
  }
  json report;
  bool pass = false;
  if (suite == "bloch-kraus") {
    double max_dev = 0.0;
    long total = 0;
    std::mt19937_64 rng(derive_seed(opt.seed, 0));
    std::vector<RandomUnitaryChannel> channels = {depolarizing(0.37), dephasing(0.81)};
    channels.push_back(random_ru_channel(rng));
    channels.push_back(random_ru_channel(rng));
    for (size_t i = 0; i < channels.size(); ++i) {
      const CrosscheckReport r =
          bloch_kraus_crosscheck(channels[i], samples, derive_seed(opt.seed, 1 + i));
      max_dev = std::max(max_dev, r.max_deviation);
      total += r.samples;
    }
    pass = max_dev <= 1e-12;
    report["check"] = "bloch-kraus";
    report["samples"] = total;
    report["max_deviation"] = max_dev;
    report["pass"] = pass;
    report["seed"] = opt.seed;
  } else if (suite == "eig-formulas") {
    double max_dev = 0.0;
    for (long i = 0; i < samples; ++i) {
      std::mt19937_64 rng(derive_seed(opt.seed, static_cast<uint64_t>(i)));
      const PauliDampingChannel c = random_pauli_damping(rng);
      const BlochState s = diagonalize_correlation(
          i % 2 == 0 ? random_pure_state(rng) : random_mixed_state(rng));
      max_dev = std::max(max_dev, eig_formula_check(c, s, Sides::one).max_deviation);
      max_dev = std::max(max_dev, eig_formula_check(c, s, Sides::both).max_deviation);
    }
    pass = max_dev <= 1e-10;
    report["check"] = "eig-formulas";
    report["samples"] = samples;
    report["max_deviation"] = max_dev;
    report["pass"] = pass;
    report["seed"] = opt.seed;
  } else if (suite == "bound-vs-correlators") {
    double max_excess = -1.0;
    double worst_attainment = 1.0;
    for (const int n : {2, 3}) {
      std::mt19937_64 rng(derive_seed(opt.seed, static_cast<uint64_t>(n)));
      std::normal_distribution<double> normal(0.0, 1.0);
      for (long i = 0; i < samples; ++i) {
        NetworkScenario sc;
        sc.topology = Topology::linear;
        for (int j = 0; j < n; ++j)
          sc.states.push_back(i % 2 == 0 ? random_pure_state(rng) : random_mixed_state(rng));
        const double bound = bound_linear(sc).bound;
        MeasurementSetting ms;
        auto dir = [&] {
          Eigen::Vector3d d(normal(rng), normal(rng), normal(rng));
          return Eigen::Vector3d(d.normalized());
        };
        ms.first = {dir(), dir()};
        ms.last = {dir(), dir()};
        const Correlators c = simulate_linear_correlators(sc, ms);
        const double value = std::sqrt(std::abs(c.i_n)) + std::sqrt(std::abs(c.j_n));
        max_excess = std::max(max_excess, value - bound);
      }
      OptimizerConfig cfg;
      cfg.seed = derive_seed(opt.seed, 100 + static_cast<uint64_t>(n));
      const NetworkScenario bells = uniform_scenario(Topology::linear, n, bell_phi_plus());
      const double attained = max_inequality_over_settings(bells, cfg);
      worst_attainment = std::min(worst_attainment, attained / std::sqrt(2.0));
    }
    pass = max_excess <= 1e-6 && worst_attainment >= 1.0 - 1e-3;
    report["check"] = "bound-vs-correlators";
    report["samples"] = samples;
    report["max_excess"] = max_excess;
    report["bell_attainment_ratio"] = worst_attainment;
    report["pass"] = pass;
    report["seed"] = opt.seed;
  } else if (suite == "soundness") {
    const SoundnessReport r = soundness_sweep(samples, 2000, opt.seed);
    report = to_json(r);
    pass = r.pass;
  } else if (suite == "conjecture1") {
    ScanConfig cfg;
    cfg.samples = samples;
    cfg.seed = opt.seed;
    cfg.grid_step = 0.01;
    const ScanReport r = conjecture1_scan(cfg);
    report = to_json(r);
    pass = r.violations == 0;
  } else {
    std::cerr << "unknown suite '" << suite << "'\n";
    return kExitBadInput;
  }
  emit(report.dump(2) + "\n", opt.out);
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_bound(const CommonOptions& opt, const std::string& scenario_path) {
  std::ifstream is(scenario_path);
  if (!is) throw ParseError("cannot open scenario file '" + scenario_path + "'");
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario file is not valid JSON: ") + e.what());
  }
  const ScenarioFile sf = scenario_from_json(j);
  NetworkScenario sc = sf.scenario;
  if (sf.channel && sf.pattern) sc = apply_usage(sf.channel->to_affine(), sc, *sf.pattern);
  emit(to_json(network_bound(sc)).dump(2) + "\n", opt.out);
  return kExitOk;
}

// A JSON config file mirrors long flags; command-line values win. Object
// values (e.g. a channel literal) are re-serialized to their flag form.
std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
  std::string config_path;
  std::vector<std::string> out = args;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return out;
  std::ifstream is(config_path);
  if (!is) throw ParseError("cannot open config file '" + config_path + "'");
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw ParseError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& a : out)
      if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
    if (present) continue;
    out.push_back(flag);
    if (value.is_string())
      out.push_back(value.get<std::string>());
    else
      out.push_back(value.dump());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network nonlocality breaking channel analysis", "netnl"};
  app.require_subcommand(1);
  CommonOptions opt;
  std::string family = "depolarizing";
  std::string criterion, grid, fixed_spec, suite, scenario_path, config_path;
  long samples = 1000;
  int result = kExitOk;

  auto add_common = [&](CLI::App* sub, bool with_channel) {
    if (with_channel)
      sub->add_option("--channel", opt.channel_text, "channel literal (JSON) or 'identity'");
    sub->add_option("--topology", opt.topology, "linear | star | fnn3");
    sub->add_option("--n", opt.n, "number of sources");
    sub->add_option("--k", opt.k, "number of channel uses");
    sub->add_option("--m1", opt.m1, "sources touched on one side");
    sub->add_option("--m2", opt.m2, "sources touched on both sides");
    sub->add_option("--tol", opt.tol, "comparison tolerance override");
    sub->add_option("--out", opt.out, "output file (default stdout)");
    sub->add_option("--format", opt.format, "csv | json");
    sub->add_option("--seed", opt.seed, "RNG seed (required for randomized commands)")
        ->each([&opt](const std::string&) { opt.seed_given = true; });
    sub->add_option("--config", config_path, "JSON config file mirroring flags");
  };

  CLI::App* classify = app.add_subcommand("classify", "evaluate the applicable criteria");
  add_common(classify, true);
  classify->callback([&] { result = cmd_classify(opt); });

  CLI::App* threshold = app.add_subcommand("threshold", "closed-form noise threshold");
  add_common(threshold, false);
  threshold->add_option("--family", family, "channel family (depolarizing)");
  threshold->callback([&] { result = cmd_threshold(opt, family); });

  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a criterion over a parameter grid");
  add_common(sweep, false);
  sweep->add_option("--criterion", criterion, "thm1|thm2|thm3|thm4|thm5|thm6|thm7|thm8|thm9")
      ->required();
  sweep->add_option("--grid", grid, "axes, e.g. t=0:1:0.02,l1=0:1:0.02")->required();
  sweep->add_option("--fixed", fixed_spec, "fixed parameters, e.g. k=2,n=4");
  sweep->callback([&] {
    if (sweep->count("--format") == 0) opt.format = "csv";
    result = cmd_sweep(opt, criterion, grid, fixed_spec);
  });

  CLI::App* witness = app.add_subcommand("witness", "preserving witness construction");
  add_common(witness, true);
  witness->callback([&] { result = cmd_witness(opt); });

  CLI::App* verify = app.add_subcommand("verify", "run a numerical verification suite");
  add_common(verify, false);
  verify
      ->add_option("--suite", suite,
                   "bloch-kraus | eig-formulas | bound-vs-correlators | soundness | conjecture1")
      ->required();
  verify->add_option("--samples", samples, "sample count");
  verify->callback([&] { result = cmd_verify(opt, suite, samples); });

  CLI::App* bound = app.add_subcommand("bound", "bound report for a scenario file");
  add_common(bound, false);
  bound->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  bound->callback([&] { result = cmd_bound(opt, scenario_path); });

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = apply_config_file(args);
    if (const char* env_tol = std::getenv("NETNL_TOL")) {
      bool has_tol = false;
      for (const auto& a : args)
        if (a == "--tol" || a.rfind("--tol=", 0) == 0) has_tol = true;
      if (!has_tol) {
        args.push_back("--tol");
        args.push_back(env_tol);
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    return result;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  } catch (const netnl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}
