#include "fhlab/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fhlab/core/random.hpp"
#include "fhlab/io/json_io.hpp"

namespace fhlab::cli {

namespace {

using io::Json;

std::uint64_t env_cap(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  std::size_t used = 0;
  std::uint64_t value = 0;
  try {
    value = std::stoull(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != std::string(raw).size() || value == 0)
    throw std::invalid_argument(std::string(name) + " must be a positive integer, got \"" + raw + "\"");
  return value;
}

struct Common {
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 0;
  bool no_timing = false;
  Caps caps;
  std::vector<std::string> inputs;
  std::vector<std::string> warnings;
};

struct Outcome {
  Json result;
  int code = kExitOk;
};

Json caps_json(const Caps& caps) {
  return Json{{"ground", caps.ground}, {"trials", caps.trials}, {"n", caps.n}};
}

Json tool_json() { return Json{{"name", kToolName}, {"version", kVersion}}; }

Json family_summary(const setfam::SetFamily& family) {
  return Json{{"ground", family.ground_size()},
              {"members", family.size()},
              {"empty_members", family.empty_members()}};
}

setfam::SetFamily load_family(const std::string& path, Common& common) {
  auto parsed = io::parse_family_file(path);
  common.inputs.push_back(path);
  for (auto& w : parsed.warnings) common.warnings.push_back(std::move(w));
  return std::move(parsed.family);
}

Json load_json(const std::string& path, Common& common) {
  common.inputs.push_back(path);
  return io::parse_json(io::read_file(path), path);
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string family;
  std::size_t k = 2;
  std::string alpha = "1/2";
  std::size_t p = 0;
  std::size_t pk_k = 0;
  bool distinct = false;
  std::string beta;
  bool rainbow = false;
};

Outcome analyze(const AnalyzeArgs& args, Common& common) {
  const auto family = load_family(args.family, common);
  Outcome out;
  out.result["family"] = family_summary(family);
  out.result["fhp"] = io::to_json(setfam::check_fhp_instance(family, args.k, parse_rational(args.alpha)));
  if (args.p > 0) {
    const std::size_t k = args.pk_k > 0 ? args.pk_k : args.k;
    const auto pk = setfam::check_pk_property(
        family, args.p, k, args.distinct ? setfam::Repetition::distinct : setfam::Repetition::allowed);
    out.result["pk"] = io::to_json(pk);
    out.result["pk"]["p"] = args.p;
    out.result["pk"]["k"] = k;
    if (!pk.holds) out.code = kExitPropertyFailure;
  }
  if (!args.beta.empty()) {
    const Rational beta = parse_rational(args.beta);
    const auto report = setfam::check_fhp_instance(family, args.k, parse_rational(args.alpha));
    const bool satisfied = !report.hypothesis_holds || report.best_beta >= beta;
    out.result["beta_check"] = Json{{"beta", io::rational_to_json(beta)}, {"satisfied", satisfied}};
    if (!satisfied) out.code = kExitPropertyFailure;
  }
  if (args.rainbow) {
    const auto extraction = constructs::furedi_extract(family, common.caps.trials, common.seed);
    const std::size_t k = family.empty() ? 0 : family.member(0).size();
    Json rainbow{{"gamma", io::rational_to_json(k ? constructs::furedi_gamma(k) : Rational(0))},
                 {"trials", common.caps.trials},
                 {"found", extraction.has_value()}};
    if (extraction) rainbow["extraction"] = io::to_json(*extraction);
    out.result["rainbow"] = std::move(rainbow);
    if (!extraction) out.code = kExitPropertyFailure;
  }
  return out;
}

// ---------------------------------------------------------------- lp

Outcome lp(const std::string& path, Common& common) {
  const auto family = load_family(path, common);
  const auto i = fraclp::intersection_number(family);
  auto tau = fraclp::fractional_transversal(family);
  if (const auto hit = fraclp::min_transversal_exact(family, common.caps.n)) {
    tau.integer_tau = hit->size;
    tau.integer_witness = hit->witness;
  }
  Outcome out;
  out.result["family"] = family_summary(family);
  out.result["intersection_number"] = io::to_json(i);
  out.result["fractional_transversal"] = io::to_json(tau);
  Json duality{{"applicable", tau.feasible && !i.degenerate}};
  if (tau.feasible && !i.degenerate) {
    const Rational product = i.value * tau.tau_star;
    duality["product"] = io::rational_to_json(product);
    duality["holds"] = product == 1;
    if (product != 1) out.code = kExitPropertyFailure;
  }
  out.result["duality"] = std::move(duality);
  return out;
}

// ---------------------------------------------------------------- vc

Outcome vc_command(const std::string& path, std::vector<std::size_t> sizes, Common& common) {
  const auto family = load_family(path, common);
  auto report = vc::vc_dimension(family, common.caps.n);
  if (sizes.empty())
    for (std::size_t n = 1; n <= std::min<std::size_t>(family.size(), 6); ++n) sizes.push_back(n);
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  vc::DualShatterOptions options;
  options.samples = common.caps.trials;
  options.seed = common.seed;
  report.dual = vc::dual_shatter(family, sizes, options);
  report.density_fit = vc::log_log_slope(report.dual.values);
  Outcome out;
  out.result["family"] = family_summary(family);
  out.result["vc"] = io::to_json(report);
  return out;
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  std::string kind;
  std::size_t k = 2;
  std::size_t r = 3;
  std::size_t m = 2;
  std::string alpha = "1/2";
  std::string gamma = "1";
  std::size_t p_prime = 2;
  std::size_t k_prime = 2;
  std::size_t n = 4;
  std::size_t w = 3;
  std::size_t d = 4;
  std::size_t inconsistency = 2;
  std::size_t members = 60;
  std::size_t ground = 25;
  std::size_t size = 3;
};

setfam::SetFamily random_uniform(std::size_t members, std::size_t ground, std::size_t size,
                                 std::uint64_t seed) {
  if (size > ground) throw std::invalid_argument("member size exceeds the ground size");
  Rng rng(seed);
  std::vector<std::vector<setfam::Element>> sets;
  std::vector<setfam::Element> pool(ground);
  for (std::size_t i = 0; i < members; ++i) {
    for (std::size_t e = 0; e < ground; ++e) pool[e] = static_cast<setfam::Element>(e);
    // partial Fisher-Yates
    for (std::size_t j = 0; j < size; ++j)
      std::swap(pool[j], pool[j + uniform_below(rng, ground - j)]);
    sets.emplace_back(pool.begin(), pool.begin() + static_cast<long>(size));
  }
  return setfam::SetFamily(ground, std::move(sets));
}

std::pair<setfam::SetFamily, Json> build_construction(const ConstructArgs& a, const Common& common) {
  const std::size_t cap = common.caps.ground;
  if (a.kind == "block") {
    constructs::BlockParams params;
    params.k = a.k;
    params.r = a.r;
    params.m = a.m;
    params.alpha = parse_rational(a.alpha);
    params.gamma = parse_rational(a.gamma);
    params.p_prime = a.p_prime;
    params.k_prime = a.k_prime;
    return {constructs::build_block_counterexample(params, cap),
            Json{{"k", a.k}, {"r", a.r}, {"m", a.m}, {"alpha", io::rational_to_json(params.alpha)},
                 {"gamma", io::rational_to_json(params.gamma)}, {"pprime", a.p_prime},
                 {"kprime", a.k_prime}}};
  }
  if (a.kind == "tp2")
    return {constructs::build_tp2_grid(a.k, a.m, a.inconsistency, cap),
            Json{{"k", a.k}, {"m", a.m}, {"inconsistency", a.inconsistency}}};
  if (a.kind == "cross") {
    if (a.n * a.n > cap) throw std::invalid_argument("ground set n^2 exceeds the ground cap");
    return {constructs::build_two_order_cross(a.n), Json{{"n", a.n}}};
  }
  if (a.kind == "caps")
    return {constructs::build_caps_family(a.w, a.d, cap), Json{{"w", a.w}, {"d", a.d}}};
  if (a.kind == "shattered-pairs")
    return {constructs::build_shattered_pairs(a.m, cap), Json{{"m", a.m}}};
  if (a.ground > cap) throw std::invalid_argument("ground size exceeds the ground cap");
  return {random_uniform(a.members, a.ground, a.size, common.seed),
          Json{{"members", a.members}, {"ground", a.ground}, {"size", a.size}}};
}

// ---------------------------------------------------------------- sqf

struct SqfArgs {
  std::string system;
  std::int64_t window = 100000;
  std::uint64_t tail_prime = 10007;
  std::size_t params = 0;
  std::int64_t param_range = 100;
  std::size_t k = 2;
  std::string alpha = "1/2";
  std::vector<std::string> dickson;
  std::uint64_t dickson_bound = 100;
  bool squarefree = false;
};

std::vector<std::int64_t> random_shifts(Rng& rng, std::size_t count, std::int64_t range) {
  std::vector<std::int64_t> out(count);
  for (auto& v : out) v = uniform_in(rng, 0, range);
  return out;
}

Outcome sqf(const SqfArgs& args, Common& common) {
  if (args.window < 2) throw std::invalid_argument("--window must be at least 2");
  Outcome out;
  out.result["window"] = args.window;
  out.result["tail_prime"] = args.tail_prime;

  if (args.squarefree) {
    const auto count = sqfint::count_squarefree(args.window);
    const double reference = 6.0 / (std::numbers::pi * std::numbers::pi);
    const double expected = reference * static_cast<double>(args.window);
    out.result["squarefree"] = Json{{"count", count},
                                    {"reference_density", reference},
                                    {"relative_deviation", std::fabs(count - expected) / expected}};
  }

  if (!args.dickson.empty()) {
    std::vector<std::pair<std::int64_t, std::int64_t>> forms;
    for (const auto& text : args.dickson) {
      const auto colon = text.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("Dickson forms are written a:b for a*t + b, got " + text);
      forms.emplace_back(std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1)));
    }
    Json list = Json::array();
    for (const auto& [a, b] : forms) list.push_back(Json{{"a", a}, {"b", b}});
    out.result["dickson"] = io::to_json(sqfint::dickson_admissible(forms, args.dickson_bound));
    out.result["dickson"]["forms"] = std::move(list);
  }

  if (args.system.empty()) return out;
  const Json input = load_json(args.system, common);
  const Json& formula_json = input.contains("formula") ? input.at("formula") : input;
  const auto formula = io::special_formula_from_json(formula_json);
  out.result["formula"] = io::special_formula_to_json(formula);

  if (input.contains("c")) {
    const auto system = io::gsystem_from_json(input);
    Json local = Json::array();
    bool all_satisfiable = true;
    for (std::uint64_t p : sqfint::local_obstruction_primes(system)) {
      const auto sat = sqfint::p_satisfiable(system, p);
      all_satisfiable = all_satisfiable && sat.satisfiable;
      Json entry = io::to_json(sat);
      entry["p"] = p;
      local.push_back(std::move(entry));
    }
    Json report{{"c", system.c},
                {"c_prime", system.c_prime},
                {"nontrivial", system.nontrivial()},
                {"local", local},
                {"all_p_satisfiable", all_satisfiable}};
    const auto count = sqfint::count_solutions_window(system, args.window);
    report["count"] = count;
    if (formula.positive()) {
      const auto certificate = sqfint::density_certificate(formula, args.tail_prime);
      const bool met = sqfint::meets_density_bound(count, certificate.epsilon_lower, system, args.window);
      report["certificate"] = io::to_json(certificate);
      report["error_term_floor"] = sqfint::error_term_floor(system, args.window);
      report["density_bound_met"] = met;
      if (all_satisfiable && !met) out.code = kExitPropertyFailure;
    }
    out.result["system"] = std::move(report);
  }

  std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> parameters;
  if (input.contains("parameters")) {
    for (const auto& entry : input.at("parameters")) {
      parameters.emplace_back(entry.value("c", std::vector<std::int64_t>{}),
                              entry.value("c_prime", std::vector<std::int64_t>{}));
    }
  }
  if (args.params > 0) {
    Rng rng(common.seed);
    for (std::size_t i = 0; i < args.params; ++i) {
      auto c = random_shifts(rng, formula.s, args.param_range);
      auto c_prime = random_shifts(rng, formula.s_prime, args.param_range);
      parameters.emplace_back(std::move(c), std::move(c_prime));
    }
  }
  if (!parameters.empty()) {
    Json list = Json::array();
    for (const auto& [c, c_prime] : parameters) list.push_back(Json{{"c", c}, {"c_prime", c_prime}});
    out.result["experiment"] = io::to_json(sqfint::sqf_fhp_experiment(
        formula, parameters, args.k, parse_rational(args.alpha), args.window, args.tail_prime));
    out.result["experiment"]["parameters"] = std::move(list);
  }
  return out;
}

// ---------------------------------------------------------------- ff

struct FfArgs {
  std::string config;
  std::uint32_t p = 0;
  std::size_t k = 0;
  std::string alpha;
  std::string constant;
};

Json fit_summary(const pseudofield::DefinableFamily& built, const Rational& constant) {
  std::map<std::pair<std::size_t, std::string>, Json> groups;
  for (std::size_t i = 0; i < built.family.size(); ++i) {
    const auto fit = pseudofield::dim_meas_fit(built.family.member(i).size(), built.q,
                                               built.dimension, constant);
    auto& group = groups[{fit.d, to_string(fit.mu)}];
    if (group.is_null())
      group = Json{{"d", fit.d}, {"mu", io::rational_to_json(fit.mu)}, {"members", 0},
                   {"ambiguous", 0}, {"outside_bound", 0}, {"first_member", i}};
    group["members"] = group["members"].get<std::size_t>() + 1;
    if (fit.ambiguous) group["ambiguous"] = group["ambiguous"].get<std::size_t>() + 1;
    if (!fit.within_bound) group["outside_bound"] = group["outside_bound"].get<std::size_t>() + 1;
  }
  Json out = Json::array();
  for (auto& [key, group] : groups) out.push_back(std::move(group));
  return out;
}

Outcome ff(const FfArgs& args, Common& common) {
  const Json config = load_json(args.config, common);
  const std::uint32_t p = args.p ? args.p : config.at("p").get<std::uint32_t>();
  const pseudofield::FieldStructure field(p);
  const Rational alpha = !args.alpha.empty()     ? parse_rational(args.alpha)
                         : config.contains("alpha") ? io::rational_from_json(config.at("alpha"))
                                                    : make_rational(1, 2);
  const Rational constant = !args.constant.empty() ? parse_rational(args.constant)
                            : config.contains("constant")
                                ? io::rational_from_json(config.at("constant"))
                                : Rational(1);
  const std::size_t cap = std::min<std::uint64_t>(common.caps.ground, pseudofield::kDefaultGroundCap);
  Outcome out;
  out.result["q"] = p;
  if (config.contains("families")) {
    std::vector<pseudofield::FamilySpec> specs;
    for (const auto& spec : config.at("families")) specs.push_back(io::family_spec_from_json(spec));
    out.result["colorful"] = io::to_json(pseudofield::colorful_ff_experiment(field, specs, alpha, cap));
    return out;
  }
  const auto spec = io::family_spec_from_json(config);
  const auto built = pseudofield::definable_family(field, spec, cap);
  const std::size_t k = args.k ? args.k : config.value("k", built.dimension + 1);
  pseudofield::FfFhpReport report;
  report.q = built.q;
  report.dimension = built.dimension;
  report.members = built.family.size();
  report.ground = built.family.ground_size();
  report.empty_parameter_set = built.empty_parameter_set;
  report.fhp.k = k;
  report.fhp.alpha = alpha;
  if (!built.family.empty()) report.fhp = setfam::check_fhp_instance(built.family, k, alpha);
  else common.warnings.push_back("the parameter set is empty");
  out.result["fhp"] = io::to_json(report);
  out.result["fits"] = fit_summary(built, constant);
  return out;
}

// ---------------------------------------------------------------- count-types

struct CountArgs {
  std::string structure;
  std::string family;
  std::string phi;
  std::vector<std::string> x{"x"};
  std::vector<std::string> y{"y"};
  std::size_t m = 1;
  std::size_t k = 2;
  std::size_t l = 0;
  std::vector<std::size_t> probe;
  std::size_t d = 2;
  std::uint64_t exhaustive_limit = 5000;
};

Outcome count_types(const CountArgs& args, Common& common) {
  if (args.structure.empty() == args.family.empty())
    throw std::invalid_argument("give exactly one of --structure and --family");
  std::optional<logic::FiniteStructure> structure;
  std::vector<typecount::Tuple> pool;
  std::string phi_text = args.phi;
  if (!args.family.empty()) {
    auto encoding = typecount::encode_membership(load_family(args.family, common));
    structure.emplace(std::move(encoding.structure));
    pool = std::move(encoding.pool);
    if (phi_text.empty()) phi_text = R"(["rel","In","x","y"])";
  } else {
    structure.emplace(io::structure_from_json(load_json(args.structure, common)));
    if (phi_text.empty()) throw std::invalid_argument("--phi is required with --structure");
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < args.y.size(); ++i) {
      count *= structure->size();
      if (count > common.caps.ground) throw std::invalid_argument("parameter pool exceeds the ground cap");
    }
    for (std::size_t index = 0; index < count; ++index) {
      typecount::Tuple t(args.y.size());
      std::size_t rest = index;
      for (std::size_t i = t.size(); i-- > 0;) {
        t[i] = static_cast<logic::Value>(rest % structure->size());
        rest /= structure->size();
      }
      pool.push_back(std::move(t));
    }
  }
  const auto formula = logic::parse_formula(std::string_view(phi_text));
  const typecount::Phi phi(*structure, formula, args.x, args.y);
  typecount::CountOptions options;
  options.exhaustive_limit = args.exhaustive_limit;
  options.samples = common.caps.trials;
  options.seed = common.seed;

  Outcome out;
  out.result["phi"] = logic::formula_to_json(formula);
  out.result["pool_size"] = pool.size();
  out.result["caveat"] = typecount::kAmbientCaveat;
  if (!args.probe.empty()) {
    out.result["power_saving"] =
        io::to_json(typecount::power_saving_probe(phi, args.k, pool, args.probe, args.d, options));
  }
  if (args.l > 0 || args.probe.empty()) {
    const std::size_t l = args.l > 0 ? args.l : pool.size();
    out.result["count"] = io::to_json(typecount::f_phi(phi, args.m, args.k, pool, l, options));
  }
  return out;
}

// ---------------------------------------------------------------- output

void emit(const Json& report, const Common& common, std::ostream& out) {
  const std::string text = common.format == "csv" ? io::to_csv(report) : report.dump(2) + "\n";
  if (common.output.empty()) {
    out << text;
  } else {
    io::write_atomic(common.output, text);
  }
}

Json envelope(const std::string& command, const Common& common, Json result) {
  Json report{{"schema", "fhlab." + command + "/1"},
              {"tool", tool_json()},
              {"command", command},
              {"seed", common.seed},
              {"caps", caps_json(common.caps)},
              {"inputs", common.inputs},
              {"warnings", common.warnings},
              {"result", std::move(result)}};
  return report;
}

int batch(const std::string& path, Common& common, std::ostream& out, std::ostream& err) {
  const Json config = load_json(path, common);
  if (!config.contains("jobs") || !config.at("jobs").is_array())
    throw io::InputError(path + ": batch config needs a \"jobs\" array");
  Json jobs = Json::array();
  int worst = kExitOk;
  for (std::size_t i = 0; i < config.at("jobs").size(); ++i) {
    const Json& job = config.at("jobs")[i];
    const auto args = io::string_list(job.at("args"), "job \"args\"");
    const std::string name = job.value("name", "job" + std::to_string(i));
    std::ostringstream buffer;
    const int code = run(args, buffer, err);
    Json entry{{"name", name}, {"exit_code", code}, {"output", job.value("output", Json(nullptr))}};
    if (job.contains("output") && code != kExitUsage) {
      io::write_atomic(job.at("output").get<std::string>(), buffer.str());
    } else if (code != kExitUsage) {
      // without an output file the job's report is kept inside the summary
      const Json parsed = Json::parse(buffer.str(), nullptr, false);
      entry["report"] = parsed.is_discarded() ? Json(buffer.str()) : parsed;
    }
    worst = std::max(worst, code);
    jobs.push_back(std::move(entry));
  }
  Json report = envelope("batch", common, Json{{"jobs", jobs}});
  emit(report, common, out);
  return worst;
}

}  // namespace

Caps default_caps() {
  Caps caps;
  caps.ground = env_cap("FHLAB_CAP_GROUND", caps.ground);
  caps.trials = env_cap("FHLAB_CAP_TRIALS", caps.trials);
  caps.n = env_cap("FHLAB_CAP_N", caps.n);
  return caps;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Common common;
  try {
    common.caps = default_caps();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Fractional Helly property laboratory", kToolName};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", common.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("-o,--output", common.output, "Write the report to this file (atomically)");
  app.add_option("--seed", common.seed, "64-bit seed for every randomized step")->capture_default_str();
  app.add_flag("--no-timing", common.no_timing, "Omit runtime_ms so reports are byte-identical");
  app.add_option("--cap-ground", common.caps.ground, "Largest ground set (env FHLAB_CAP_GROUND)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cap-trials", common.caps.trials, "Trials and samples (env FHLAB_CAP_TRIALS)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--cap-n", common.caps.n, "Largest exhaustive search size (env FHLAB_CAP_N)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Fractional Helly and (p,k) checks on a family");
  analyze_cmd->add_option("--family", analyze_args.family, "Family JSON file")->required();
  analyze_cmd->add_option("--k", analyze_args.k, "Tuple size k")->capture_default_str();
  analyze_cmd->add_option("--alpha", analyze_args.alpha, "Hypothesis fraction")->capture_default_str();
  analyze_cmd->add_option("--p", analyze_args.p, "Check the (p,k)-property with this p");
  analyze_cmd->add_option("--pk-k", analyze_args.pk_k, "k for the (p,k)-property (default --k)");
  analyze_cmd->add_flag("--distinct", analyze_args.distinct, "(p,k) tuples without repetition");
  analyze_cmd->add_option("--beta", analyze_args.beta, "Fail when the hypothesis holds but best_beta < beta");
  analyze_cmd->add_flag("--rainbow", analyze_args.rainbow, "Rainbow extraction on a uniform family");

  std::string lp_family;
  auto* lp_cmd = app.add_subcommand("lp", "Intersection number and fractional transversal");
  lp_cmd->add_option("--family", lp_family, "Family JSON file")->required();

  std::string vc_family;
  std::vector<std::size_t> vc_sizes;
  auto* vc_cmd = app.add_subcommand("vc", "VC dimension and dual shatter function");
  vc_cmd->add_option("--family", vc_family, "Family JSON file")->required();
  vc_cmd->add_option("--sizes", vc_sizes, "Subfamily sizes n for pi*(n)")->delimiter(',');

  ConstructArgs construct_args;
  auto* construct_cmd = app.add_subcommand("construct", "Emit an explicit construction as a family");
  construct_cmd->add_option("kind", construct_args.kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"block", "tp2", "cross", "caps", "shattered-pairs", "random"}));
  construct_cmd->add_option("--k", construct_args.k, "k (block, tp2)")->capture_default_str();
  construct_cmd->add_option("--r", construct_args.r, "Number of blocks")->capture_default_str();
  construct_cmd->add_option("--m", construct_args.m, "Block size, grid width or point count")
      ->capture_default_str();
  construct_cmd->add_option("--alpha", construct_args.alpha, "alpha (block)")->capture_default_str();
  construct_cmd->add_option("--gamma", construct_args.gamma, "gamma (block)")->capture_default_str();
  construct_cmd->add_option("--pprime", construct_args.p_prime, "p' (block)")->capture_default_str();
  construct_cmd->add_option("--kprime", construct_args.k_prime, "k' (block)")->capture_default_str();
  construct_cmd->add_option("--n", construct_args.n, "n (cross)")->capture_default_str();
  construct_cmd->add_option("--w", construct_args.w, "Branching W (caps)")->capture_default_str();
  construct_cmd->add_option("--d", construct_args.d, "Depth D (caps)")->capture_default_str();
  construct_cmd->add_option("--inconsistency", construct_args.inconsistency, "Row inconsistency (tp2)")
      ->capture_default_str();
  construct_cmd->add_option("--members", construct_args.members, "Members (random)")->capture_default_str();
  construct_cmd->add_option("--ground", construct_args.ground, "Ground size (random)")->capture_default_str();
  construct_cmd->add_option("--size", construct_args.size, "Member size (random)")->capture_default_str();

  SqfArgs sqf_args;
  auto* sqf_cmd = app.add_subcommand("sqf", "Square-free integer systems");
  sqf_cmd->add_option("--system", sqf_args.system, "Formula or G-system JSON file");
  sqf_cmd->add_option("--window", sqf_args.window, "Count in (0, window)")->capture_default_str();
  sqf_cmd->add_option("--tail-prime", sqf_args.tail_prime, "Truncation prime of the certificate")
      ->capture_default_str();
  sqf_cmd->add_option("--params", sqf_args.params, "Random parameter tuples for the experiment");
  sqf_cmd->add_option("--param-range", sqf_args.param_range, "Random shifts lie in [0, range]")
      ->capture_default_str();
  sqf_cmd->add_option("--k", sqf_args.k, "k for the fractional Helly experiment")->capture_default_str();
  sqf_cmd->add_option("--alpha", sqf_args.alpha, "alpha for the experiment")->capture_default_str();
  sqf_cmd->add_option("--dickson", sqf_args.dickson, "Linear forms a:b (comma separated)")
      ->delimiter(',');
  sqf_cmd->add_option("--dickson-bound", sqf_args.dickson_bound, "Primes checked up to")
      ->capture_default_str();
  sqf_cmd->add_flag("--squarefree", sqf_args.squarefree, "Count square-free integers in the window");

  FfArgs ff_args;
  auto* ff_cmd = app.add_subcommand("ff", "Definable families over prime fields");
  ff_cmd->add_option("--config", ff_args.config, "Family spec JSON file")->required();
  ff_cmd->add_option("--p", ff_args.p, "Field characteristic (overrides the config)");
  ff_cmd->add_option("--k", ff_args.k, "Tuple size (default dimension + 1)");
  ff_cmd->add_option("--alpha", ff_args.alpha, "Hypothesis fraction (default 1/2)");
  ff_cmd->add_option("--constant", ff_args.constant, "Error constant C of the measure fits");

  CountArgs count_args;
  auto* count_cmd = app.add_subcommand("count-types", "Count pairwise inconsistent positive types");
  count_cmd->add_option("--structure", count_args.structure, "Finite structure JSON file");
  count_cmd->add_option("--family", count_args.family, "Family JSON file (membership encoding)");
  count_cmd->add_option("--phi", count_args.phi, "Formula phi(x; y) as JSON");
  count_cmd->add_option("--x", count_args.x, "Object variables")->delimiter(',');
  count_cmd->add_option("--y", count_args.y, "Parameter variables")->delimiter(',');
  count_cmd->add_option("--m", count_args.m, "Inconsistency m")->capture_default_str();
  count_cmd->add_option("--k", count_args.k, "Type size k")->capture_default_str();
  count_cmd->add_option("--l", count_args.l, "Parameter set size l (default: whole pool)");
  count_cmd->add_option("--probe", count_args.probe, "Power-saving probe l values")->delimiter(',');
  count_cmd->add_option("--d", count_args.d, "d of the Zarankiewicz exponent")->capture_default_str();
  count_cmd->add_option("--exhaustive-limit", count_args.exhaustive_limit,
                        "Largest number of l-subsets enumerated exhaustively")
      ->capture_default_str();

  std::string batch_config;
  auto* batch_cmd = app.add_subcommand("batch", "Run the jobs of a batch config");
  batch_cmd->add_option("--config", batch_config, "Batch config JSON file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*batch_cmd) return batch(batch_config, common, out, err);

    std::string command;
    Outcome outcome;
    if (*construct_cmd) {
      auto [family, params] = build_construction(construct_args, common);
      Json report = io::family_to_json(
          family, Json{{"construction", construct_args.kind}, {"params", params}, {"seed", common.seed}});
      report["tool"] = tool_json();
      report["seed"] = common.seed;
      report["caps"] = caps_json(common.caps);
      if (!common.no_timing) {
        report["runtime_ms"] = std::chrono::duration<double, std::milli>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
      }
      emit(report, common, out);
      return kExitOk;
    }
    if (*analyze_cmd) {
      command = "analyze";
      outcome = analyze(analyze_args, common);
    } else if (*lp_cmd) {
      command = "lp";
      outcome = lp(lp_family, common);
    } else if (*vc_cmd) {
      command = "vc";
      outcome = vc_command(vc_family, vc_sizes, common);
    } else if (*sqf_cmd) {
      command = "sqf";
      outcome = sqf(sqf_args, common);
    } else if (*ff_cmd) {
      command = "ff";
      outcome = ff(ff_args, common);
    } else {
      command = "count-types";
      outcome = count_types(count_args, common);
    }
    for (const auto& w : common.warnings) err << "warning: " << w << '\n';
    Json report = envelope(command, common, std::move(outcome.result));
    report["exit_code"] = outcome.code;
    if (!common.no_timing) {
      report["runtime_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    emit(report, common, out);
    return outcome.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fhlab::cli
