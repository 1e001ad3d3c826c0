// Batch front-end: wires the library to files. Every run is fully
// determined by (subcommand, inputs, seed); outputs are plot-ready JSON and
// CSV. See docs/formats.md for the schemas.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ecf/bernstein.hpp"
#include "ecf/dependency_set.hpp"
#include "ecf/ecf_table.hpp"
#include "ecf/io.hpp"
#include "ecf/models.hpp"
#include "ecf/rng.hpp"
#include "ecf/set_function.hpp"
#include "ecf/tm_process.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open output file: " + path);
  out << content;
}

ecf::Json parse_json(const std::string& text, const char* what) {
  try {
    return ecf::Json::parse(text);
  } catch (const ecf::Json::parse_error& err) {
    throw InputError(std::string(what) + ": " + err.what());
  }
}

std::string dump(const ecf::Json& j) { return j.dump(2) + "\n"; }

ecf::EcfTable read_ecf(const std::string& path) {
  return ecf::ecf_from_json(parse_json(read_text(path), "ecf table"));
}

std::vector<ecf::Scalar> parse_number_list(const std::string& text, const char* what) {
  std::vector<ecf::Scalar> out;
  std::stringstream stream(text);
  std::string field;
  while (std::getline(stream, field, ',')) {
    try {
      out.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": cannot parse number '" + field + "'");
    }
  }
  if (out.empty()) throw InputError(std::string(what) + ": empty list");
  return out;
}

ecf::Vector to_vector(const std::vector<ecf::Scalar>& values) {
  ecf::Vector x(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) x[static_cast<Eigen::Index>(i)] = values[i];
  return x;
}

ecf::Json validation_to_json(const ecf::EcfValidation& report, const ecf::GroundSet& ground) {
  ecf::Json violations = ecf::Json::array();
  for (const auto& violation : report.violations) {
    violations.push_back(ecf::Json{{"constraint", violation.constraint},
                                   {"subset", ecf::subset_key(ground, violation.subset)},
                                   {"magnitude", violation.magnitude}});
  }
  return ecf::Json{{"pass", report.pass},
                   {"min_tau", report.min_tau},
                   {"min_tau_subset", ecf::subset_key(ground, report.min_tau_subset)},
                   {"violations", violations}};
}

// Option holder shared by the subcommands; a JSON config file may supply
// any value, explicit flags win.
struct Options {
  std::string input = "-";
  std::string output = "-";
  std::string config_path;
  std::string model;
  std::string sites;
  std::string bernstein;
  std::string combine;
  std::string marginalize;
  std::string x_list;
  std::string eta_list;
  std::string box_lower;
  std::string box_upper;
  std::string vertices_csv;
  int m = 0;
  int q = 8;
  long long n = 10000;
  unsigned long long seed = 0;
  int threads = 0;
  int max_subset_size = 0;
  double tol = ecf::kValidateTol;
  double lambda = 1.0;
  double alpha = 1.0;
  double gamma = 1.0;
  double alpha_combine = 0.5;
  bool maxlinear = false;
  bool trivariate = false;
  bool hr = false;
};

int env_threads() {
  if (const char* env = std::getenv("ECF_TOOLKIT_THREADS")) {
    return std::max(1, std::atoi(env));
  }
  return 1;
}

void apply_config(CLI::App* cmd, Options& opt) {
  if (opt.config_path.empty()) return;
  const ecf::Json config = parse_json(read_text(opt.config_path), "config file");
  if (!config.is_object()) throw InputError("config file: expected a JSON object");
  const auto take = [&](const char* flag, auto& slot) {
    using T = std::decay_t<decltype(slot)>;
    if (!config.contains(flag)) return;
    const CLI::Option* option = cmd->get_option_no_throw(std::string("--") + flag);
    if (option != nullptr && option->count() > 0) return;  // flags override file
    slot = config[flag].get<T>();
  };
  take("input", opt.input);
  take("output", opt.output);
  take("model", opt.model);
  take("sites", opt.sites);
  take("bernstein", opt.bernstein);
  take("combine", opt.combine);
  take("marginalize", opt.marginalize);
  take("x", opt.x_list);
  take("eta", opt.eta_list);
  take("box-lower", opt.box_lower);
  take("box-upper", opt.box_upper);
  take("vertices-csv", opt.vertices_csv);
  take("m", opt.m);
  take("q", opt.q);
  take("n", opt.n);
  take("seed", opt.seed);
  take("threads", opt.threads);
  take("max-subset-size", opt.max_subset_size);
  take("tol", opt.tol);
  take("lambda", opt.lambda);
  take("alpha", opt.alpha);
  take("gamma", opt.gamma);
  take("alpha-combine", opt.alpha_combine);
  take("maxlinear", opt.maxlinear);
  take("trivariate", opt.trivariate);
  take("hr", opt.hr);
}

int resolve_threads_opt(const Options& opt) { return opt.threads > 0 ? opt.threads : env_threads(); }

ecf::GroundSet ground_for_model(const Options& opt, bool needs_coords) {
  if (!opt.sites.empty()) {
    std::istringstream in(read_text(opt.sites));
    ecf::GroundSet ground = ecf::sites_from_csv(in);
    if (needs_coords && !ground.has_coords()) {
      throw InputError("model requires site coordinates (columns x1..xd)");
    }
    return ground;
  }
  if (needs_coords) throw InputError("model requires --sites with coordinates");
  if (opt.m < 1) throw InputError("model requires --m or --sites");
  return ecf::GroundSet(opt.m);
}

int run_validate(const Options& opt) {
  const ecf::EcfTable table = read_ecf(opt.input);
  const ecf::EcfValidation report = ecf::validate_ecf(table, opt.tol);
  write_text(opt.output, dump(validation_to_json(report, table.ground)));
  return report.pass ? kExitOk : kExitValidationFailure;
}

int run_tau(const Options& opt) {
  const ecf::EcfTable table = read_ecf(opt.input);
  ecf::TauTable tau = ecf::compute_tau(table, opt.tol);
  if (!opt.marginalize.empty()) {
    ecf::SubsetMask window = 0;
    std::stringstream stream(opt.marginalize);
    std::string label;
    while (std::getline(stream, label, ',')) {
      window |= ecf::singleton_mask(tau.ground.index_of(label));
    }
    tau = ecf::marginalize_tau(tau, window);
  }
  write_text(opt.output, dump(ecf::tau_to_json(tau)));
  return kExitOk;
}

int run_ecf(const Options& opt) {
  if (opt.model.empty()) throw InputError("ecf: --model is required");
  ecf::Json extra;
  std::optional<ecf::EcfTable> table;
  if (opt.model == "independent") {
    table = ecf::independent_ecf(ground_for_model(opt, false));
  } else if (opt.model == "identical") {
    table = ecf::identical_ecf(ground_for_model(opt, false));
  } else if (opt.model == "sqrt") {
    table = ecf::sqrt_ecf(ground_for_model(opt, false));
  } else if (opt.model == "random") {
    if (opt.m < 1) throw InputError("ecf --model random: --m is required");
    table = ecf::random_valid_ecf(opt.m, opt.q, opt.seed);
  } else if (opt.model == "maxlinear") {
    std::istringstream in(read_text(opt.input));
    table = ecf::ecf_from_spectral_measure(ecf::spectral_measure_from_csv(in));
  } else if (opt.model == "m3box") {
    const ecf::GroundSet ground = ground_for_model(opt, true);
    if (opt.box_lower.empty() || opt.box_upper.empty()) {
      throw InputError("ecf --model m3box: --box-lower and --box-upper are required");
    }
    const ecf::BoxKernel kernel(to_vector(parse_number_list(opt.box_lower, "box-lower")),
                                to_vector(parse_number_list(opt.box_upper, "box-upper")));
    table = ecf::m3_box_ecf(ground, kernel);
  } else if (opt.model == "br") {
    const ecf::GroundSet ground = ground_for_model(opt, true);
    const ecf::VariogramSpec variogram(opt.lambda, opt.alpha);
    ecf::BrMcResult result = ecf::br_ecf_mc(ground, variogram, static_cast<int>(opt.n), opt.seed,
                                            resolve_threads_opt(opt));
    extra = ecf::Json::object();
    ecf::Json raw = ecf::Json::object();
    ecf::Json se = ecf::Json::object();
    for (ecf::SubsetMask subset = 1; subset <= ground.all_sites(); ++subset) {
      const std::string key = ecf::subset_key(ground, subset);
      raw[key] = result.raw_theta[subset];
      se[key] = result.std_error[subset];
    }
    extra["raw_theta"] = raw;
    extra["se"] = se;
    table = std::move(result.ecf);
  } else {
    throw InputError("ecf: unknown model '" + opt.model + "'");
  }
  ecf::Json out = ecf::ecf_to_json(*table);
  if (!extra.is_null()) {
    for (auto& [key, value] : extra.items()) out[key] = value;
  }
  write_text(opt.output, dump(out));
  return kExitOk;
}

int run_simulate(const Options& opt) {
  if (opt.n < 1) throw InputError("simulate: --n must be >= 1");
  ecf::SampleBatch batch = [&] {
    if (opt.maxlinear) {
      std::istringstream in(read_text(opt.input));
      return ecf::simulate_maxlinear(ecf::spectral_measure_from_csv(in), static_cast<int>(opt.n),
                                     opt.seed, resolve_threads_opt(opt));
    }
    const ecf::EcfTable table = read_ecf(opt.input);
    const ecf::EcfValidation report = ecf::validate_ecf(table, opt.tol);
    if (!report.pass) {
      std::cout << dump(validation_to_json(report, table.ground));
      throw InputError("simulate: input table is not a valid ECF");
    }
    const ecf::TmProcess process(ecf::compute_tau(table, opt.tol), opt.tol);
    return ecf::simulate_tm(process, static_cast<int>(opt.n), opt.seed, resolve_threads_opt(opt));
  }();
  write_text(opt.output, ecf::sample_batch_to_csv(batch));
  if (opt.output != "-") {
    write_text(opt.output + ".meta.json", dump(ecf::sample_metadata(batch)));
  }
  return kExitOk;
}

int run_estimate(const Options& opt) {
  std::istringstream in(read_text(opt.input));
  const ecf::SampleBatch batch = ecf::sample_batch_from_csv(in);
  const int m = batch.ground.size();
  const int cap = opt.max_subset_size > 0 ? std::min(opt.max_subset_size, m) : m;
  ecf::Json theta = ecf::Json::object();
  ecf::Json se = ecf::Json::object();
  for (ecf::SubsetMask subset = 1; subset <= batch.ground.all_sites(); ++subset) {
    if (ecf::subset_size(subset) > cap) continue;
    const ecf::EcfEstimate estimate = ecf::empirical_ecf(batch, subset);
    const std::string key = ecf::subset_key(batch.ground, subset);
    theta[key] = estimate.value;
    se[key] = estimate.std_error;
  }
  write_text(opt.output, dump(ecf::Json{{"labels", batch.ground.labels()},
                                        {"n", batch.n()},
                                        {"max_subset_size", cap},
                                        {"theta", theta},
                                        {"se", se}}));
  return kExitOk;
}

int run_transform(const Options& opt) {
  const ecf::EcfTable table = read_ecf(opt.input);
  const ecf::EcfValidation report = ecf::validate_ecf(table, opt.tol);
  if (!report.pass) {
    std::cout << dump(validation_to_json(report, table.ground));
    return kExitValidationFailure;
  }
  std::optional<ecf::EcfTable> result;
  if (!opt.bernstein.empty()) {
    result = ecf::bernstein_transform_ecf(table, ecf::parse_bernstein(opt.bernstein), opt.tol);
  } else if (!opt.combine.empty()) {
    result = ecf::convex_combine(table, read_ecf(opt.combine), opt.alpha_combine);
  } else {
    throw InputError("transform: need --bernstein or --combine");
  }
  write_text(opt.output, dump(ecf::ecf_to_json(*result)));
  return kExitOk;
}

int run_depset(const Options& opt) {
  const ecf::EcfTable table = read_ecf(opt.input);
  const ecf::EcfValidation report = ecf::validate_ecf(table, opt.tol);
  if (!report.pass) {
    std::cout << dump(validation_to_json(report, table.ground));
    return kExitValidationFailure;
  }
  const ecf::DepSetPolytope poly = ecf::dep_set_polytope(table);
  ecf::Json out = ecf::polytope_to_json(poly);
  // Support values at the subset indicators; each equals theta(A).
  const ecf::TmProcess process(ecf::compute_tau(table, opt.tol), opt.tol);
  ecf::Json support = ecf::Json::object();
  for (ecf::SubsetMask subset = 1; subset <= table.ground.all_sites(); ++subset) {
    ecf::Vector direction = ecf::Vector::Zero(table.ground.size());
    for (ecf::SubsetMask rest = subset; rest != 0; rest &= rest - 1) {
      direction[ecf::lowest_site(rest)] = 1.0;
    }
    support[ecf::subset_key(table.ground, subset)] = ecf::support_function(poly, direction);
  }
  out["support_at_indicators"] = support;
  write_text(opt.output, dump(out));
  if (!opt.vertices_csv.empty()) write_text(opt.vertices_csv, ecf::vertices_to_csv(poly));
  return kExitOk;
}

int run_bound(const Options& opt) {
  if (opt.x_list.empty()) throw InputError("bound: --x is required");
  const ecf::Vector x = to_vector(parse_number_list(opt.x_list, "x"));
  ecf::Json out;
  if (opt.trivariate) {
    if (opt.eta_list.empty()) throw InputError("bound --trivariate: --eta is required");
    const auto etas = parse_number_list(opt.eta_list, "eta");
    if (etas.size() != 3) throw InputError("bound --trivariate: --eta needs rs,st,rt");
    const ecf::Scalar log_bound =
        ecf::trivariate_bound_from_bivariate_log(etas[0], etas[1], etas[2], x);
    out = ecf::Json{{"kind", "trivariate_from_bivariate"},
                    {"log_probability", log_bound},
                    {"probability", std::exp(log_bound)}};
  } else if (opt.hr) {
    if (x.size() != 2) throw InputError("bound --hr: --x needs two coordinates");
    const ecf::Scalar neg_log = ecf::hr_bivariate_neg_log_cdf(opt.gamma, x[0], x[1]);
    out = ecf::Json{{"kind", "husler_reiss_exact"},
                    {"log_probability", -neg_log},
                    {"probability", std::exp(-neg_log)}};
  } else {
    const ecf::EcfTable table = read_ecf(opt.input);
    const ecf::EcfValidation report = ecf::validate_ecf(table, opt.tol);
    if (!report.pass) {
      std::cout << dump(validation_to_json(report, table.ground));
      return kExitValidationFailure;
    }
    const ecf::Scalar log_bound = ecf::fdd_lower_bound_log(table, x);
    out = ecf::Json{{"kind", "fdd_lower_bound"},
                    {"log_probability", log_bound},
                    {"probability", std::exp(log_bound)}};
  }
  write_text(opt.output, dump(out));
  return kExitOk;
}

int run_check(const Options& opt) {
  const ecf::EcfTable table = read_ecf(opt.input);
  const int m = table.ground.size();
  ecf::Json checks = ecf::Json::array();
  bool all_pass = true;
  const auto record = [&](const std::string& name, bool pass, ecf::Scalar metric) {
    checks.push_back(ecf::Json{{"name", name}, {"pass", pass}, {"metric", metric}});
    all_pass = all_pass && pass;
  };

  const ecf::EcfValidation report = ecf::validate_ecf(table, opt.tol);
  record("validate", report.pass, report.min_tau);
  if (!report.pass) {
    ecf::Json out = ecf::Json{{"pass", false}, {"checks", checks}};
    out["diagnostics"] = validation_to_json(report, table.ground);
    write_text(opt.output, dump(out));
    return kExitValidationFailure;
  }

  const ecf::TauTable tau = ecf::compute_tau(table, opt.tol);
  const ecf::EcfTable roundtrip = ecf::ecf_from_tau(tau, opt.tol);
  const ecf::Scalar roundtrip_err =
      (roundtrip.theta.values() - table.theta.values()).abs().maxCoeff();
  record("tau_roundtrip", roundtrip_err <= 1e-12, roundtrip_err);

  ecf::Scalar row_err = 0.0;
  for (int i = 0; i < m; ++i) {
    ecf::Scalar row = 0.0;
    for (ecf::SubsetMask subset = 1; subset <= table.ground.all_sites(); ++subset) {
      if (ecf::subset_contains(subset, i)) row += tau(subset);
    }
    row_err = std::max(row_err, std::abs(row - 1.0));
  }
  record("tau_row_sums", row_err <= 1e-12, row_err);

  if (m >= 2) {
    ecf::Scalar marg_err = 0.0;
    for (int drop = 0; drop < m; ++drop) {
      const ecf::SubsetMask window = table.ground.all_sites() & ~ecf::singleton_mask(drop);
      const ecf::TauTable direct = ecf::compute_tau(ecf::restrict_ecf(table, window), opt.tol);
      const ecf::TauTable marginal = ecf::marginalize_tau(tau, window);
      marg_err = std::max(marg_err,
                          (direct.tau.values() - marginal.tau.values()).abs().maxCoeff());
    }
    record("marginal_consistency", marg_err <= 1e-12, marg_err);
  }

  {
    const std::vector<ecf::BernsteinFunction> kinds = {ecf::BernsteinFunction::log1p(),
                                                       ecf::BernsteinFunction::power(0.5),
                                                       ecf::BernsteinFunction::neg_power(-1.0)};
    ecf::Scalar min_slack = std::numeric_limits<ecf::Scalar>::infinity();
    const ecf::SubsetMask full = table.ground.all_sites();
    if (m <= 5) {
      for (const auto& g : kinds) {
        for (ecf::SubsetMask a = 1; a <= full; ++a) {
          for (ecf::SubsetMask b = 1; b <= full; ++b) {
            for (ecf::SubsetMask c = 1; c <= full; ++c) {
              min_slack = std::min(min_slack, ecf::triangle_check(table, g, a, b, c).slack);
            }
          }
        }
      }
    } else {
      const ecf::CounterRng rng(12345, 0);
      for (std::uint64_t i = 0; i < 2000; ++i) {
        const auto pick = [&](std::uint64_t c) {
          return static_cast<ecf::SubsetMask>(1 + rng.bits(c) % full);
        };
        const auto& g = kinds[i % kinds.size()];
        min_slack = std::min(
            min_slack, ecf::triangle_check(table, g, pick(3 * i), pick(3 * i + 1), pick(3 * i + 2))
                           .slack);
      }
    }
    record("triangle_inequalities", min_slack >= -opt.tol, min_slack);
  }

  if (m <= 5) {
    const ecf::DepSetPolytope poly = ecf::dep_set_polytope(table);
    const ecf::TmProcess process(tau, opt.tol);
    const ecf::CounterRng rng(54321, 0);
    ecf::Scalar max_err = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      ecf::Vector direction(m);
      for (int j = 0; j < m; ++j) {
        direction[j] = rng.uniform(i * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(j));
      }
      max_err = std::max(max_err, std::abs(ecf::support_function(poly, direction) -
                                           ecf::stable_tail_dependence(process, direction)));
    }
    record("polytope_support_equality", max_err <= 1e-9, max_err);
  }

  {
    const ecf::TmProcess process(tau, opt.tol);
    ecf::Vector x = ecf::Vector::Constant(m, 1.0);
    for (int i = 0; i < m; ++i) x[i] = 0.5 + i;
    const ecf::Scalar left = ecf::neg_log_cdf(process, ecf::Vector(2.0 * x));
    const ecf::Scalar right = ecf::neg_log_cdf(process, x) / 2.0;
    record("cdf_homogeneity", left == right, std::abs(left - right));
  }

  write_text(opt.output, dump(ecf::Json{{"pass", all_pass}, {"checks", checks}}));
  return all_pass ? kExitOk : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal coefficient toolkit: validate ECFs, build and simulate the "
               "parameterized max-stable process, transform tables, and compute "
               "dependency-set polytopes and sharp distribution bounds"};
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", opt.input, "Input path ('-' = stdin)");
    cmd->add_option("--output", opt.output, "Output path ('-' = stdout)");
    cmd->add_option("--config", opt.config_path, "JSON config file (flags override it)");
    cmd->add_option("--tol", opt.tol, "Validation tolerance");
    cmd->add_option("--threads", opt.threads, "Worker cap (env ECF_TOOLKIT_THREADS as fallback)");
    return cmd;
  };

  CLI::App* validate = add_common(app.add_subcommand("validate", "Diagnose an ECF table"));
  CLI::App* tau = add_common(app.add_subcommand("tau", "Spectral weights of an ECF table"));
  tau->add_option("--marginalize", opt.marginalize, "Comma-separated labels of the sub-window");
  CLI::App* ecf_cmd = add_common(app.add_subcommand("ecf", "Generate a model ECF table"));
  ecf_cmd->add_option("--model", opt.model,
                      "independent|identical|sqrt|random|m3box|br|maxlinear");
  ecf_cmd->add_option("--m", opt.m, "Number of sites (coordinate-free models)");
  ecf_cmd->add_option("--q", opt.q, "Number of atoms for --model random");
  ecf_cmd->add_option("--seed", opt.seed, "Random seed");
  ecf_cmd->add_option("--n", opt.n, "Monte Carlo replicates for --model br");
  ecf_cmd->add_option("--sites", opt.sites, "Site CSV (label,x1,...,xd)");
  ecf_cmd->add_option("--lambda", opt.lambda, "Variogram scale");
  ecf_cmd->add_option("--alpha", opt.alpha, "Variogram exponent");
  ecf_cmd->add_option("--box-lower", opt.box_lower, "Box kernel lower corner (comma list)");
  ecf_cmd->add_option("--box-upper", opt.box_upper, "Box kernel upper corner (comma list)");
  CLI::App* simulate = add_common(app.add_subcommand("simulate", "Exact max-linear sampling"));
  simulate->add_option("--n", opt.n, "Replicates");
  simulate->add_option("--seed", opt.seed, "Random seed");
  simulate->add_flag("--maxlinear", opt.maxlinear, "Input is a spectral-measure CSV");
  CLI::App* estimate = add_common(app.add_subcommand("estimate", "Empirical ECF of a sample CSV"));
  estimate->add_option("--max-subset-size", opt.max_subset_size, "Largest subset size estimated");
  CLI::App* transform = add_common(app.add_subcommand("transform", "Bernstein transform or convex combination"));
  transform->add_option("--bernstein", opt.bernstein,
                        "log1p | pow:a | negpow:a | affine:c,b | mix:c,b,[w:lambda,...]");
  transform->add_option("--combine", opt.combine, "Second table for convex combination");
  transform->add_option("--alpha-combine", opt.alpha_combine, "Weight of the first table");
  CLI::App* depset = add_common(app.add_subcommand("depset", "Dependency-set polytope"));
  depset->add_option("--vertices-csv", opt.vertices_csv, "Also write vertices as CSV");
  CLI::App* bound = add_common(app.add_subcommand("bound", "Sharp lower bounds on the c.d.f."));
  bound->add_option("--x", opt.x_list, "Evaluation point (comma list)");
  bound->add_flag("--trivariate", opt.trivariate, "Trivariate bound from bivariate etas");
  bound->add_option("--eta", opt.eta_list, "eta_rs,eta_st,eta_rt for --trivariate");
  bound->add_flag("--hr", opt.hr, "Exact bivariate Husler-Reiss probability");
  bound->add_option("--gamma", opt.gamma, "Variogram value for --hr");
  CLI::App* check = add_common(app.add_subcommand("check", "Property suite on an ECF table"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (validate->parsed()) { apply_config(validate, opt); return run_validate(opt); }
    if (tau->parsed()) { apply_config(tau, opt); return run_tau(opt); }
    if (ecf_cmd->parsed()) { apply_config(ecf_cmd, opt); return run_ecf(opt); }
    if (simulate->parsed()) { apply_config(simulate, opt); return run_simulate(opt); }
    if (estimate->parsed()) { apply_config(estimate, opt); return run_estimate(opt); }
    if (transform->parsed()) { apply_config(transform, opt); return run_transform(opt); }
    if (depset->parsed()) { apply_config(depset, opt); return run_depset(opt); }
    if (bound->parsed()) { apply_config(bound, opt); return run_bound(opt); }
    if (check->parsed()) { apply_config(check, opt); return run_check(opt); }
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
