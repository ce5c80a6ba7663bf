#include "tailsep/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "tailsep/baseline.hpp"
#include "tailsep/conditions.hpp"
#include "tailsep/csv_io.hpp"
#include "tailsep/error.hpp"
#include "tailsep/fitting.hpp"
#include "tailsep/format.hpp"
#include "tailsep/mc_harness.hpp"
#include "tailsep/separators.hpp"
#include "tailsep/tail_tests.hpp"

namespace tailsep::cli {

namespace {

using nlohmann::json;

double default_b(const std::string& separator, TestKind test) {
  const bool hat = test == TestKind::location_scale_free;
  if (separator == "w-lw") return hat ? 3.5 : 1.8;
  if (separator == "lw-rv") return hat ? 1.1 : 0.6;
  return 1.0;
}

// NaN and infinities are not valid JSON numbers.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
  if (!file) throw InputError("write failed for '" + path + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<double> load(const std::string& input, const std::string& column) {
  if (input.empty()) throw InputError("--input is required");
  return read_csv_column_file(input, column);
}

std::vector<double> exceedances(const std::vector<double>& data, std::optional<double> threshold) {
  if (!threshold) return data;
  std::vector<double> out;
  for (double v : data) {
    if (v > *threshold) out.push_back(v - *threshold);
  }
  if (out.empty()) throw InputError("no observations above the threshold");
  return out;
}

json fit_json(const FitResult& f) {
  json j;
  j["model"] = fit_model_name(f.model);
  switch (f.model) {
    case FitModel::exponential: j["rate"] = number(f.rate); break;
    case FitModel::weibull2:
      j["shape"] = number(f.shape);
      j["rate"] = number(f.rate);
      break;
    case FitModel::gpd:
      j["shape"] = number(f.shape);
      j["scale"] = number(f.scale);
      break;
  }
  j["log_likelihood"] = number(f.log_likelihood);
  j["n"] = f.n;
  j["iterations"] = f.iterations;
  return j;
}

json report_json(const ConditionReport& r, const std::string& h, const std::string& g) {
  json j;
  j["condition"] = condition_name(r.condition);
  j["h"] = h;
  j["g"] = g;
  j["parameter"] = r.parameter;
  j["holds"] = r.holds;
  j["worst_margin"] = number(r.worst_margin);
  j["witness_t"] = number(r.witness_t);
  j["witness_c"] = number(r.witness_c);
  j["t_range"] = {r.t_grid.front(), r.t_grid.back(), r.t_grid.size()};
  if (!r.c_grid.empty()) j["c_range"] = {r.c_grid.front(), r.c_grid.back(), r.c_grid.size()};
  return j;
}

struct Options {
  std::string input;
  std::string column = "0";
  std::optional<std::size_t> k;
  std::string k_grid;
  double alpha = 0.05;
  std::optional<double> b;
  std::optional<double> gamma;
  std::string side;
  std::uint64_t seed = 1;
  std::optional<std::size_t> population_n;
  std::optional<double> threshold;
  std::string out;
  std::string format;
  std::string test = "location-scale-free";
  std::string separator = "w-lw";
  std::string dist = "weibull(2/3,1)";
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::string preset;
  std::string model = "all";
  std::string h;
  std::string g;
  double delta = 0.0;
  double epsilon = 0.1;
  std::string kind = "c-delta";
  std::string alphas = "0.01,0.05,0.1";
  std::optional<double> fixed_shape;
  unsigned threads = 0;
  std::size_t calibration_m = 2000;
  double t_min = 1e6;
  double t_max = 1e14;
  std::size_t points = 40;
};

SeparatorCdf make_separator(const Options& o, TestKind test) {
  const double b = o.b.value_or(default_b(o.separator, test));
  return parse_separator(o.separator, b, o.gamma);
}

Side resolve_side(const Options& o, TestKind test) {
  if (!o.side.empty()) return parse_side(o.side);
  if (test == TestKind::hasofer_wang) return default_side(BaselineKind::hasofer_wang);
  if (test == TestKind::ratio) return default_side(BaselineKind::ratio);
  return Side::right;
}

int cmd_test(const Options& o, std::ostream& out) {
  if (!o.k) throw InputError("--k is required");
  const std::size_t k = *o.k;
  const TestKind test = parse_test(o.test);
  std::vector<double> data = load(o.input, o.column);
  if (o.threshold) {
    std::erase_if(data, [t = *o.threshold](double v) { return !(v > t); });
    // the threshold itself plays the role of X_(N-m)
    data.push_back(*o.threshold);
  }
  const SortedSample sample = o.population_n ? SortedSample(data, *o.population_n) : SortedSample(data);
  const Side side = resolve_side(o, test);

  json j;
  j["test"] = test_name(test);
  if (test == TestKind::scale_free || test == TestKind::location_scale_free) {
    const SeparatorCdf f0 = make_separator(o, test);
    const TestOutcome r = test == TestKind::scale_free ? scale_free_test(sample, k, f0, o.alpha, side)
                                                       : location_scale_free_test(sample, k, f0, o.alpha, side);
    j["separator"] = f0.describe();
    j["statistic"] = number(r.statistic);
    j["score"] = number(r.score);
    j["sigma"] = number(r.sigma);
    j["threshold"] = number(r.threshold);
    j["p_value"] = number(r.p_value);
    j["reject"] = r.reject;
  } else {
    const BaselineKind kind = test == TestKind::hasofer_wang ? BaselineKind::hasofer_wang : BaselineKind::ratio;
    const double s = baseline_statistic(kind, sample, k);
    // Both statistics only see spacings of the top k, so k + 1 exponential draws suffice.
    const std::size_t m = o.m.value_or(o.calibration_m);
    double critical = side == Side::right ? -HUGE_VAL : HUGE_VAL;
    if (o.alpha < 1.0) {
      const auto table = calibrate_critical_values(kind, {o.alpha}, {k}, k + 1, m, o.seed, side, o.threads);
      critical = table.critical_value(o.alpha, k);
    }
    j["statistic"] = number(s);
    j["critical_value"] = number(critical);
    j["calibration_m"] = m;
    j["reject"] = side == Side::right ? s > critical : s < critical;
  }
  j["alpha"] = o.alpha;
  j["side"] = side_name(side);
  j["k"] = k;
  j["n"] = sample.n();
  j["observed"] = sample.observed();
  emit(dump(j), o.out, out);
  return kExitOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  const auto x = exceedances(load(o.input, o.column), o.threshold);
  json j;
  j["n"] = x.size();
  j["threshold"] = o.threshold ? json(*o.threshold) : json(nullptr);
  json fits = json::array();
  const bool all = o.model == "all";
  if (!all && o.model != "exponential" && o.model != "weibull2" && o.model != "gpd") {
    throw InputError("unknown model '" + o.model + "'");
  }
  if (all || o.model == "exponential") fits.push_back(fit_json(fit_exponential(x)));
  if (all || o.model == "weibull2") fits.push_back(fit_json(fit_weibull2(x, o.fixed_shape)));
  if (all || o.model == "gpd") fits.push_back(fit_json(fit_gpd(x)));
  j["fits"] = fits;
  emit(dump(j), o.out, out);
  return kExitOk;
}

int cmd_qq(const Options& o, std::ostream& out) {
  const auto x = exceedances(load(o.input, o.column), o.threshold);
  const auto rows = qq_table(x, fit_gpd(x), fit_weibull2(x, o.fixed_shape));
  if (o.format == "json") {
    json j = json::array();
    for (const auto& r : rows) {
      j.push_back({{"exp_quantile", r.exp_quantile}, {"empirical", r.empirical}, {"gpd", r.gpd}, {"weibull", r.weibull}});
    }
    emit(dump(j), o.out, out);
    return kExitOk;
  }
  std::ostringstream s;
  s << "exp_quantile,empirical,gpd,weibull\n";
  for (const auto& r : rows) {
    s << format_double(r.exp_quantile) << ',' << format_double(r.empirical) << ',' << format_double(r.gpd) << ','
      << format_double(r.weibull) << '\n';
  }
  emit(s.str(), o.out, out);
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  ExperimentSpec spec;
  std::string grid = "10:10:1000";
  if (o.preset == "desk") {
    spec.n = 2000;
    spec.m = 200;
    grid = "5:5:500";
  } else if (o.preset == "full" || o.preset.empty()) {
    spec.n = 5000;
    spec.m = 1000;
  } else {
    throw InputError("unknown preset '" + o.preset + "'");
  }
  if (o.n) spec.n = *o.n;
  if (o.m) spec.m = *o.m;
  if (!o.k_grid.empty()) grid = o.k_grid;
  spec.k_grid = parse_k_grid(grid);
  spec.test = parse_test(o.test);
  if (spec.test == TestKind::scale_free || spec.test == TestKind::location_scale_free) {
    spec.separator = make_separator(o, spec.test);
  }
  if (o.dist == "f0") {
    if (!spec.separator) throw InputError("--dist f0 needs a separator test");
    spec.source = *spec.separator;
  } else {
    spec.source = parse_distribution(o.dist);
  }
  spec.alpha = o.alpha;
  spec.side = resolve_side(o, spec.test);
  spec.seed = o.seed;
  spec.threads = o.threads;
  spec.calibration_m = o.calibration_m;
  const RejectionCurve curve = run_rejection_curve(spec);
  emit(o.format == "json" ? dump(curve_to_json(curve)) : curve_to_csv(curve), o.out, out);
  return kExitOk;
}

TailFunctions tail_of(const std::string& token, const Options& o) {
  if (token == "w-lw" || token == "lw-rv" || token == "exp") {
    const double b = o.b.value_or(default_b(token, TestKind::scale_free));
    return tail_functions(parse_separator(token, b, std::nullopt));
  }
  return tail_functions(parse_distribution(token));
}

int cmd_check(const Options& o, std::ostream& out) {
  if (o.h.empty() || o.g.empty()) throw InputError("--h and --g are required");
  const TailFunctions h = tail_of(o.h, o);
  const TailFunctions g = tail_of(o.g, o);
  const auto t_grid = log_grid(o.t_min, o.t_max, o.points);
  const auto c_grid = default_c_grid();
  ConditionReport report;
  if (o.kind == "c-delta") {
    report = check_C_delta(h.quantile, g.quantile, o.delta, t_grid, c_grid);
  } else if (o.kind == "prop1") {
    report = check_prop1(h, g, o.delta, t_grid, c_grid);
  } else if (o.kind == "b") {
    // x grid: quantiles of H over the t window
    std::vector<double> x_grid;
    for (double t : t_grid) x_grid.push_back(h.quantile(t));
    report = check_B_condition(h.log_survival, g.log_survival, o.epsilon, x_grid);
  } else {
    throw InputError("unknown condition kind '" + o.kind + "'");
  }
  emit(dump(report_json(report, o.h, o.g)), o.out, out);
  return kExitOk;
}

int cmd_calibrate(const Options& o, std::ostream& out) {
  const TestKind test = parse_test(o.test);
  if (test != TestKind::hasofer_wang && test != TestKind::ratio) {
    throw InputError("calibrate supports --test hasofer-wang or ratio");
  }
  const BaselineKind kind = test == TestKind::hasofer_wang ? BaselineKind::hasofer_wang : BaselineKind::ratio;
  std::vector<double> alphas;
  std::stringstream in(o.alphas);
  std::string item;
  while (std::getline(in, item, ',')) alphas.push_back(parse_double(item));
  const auto grid = parse_k_grid(o.k_grid.empty() ? "10:10:1000" : o.k_grid);
  const std::size_t n = o.n.value_or(5000);
  const std::size_t m = o.m.value_or(10000);
  const auto table = calibrate_critical_values(kind, alphas, grid, n, m, o.seed, resolve_side(o, test), o.threads);
  if (o.format == "json") {
    json j;
    j["test"] = baseline_name(kind);
    j["side"] = side_name(table.side);
    j["n"] = n;
    j["m"] = m;
    j["seed"] = o.seed;
    j["alphas"] = alphas;
    j["k"] = grid;
    j["values"] = table.values;
    emit(dump(j), o.out, out);
  } else {
    emit(to_csv(table), o.out, out);
  }
  return kExitOk;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  return dynamic_cast<const NonConvergence*>(&e) != nullptr ? kExitNonConvergence : kExitInput;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tail-class separation tests for heavy and light tailed samples"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Write output to this file instead of stdout");
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--seed", o.seed, "RNG seed");
    c->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  };
  auto input = [&](CLI::App* c) {
    c->add_option("--input", o.input, "Headered CSV file");
    c->add_option("--column", o.column, "Column name or 0-based index");
    c->add_option("--threshold", o.threshold, "Threshold");
  };
  auto separator = [&](CLI::App* c) {
    c->add_option("--test", o.test, "scale-free | location-scale-free | hasofer-wang | ratio");
    c->add_option("--separator", o.separator, "w-lw | lw-rv | exp | distribution token");
    c->add_option("--b", o.b, "Separator constant b");
    c->add_option("--gamma", o.gamma, "Override the separator's extreme value index");
    c->add_option("--alpha", o.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    c->add_option("--side", o.side, "right | left");
  };

  auto* test = app.add_subcommand("test", "Apply a test to one sample");
  common(test);
  input(test);
  separator(test);
  test->add_option("--k", o.k, "Number of upper order statistics");
  test->add_option("--population-n", o.population_n, "Population size when only the upper tail is observed");
  test->add_option("--m", o.m, "Calibration replications for the baseline tests");

  auto* fit = app.add_subcommand("fit", "Maximum likelihood fits of exceedances");
  common(fit);
  input(fit);
  fit->add_option("--model", o.model, "all | exponential | weibull2 | gpd");
  fit->add_option("--fixed-shape", o.fixed_shape, "Hold the Weibull shape fixed");

  auto* qq = app.add_subcommand("qq", "Q-Q table against exponential quantiles");
  common(qq);
  input(qq);
  qq->add_option("--fixed-shape", o.fixed_shape, "Hold the Weibull shape fixed");

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo rejection rates over k");
  common(sim);
  separator(sim);
  sim->add_option("--dist", o.dist, "Sampling distribution, e.g. lognormal(0,1), or f0");
  sim->add_option("--n", o.n, "Sample size");
  sim->add_option("--m", o.m, "Replications");
  sim->add_option("--k-grid", o.k_grid, "start:step:end or comma list");
  sim->add_option("--preset", o.preset, "desk | full");
  sim->add_option("--calibration-m", o.calibration_m, "Calibration replications for baseline tests");

  auto* check = app.add_subcommand("check-separability", "Grid check of tail-ordering conditions");
  check->set_help_flag("--help", "Print this help message and exit");
  common(check);
  check->add_option("--h", o.h, "Lighter-tailed cdf (w-lw, lw-rv, exp or distribution)");
  check->add_option("--g", o.g, "Heavier-tailed cdf");
  check->add_option("--b", o.b, "b for separator tokens");
  check->add_option("--kind", o.kind, "c-delta | prop1 | b");
  check->add_option("--delta", o.delta, "delta");
  check->add_option("--epsilon", o.epsilon, "epsilon for the B-condition");
  check->add_option("--t-min", o.t_min, "Smallest t");
  check->add_option("--t-max", o.t_max, "Largest t");
  check->add_option("--points", o.points, "t grid points");

  auto* cal = app.add_subcommand("calibrate", "Critical values of the baseline tests");
  common(cal);
  cal->add_option("--test", o.test, "hasofer-wang | ratio")->required();
  cal->add_option("--alpha", o.alphas, "Comma separated levels");
  cal->add_option("--k-grid", o.k_grid, "start:step:end or comma list");
  cal->add_option("--n", o.n, "Sample size");
  cal->add_option("--m", o.m, "Replications");
  cal->add_option("--side", o.side, "right | left");

  std::vector<std::string> argv_store{"tailsep"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*test) return cmd_test(o, out);
    if (*fit) return cmd_fit(o, out);
    if (*qq) return cmd_qq(o, out);
    if (*sim) return cmd_simulate(o, out);
    if (*check) return cmd_check(o, out);
    if (*cal) return cmd_calibrate(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitInput;
}

}  // namespace tailsep::cli
