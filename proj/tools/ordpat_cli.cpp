// Command-line front end for the ordpat library.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 warning under --strict.

#include "ordpat/analysis.hpp"
#include "ordpat/flood.hpp"
#include "ordpat/io.hpp"
#include "ordpat/metric.hpp"
#include "ordpat/patterns.hpp"
#include "ordpat/rng.hpp"
#include "ordpat/simulate.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kWarning = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  ordpat::AnalysisConfig config;
  std::string kernel = "bartlett";
  std::string format = "matrix";
  std::string output;
  bool strict = false;
};

// Configuration problems are usage errors, not data errors.
template <typename F>
auto usage_checked(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") file_.emplace(ordpat::open_output(path));
  }
  std::ostream& stream() { return file_ ? static_cast<std::ostream&>(*file_) : std::cout; }

 private:
  std::optional<std::ofstream> file_;
};

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

int report_warnings(const std::vector<std::string>& warnings, bool strict) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  return strict && !warnings.empty() ? kWarning : kOk;
}

ordpat::ClassMatrix load(const std::string& path) {
  if (path.empty()) throw UsageError("--input is required");
  return ordpat::load_class_matrix(path);
}

int cmd_enumerate(const Globals& g) {
  const auto table = usage_checked([&] { return ordpat::enumerate_patterns(g.config.n); });
  Output out(g.output);
  out.stream() << "index,pattern\n";
  for (std::size_t i = 0; i < table.size(); ++i) out.stream() << i << ',' << table[i].to_string() << '\n';
  std::cerr << "n=" << g.config.n << ": " << table.size() << " patterns\n";
  return kOk;
}

int cmd_encode(const Globals& g, const std::vector<double>& values) {
  const ordpat::TiePolicy policy = usage_checked([&] { return ordpat::parse_tie_policy(g.config.tie_policy, g.config.seed); });
  if (values.empty()) throw UsageError("encode needs at least one value");
  const int n = values.size() < static_cast<std::size_t>(g.config.n) ? static_cast<int>(values.size()) : g.config.n;
  const Eigen::Map<const Eigen::VectorXd> series(values.data(), static_cast<Eigen::Index>(values.size()));
  const auto starts = usage_checked([&] { return ordpat::window_starts(series.size(), n, g.config.stride == 1 ? 1 : n); });
  Output out(g.output);
  out.stream() << "start,generalized,classical\n";
  for (const auto j : starts) {
    const auto window = series.segment(j, n);
    ordpat::TiePolicy p = policy;
    if (auto* r = std::get_if<ordpat::RandomizeTies>(&p)) r->seed = ordpat::derive_seed(g.config.seed, 1, static_cast<std::uint64_t>(j));
    const auto classical = ordpat::encode_classical(window, p);
    std::string gen = ordpat::encode_generalized(window).to_string();
    std::string cls = classical ? classical->to_string() : "skipped";
    out.stream() << j << ",\"" << gen << "\",\"" << cls << "\"\n";
  }
  return kOk;
}

int cmd_pairwise(const Globals& g, const std::string& input, const std::string& statistic) {
  usage_checked([&] { ordpat::validate(g.config); return 0; });
  if (g.format != "matrix" && g.format != "long") throw UsageError("--format must be matrix or long");
  const auto matrix = load(input);
  const auto result = ordpat::run_pairwise(g.config, matrix);
  Output out(g.output);
  if (g.format == "long") {
    ordpat::write_pairwise_long(out.stream(), result, g.config.reference);
  } else {
    const Eigen::MatrixXd* m = nullptr;
    if (statistic == "total") m = &result.total_score;
    else if (statistic == "comparison") m = &result.score_comparison;
    else if (statistic == "p") m = &result.p;
    else if (statistic == "q") m = &result.q;
    else if (statistic == "ord") m = &result.ord;
    else throw UsageError("unknown statistic '" + statistic + "'");
    ordpat::write_matrix_csv(out.stream(), result.gauges, *m);
  }
  return report_warnings(result.warnings, g.strict);
}

int cmd_spatial(const Globals& g, const std::string& input, bool all_patterns) {
  const auto matrix = load(input);
  const auto report = ordpat::run_spatial(g.config, matrix, all_patterns);
  Output out(g.output);
  ordpat::write_spatial_table(out.stream(), report);
  if (!report.baseline_exact) std::cerr << "note: baseline estimated by Monte-Carlo\n";
  return report_warnings(report.warnings, g.strict);
}

struct IngarchOptions {
  double beta0 = 2.0;
  std::vector<double> beta;
  std::vector<double> alpha;
  std::size_t length = 1000;
  std::size_t burn_in = 500;
};

ordpat::IngarchSpec make_spec(const IngarchOptions& o, std::uint64_t seed) {
  ordpat::IngarchSpec spec;
  spec.beta0 = o.beta0;
  spec.beta = o.beta;
  spec.alpha = o.alpha;
  spec.length = o.length;
  spec.burn_in = o.burn_in;
  spec.seed = seed;
  usage_checked([&] { ordpat::validate(spec); return 0; });
  return spec;
}

int cmd_benchmark(const Globals& g, const std::string& input, const IngarchOptions& ingarch, int replications,
                  const std::string& table) {
  Output out(g.output);
  if (!input.empty()) {
    const auto matrix = load(input);
    const auto result = ordpat::run_benchmark(g.config, matrix);
    ordpat::write_benchmark_table(out.stream(), result);
    return report_warnings(result.warnings, g.strict);
  }
  const auto spec = make_spec(ingarch, g.config.seed);
  if (table == "ties") {
    const auto result = usage_checked([&] { return ordpat::run_benchmark(g.config, spec, replications); });
    ordpat::write_benchmark_table(out.stream(), result);
    return report_warnings(result.warnings, g.strict);
  }
  const auto scheme = usage_checked([&] { return ordpat::WeightScheme::from_name(g.config.scheme, g.config.n); });
  if (scheme.is_classical()) throw UsageError("coherence benchmark uses generalized schemes");
  std::vector<ordpat::CoherenceRow> rows;
  // one row per feedback coefficient when several are given
  std::vector<std::vector<double>> settings;
  if (ingarch.beta.size() > 1 && ingarch.alpha.empty())
    for (const double b : ingarch.beta) settings.push_back({b});
  else
    settings.push_back(ingarch.beta);
  for (const auto& beta : settings) {
    IngarchOptions o = ingarch;
    o.beta = beta;
    const auto s = make_spec(o, g.config.seed);
    std::string label = "INGARCH beta1=";
    label += beta.empty() ? "none" : format_number(beta.front(), 2);
    rows.push_back({label, usage_checked([&] {
                      return ordpat::coherence_benchmark(s, g.config.n, scheme, replications, false, g.config.threads);
                    })});
  }
  ordpat::write_coherence_table(out.stream(), rows);
  return kOk;
}

int cmd_simulate(const Globals& g, const std::string& model, const IngarchOptions& ingarch, int series,
                 ordpat::FloodEnsembleSpec flood) {
  ordpat::ClassMatrix matrix;
  if (model == "ingarch") {
    if (series < 1) throw UsageError("--series must be positive");
    matrix.classes.resize(static_cast<Eigen::Index>(ingarch.length), series);
    for (int k = 0; k < series; ++k) {
      const auto spec = make_spec(ingarch, ordpat::derive_seed(g.config.seed, 1, static_cast<std::uint64_t>(k)));
      matrix.classes.col(k) = ordpat::ingarch_simulate(spec).values;
      matrix.gauges.push_back("S" + std::to_string(k + 1));
    }
    for (std::size_t t = 0; t < ingarch.length; ++t) matrix.event_ids.push_back(std::to_string(t + 1));
  } else if (model == "flood") {
    flood.seed = g.config.seed;
    matrix = usage_checked([&] { return ordpat::simulate_flood_ensemble(flood); });
  } else {
    throw UsageError("unknown model '" + model + "'");
  }
  Output out(g.output);
  ordpat::write_class_matrix(out.stream(), matrix, model == "ingarch" ? "time" : "event");
  return kOk;
}

int cmd_classify(const Globals& g, const std::vector<std::string>& values) {
  if (values.empty()) throw UsageError("classify needs at least one probability");
  Output out(g.output);
  out.stream() << "probability,class\n";
  for (const auto& v : values) {
    double p = 0.0;
    std::size_t used = 0;
    try {
      p = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size()) throw ordpat::DataError("'" + v + "' is not a probability");
    int cls = 0;
    try {
      cls = ordpat::classify_peak(p);
    } catch (const std::invalid_argument& e) {
      throw ordpat::DataError(e.what());
    }
    out.stream() << v << ',' << cls << '\n';
  }
  return kOk;
}

int cmd_plot_data(const Globals& g, const std::string& input) {
  if (g.output.empty() || g.output == "-") throw UsageError("plot-data needs --output");
  const auto matrix = load(input);
  ordpat::emit_plot_data(matrix, g.config.gauges, g.output);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized ordinal pattern dependence for flood-class series"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  auto& c = g.config;
  app.add_option("--n", c.n, "Pattern length")->capture_default_str();
  app.add_option("--stride", c.stride, "Window stride: 1 (overlapping) or n (disjoint)")->capture_default_str();
  app.add_option("--scheme", c.scheme,
                 "Weight scheme: auto, generalized-short, generalized-long, classical-short, classical-long, exact")
      ->capture_default_str();
  app.add_option("--tie-policy", c.tie_policy, "Tie policy for classical baselines: skip, randomize, first")
      ->capture_default_str();
  app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app.add_option("--level", c.level, "Confidence level")->capture_default_str();
  app.add_option("--kernel", g.kernel, "Long-run variance kernel: bartlett, parzen, qs, truncated")->capture_default_str();
  app.add_option("--bandwidth", c.bandwidth, "Kernel bandwidth (0: ceil(M^(1/3)))")->capture_default_str();
  app.add_option("--block", c.bootstrap_block, "Bootstrap block length (0: ceil(M^(1/3)))")->capture_default_str();
  app.add_option("--bootstrap", c.bootstrap_replicates, "Bootstrap replicates (0 disables)")->capture_default_str();
  app.add_option("--gauges", c.gauges, "Gauge subset, comma separated")->delimiter(',');
  app.add_option("--reference", c.reference, "Keep only pairs with this gauge in long output");
  app.add_option("--format", g.format, "Pairwise output: matrix or long")->capture_default_str();
  app.add_option("--jobs", c.threads, "Worker threads")->capture_default_str();
  app.add_option("-o,--output", g.output, "Output file (default stdout)");
  app.add_flag("--strict", g.strict, "Exit with code 3 when a numerical warning is raised");

  std::string input, statistic = "total", table = "coherence", model = "ingarch";
  std::vector<double> encode_values;
  std::vector<std::string> probabilities;
  bool all_patterns = false;
  int replications = 1000, series = 2;
  IngarchOptions ingarch;
  ordpat::FloodEnsembleSpec flood;

  auto add_ingarch = [&](CLI::App* sub) {
    sub->add_option("--beta0", ingarch.beta0, "INGARCH intercept")->capture_default_str();
    sub->add_option("--beta", ingarch.beta, "Feedback on past counts (comma separated)")->delimiter(',');
    sub->add_option("--alpha", ingarch.alpha, "Feedback on past means (comma separated)")->delimiter(',');
    sub->add_option("--length", ingarch.length, "Series length")->capture_default_str();
    sub->add_option("--burn-in", ingarch.burn_in, "Discarded initial values")->capture_default_str();
  };

  auto* enumerate = app.add_subcommand("enumerate", "List all generalized patterns of length n");
  auto* encode = app.add_subcommand("encode", "Encode a series into window patterns");
  encode->add_option("values", encode_values, "Series values")->required();
  auto* pairwise = app.add_subcommand("pairwise", "Temporal dependence for every gauge pair");
  pairwise->add_option("-i,--input", input, "Class matrix file")->required();
  pairwise->add_option("--statistic", statistic, "Matrix statistic: total, comparison, p, q, ord")->capture_default_str();
  auto* spatial = app.add_subcommand("spatial", "Spatial pattern frequencies against the independence baseline");
  spatial->add_option("-i,--input", input, "Class matrix file")->required();
  spatial->add_flag("--all-patterns", all_patterns, "List unobserved patterns too");
  auto* benchmark = app.add_subcommand("benchmark", "Coherence and tie-handling benchmarks");
  benchmark->add_option("-i,--input", input, "Class matrix file (tie-handling over gauge pairs)");
  benchmark->add_option("--table", table, "Simulation table: coherence or ties")->capture_default_str();
  benchmark->add_option("--replications", replications, "Simulation replications")->capture_default_str();
  add_ingarch(benchmark);
  auto* simulate = app.add_subcommand("simulate", "Write a simulated class matrix");
  simulate->add_option("--model", model, "ingarch or flood")->capture_default_str();
  simulate->add_option("--series", series, "Number of INGARCH series")->capture_default_str();
  simulate->add_option("--events", flood.events, "Flood ensemble events")->capture_default_str();
  simulate->add_option("--stations", flood.gauges, "Flood ensemble gauges")->capture_default_str();
  simulate->add_option("--common-weight", flood.common_weight, "Loading on the common factor")->capture_default_str();
  simulate->add_option("--persistence", flood.persistence, "Lag-one correlation of the common factor")
      ->capture_default_str();
  add_ingarch(simulate);
  auto* classify = app.add_subcommand("classify", "Flood class of peak non-exceedance probabilities");
  classify->add_option("probabilities", probabilities, "Probabilities in [0, 1]")->required();
  auto* plot = app.add_subcommand("plot-data", "Write index and class columns for plotting");
  plot->add_option("-i,--input", input, "Class matrix file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    c.kernel = usage_checked([&] { return ordpat::parse_kernel(g.kernel); });
    if (*enumerate) return cmd_enumerate(g);
    if (*encode) return cmd_encode(g, encode_values);
    if (*pairwise) return cmd_pairwise(g, input, statistic);
    if (*spatial) return cmd_spatial(g, input, all_patterns);
    if (*benchmark) return cmd_benchmark(g, input, ingarch, replications, table);
    if (*simulate) return cmd_simulate(g, model, ingarch, series, flood);
    if (*classify) return cmd_classify(g, probabilities);
    if (*plot) return cmd_plot_data(g, input);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
