#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mmdnov/error.hpp"
#include "mmdnov/mmd.hpp"
#include "mmdnov/perm_test.hpp"
#include "mmdnov/report.hpp"
#include "mmdnov/rng.hpp"
#include "mmdnov/study.hpp"
#include "mmdnov/tensor_io.hpp"

namespace mmdnov::cli {
namespace {

using nlohmann::json;

// Flags shared by test, matrix and power.
struct TestFlags {
  std::string kernel = "rbf";
  std::string sigma = "auto";
  std::size_t permutations = protocol::kPermutations;
  double alpha = protocol::kAlpha;
  std::uint64_t seed = 0;
  std::string workers = "auto";
  bool add_one = false;
};

struct Options {
  TestFlags test;
  std::string x, y, manifest, out, csv, format;
  std::size_t cap = protocol::kSampleCap;
  std::string sizes;
  std::size_t trials = protocol::kTrials;
  std::string pairs;
  bool fail_on_reject = false;

  std::string family = "gaussian";
  std::size_t dim = 2;
  std::string mean;
  double scale = 1.0;
  std::size_t n = 0;
};

void add_test_flags(CLI::App* app, TestFlags& f) {
  app->add_option("--kernel", f.kernel, "Kernel family")
      ->check(CLI::IsMember({"rbf", "linear"}))
      ->capture_default_str();
  app->add_option("--sigma", f.sigma, "RBF bandwidth: 'auto' (median heuristic) or a positive number")
      ->capture_default_str();
  app->add_option("--permutations", f.permutations, "Permutation iterations")->capture_default_str();
  app->add_option("--alpha", f.alpha, "Significance level")->capture_default_str();
  app->add_option("--seed", f.seed, "Master seed")->capture_default_str();
  app->add_option("--workers", f.workers, "Worker threads: 'auto' or a count")->capture_default_str();
  app->add_flag("--add-one", f.add_one, "Use the (k+1)/(P+1) p-value instead of k/P");
}

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("invalid " + what + " '" + text + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("invalid " + what + " '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

WorkerCount parse_workers(const std::string& text) {
  if (text == "auto") return WorkerCount::automatic();
  const std::size_t n = parse_count(text, "--workers");
  if (n < 1) throw ConfigError("--workers must be >= 1 or 'auto'");
  return WorkerCount(n);
}

TestConfig make_config(const TestFlags& f) {
  TestConfig cfg;
  if (f.kernel == "linear") {
    cfg.kernel = KernelSpec::linear();
  } else if (f.sigma == "auto") {
    cfg.kernel = KernelSpec::rbf_auto();
  } else {
    cfg.kernel = KernelSpec::rbf(parse_double(f.sigma, "--sigma"));
  }
  cfg.permutations = f.permutations;
  cfg.alpha = f.alpha;
  cfg.seed = f.seed;
  cfg.workers = parse_workers(f.workers);
  cfg.add_one_smoothing = f.add_one;
  cfg.validate();
  return cfg;
}

std::string utc_timestamp() {
  const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Run-dependent fields that determinism comparisons ignore.
json volatile_section(const WorkerCount& workers) {
  return json{{"generated_at", utc_timestamp()}, {"workers", workers.to_string()}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("error while writing '" + path + "'");
}

void emit(const json& doc, const std::string& out_path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    write_text(out_path, text);
  }
}

MatrixFormat input_format(const std::string& path, const std::string& format_flag) {
  return format_flag.empty() ? format_from_extension(path) : parse_matrix_format(format_flag);
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

int run_test(const Options& o, std::ostream& out) {
  const TestConfig cfg = make_config(o.test);
  const EmbeddingMatrix x = read_matrix(o.x, input_format(o.x, o.format));
  const EmbeddingMatrix y = read_matrix(o.y, input_format(o.y, o.format));
  const TestResult r = permutation_test(x, y, cfg);

  json config = to_json(cfg);
  config["inputs"] = json{{"x", o.x}, {"y", o.y}};
  json doc = make_document("test", std::move(config), to_json(r));
  doc["volatile"] = volatile_section(cfg.workers);
  emit(doc, o.out, out);
  return (o.fail_on_reject && r.reject_null) ? kExitRejected : kExitOk;
}

int run_matrix(const Options& o, std::ostream& out) {
  const TestConfig cfg = make_config(o.test);
  const LabeledCorpus corpus = load_corpus(o.manifest);
  const MmdMatrixResult r = mmd_matrix(corpus, cfg, o.cap);

  json config = to_json(cfg);
  config["manifest"] = o.manifest;
  config["cap"] = o.cap;
  json doc = make_document("matrix", std::move(config), to_json(r));
  doc["volatile"] = volatile_section(cfg.workers);
  emit(doc, o.out, out);
  if (!o.csv.empty()) {
    write_text(o.csv, cell_matrix_csv(r.labels, r.mmd));
    write_text(sibling_path(o.csv, ".pvalues"), cell_matrix_csv(r.labels, r.p_values));
  }
  return kExitOk;
}

std::vector<LabelPair> resolve_pairs(const std::string& text, const LabeledCorpus& corpus) {
  if (text.empty()) {
    std::vector<LabelPair> all;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      for (std::size_t j = i + 1; j < corpus.size(); ++j) all.push_back({corpus[i].label, corpus[j].label});
    }
    return all;
  }
  if (auto preset = pair_preset(text)) return *preset;
  std::vector<LabelPair> pairs;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size()) {
      throw ConfigError("invalid pair '" + item + "' (expected label:label)");
    }
    pairs.push_back({item.substr(0, colon), item.substr(colon + 1)});
  }
  return pairs;
}

int run_power(const Options& o, std::ostream& out) {
  const TestConfig cfg = make_config(o.test);
  const LabeledCorpus corpus = load_corpus(o.manifest);
  const auto pairs = resolve_pairs(o.pairs, corpus);

  std::vector<std::size_t> sizes(protocol::kSampleSizes.begin(), protocol::kSampleSizes.end());
  if (!o.sizes.empty()) {
    sizes.clear();
    for (const auto& s : split(o.sizes, ',')) sizes.push_back(parse_count(s, "--sizes entry"));
  }
  const PowerCurveResult r = power_curves(corpus, pairs, sizes, o.trials, cfg, o.cap);

  json config = to_json(cfg);
  config["manifest"] = o.manifest;
  config["cap"] = o.cap;
  json doc = make_document("power", std::move(config), to_json(r));
  doc["volatile"] = volatile_section(cfg.workers);
  emit(doc, o.out, out);
  if (!o.csv.empty()) write_text(o.csv, power_csv(r));
  return kExitOk;
}

int run_synth(const Options& o, std::ostream& out) {
  SynthSpec spec;
  spec.family = parse_synth_family(o.family);
  spec.dim = o.dim;
  spec.scale = o.scale;
  spec.seed = o.test.seed;
  if (o.mean.empty()) {
    spec.means = {std::vector<double>(o.dim, 0.0)};
  } else {
    for (const auto& component : split(o.mean, ';')) {
      std::vector<double> mean;
      for (const auto& v : split(component, ',')) mean.push_back(parse_double(v, "--mean entry"));
      spec.means.push_back(std::move(mean));
    }
  }
  spec.validate();
  const EmbeddingMatrix m = generate_synthetic(spec, o.n);
  const MatrixFormat format = input_format(o.out, o.format);
  write_matrix(m, o.out, format);

  json config{{"family", std::string(to_string(spec.family))},
              {"dim", spec.dim},
              {"means", spec.means},
              {"scale", spec.scale},
              {"seed", spec.seed},
              {"n", o.n},
              {"format", std::string(to_string(format))},
              {"rng", std::string(kRngName)}};
  json result{{"path", o.out}, {"rows", m.rows()}, {"dim", m.dim()}};
  out << make_document("synth", std::move(config), std::move(result)).dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernel two-sample testing of embedding sets with the unbiased MMD statistic", "mmdnov"};
  app.require_subcommand(1);
  Options o;

  auto* test = app.add_subcommand("test", "Permutation test between two embedding matrices");
  test->add_option("--x", o.x, "First sample (.npy or .csv)")->required();
  test->add_option("--y", o.y, "Second sample (.npy or .csv)")->required();
  test->add_option("--format", o.format, "Input format override")->check(CLI::IsMember({"npy", "csv"}));
  add_test_flags(test, o.test);
  test->add_option("--out", o.out, "Result JSON path (default stdout)");
  test->add_flag("--fail-on-reject", o.fail_on_reject, "Exit with status 3 when H0 is rejected");

  auto* matrix = app.add_subcommand("matrix", "Pairwise MMD matrix with diagonal negative controls");
  matrix->add_option("--manifest", o.manifest, "Manifest of <label>\\t<path> lines")->required();
  matrix->add_option("--cap", o.cap, "Rows drawn per label")->capture_default_str();
  add_test_flags(matrix, o.test);
  matrix->add_option("--out", o.out, "Result JSON path (default stdout)");
  matrix->add_option("--csv", o.csv, "MMD matrix CSV; p-values go to <name>.pvalues.csv");

  auto* power = app.add_subcommand("power", "Rejection rate versus sample size");
  power->add_option("--manifest", o.manifest, "Manifest of <label>\\t<path> lines")->required();
  power->add_option("--pairs", o.pairs,
                    "Comma list of label:label, or preset mnist-text / mnist-code (default: all pairs)");
  power->add_option("--sizes", o.sizes, "Comma list of per-side sample sizes")
      ->default_str("4,5,6,7,8,9,10,12,16,24");
  power->add_option("--trials", o.trials, "Trials per (pair, size)")->capture_default_str();
  power->add_option("--cap", o.cap, "Upper bound on rows drawn per side")->capture_default_str();
  add_test_flags(power, o.test);
  power->add_option("--out", o.out, "Result JSON path (default stdout)");
  power->add_option("--csv", o.csv, "Long-form CSV of rates");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic embedding matrix");
  synth->add_option("--family", o.family, "gaussian, moons or mixture")
      ->check(CLI::IsMember({"gaussian", "moons", "mixture"}))
      ->capture_default_str();
  synth->add_option("--dim", o.dim, "Embedding dim")->capture_default_str();
  synth->add_option("--mean", o.mean, "Comma list; mixture components separated by ';' (default zeros)");
  synth->add_option("--scale", o.scale, "Noise standard deviation")->capture_default_str();
  synth->add_option("--n", o.n, "Rows to draw")->required();
  synth->add_option("--seed", o.test.seed, "Seed")->capture_default_str();
  synth->add_option("--out", o.out, "Output matrix path")->required();
  synth->add_option("--format", o.format, "npy or csv (default from extension)")
      ->check(CLI::IsMember({"npy", "csv"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mmdnov: " << e.what() << "\n";
    return kExitUserError;
  }

  try {
    if (*test) return run_test(o, out);
    if (*matrix) return run_matrix(o, out);
    if (*power) return run_power(o, out);
    return run_synth(o, out);
  } catch (const Error& e) {
    err << "mmdnov: " << e.what() << "\n";
    return e.is_user_error() ? kExitUserError : kExitRuntimeError;
  } catch (const std::exception& e) {
    err << "mmdnov: internal error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace mmdnov::cli
