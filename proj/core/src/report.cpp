#include "mmdnov/report.hpp"

#include <charconv>

#include "mmdnov/rng.hpp"

namespace mmdnov {
namespace {

using nlohmann::json;

json cell(const Cell& c) { return c ? json(*c) : json(nullptr); }

json cells(const CellMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& c : row) r.push_back(cell(c));
    out.push_back(std::move(r));
  }
  return out;
}

std::string shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Labels are quoted only when they contain CSV metacharacters.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

json to_json(const KernelSpec& spec) {
  json out{{"family", std::string(to_string(spec.family()))}};
  if (spec.family() == KernelFamily::kRbf) {
    if (spec.is_auto()) {
      out["sigma"] = "auto";
    } else {
      out["sigma"] = std::get<FixedSigma>(spec.bandwidth()).sigma;
    }
  }
  return out;
}

json to_json(const TestConfig& cfg) {
  return json{{"kernel", to_json(cfg.kernel)},
              {"permutations", cfg.permutations},
              {"alpha", cfg.alpha},
              {"seed", cfg.seed},
              {"add_one_smoothing", cfg.add_one_smoothing},
              {"rng", std::string(kRngName)}};
}

json to_json(const TestResult& r) {
  json ci = nullptr;
  if (r.ci) ci = json{{"lower", r.ci->lower}, {"upper", r.ci->upper}};
  return json{{"mmd2_observed", r.mmd2_observed},
              {"p_value", r.p_value},
              {"reject_null", r.reject_null},
              {"ci", std::move(ci)},
              {"sigma_used", r.sigma_used ? json(*r.sigma_used) : json(nullptr)},
              {"valid_permutations", r.valid_permutations},
              {"m", r.m},
              {"n", r.n},
              {"seed", r.config_echo.seed},
              {"kernel", to_json(r.config_echo.kernel)},
              {"alpha", r.config_echo.alpha},
              {"permutations", r.config_echo.permutations}};
}

json to_json(const MmdMatrixResult& r) {
  return json{{"labels", r.labels},
              {"mmd", cells(r.mmd)},
              {"p_values", cells(r.p_values)},
              {"sample_cap", r.sample_cap},
              {"config", to_json(r.config_echo)}};
}

json to_json(const PowerCurveResult& r) {
  json pairs = json::array();
  for (std::size_t p = 0; p < r.pairs.size(); ++p) {
    json rates = json::array();
    for (const auto& c : r.rates[p]) rates.push_back(cell(c));
    pairs.push_back(json{{"label_a", r.pairs[p].a},
                         {"label_b", r.pairs[p].b},
                         {"rates", std::move(rates)},
                         {"valid_trials", r.valid_trials[p]}});
  }
  return json{{"sample_sizes", r.sample_sizes},
              {"trials", r.trials},
              {"rej_cap", r.rej_cap},
              {"pairs", std::move(pairs)},
              {"config", to_json(r.config_echo)}};
}

json make_document(std::string_view command, json config, json result) {
  return json{{"schema", std::string(kSchemaVersion)},
              {"command", std::string(command)},
              {"config", std::move(config)},
              {"result", std::move(result)}};
}

std::string cell_matrix_csv(const std::vector<std::string>& labels, const CellMatrix& m) {
  std::string out;
  for (const auto& l : labels) out += "," + csv_field(l);
  out += "\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += csv_field(labels[i]);
    for (const auto& c : m[i]) {
      out += ",";
      if (c) out += shortest(*c);
    }
    out += "\n";
  }
  return out;
}

std::string power_csv(const PowerCurveResult& r) {
  std::string out = "pair,label_a,label_b,n,rate,trials\n";
  for (std::size_t p = 0; p < r.pairs.size(); ++p) {
    const std::string a = csv_field(r.pairs[p].a);
    const std::string b = csv_field(r.pairs[p].b);
    const std::string pair = csv_field(r.pairs[p].a + ":" + r.pairs[p].b);
    for (std::size_t s = 0; s < r.sample_sizes.size(); ++s) {
      out += pair + "," + a + "," + b + "," + std::to_string(r.sample_sizes[s]) + ",";
      if (r.rates[p][s]) out += shortest(*r.rates[p][s]);
      out += "," + std::to_string(r.valid_trials[p][s]) + "\n";
    }
  }
  return out;
}

}  // namespace mmdnov
