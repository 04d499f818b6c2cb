// Copyright 2026 The inarlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "inarlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "inarlab/aggregation.hpp"
#include "inarlab/error.hpp"

namespace inarlab {

namespace {

using nlohmann::json;

double parse_number(std::string_view s, std::string_view what) {
  double v = 0;
  const auto* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  require(r.ec == std::errc() && r.ptr == end, ErrorCode::kConfig,
          "cannot read " + std::string(what) + " from '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
    if (next == std::string_view::npos) return out;
    pos = next + 1;
  }
}

class Violations {
 public:
  void add(std::string msg) { list_.push_back(std::move(msg)); }
  bool empty() const { return list_.empty(); }
  [[noreturn]] void raise() const {
    std::string msg = "invalid configuration:";
    for (const auto& v : list_) msg += "\n  - " + v;
    fail(ErrorCode::kConfig, msg);
  }

  // Runs f, turning a library error into a violation. Returns success.
  template <class F>
  bool guard(const std::string& where, F&& f) {
    try {
      f();
      return true;
    } catch (const Error& e) {
      add(where + ": " + e.what());
      return false;
    } catch (const json::exception& e) {
      add(where + ": " + e.what());
      return false;
    }
  }

 private:
  std::vector<std::string> list_;
};

void check_keys(const json& obj, const std::set<std::string>& known, const std::string& where,
                Violations& v) {
  for (const auto& [k, _] : obj.items()) {
    if (!known.count(k)) v.add(where + ": unknown key '" + k + "'");
  }
}

std::vector<long> read_ladder(const json& j, const std::string& where, Violations& v) {
  std::vector<long> out;
  if (!j.is_array() || j.empty()) {
    v.add(where + " must be a nonempty array of positive integers");
    return out;
  }
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<long>() < 1) {
      v.add(where + " must contain positive integers only");
      return {};
    }
    out.push_back(e.get<long>());
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) {
      v.add(where + " must be strictly increasing");
      return {};
    }
  }
  return out;
}

std::vector<double> read_grid(const json& j, const std::string& where, bool positive_increasing,
                              Violations& v) {
  std::vector<double> out;
  if (!j.is_array() || j.empty()) {
    v.add(where + " must be a nonempty array of numbers");
    return out;
  }
  for (const auto& e : j) {
    if (!e.is_number() || !std::isfinite(e.get<double>())) {
      v.add(where + " must contain finite numbers only");
      return {};
    }
    out.push_back(e.get<double>());
  }
  if (positive_increasing) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i] <= 0 || (i > 0 && out[i] <= out[i - 1])) {
        v.add(where + " must be positive and strictly increasing");
        return {};
      }
    }
  }
  return out;
}

std::string mixing_spec_of(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  require(j.is_object() && j.contains("kind") && j["kind"].is_string(), ErrorCode::kConfig,
          "mixing must be a spec string or an object with a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  std::ostringstream os;
  os.precision(17);
  if (kind == "degenerate") {
    os << "degenerate:" << j.at("alpha").get<double>();
  } else if (kind == "beta") {
    os << "beta:" << j.at("a").get<double>() << "," << j.at("beta").get<double>();
  } else if (kind == "atoms") {
    const auto& vals = j.at("values");
    const auto& w = j.at("weights");
    require(vals.is_array() && w.is_array() && vals.size() == w.size(), ErrorCode::kConfig,
            "atoms need equally long 'values' and 'weights'");
    os << "atoms:";
    for (std::size_t i = 0; i < vals.size(); ++i) {
      os << (i ? "," : "") << vals[i].get<double>() << "@" << w[i].get<double>();
    }
  } else {
    fail(ErrorCode::kConfig, "unknown mixing kind '" + kind + "'");
  }
  return os.str();
}

}  // namespace

MixingLaw parse_mixing_spec(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  require(colon != std::string_view::npos, ErrorCode::kConfig,
          "mixing spec must look like degenerate:A, beta:A,B or atoms:V@W,...");
  const std::string_view kind = spec.substr(0, colon);
  const auto args = split(spec.substr(colon + 1), ',');
  if (kind == "degenerate") {
    require(args.size() == 1, ErrorCode::kConfig, "degenerate takes one value");
    return MixingLaw::degenerate(parse_number(args[0], "alpha"));
  }
  if (kind == "beta") {
    require(args.size() == 2, ErrorCode::kConfig, "beta takes two values a,beta");
    return MixingLaw::beta(parse_number(args[0], "a"), parse_number(args[1], "beta"));
  }
  if (kind == "atoms") {
    std::vector<double> values, weights;
    for (auto a : args) {
      const auto vw = split(a, '@');
      require(vw.size() == 2, ErrorCode::kConfig, "each atom must look like VALUE@WEIGHT");
      values.push_back(parse_number(vw[0], "atom value"));
      weights.push_back(parse_number(vw[1], "atom weight"));
    }
    return MixingLaw::atoms(std::move(values), std::move(weights));
  }
  fail(ErrorCode::kConfig, "unknown mixing kind '" + std::string(kind) + "'");
}

SuiteOptions ExperimentConfig::options_for(const SuiteRequest& s) const {
  SuiteOptions o = defaults;
  o.N_ladder = s.N_ladder;
  o.n_ladder = s.n_ladder;
  o.order = s.order;
  if (s.replicates > 0) o.replicates = s.replicates;
  return o;
}

ExperimentConfig parse_config(const json& doc) {
  Violations v;
  ExperimentConfig cfg;
  require(doc.is_object(), ErrorCode::kConfig, "configuration must be a JSON object");
  cfg.source = doc;
  check_keys(doc,
             {"format_version", "model", "suites", "t_grid", "theta_grid", "replicates", "seed",
              "gate", "bootstrap", "ks_reference", "step_budget", "N_ladder", "n_ladder",
              "output"},
             "config", v);

  if (doc.contains("format_version") &&
      (!doc["format_version"].is_number_integer() || doc["format_version"] != kFormatVersion)) {
    v.add("format_version must be " + std::to_string(kFormatVersion));
  }

  bool model_ok = false;
  if (!doc.contains("model") || !doc["model"].is_object()) {
    v.add("model: missing object with 'lambda' and 'mixing'");
  } else {
    const json& m = doc["model"];
    check_keys(m, {"lambda", "mixing"}, "model", v);
    bool lambda_ok = false;
    if (!m.contains("lambda") || !m["lambda"].is_number() || !(m["lambda"].get<double>() > 0) ||
        !std::isfinite(m["lambda"].get<double>())) {
      v.add("model.lambda must be a positive number");
    } else {
      cfg.lambda = m["lambda"].get<double>();
      lambda_ok = true;
    }
    bool mixing_ok = false;
    if (!m.contains("mixing")) {
      v.add("model.mixing is missing");
    } else {
      mixing_ok = v.guard("model.mixing", [&] {
        cfg.mixing_spec = mixing_spec_of(m["mixing"]);
        cfg.mixing = parse_mixing_spec(cfg.mixing_spec);
      });
    }
    model_ok = lambda_ok && mixing_ok;
  }

  SuiteOptions& d = cfg.defaults;
  if (doc.contains("t_grid")) d.t_grid = read_grid(doc["t_grid"], "t_grid", true, v);
  if (doc.contains("theta_grid")) d.theta_grid = read_grid(doc["theta_grid"], "theta_grid", false, v);
  auto read_int = [&](const char* key, long lo, long& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number_integer() || doc[key].get<long>() < lo) {
      v.add(std::string(key) + " must be an integer >= " + std::to_string(lo));
    } else {
      out = doc[key].get<long>();
    }
  };
  read_int("replicates", kMinReplicates, d.replicates);
  long seed = static_cast<long>(d.seed), boot = d.bootstrap,
       ksref = static_cast<long>(d.ks_reference);
  read_int("seed", 0, seed);
  read_int("bootstrap", 2, boot);
  read_int("ks_reference", 100, ksref);
  d.seed = static_cast<std::uint64_t>(seed);
  d.bootstrap = static_cast<int>(boot);
  d.ks_reference = static_cast<std::size_t>(ksref);
  auto read_pos = [&](const char* key, double& out) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number() || !(doc[key].get<double>() > 0)) {
      v.add(std::string(key) + " must be a positive number");
    } else {
      out = doc[key].get<double>();
    }
  };
  read_pos("gate", d.gate);
  read_pos("step_budget", d.step_budget);
  std::vector<long> N_default{200}, n_default{500};
  if (doc.contains("N_ladder")) N_default = read_ladder(doc["N_ladder"], "N_ladder", v);
  if (doc.contains("n_ladder")) n_default = read_ladder(doc["n_ladder"], "n_ladder", v);
  d.N_ladder = N_default;
  d.n_ladder = n_default;

  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) {
      v.add("output must be an object");
    } else {
      check_keys(o, {"dir"}, "output", v);
      if (o.contains("dir")) {
        if (o["dir"].is_string()) {
          cfg.output_dir = o["dir"].get<std::string>();
        } else {
          v.add("output.dir must be a string");
        }
      }
    }
  }

  if (doc.contains("suites")) {
    if (!doc["suites"].is_array()) {
      v.add("suites must be an array");
    } else {
      for (std::size_t i = 0; i < doc["suites"].size(); ++i) {
        const json& s = doc["suites"][i];
        const std::string where = "suites[" + std::to_string(i) + "]";
        if (!s.is_object() || !s.contains("regime") || !s["regime"].is_string()) {
          v.add(where + " must be an object with a 'regime' name");
          continue;
        }
        check_keys(s, {"regime", "order", "N_ladder", "n_ladder", "replicates"}, where, v);
        SuiteRequest req;
        if (!v.guard(where + ".regime", [&] { req.regime = parse_regime(s["regime"].get<std::string>()); })) {
          continue;
        }
        const RegimeInfo& info = regime_info(req.regime);
        req.order = info.order == IterationOrder::kEither ? IterationOrder::kNFirst : info.order;
        if (s.contains("order")) {
          IterationOrder o{};
          if (v.guard(where + ".order", [&] { o = parse_order(s["order"].get<std::string>()); })) {
            if (o == IterationOrder::kEither) {
              v.add(where + ".order must be N_first or n_first");
            } else if (info.order != IterationOrder::kEither && o != info.order) {
              v.add(where + ".order: " + info.name + " is stated only for order " +
                    order_name(info.order));
            } else {
              req.order = o;
            }
          }
        }
        req.N_ladder = s.contains("N_ladder") ? read_ladder(s["N_ladder"], where + ".N_ladder", v)
                                              : N_default;
        req.n_ladder = s.contains("n_ladder") ? read_ladder(s["n_ladder"], where + ".n_ladder", v)
                                              : n_default;
        if (s.contains("replicates")) {
          if (!s["replicates"].is_number_integer() || s["replicates"].get<long>() < kMinReplicates) {
            v.add(where + ".replicates must be an integer >= " + std::to_string(kMinReplicates));
          } else {
            req.replicates = s["replicates"].get<long>();
          }
        }
        if (model_ok) {
          const RandomizedModel rm = cfg.model();
          v.guard(where, [&] {
            if (info.centering == CenteringMode::kUnconditional) (void)unconditional_mean(rm);
            (void)regime_scaling(req.regime, rm);
          });
        }
        if (req.regime == Regime::kT47 && !req.N_ladder.empty() && req.N_ladder.front() < 2) {
          v.add(where + ": " + info.name + " needs N >= 2");
        }
        if (!req.N_ladder.empty() && !req.n_ladder.empty() && !d.t_grid.empty()) {
          const long R = req.replicates > 0 ? req.replicates : d.replicates;
          double steps = 0;
          for (long N : req.N_ladder) {
            for (long n : req.n_ladder) {
              steps += static_cast<double>(R) * static_cast<double>(N) *
                       std::max<double>(n, std::floor(n * d.t_grid.back()));
            }
          }
          if (steps > d.step_budget) {
            v.add(where + ": " + std::to_string(steps) + " simulated steps exceed step_budget " +
                  std::to_string(d.step_budget));
          }
        }
        cfg.suites.push_back(req);
      }
    }
  }

  if (!v.empty()) v.raise();
  return cfg;
}

ExperimentConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kConfig, std::string("configuration is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::kIo, "cannot read configuration file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config_text(os.str());
}

}  // namespace inarlab
