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


// Command-line front end. Talks to the library through the C interface only.

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "inarlab.h"

namespace {

using nlohmann::json;
constexpr int kFormatVersion = 1;

enum Exit { kExitOk = 0, kExitError = 1, kExitSuiteFailure = 2 };

// Failure carrying a C API status.
struct ApiFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(inar_status s) {
  if (s != INAR_OK) {
    throw ApiFailure(std::string(inar_status_name(s)) + " error: " + inar_last_error());
  }
}

struct ModelDeleter {
  void operator()(inar_model* m) const { inar_model_destroy(m); }
};
using ModelPtr = std::unique_ptr<inar_model, ModelDeleter>;

ModelPtr make_model(double lambda, const std::string& mixing) {
  inar_model* m = nullptr;
  check(inar_model_create(lambda, mixing.c_str(), &m));
  return ModelPtr(m);
}

std::string take(char* s) {
  std::string out(s);
  inar_string_free(s);
  return out;
}

// Shortest decimal form that reads back to the same double.
std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size()) {
      throw std::invalid_argument("cannot read a number from '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

struct Common {
  std::uint64_t seed = 1;
  std::string out = "-";
  std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--out", c.out, "Output file, or - for standard output")->capture_default_str();
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void emit(const Common& c, const std::string& text) {
  if (c.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + c.out + "'");
  f << text;
}

// Key/value records as CSV (header plus one row) or JSON.
std::string records(const Common& c, const std::string& command,
                    const std::vector<std::pair<std::string, json>>& fields) {
  if (c.format == "json") {
    json j = {{"format_version", kFormatVersion}, {"command", command}};
    for (const auto& [k, v] : fields) j[k] = v;
    return j.dump(2) + "\n";
  }
  std::string head = "format_version", row = std::to_string(kFormatVersion);
  for (const auto& [k, v] : fields) {
    head += "," + k;
    row += "," + (v.is_null() ? std::string("NA") : v.is_number() ? num(v.get<double>()) : v.dump());
  }
  return head + "\n" + row + "\n";
}

// A replicate-by-grid matrix in long form.
std::string matrix_out(const Common& c, const std::string& command, const std::vector<double>& grid,
                       const std::vector<double>& values, const json& extra) {
  const std::size_t cols = grid.size(), rows = values.size() / cols;
  if (c.format == "json") {
    json samples = json::array();
    for (std::size_t r = 0; r < rows; ++r) {
      samples.push_back(std::vector<double>(values.begin() + r * cols, values.begin() + (r + 1) * cols));
    }
    json j = {{"format_version", kFormatVersion}, {"command", command}, {"t_grid", grid},
              {"samples", samples}};
    j.update(extra);
    return j.dump() + "\n";
  }
  std::string s = "format_version,replicate,t,value\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < cols; ++k) {
      s += std::to_string(kFormatVersion) + "," + std::to_string(r) + "," + num(grid[k]) + "," +
           num(values[r * cols + k]) + "\n";
    }
  }
  return s;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
  f << text;
}

// CSV tables of one suite: samples, covariance and CF comparisons.
void write_suite_tables(const std::filesystem::path& dir, const json& suite) {
  const std::string stem = suite["regime"].get<std::string>() + "_" + suite["order"].get<std::string>();
  const auto grid = suite["t_grid"].get<std::vector<double>>();
  std::string s = "format_version,replicate,t,value\n";
  std::size_t r = 0;
  for (const auto& row : suite["samples"]) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      s += "1," + std::to_string(r) + "," + num(grid[k]) + "," + num(row[k].get<double>()) + "\n";
    }
    ++r;
  }
  write_file(dir / (stem + "_samples.csv"), s);
  if (suite.contains("covariance")) {
    std::string c = "format_version,s,t,empirical,theoretical,se\n";
    for (const auto& p : suite["covariance"]["pairs"]) {
      c += "1," + num(p["s"].get<double>()) + "," + num(p["t"].get<double>()) + "," +
           num(p["empirical"].get<double>()) + "," + num(p["theoretical"].get<double>()) + "," +
           num(p["se"].get<double>()) + "\n";
    }
    write_file(dir / (stem + "_cov.csv"), c);
  }
  if (suite.contains("characteristic_function")) {
    std::string c = "format_version,t,theta,empirical_re,empirical_im,theoretical_re,theoretical_im,se\n";
    for (const auto& p : suite["characteristic_function"]["cells"]) {
      c += "1," + num(p["t"].get<double>()) + "," + num(p["theta"].get<double>()) + "," +
           num(p["empirical"][0].get<double>()) + "," + num(p["empirical"][1].get<double>()) + "," +
           num(p["theoretical"][0].get<double>()) + "," + num(p["theoretical"][1].get<double>()) +
           "," + num(p["se"].get<double>()) + "\n";
    }
    write_file(dir / (stem + "_cf.csv"), c);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Randomized INAR(1) aggregation laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(inar_version()));

  // simulate
  Common sim_c;
  double sim_lambda = 1;
  std::string sim_mixing, sim_grid = "0.25,0.5,0.75,1", sim_centering, sim_regime;
  long sim_N = 10, sim_n = 100, sim_R = 100;
  auto* sim = app.add_subcommand("simulate", "Partial sums of an aggregated ensemble");
  add_common(sim, sim_c);
  sim->add_option("--lambda", sim_lambda, "Innovation mean")->required();
  sim->add_option("--mixing", sim_mixing, "degenerate:A | beta:A,B | atoms:V@W,...")->required();
  sim->add_option("--N", sim_N, "Copies")->capture_default_str();
  sim->add_option("--n", sim_n, "Time scale")->capture_default_str();
  sim->add_option("--t-grid", sim_grid, "Comma-separated times")->capture_default_str();
  sim->add_option("--replicates", sim_R, "Replicates")->capture_default_str();
  sim->add_option("--centering", sim_centering, "unconditional | conditional | empirical_mean");
  sim->add_option("--regime", sim_regime, "Scale (and by default center) for this regime");

  // pgf
  Common pgf_c;
  double pgf_lambda = 1, pgf_alpha = 0.5;
  std::string pgf_z, pgf_zi, pgf_form = "pairwise";
  auto* pgf = app.add_subcommand("pgf", "Joint generating function of the stationary chain");
  add_common(pgf, pgf_c);
  pgf->add_option("--lambda", pgf_lambda, "Innovation mean")->required();
  pgf->add_option("--alpha", pgf_alpha, "Thinning probability")->required();
  pgf->add_option("--z", pgf_z, "Real parts z_0,...,z_k")->required();
  pgf->add_option("--z-imag", pgf_zi, "Imaginary parts");
  pgf->add_option("--form", pgf_form, "Formula")
      ->check(CLI::IsMember({"pairwise", "product"}))
      ->capture_default_str();

  // constants
  Common con_c;
  double con_lambda = 1, con_beta = 0, con_psi1 = 1;
  std::string con_mixing;
  auto* con = app.add_subcommand("constants", "Limit constants");
  add_common(con, con_c);
  con->add_option("--lambda", con_lambda, "Innovation mean")->required();
  auto* o_mix = con->add_option("--mixing", con_mixing, "Full mixing law");
  auto* o_beta = con->add_option("--beta", con_beta, "Tail exponent");
  auto* o_psi = con->add_option("--psi1", con_psi1, "Density factor at one");
  o_mix->excludes(o_beta)->excludes(o_psi);
  o_beta->needs(o_psi);
  o_psi->needs(o_beta);

  // markov-gap
  Common mg_c;
  double mg_lambda = 1;
  std::string mg_mixing;
  auto* mg = app.add_subcommand("markov-gap", "Departure from the Markov property");
  add_common(mg, mg_c);
  mg->add_option("--lambda", mg_lambda, "Innovation mean")->required();
  mg->add_option("--mixing", mg_mixing, "Mixing law")->required();

  // fbm-check
  Common fc_c;
  double fc_beta = 0.5;
  auto* fc = app.add_subcommand("fbm-check", "Variance at time one of the fBm integral representation");
  add_common(fc, fc_c);
  fc->add_option("--beta", fc_beta, "beta in (0, 1)")->required();

  // sample-limit
  Common sl_c;
  double sl_lambda = 1;
  std::string sl_mixing, sl_regime, sl_grid = "0.25,0.5,0.75,1";
  long sl_R = 1000;
  auto* sl = app.add_subcommand("sample-limit", "Reference draws from a regime's limit law");
  add_common(sl, sl_c);
  sl->add_option("--lambda", sl_lambda, "Innovation mean")->required();
  sl->add_option("--mixing", sl_mixing, "Mixing law")->required();
  sl->add_option("--regime", sl_regime, "Regime name, e.g. T45")->required();
  sl->add_option("--t-grid", sl_grid, "Comma-separated times")->capture_default_str();
  sl->add_option("--replicates", sl_R, "Draws")->capture_default_str();

  // verify
  Common vf_c;
  std::string vf_config, vf_regime;
  auto* vf = app.add_subcommand("verify", "Run verification suites from a configuration file");
  add_common(vf, vf_c);
  vf->add_option("--config", vf_config, "JSON configuration file")->required();
  vf->add_option("--regime", vf_regime, "Run only this regime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitError;
  }

  if (*sim) {
    const auto model = make_model(sim_lambda, sim_mixing);
    const auto grid = parse_list(sim_grid);
    inar_sim_spec spec{sim_N,          sim_n,
                       grid.data(),    grid.size(),
                       sim_centering.empty() ? nullptr : sim_centering.c_str(),
                       sim_regime.empty() ? nullptr : sim_regime.c_str(),
                       sim_R,          sim_c.seed};
    if (sim_R < 1) throw std::invalid_argument("replicates must be positive");
    std::vector<double> out(static_cast<std::size_t>(sim_R) * grid.size());
    check(inar_simulate(model.get(), &spec, out.data()));
    emit(sim_c, matrix_out(sim_c, "simulate", grid, out,
                           {{"N", sim_N}, {"n", sim_n}, {"seed", sim_c.seed}}));
  } else if (*pgf) {
    const auto re = parse_list(pgf_z);
    std::vector<double> im(re.size(), 0.0);
    if (!pgf_zi.empty()) {
      im = parse_list(pgf_zi);
      if (im.size() != re.size()) throw std::invalid_argument("--z and --z-imag differ in length");
    }
    double vr = 0, vi = 0;
    check(inar_pgf(pgf_lambda, pgf_alpha, re.size(), re.data(), im.data(),
                   pgf_form == "product" ? INAR_PGF_PRODUCT : INAR_PGF_PAIRWISE, &vr, &vi));
    emit(pgf_c, records(pgf_c, "pgf", {{"re", vr}, {"im", vi}}));
  } else if (*con) {
    char* s = nullptr;
    if (!con_mixing.empty()) {
      const auto model = make_model(con_lambda, con_mixing);
      check(inar_constants(model.get(), &s));
    } else {
      if (o_beta->count() == 0) throw std::invalid_argument("give --mixing, or --beta with --psi1");
      check(inar_tail_constants(con_beta, con_lambda, con_psi1, &s));
    }
    const json j = json::parse(take(s));
    std::vector<std::pair<std::string, json>> fields;
    for (const auto& [k, v] : j.items()) fields.emplace_back(k, v);
    emit(con_c, records(con_c, "constants", fields));
  } else if (*mg) {
    const auto model = make_model(mg_lambda, mg_mixing);
    double p2 = 0, p1 = 0, gap = 0;
    check(inar_markov_gap(model.get(), &p2, &p1, &gap));
    emit(mg_c, records(mg_c, "markov-gap", {{"p_cond2", p2}, {"p_cond1", p1}, {"gap", gap}}));
  } else if (*fc) {
    double v = 0;
    check(inar_fbm_variance_check(fc_beta, &v));
    emit(fc_c, records(fc_c, "fbm-check", {{"beta", fc_beta}, {"variance", v}}));
  } else if (*sl) {
    const auto model = make_model(sl_lambda, sl_mixing);
    const auto grid = parse_list(sl_grid);
    if (sl_R < 1) throw std::invalid_argument("replicates must be positive");
    std::vector<double> out(static_cast<std::size_t>(sl_R) * grid.size());
    check(inar_sample_limit(model.get(), sl_regime.c_str(), grid.data(), grid.size(), sl_R,
                            sl_c.seed, out.data()));
    emit(sl_c, matrix_out(sl_c, "sample-limit", grid, out, {{"regime", sl_regime}, {"seed", sl_c.seed}}));
  } else if (*vf) {
    std::ifstream in(vf_config);
    if (!in) throw ApiFailure("io error: cannot read configuration file '" + vf_config + "'");
    std::stringstream text;
    text << in.rdbuf();
    json cfg;
    try {
      cfg = json::parse(text.str());
    } catch (const json::exception& e) {
      throw ApiFailure(std::string("config error: configuration is not valid JSON: ") + e.what());
    }
    if (vf->get_option("--seed")->count() > 0) cfg["seed"] = vf_c.seed;
    check(inar_config_check(cfg.dump().c_str()));
    std::filesystem::path dir = cfg.value("/output/dir"_json_pointer, std::string("."));
    if (vf_c.out != "-") dir = vf_c.out;
    std::filesystem::create_directories(dir);

    char* s = nullptr;
    int all_pass = 0;
    check(inar_verify(cfg.dump().c_str(), vf_regime.empty() ? nullptr : vf_regime.c_str(), &s,
                      &all_pass));
    json report = json::parse(take(s));
    for (auto& suite : report["suites"]) {
      if (vf_c.format == "csv") write_suite_tables(dir, suite);
      std::cout << suite["regime"].get<std::string>() << " (" << suite["order"].get<std::string>()
                << ", N=" << suite["N"] << ", n=" << suite["n"] << "): "
                << suite["status"].get<std::string>() << "\n";
      suite.erase("samples");
    }
    write_file(dir / "report.json", report.dump(2) + "\n");
    std::cout << "report: " << (dir / "report.json").string() << "\n";
    return all_pass ? kExitOk : kExitSuiteFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
