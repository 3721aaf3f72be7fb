// Copyright 2026 The patchpeps Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "patchpeps/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "patchpeps/errors.hpp"
#include "patchpeps/generators.hpp"
#include "patchpeps/io.hpp"
#include "patchpeps/oracle.hpp"
#include "patchpeps/parent.hpp"
#include "patchpeps/patch.hpp"
#include "patchpeps/transfer.hpp"

namespace patchpeps {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ArgumentError("cannot read " + what + " from '" + text + "'");
  }
}

/// "3x3" -> {3, 3}; "8" -> {8}.
std::vector<int> parse_extents(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, 'x')) out.push_back(parse_int(part, "lattice extents"));
  if (out.empty()) throw ArgumentError("empty lattice extents");
  return out;
}

Coord parse_coord(const std::string& text) {
  Coord c;
  for (const auto& part : split(text, ',')) c.c.push_back(parse_int(part, "site coordinate"));
  return c;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ArgumentError("range must look like a:b, got '" + text + "'");
  const int a = parse_int(parts[0], "range start"), b = parse_int(parts[1], "range end");
  if (a < 0 || b < a) throw ArgumentError("invalid range '" + text + "'");
  return {std::size_t(a), std::size_t(b)};
}

Coord center_of(const Lattice& lattice) {
  Coord c;
  for (int e : lattice.extents()) c.c.push_back(e / 2);
  return c;
}

struct ObservableArgs {
  std::string preset = "pauli-z";
  std::string file;
  std::vector<std::string> sites;

  void attach(CLI::App* cmd) {
    cmd->add_option("--observable", preset, "Preset: pauli-x/y/z, s_x/s_y/s_z, identity")->capture_default_str();
    cmd->add_option("--observable-file", file, "Observable file; overrides --observable and --site");
    cmd->add_option("--site", sites, "Support site as comma-separated coordinates (repeatable); default: center");
  }

  Observable build(const PepsState& peps) const {
    if (!file.empty()) return read_observable(read_file(file));
    std::vector<Coord> coords;
    for (const auto& s : sites) coords.push_back(parse_coord(s));
    if (coords.empty()) coords.push_back(center_of(peps.lattice()));
    const Tensor single = preset_matrix(preset, peps.phys_dim());
    Tensor m = single;
    for (std::size_t k = 1; k < coords.size(); ++k) m = kron(m, single);
    return Observable(std::move(coords), std::move(m));
  }

  Json echo() const {
    Json j;
    if (!file.empty()) {
      j["observable_file"] = file;
    } else {
      j["observable"] = preset;
      j["sites"] = sites;
    }
    return j;
  }
};

Json ladder_json(const std::vector<LadderStep>& ladder) {
  Json out = Json::array();
  for (const auto& step : ladder) {
    Json j{{"ell", step.ell}, {"value", json_complex(step.value)}, {"patch_size", step.patch_size}};
    j["difference"] = step.difference ? json_number(*step.difference) : Json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

Json estimate_json(const Estimate& e) {
  Json j{{"value", json_complex(e.value)},
         {"radius_used", e.radius_used},
         {"bound", json_number(e.bound)},
         {"patch_size", e.patch_size},
         {"clipped", e.clipped},
         {"mode", e.mode == Estimate::Mode::kAdaptive ? "adaptive" : "fixed_radius"}};
  if (e.mode == Estimate::Mode::kAdaptive) j["ladder"] = ladder_json(e.ladder);
  return j;
}

Json gap_json(const GapReport& r) {
  Json j{{"chain_length", r.chain_length},
         {"ground_energy", json_number(r.ground_energy)},
         {"first_excited", json_number(r.first_excited)},
         {"gap", json_number(r.gap)},
         {"ground_fidelity", json_number(r.ground_fidelity)},
         {"method", r.method},
         {"block", r.block}};
  if (r.uniform_min_gap) {
    j["uniform_min_gap"] = json_number(*r.uniform_min_gap);
    Json gaps = Json::array();
    for (std::size_t k = 0; k < r.prefix_gaps.size(); ++k)
      gaps.push_back(Json{{"t", k + 2}, {"gap", json_number(r.prefix_gaps[k])}});
    j["prefix_gaps"] = std::move(gaps);
  }
  j["warnings"] = r.warnings;
  return j;
}

Json spectrum_json(const SpectrumReport& s) {
  Json ev = Json::array();
  for (Complex z : s.eigenvalues) ev.push_back(json_complex(z));
  return Json{{"lambda1", json_complex(s.lambda1)},
              {"lambda2", json_complex(s.lambda2)},
              {"ratio", json_number(s.ratio)},
              {"delta_bound", json_number(s.delta_bound)},
              {"unique_top", s.unique_top},
              {"eigenvalues", std::move(ev)}};
}

const char* category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kInput:
      return "input";
    case ErrorCategory::kBudget:
      return "budget";
    case ErrorCategory::kNumerical:
      return "numerical";
  }
  return "unknown";
}

/// State shared by the command handlers of one invocation.
struct Run {
  std::string command;
  std::string out_path;
  Json config = Json::object();
  Json error_details;
  std::ostream* out = nullptr;

  void emit(const std::string& text) const {
    if (out_path.empty())
      *out << text;
    else
      write_file(out_path, text);
  }

  Json document() const {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["library_version"] = kLibraryVersion;
    doc["config"] = config;
    return doc;
  }
};

// Command handlers ------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::string lattice = "3x3";
  std::size_t phys_dim = 2;
  std::size_t bond_dim = 2;
  double eta = 0.1;
  double theta = 0.0;
  std::uint64_t seed = 0;
  std::size_t n = 8;
};

void run_gen(Run& run, const GenArgs& a) {
  const PepsState peps = [&]() -> PepsState {
    if (a.kind == "product") return product_peps(Lattice(parse_extents(a.lattice)), a.phys_dim, a.theta);
    if (a.kind == "perturbed")
      return random_injective_peps(Lattice(parse_extents(a.lattice)), a.bond_dim, a.phys_dim, a.eta, a.seed);
    if (a.kind == "aklt") return aklt_chain(a.n);
    throw ArgumentError("unknown generator '" + a.kind + "' (expected product, perturbed or aklt)");
  }();
  run.emit(write_peps(peps));
}

struct EstimateArgs {
  std::string peps;
  ObservableArgs obs;
  CLI::Option* ell_opt = nullptr;
  CLI::Option* eps_opt = nullptr;
  CLI::Option* kappa_opt = nullptr;
  std::size_t ell = 0;
  double epsilon = 0.0;
  std::string mode = "adaptive";
  double c = 1.0;
  double gap = 1.0;
  double kappa_star = 1.0;
  double budget = kDefaultNetworkBudget;
};

void run_estimate(Run& run, const EstimateArgs& a) {
  run.config = Json{{"peps", a.peps}};
  run.config.update(a.obs.echo());
  const bool has_ell = a.ell_opt->count() > 0, has_eps = a.eps_opt->count() > 0;
  if (has_ell == has_eps) throw ArgumentError("estimate needs exactly one of --ell and --epsilon");
  if (has_ell)
    run.config["ell"] = a.ell;
  else {
    run.config["epsilon"] = a.epsilon;
    run.config["mode"] = a.mode;
  }
  run.config["constant"] = a.c;
  run.config["gap"] = a.gap;
  if (a.kappa_opt->count()) run.config["kappa_star"] = a.kappa_star;
  run.config["budget"] = a.budget;

  const PepsState peps = read_peps(read_file(a.peps));
  const Observable obs = a.obs.build(peps);
  PatchOptions options;
  options.budget_entries = a.budget;
  options.bound.c = a.c;
  options.bound.gap = a.gap;
  if (a.kappa_opt->count()) options.bound.kappa_star = a.kappa_star;

  const auto start = Clock::now();
  Estimate e;
  Json extra = Json::object();
  if (has_ell) {
    e = patch_expectation(peps, obs, a.ell, options);
  } else if (a.mode == "adaptive") {
    try {
      e = adaptive_estimate(peps, obs, a.epsilon, options);
    } catch (const LadderBudgetError& err) {
      run.error_details = Json{{"partial_ladder", ladder_json(err.ladder())}};
      throw;
    }
  } else if (a.mode == "bound") {
    const double kappa =
        options.bound.kappa_star ? *options.bound.kappa_star : kappa_star(peps, default_partition(peps));
    options.bound.kappa_star = kappa;
    const std::size_t ell = choose_radius(a.epsilon, kappa, a.gap, obs.op_norm(), a.c, peps.lattice().dimension(),
                                          peps.lattice().diameter());
    e = patch_expectation(peps, obs, ell, options);
    extra["kappa_star"] = json_number(kappa);
  } else {
    throw ArgumentError("unknown mode '" + a.mode + "' (expected adaptive or bound)");
  }
  Json doc = run.document();
  Json results = estimate_json(e);
  results.update(extra);
  doc["results"] = std::move(results);
  doc["timings"] = Json{{"wall_time_ms", ms_since(start)}};
  run.emit(dump_json(doc));
}

struct OracleArgs {
  std::string peps;
  ObservableArgs obs;
  double state_cutoff = kDefaultStateCutoff;
  double budget = kDefaultNetworkBudget;
};

void run_oracle(Run& run, const OracleArgs& a) {
  run.config = Json{{"peps", a.peps}};
  run.config.update(a.obs.echo());
  run.config["state_cutoff"] = a.state_cutoff;
  run.config["budget"] = a.budget;
  const PepsState peps = read_peps(read_file(a.peps));
  const Observable obs = a.obs.build(peps);
  OracleOptions options;
  options.state_cutoff = a.state_cutoff;
  options.network_budget = a.budget;
  const auto start = Clock::now();
  const OracleResult r = exact_expectation(peps, obs, options);
  Json doc = run.document();
  doc["results"] = Json{{"value", json_complex(r.value)},
                        {"norm_sq", json_number(r.norm_sq)},
                        {"sites_used", r.sites_used},
                        {"path", r.path}};
  doc["timings"] = Json{{"wall_time_ms", ms_since(start)}};
  run.emit(dump_json(doc));
}

struct TransferArgs {
  std::string peps;
  std::string op_a;
  std::string op_b;
  std::size_t length = 64;
  std::string x_range = "1:10";
  CLI::Option* site_opt = nullptr;
  std::size_t site = 0;
  std::size_t width_cutoff = kDefaultStripWidthCutoff;
};

void run_transfer(Run& run, const TransferArgs& a) {
  run.config = Json{{"peps", a.peps}, {"length", a.length}, {"x_range", a.x_range}};
  if (!a.op_a.empty()) run.config["op_a"] = a.op_a;
  if (!a.op_b.empty()) run.config["op_b"] = a.op_b;
  const PepsState peps = read_peps(read_file(a.peps));
  const Lattice& lattice = peps.lattice();
  const std::size_t cols = std::size_t(lattice.extents().back());
  const std::size_t site = a.site_opt->count() ? a.site : cols / 2;
  run.config[lattice.dimension() == 1 ? "site" : "column"] = site;

  const auto start = Clock::now();
  const std::size_t rows = lattice.dimension() == 1 ? 1 : std::size_t(lattice.extents()[0]);
  const TransferOperator e = strip_transfer_operator(peps, site, rows, a.width_cutoff);
  Json doc = run.document();
  Json results{{"d_eff", e.d_eff}, {"spectrum", spectrum_json(spectrum(e))}};

  if (!a.op_a.empty() || !a.op_b.empty()) {
    if (a.op_a.empty() || a.op_b.empty()) throw ArgumentError("correlations need both --op-a and --op-b");
    if (lattice.dimension() != 1) throw ArgumentError("correlations are computed for chains only");
    const Tensor& t = peps.tensor(site);
    const TransferOperator ea = dressed_transfer(t, preset_matrix(a.op_a, peps.phys_dim()));
    const TransferOperator eb = dressed_transfer(t, preset_matrix(a.op_b, peps.phys_dim()));
    const auto [x0, x1] = parse_range(a.x_range);
    if (x1 + 2 > a.length) throw ArgumentError("x range must end at or before length - 2");
    const Complex product = transfer_expectation(e, ea, a.length) * transfer_expectation(e, eb, a.length);
    Json corr = Json::array();
    for (std::size_t x = x0; x <= x1; ++x) {
      const Complex joint = transfer_correlation(e, ea, eb, x, a.length);
      corr.push_back(Json{{"x", x}, {"joint", json_complex(joint)}, {"connected", json_complex(joint - product)}});
    }
    results["correlations"] = std::move(corr);
    try {
      const DecayFit fit = decay_fit(e, ea, eb, x0, x1, a.length);
      results["fit"] = Json{{"rate", json_number(fit.rate)}, {"r_squared", json_number(fit.r_squared)},
                            {"points", fit.x_used.size()}};
    } catch (const DegenerateFitError& err) {
      results["fit"] = Json{{"error", err.kind()}, {"message", err.what()}};
    }
  }
  doc["results"] = std::move(results);
  doc["timings"] = Json{{"wall_time_ms", ms_since(start)}};
  run.emit(dump_json(doc));
}

struct ParentArgs {
  std::string peps;
  CLI::Option* max_n_opt = nullptr;
  std::size_t max_n = 0;
  std::size_t dense_cutoff = 1024;
};

void run_parent_gap(Run& run, const ParentArgs& a) {
  const PepsState peps = read_peps(read_file(a.peps));
  const Chain chain = chain_from_peps(peps);
  const std::size_t max_n = a.max_n_opt->count() ? a.max_n : chain.length();
  run.config = Json{{"peps", a.peps}, {"max_n", max_n}, {"dense_cutoff", a.dense_cutoff}};
  GapOptions options;
  options.dense_cutoff = a.dense_cutoff;
  const auto start = Clock::now();
  const GapReport report = uniform_gap_scan(chain, max_n, options);
  const ParentTerms terms = parent_terms(prefix_chain(chain, max_n));
  Json ranks = Json::array();
  for (const auto& t : terms.terms) ranks.push_back(t.rank);
  Json doc = run.document();
  Json results = gap_json(report);
  results["term_ranks"] = std::move(ranks);
  doc["results"] = std::move(results);
  doc["timings"] = Json{{"wall_time_ms", ms_since(start)}};
  run.emit(dump_json(doc));
}

struct BenchArgs {
  std::string sizes = "6x6";
  std::string ells = "2";
  std::size_t bond_dim = 2;
  std::size_t phys_dim = 2;
  double eta = 0.1;
  std::uint64_t seed = 42;
  std::size_t repeats = 3;
  std::string observable = "pauli-z";
  double budget = kDefaultNetworkBudget;
};

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void run_bench(Run& run, const BenchArgs& a) {
  std::string csv = "N,ell,D,d,patch_size,wall_time_ms,value\n";
  PatchOptions options;
  options.budget_entries = a.budget;
  for (const auto& size : split(a.sizes, ',')) {
    const Lattice lattice(parse_extents(size));
    const PepsState peps = random_injective_peps(lattice, a.bond_dim, a.phys_dim, a.eta, a.seed);
    const Observable obs({center_of(lattice)}, preset_matrix(a.observable, a.phys_dim));
    for (const auto& ell_text : split(a.ells, ',')) {
      const int ell = parse_int(ell_text, "ell");
      if (ell < 0) throw ArgumentError("ell must be non-negative");
      const std::string prefix = std::to_string(lattice.num_sites()) + "," + ell_text + "," +
                                 std::to_string(a.bond_dim) + "," + std::to_string(a.phys_dim) + ",";
      try {
        double best = std::numeric_limits<double>::infinity();
        Estimate e;
        for (std::size_t r = 0; r < std::max<std::size_t>(1, a.repeats); ++r) {
          const auto start = Clock::now();
          e = patch_expectation(peps, obs, std::size_t(ell), options);
          best = std::min(best, ms_since(start));
        }
        csv += prefix + std::to_string(e.patch_size) + "," + format_double(best) + "," + format_double(e.value.real()) +
               "\n";
      } catch (const SizeError& err) {
        csv += prefix + ",error:" + err.kind() + ",\n";
      }
    }
  }
  run.emit(csv);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local expectation values of injective PEPS by patch contraction", "pepsx"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kLibraryVersion);

  Run run;
  run.out = &out;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a PEPS file from a generator");
  gen_cmd->add_option("kind", gen.kind, "product | perturbed | aklt")->required();
  gen_cmd->add_option("--lattice", gen.lattice, "Extents such as 3x3 or 8")->capture_default_str();
  gen_cmd->add_option("--phys-dim", gen.phys_dim)->capture_default_str();
  gen_cmd->add_option("--bond-dim", gen.bond_dim)->capture_default_str();
  gen_cmd->add_option("--eta", gen.eta, "Perturbation strength")->capture_default_str();
  gen_cmd->add_option("--theta", gen.theta, "Product state angle")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "AKLT chain length")->capture_default_str();
  gen_cmd->add_option("--out", run.out_path, "Output file (default: stdout)");

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Patch estimate of a local expectation value");
  est_cmd->add_option("--peps", est.peps)->required();
  est.obs.attach(est_cmd);
  est.ell_opt = est_cmd->add_option("--ell", est.ell, "Fixed patch radius");
  est.eps_opt = est_cmd->add_option("--epsilon", est.epsilon, "Target accuracy");
  est_cmd->add_option("--mode", est.mode, "With --epsilon: adaptive | bound")->capture_default_str();
  est_cmd->add_option("--constant", est.c, "Clustering-rate constant c")->capture_default_str();
  est_cmd->add_option("--gap", est.gap, "Declared uniform gap")->capture_default_str();
  est.kappa_opt = est_cmd->add_option("--kappa-star", est.kappa_star, "Declared condition-number bound");
  est_cmd->add_option("--budget", est.budget, "Largest intermediate, in complex entries")->capture_default_str();
  est_cmd->add_option("--out", run.out_path, "Result document (default: stdout)");

  OracleArgs orc;
  auto* orc_cmd = app.add_subcommand("oracle", "Exact expectation value by full contraction");
  orc_cmd->add_option("--peps", orc.peps)->required();
  orc.obs.attach(orc_cmd);
  orc_cmd->add_option("--state-cutoff", orc.state_cutoff)->capture_default_str();
  orc_cmd->add_option("--budget", orc.budget)->capture_default_str();
  orc_cmd->add_option("--out", run.out_path, "Result document (default: stdout)");

  TransferArgs tra;
  auto* tra_cmd = app.add_subcommand("transfer", "Transfer-operator spectrum and correlations");
  tra_cmd->add_option("--peps", tra.peps)->required();
  tra_cmd->add_option("--op-a", tra.op_a, "Preset for the first dressing");
  tra_cmd->add_option("--op-b", tra.op_b, "Preset for the second dressing");
  tra_cmd->add_option("--length", tra.length, "Ring length L")->capture_default_str();
  tra_cmd->add_option("--x-range", tra.x_range, "Distances a:b")->capture_default_str();
  tra.site_opt = tra_cmd->add_option("--site,--column", tra.site, "Chain site or strip column (default: middle)");
  tra_cmd->add_option("--width-cutoff", tra.width_cutoff)->capture_default_str();
  tra_cmd->add_option("--out", run.out_path, "Result document (default: stdout)");

  ParentArgs par;
  auto* par_cmd = app.add_subcommand("parent-gap", "Parent-Hamiltonian gaps of a chain and its prefixes");
  par_cmd->add_option("--peps", par.peps)->required();
  par.max_n_opt = par_cmd->add_option("--max-n", par.max_n, "Longest prefix (default: whole chain)");
  par_cmd->add_option("--dense-cutoff", par.dense_cutoff)->capture_default_str();
  par_cmd->add_option("--out", run.out_path, "Result document (default: stdout)");

  BenchArgs ben;
  auto* ben_cmd = app.add_subcommand("bench-scaling", "Patch wall time against lattice size");
  ben_cmd->add_option("--lattice-sizes", ben.sizes, "Comma-separated extents, e.g. 6x6,8x8")->capture_default_str();
  ben_cmd->add_option("--ells", ben.ells, "Comma-separated radii")->capture_default_str();
  ben_cmd->add_option("--bond-dim", ben.bond_dim)->capture_default_str();
  ben_cmd->add_option("--phys-dim", ben.phys_dim)->capture_default_str();
  ben_cmd->add_option("--eta", ben.eta)->capture_default_str();
  ben_cmd->add_option("--seed", ben.seed)->capture_default_str();
  ben_cmd->add_option("--repeats", ben.repeats, "Timed repetitions; the minimum is reported")->capture_default_str();
  ben_cmd->add_option("--observable", ben.observable)->capture_default_str();
  ben_cmd->add_option("--budget", ben.budget)->capture_default_str();
  ben_cmd->add_option("--out", run.out_path, "CSV file (default: stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kLibraryVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "pepsx: " << e.what() << "\n";
    return int(ErrorCategory::kInput);
  }

  run.command = app.get_subcommands().front()->get_name();
  try {
    if (run.command == "gen")
      run_gen(run, gen);
    else if (run.command == "estimate")
      run_estimate(run, est);
    else if (run.command == "oracle")
      run_oracle(run, orc);
    else if (run.command == "transfer")
      run_transfer(run, tra);
    else if (run.command == "parent-gap")
      run_parent_gap(run, par);
    else
      run_bench(run, ben);
    return 0;
  } catch (const Error& e) {
    err << "pepsx " << run.command << ": " << e.what() << "\n";
    if (run.command != "gen" && run.command != "bench-scaling") {
      Json doc = run.document();
      Json error{{"kind", e.kind()}, {"category", category_name(e.category())}, {"message", e.what()}};
      if (const auto* size = dynamic_cast<const SizeError*>(&e))
        error["predicted_entries"] = json_number(size->predicted_entries());
      if (!run.error_details.is_null()) error.update(run.error_details);
      doc["error"] = std::move(error);
      try {
        run.emit(dump_json(doc));
      } catch (const Error&) {
        // Output not writable; the message above is all we can report.
      }
    }
    return int(e.category());
  } catch (const std::bad_alloc&) {
    err << "pepsx " << run.command << ": out of memory\n";
    return int(ErrorCategory::kBudget);
  } catch (const std::exception& e) {
    err << "pepsx " << run.command << ": " << e.what() << "\n";
    return int(ErrorCategory::kNumerical);
  }
}

}  // namespace patchpeps
