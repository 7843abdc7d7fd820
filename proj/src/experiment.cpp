// Copyright 2026 The decoh authors
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

#include "decoh/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "decoh/ensemble.hpp"
#include "decoh/error.hpp"
#include "decoh/linalg.hpp"
#include "decoh/version.hpp"

namespace decoh {
namespace {

using nlohmann::ordered_json;

// ---- parsing -------------------------------------------------------------

double get_double(const ordered_json& j, const char* what) {
  require(j.is_number(), Errc::parse_error, std::string(what) + " must be a number");
  return j.get<double>();
}

std::uint64_t get_u64(const ordered_json& j, const char* what) {
  // Accept any integer representation; JSON has no signedness of its own.
  require(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0),
          Errc::parse_error, std::string(what) + " must be a non-negative integer");
  return j.get<std::uint64_t>();
}

std::vector<double> get_doubles(const ordered_json& j, const char* what) {
  require(j.is_array(), Errc::parse_error, std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(get_double(v, what));
  return out;
}

const ordered_json& get_field(const ordered_json& j, const char* key) {
  require(j.is_object() && j.contains(key), Errc::parse_error,
          std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::vector<std::size_t>> parse_blocks(const ordered_json& j) {
  require(j.is_array(), Errc::parse_error, "partition must be an array of blocks");
  std::vector<std::vector<std::size_t>> blocks;
  for (const auto& jb : j) {
    require(jb.is_array(), Errc::parse_error, "partition block must be an array of atom indices");
    std::vector<std::size_t> block;
    for (const auto& v : jb)
      block.push_back(static_cast<std::size_t>(get_u64(v, "atom index")));
    blocks.push_back(std::move(block));
  }
  return blocks;
}

PhaseSpec parse_phase_spec(const ordered_json& j) {
  const std::string kind = get_field(j, "kind").get<std::string>();
  if (kind == "degenerate") return PhaseSpec::degenerate();
  if (kind == "uniform_full") return PhaseSpec::uniform_full();
  if (kind == "uniform_symmetric")
    return PhaseSpec::uniform_symmetric(get_double(get_field(j, "half_width"), "half_width"));
  fail(Errc::parse_error, "unknown phase spec kind '" + kind + "'");
}

UnravellingModel parse_model(const ordered_json& j) {
  const std::string variant = get_field(j, "variant").get<std::string>();
  if (variant == "projective_measurement") return ProjectiveMeasurement{};
  if (variant == "adversarial_uniform") return AdversarialUniform{};
  if (variant == "phase_only") {
    const ordered_json& spec = get_field(j, "phase_spec");
    PhaseOnly model;
    if (spec.is_array()) {
      for (const auto& s : spec) model.specs.push_back(parse_phase_spec(s));
      require(!model.specs.empty(), Errc::parse_error, "phase_spec array is empty");
    } else {
      model.specs.push_back(parse_phase_spec(spec));
    }
    return model;
  }
  if (variant == "dirichlet_martingale") {
    DirichletMartingale model;
    model.concentration = get_double(get_field(j, "concentration"), "concentration");
    if (j.contains("phase_coupling")) {
      const ordered_json& pc = j.at("phase_coupling");
      const std::string kind = get_field(pc, "kind").get<std::string>();
      if (kind == "linear") {
        model.linear_coupling = true;
        model.gamma = get_double(get_field(pc, "gamma"), "gamma");
      } else {
        require(kind == "none", Errc::parse_error, "unknown phase coupling '" + kind + "'");
      }
    }
    return model;
  }
  if (variant == "partition_conditioning") {
    const std::vector<double> weights =
        get_doubles(get_field(get_field(j, "space"), "weights"), "weights");
    FiniteProbSpace space(weights);
    RandomVariable x{get_doubles(get_field(j, "x_assignment"), "x_assignment")};
    Partition partition(parse_blocks(get_field(j, "partition")), space.atom_count());
    return PartitionConditioning{std::move(space), std::move(x), std::move(partition)};
  }
  fail(Errc::parse_error, "unknown model variant '" + variant + "'");
}

ModeConfig parse_mode(const ordered_json& j) {
  ModeConfig mode;
  const std::string kind = get_field(j, "kind").get<std::string>();
  if (kind == "exact") {
    mode.exact = true;
    return mode;
  }
  require(kind == "monte_carlo" || kind == "mc", Errc::parse_error,
          "mode kind must be 'exact' or 'monte_carlo'");
  mode.exact = false;
  mode.trials = get_u64(get_field(j, "trials"), "trials");
  require(mode.trials >= 1000, Errc::invalid_argument, "Monte Carlo needs at least 1000 trials");
  for (const auto& s : get_field(j, "seeds")) mode.seeds.push_back(get_u64(s, "seed"));
  require(!mode.seeds.empty(), Errc::parse_error, "monte_carlo mode needs a seed list");
  return mode;
}

// ---- serialization -------------------------------------------------------

ordered_json blocks_json(const std::vector<std::vector<std::size_t>>& blocks) {
  ordered_json out = ordered_json::array();
  for (const auto& b : blocks) out.push_back(b);
  return out;
}

ordered_json phase_spec_json(const PhaseSpec& s) {
  switch (s.kind) {
    case PhaseSpec::Kind::degenerate:
      return {{"kind", "degenerate"}};
    case PhaseSpec::Kind::uniform_full:
      return {{"kind", "uniform_full"}};
    case PhaseSpec::Kind::uniform_symmetric:
      return {{"kind", "uniform_symmetric"}, {"half_width", s.half_width}};
  }
  fail(Errc::invalid_argument, "unknown phase spec");
}

ordered_json model_json(const UnravellingModel& model) {
  ordered_json out;
  out["variant"] = model_name(model);
  if (const auto* pc = std::get_if<PartitionConditioning>(&model)) {
    out["space"] = {{"weights", pc->space.weights()}};
    out["x_assignment"] = pc->x.values;
    out["partition"] = blocks_json(pc->partition.blocks());
  } else if (const auto* po = std::get_if<PhaseOnly>(&model)) {
    if (po->specs.size() == 1) {
      out["phase_spec"] = phase_spec_json(po->specs.front());
    } else {
      ordered_json arr = ordered_json::array();
      for (const auto& s : po->specs) arr.push_back(phase_spec_json(s));
      out["phase_spec"] = arr;
    }
  } else if (const auto* dm = std::get_if<DirichletMartingale>(&model)) {
    out["concentration"] = dm->concentration;
    if (dm->linear_coupling)
      out["phase_coupling"] = {{"kind", "linear"}, {"gamma", dm->gamma}};
    else
      out["phase_coupling"] = {{"kind", "none"}};
  }
  return out;
}

ordered_json complex_matrix_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.dim(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json real_matrix_json(const RealMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json witness_json(const Witness& w) {
  return {{"name", w.name},   {"left", w.left},     {"relation", w.relation},
          {"right", w.right}, {"margin", w.margin}, {"holds", w.holds}};
}

ordered_json report_json(const PropositionReport& rep) {
  ordered_json out;
  out["id"] = rep.id;
  out["verdict"] = to_string(rep.verdict);
  out["note"] = rep.note;
  out["exact"] = rep.exact;
  out["trials"] = rep.trials;
  out["seeds"] = rep.seeds;
  ordered_json ws = ordered_json::array();
  for (const Witness& w : rep.witnesses) ws.push_back(witness_json(w));
  out["witnesses"] = std::move(ws);
  return out;
}

ordered_json estimates_json(const EnsembleSummary& s) {
  ordered_json out;
  {
    ordered_json d;
    d["value"] = complex_matrix_json(s.density->value);
    d["std_err_re"] = real_matrix_json(s.density->std_err_re);
    d["std_err_im"] = real_matrix_json(s.density->std_err_im);
    d["exact"] = s.density->exact;
    d["trials"] = s.density->trials;
    out["average_density"] = std::move(d);
  }
  {
    ordered_json c;
    c["value"] = real_matrix_json(s.cross->value);
    c["std_err"] = real_matrix_json(s.cross->std_err);
    c["exact"] = s.cross->exact;
    c["trials"] = s.cross->trials;
    out["cross_term_matrix"] = std::move(c);
  }
  out["expected_shannon"] = {{"value", s.shannon->value},
                             {"std_err", s.shannon->std_err},
                             {"exact", s.shannon->exact},
                             {"trials", s.shannon->trials}};
  out["expected_variance"] = {{"value", s.variance->value},
                              {"std_err", s.variance->std_err},
                              {"exact", s.variance->exact},
                              {"trials", s.variance->trials}};
  out["pi_mean"] = {{"value", s.pi_mean->value},
                    {"std_err", s.pi_mean->std_err},
                    {"exact", s.pi_mean->exact},
                    {"trials", s.pi_mean->trials}};
  out["vn_entropy_of_average"] = vn_entropy(DensityMatrix(s.density->value));
  return out;
}

// ---- trajectories --------------------------------------------------------

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void append_row(std::string& csv, const std::string& label, const EnsembleSummary& s) {
  csv += label;
  csv += ',';
  csv += fmt17(offdiag_l1(s.density->value));
  csv += ',';
  csv += fmt17(s.shannon->value);
  csv += ',';
  csv += fmt17(s.variance->value);
  csv += ',';
  csv += fmt17(vn_entropy(DensityMatrix(s.density->value)));
  csv += '\n';
}

std::string trajectories_csv(const ExperimentConfig& cfg) {
  // Monte Carlo sweeps use the first configured seed.
  const RunMode mode = cfg.mode.exact
                           ? RunMode::exact()
                           : RunMode::monte_carlo(cfg.mode.trials, cfg.mode.seeds.front());
  const unsigned mask = kQuantityDensity | kQuantityShannon | kQuantityVariance;
  std::string csv = "setting,offdiag_l1,expected_shannon,expected_variance,vn_entropy\n";

  if (cfg.sweep.kind == SweepConfig::Kind::kappa) {
    const auto& base = std::get<DirichletMartingale>(cfg.model);
    for (double kappa : cfg.sweep.kappa_values) {
      DirichletMartingale step = base;
      step.concentration = kappa;
      const PreparedModel prepared(step, cfg.initial);
      append_row(csv, std::string("kappa=") + fmt_label(kappa),
                 estimate(prepared, &cfg.observable, mode, mask));
    }
  } else {
    const auto& base = std::get<PartitionConditioning>(cfg.model);
    for (std::size_t k = 0; k < cfg.sweep.partitions.size(); ++k) {
      PartitionConditioning step{base.space, base.x,
                                 Partition(cfg.sweep.partitions[k], base.space.atom_count())};
      const PreparedModel prepared(std::move(step), cfg.initial);
      append_row(csv, "partition=" + std::to_string(k),
                 estimate(prepared, &cfg.observable, mode, mask));
    }
  }
  return csv;
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"mean_condition", "P1chain", "P3",
                                                 "P4",             "vN",      "equality"};
  return names;
}

ExperimentConfig parse_config(const ordered_json& j) {
  require(j.is_object(), Errc::parse_error, "config must be a JSON object");

  const ordered_json& js = get_field(j, "initial_state");
  PureState initial(get_doubles(get_field(js, "probs"), "probs"),
                    get_doubles(get_field(js, "phases"), "phases"));
  Observable observable(
      get_doubles(get_field(get_field(j, "observable"), "eigenvalues"), "eigenvalues"));
  UnravellingModel model = parse_model(get_field(j, "model"));
  ModeConfig mode = parse_mode(get_field(j, "mode"));

  ExperimentConfig cfg{std::move(initial), std::move(observable), std::move(model),
                       std::move(mode),    {},                    "report.json",
                       "trajectories.csv", {}};

  if (j.contains("checks")) {
    for (const auto& c : j.at("checks")) {
      const std::string name = c.get<std::string>();
      require(std::find(known_checks().begin(), known_checks().end(), name) !=
                  known_checks().end(),
              Errc::parse_error, "unknown check '" + name + "'");
      cfg.checks.push_back(name);
    }
  } else {
    cfg.checks = known_checks();
  }

  if (j.contains("output")) {
    const ordered_json& jo = j.at("output");
    if (jo.contains("report")) cfg.report_path = jo.at("report").get<std::string>();
    if (jo.contains("trajectories"))
      cfg.trajectories_path = jo.at("trajectories").get<std::string>();
  }

  if (j.contains("sweep")) {
    const ordered_json& jsw = j.at("sweep");
    const std::string kind = get_field(jsw, "kind").get<std::string>();
    if (kind == "kappa") {
      require(std::holds_alternative<DirichletMartingale>(cfg.model), Errc::invalid_argument,
              "kappa sweep needs a dirichlet_martingale model");
      cfg.sweep.kind = SweepConfig::Kind::kappa;
      cfg.sweep.kappa_values = get_doubles(get_field(jsw, "values"), "sweep values");
      require(!cfg.sweep.kappa_values.empty(), Errc::parse_error, "sweep values are empty");
      for (double k : cfg.sweep.kappa_values)
        require(k > 0.0, Errc::invalid_argument, "sweep concentrations must be positive");
    } else if (kind == "partition_chain") {
      require(std::holds_alternative<PartitionConditioning>(cfg.model), Errc::invalid_argument,
              "partition_chain sweep needs a partition_conditioning model");
      cfg.sweep.kind = SweepConfig::Kind::partition_chain;
      for (const auto& jp : get_field(jsw, "partitions"))
        cfg.sweep.partitions.push_back(parse_blocks(jp));
      require(!cfg.sweep.partitions.empty(), Errc::parse_error, "sweep partitions are empty");
    } else {
      fail(Errc::parse_error, "unknown sweep kind '" + kind + "'");
    }
  }

  validate_model(cfg.model, cfg.initial);
  require(cfg.observable.dim() == cfg.initial.dim(), Errc::dimension_mismatch,
          "observable does not match state dimension");
  return cfg;
}

nlohmann::ordered_json serialize_config(const ExperimentConfig& cfg) {
  ordered_json j;
  j["initial_state"] = {{"probs", cfg.initial.probs()}, {"phases", cfg.initial.phases()}};
  j["observable"] = {{"eigenvalues", cfg.observable.eigenvalues()}};
  j["model"] = model_json(cfg.model);
  if (cfg.mode.exact) {
    j["mode"] = {{"kind", "exact"}};
  } else {
    j["mode"] = {{"kind", "monte_carlo"}, {"trials", cfg.mode.trials}, {"seeds", cfg.mode.seeds}};
  }
  j["checks"] = cfg.checks;
  j["output"] = {{"report", cfg.report_path}, {"trajectories", cfg.trajectories_path}};
  if (cfg.sweep.kind == SweepConfig::Kind::kappa)
    j["sweep"] = {{"kind", "kappa"}, {"values", cfg.sweep.kappa_values}};
  else if (cfg.sweep.kind == SweepConfig::Kind::partition_chain) {
    ordered_json parts = ordered_json::array();
    for (const auto& p : cfg.sweep.partitions) parts.push_back(blocks_json(p));
    j["sweep"] = {{"kind", "partition_chain"}, {"partitions", parts}};
  }
  return j;
}

void apply_overrides(ExperimentConfig& cfg, const RunOverrides& overrides) {
  if (overrides.mode) {
    if (*overrides.mode == "exact") {
      cfg.mode.exact = true;
    } else if (*overrides.mode == "mc") {
      cfg.mode.exact = false;
    } else {
      fail(Errc::invalid_argument, "mode override must be 'exact' or 'mc'");
    }
  }
  if (overrides.trials) {
    require(*overrides.trials >= 1000, Errc::invalid_argument,
            "Monte Carlo needs at least 1000 trials");
    cfg.mode.trials = *overrides.trials;
  }
  if (overrides.seed) {
    cfg.mode.seeds = {*overrides.seed, *overrides.seed + 1, *overrides.seed + 2};
  }
  if (!cfg.mode.exact) {
    require(cfg.mode.trials >= 1000, Errc::invalid_argument,
            "Monte Carlo needs at least 1000 trials");
    require(!cfg.mode.seeds.empty(), Errc::invalid_argument,
            "Monte Carlo mode needs at least one seed");
  }
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  const PreparedModel prepared(cfg.model, cfg.initial);

  ordered_json report;
  report["library"] = {{"name", kLibraryName}, {"version", kLibraryVersion}};
  report["config"] = serialize_config(cfg);

  {
    const DensityMatrix rho0 = density_of(cfg.initial);
    ordered_json initial;
    initial["density"] = complex_matrix_json(rho0.entries());
    initial["shannon_entropy"] = shannon_entropy(cfg.initial.probs());
    initial["variance"] = variance(cfg.initial.probs(), cfg.observable);
    initial["vn_entropy"] = vn_entropy(rho0);
    report["initial"] = std::move(initial);
  }

  ordered_json runs = ordered_json::array();
  if (cfg.mode.exact) {
    ordered_json run;
    run["seed"] = nullptr;
    run["estimates"] = estimates_json(
        estimate(prepared, &cfg.observable, RunMode::exact(), kQuantityAll));
    runs.push_back(std::move(run));
  } else {
    for (std::uint64_t seed : cfg.mode.seeds) {
      ordered_json run;
      run["seed"] = seed;
      run["estimates"] = estimates_json(estimate(
          prepared, &cfg.observable, RunMode::monte_carlo(cfg.mode.trials, seed), kQuantityAll));
      runs.push_back(std::move(run));
    }
  }
  report["runs"] = std::move(runs);

  const VerifyMode vmode = cfg.mode.exact
                               ? VerifyMode::exact_mode()
                               : VerifyMode::statistical(cfg.mode.trials, cfg.mode.seeds);
  bool any_failed = false;
  ordered_json checks = ordered_json::array();
  for (const std::string& name : cfg.checks) {
    std::vector<PropositionReport> reps;
    if (name == "mean_condition") {
      reps.push_back(check_mean_condition(cfg.model, cfg.initial, vmode));
    } else if (name == "P1chain") {
      reps.push_back(check_decoherence_chain(cfg.model, cfg.initial, vmode));
    } else if (name == "P3") {
      reps.push_back(check_uncertainty_reduction(cfg.model, cfg.initial, cfg.observable, vmode));
    } else if (name == "P4") {
      reps.push_back(check_entropy_gain(cfg.model, cfg.initial, vmode));
    } else if (name == "vN") {
      reps.push_back(check_vn_entropy_increase(cfg.model, cfg.initial, vmode));
    } else {
      reps = check_equality_cases(cfg.initial);
    }
    for (const PropositionReport& rep : reps) {
      any_failed = any_failed || rep.failed();
      checks.push_back(report_json(rep));
    }
  }
  report["checks"] = std::move(checks);

  ExperimentResult result;
  if (cfg.sweep.kind != SweepConfig::Kind::none)
    result.trajectories_csv = trajectories_csv(cfg);

  result.exit_status = any_failed ? 1 : 0;
  report["exit_status"] = result.exit_status;
  report["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  result.report = std::move(report);
  return result;
}

int run_experiment_file(const std::string& config_path, const RunOverrides& overrides,
                        std::ostream* log) {
  const bool quiet = overrides.quiet;
  try {
    std::ifstream in(config_path);
    require(in.good(), Errc::io_error, "cannot open config '" + config_path + "'");
    ordered_json j;
    try {
      j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      fail(Errc::parse_error, std::string("config is not valid JSON: ") + e.what());
    }

    ExperimentConfig cfg = parse_config(j);
    apply_overrides(cfg, overrides);
    const ExperimentResult result = run_experiment(cfg);

    namespace fs = std::filesystem;
    auto resolve = [&](const std::string& name) {
      if (!overrides.output_dir) return fs::path(name);
      return fs::path(*overrides.output_dir) / name;
    };
    if (overrides.output_dir) fs::create_directories(fs::path(*overrides.output_dir));

    const fs::path report_path = resolve(cfg.report_path);
    {
      std::ofstream out(report_path);
      require(out.good(), Errc::io_error, "cannot write '" + report_path.string() + "'");
      out << result.report.dump(2) << '\n';
      require(out.good(), Errc::io_error, "failed writing '" + report_path.string() + "'");
    }
    if (result.trajectories_csv) {
      const fs::path csv_path = resolve(cfg.trajectories_path);
      std::ofstream out(csv_path);
      require(out.good(), Errc::io_error, "cannot write '" + csv_path.string() + "'");
      out << *result.trajectories_csv;
      require(out.good(), Errc::io_error, "failed writing '" + csv_path.string() + "'");
      if (log && !quiet) *log << "trajectories: " << csv_path.string() << '\n';
    }

    if (log && !quiet) {
      for (const auto& check : result.report.at("checks"))
        *log << check.at("id").get<std::string>() << ": "
             << check.at("verdict").get<std::string>() << '\n';
      *log << "report: " << report_path.string() << '\n';
    }
    return result.exit_status;
  } catch (const std::exception& e) {
    if (log) *log << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace decoh
