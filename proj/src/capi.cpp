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

#include "decoh/decoh.h"

#include <cstring>
#include <iostream>
#include <new>
#include <string>

#include <json.hpp>

#include "decoh/ensemble.hpp"
#include "decoh/error.hpp"
#include "decoh/experiment.hpp"
#include "decoh/quantum_state.hpp"
#include "decoh/unravelling.hpp"
#include "decoh/verifier.hpp"
#include "decoh/version.hpp"

using nlohmann::ordered_json;

namespace {

thread_local std::string g_last_error;

decoh_status status_of(const decoh::Error& e) {
  switch (e.code()) {
    case decoh::Errc::invalid_argument:
      return DECOH_ERR_INVALID_ARGUMENT;
    case decoh::Errc::dimension_mismatch:
      return DECOH_ERR_DIMENSION_MISMATCH;
    case decoh::Errc::unsupported:
      return DECOH_ERR_UNSUPPORTED;
    case decoh::Errc::parse_error:
      return DECOH_ERR_PARSE;
    case decoh::Errc::io_error:
      return DECOH_ERR_IO;
  }
  return DECOH_ERR_INTERNAL;
}

template <class Fn>
decoh_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return DECOH_OK;
  } catch (const decoh::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return DECOH_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DECOH_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DECOH_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require_c(bool cond, const char* what) {
  decoh::require(cond, decoh::Errc::invalid_argument, what);
}

ordered_json parse_json_arg(const char* text, const char* what) {
  require_c(text != nullptr, "null JSON argument");
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    decoh::fail(decoh::Errc::parse_error, std::string(what) + ": " + e.what());
  }
}

decoh::RunMode parse_run_mode_single(const ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exact") return decoh::RunMode::exact();
  decoh::require(kind == "monte_carlo" || kind == "mc", decoh::Errc::parse_error,
                 "mode kind must be 'exact' or 'monte_carlo'");
  return decoh::RunMode::monte_carlo(j.at("trials").get<std::uint64_t>(),
                                     j.at("seed").get<std::uint64_t>());
}

decoh::VerifyMode parse_verify_mode(const ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exact") return decoh::VerifyMode::exact_mode();
  decoh::require(kind == "monte_carlo" || kind == "mc", decoh::Errc::parse_error,
                 "mode kind must be 'exact' or 'monte_carlo'");
  std::vector<std::uint64_t> seeds;
  for (const auto& s : j.at("seeds")) seeds.push_back(s.get<std::uint64_t>());
  return decoh::VerifyMode::statistical(j.at("trials").get<std::uint64_t>(), std::move(seeds));
}

ordered_json matrix_json(const decoh::ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json matrix_json(const decoh::RealMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json witness_json(const decoh::Witness& w) {
  return {{"name", w.name},   {"left", w.left},     {"relation", w.relation},
          {"right", w.right}, {"margin", w.margin}, {"holds", w.holds}};
}

ordered_json report_json(const decoh::PropositionReport& rep) {
  ordered_json out;
  out["id"] = rep.id;
  out["verdict"] = decoh::to_string(rep.verdict);
  out["note"] = rep.note;
  out["exact"] = rep.exact;
  out["trials"] = rep.trials;
  out["seeds"] = rep.seeds;
  ordered_json ws = ordered_json::array();
  for (const auto& w : rep.witnesses) ws.push_back(witness_json(w));
  out["witnesses"] = std::move(ws);
  return out;
}

}  // namespace

struct decoh_state {
  decoh::PureState state;
};

struct decoh_model {
  decoh::PreparedModel prepared;
};

extern "C" {

const char* decoh_version(void) { return decoh::kLibraryVersion; }

const char* decoh_last_error(void) { return g_last_error.c_str(); }

decoh_status decoh_state_create(const double* probs, const double* phases, size_t dim,
                                decoh_state** out) {
  return guarded([&] {
    require_c(probs != nullptr && phases != nullptr && out != nullptr, "null argument");
    *out = new decoh_state{decoh::PureState(std::vector<double>(probs, probs + dim),
                                            std::vector<double>(phases, phases + dim))};
  });
}

void decoh_state_destroy(decoh_state* state) { delete state; }

size_t decoh_state_dim(const decoh_state* state) { return state ? state->state.dim() : 0; }

decoh_status decoh_state_density(const decoh_state* state, double* out_reim) {
  return guarded([&] {
    require_c(state != nullptr && out_reim != nullptr, "null argument");
    const decoh::DensityMatrix rho = decoh::density_of(state->state);
    const std::size_t n = rho.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        out_reim[2 * (i * n + j)] = rho(i, j).real();
        out_reim[2 * (i * n + j) + 1] = rho(i, j).imag();
      }
  });
}

decoh_status decoh_shannon_entropy(const double* probs, size_t dim, double* out) {
  return guarded([&] {
    require_c(probs != nullptr && out != nullptr, "null argument");
    *out = decoh::shannon_entropy(std::span<const double>(probs, dim));
  });
}

decoh_status decoh_vn_entropy(const double* rho_reim, size_t dim, double* out) {
  return guarded([&] {
    require_c(rho_reim != nullptr && out != nullptr, "null argument");
    decoh::ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        m(i, j) = decoh::cplx(rho_reim[2 * (i * dim + j)], rho_reim[2 * (i * dim + j) + 1]);
    *out = decoh::vn_entropy(decoh::DensityMatrix(std::move(m)));
  });
}

decoh_status decoh_model_create_json(const decoh_state* state, const char* model_json,
                                     decoh_model** out) {
  return guarded([&] {
    require_c(state != nullptr && out != nullptr, "null argument");
    // Reuse the experiment schema: wrap the model object in a minimal config
    // parse by deferring to parse_config's model section.
    const ordered_json jm = parse_json_arg(model_json, "model JSON");
    ordered_json cfg;
    cfg["initial_state"] = {{"probs", state->state.probs()}, {"phases", state->state.phases()}};
    // Observable is irrelevant for model construction; synthesize indices.
    std::vector<double> eig(state->state.dim());
    for (std::size_t i = 0; i < eig.size(); ++i) eig[i] = static_cast<double>(i);
    cfg["observable"] = {{"eigenvalues", eig}};
    cfg["model"] = jm;
    cfg["mode"] = {{"kind", "exact"}};
    const decoh::ExperimentConfig parsed = decoh::parse_config(cfg);
    *out = new decoh_model{decoh::PreparedModel(parsed.model, parsed.initial)};
  });
}

void decoh_model_destroy(decoh_model* model) { delete model; }

decoh_status decoh_sample(const decoh_model* model, uint64_t seed, uint64_t trial_index,
                          double* pi_out, double* phi_out) {
  return guarded([&] {
    require_c(model != nullptr && pi_out != nullptr && phi_out != nullptr, "null argument");
    const decoh::Draw draw = model->prepared.sample(seed, trial_index);
    for (std::size_t i = 0; i < draw.pi.size(); ++i) {
      pi_out[i] = draw.pi[i];
      phi_out[i] = draw.phi[i];
    }
  });
}

decoh_status decoh_estimate_json(const decoh_model* model, const char* request_json,
                                 char** result_json) {
  return guarded([&] {
    require_c(model != nullptr && result_json != nullptr, "null argument");
    const ordered_json req = parse_json_arg(request_json, "estimate request");
    const decoh::RunMode mode = parse_run_mode_single(req.at("mode"));

    unsigned mask = 0;
    for (const auto& q : req.at("quantities")) {
      const std::string name = q.get<std::string>();
      if (name == "average_density")
        mask |= decoh::kQuantityDensity;
      else if (name == "cross_term_matrix")
        mask |= decoh::kQuantityCross;
      else if (name == "expected_shannon")
        mask |= decoh::kQuantityShannon;
      else if (name == "expected_variance")
        mask |= decoh::kQuantityVariance;
      else if (name == "pi_mean")
        mask |= decoh::kQuantityPiMean;
      else
        decoh::fail(decoh::Errc::parse_error, "unknown quantity '" + name + "'");
    }

    std::optional<decoh::Observable> obs;
    if (req.contains("observable"))
      obs.emplace(req.at("observable").at("eigenvalues").get<std::vector<double>>());

    const decoh::EnsembleSummary s =
        decoh::estimate(model->prepared, obs ? &*obs : nullptr, mode, mask);

    ordered_json out;
    if (s.density) {
      out["average_density"] = {{"value", matrix_json(s.density->value)},
                                {"std_err_re", matrix_json(s.density->std_err_re)},
                                {"std_err_im", matrix_json(s.density->std_err_im)},
                                {"exact", s.density->exact},
                                {"trials", s.density->trials}};
    }
    if (s.cross) {
      out["cross_term_matrix"] = {{"value", matrix_json(s.cross->value)},
                                  {"std_err", matrix_json(s.cross->std_err)},
                                  {"exact", s.cross->exact},
                                  {"trials", s.cross->trials}};
    }
    if (s.shannon)
      out["expected_shannon"] = {{"value", s.shannon->value},
                                 {"std_err", s.shannon->std_err},
                                 {"exact", s.shannon->exact},
                                 {"trials", s.shannon->trials}};
    if (s.variance)
      out["expected_variance"] = {{"value", s.variance->value},
                                  {"std_err", s.variance->std_err},
                                  {"exact", s.variance->exact},
                                  {"trials", s.variance->trials}};
    if (s.pi_mean)
      out["pi_mean"] = {{"value", s.pi_mean->value},
                        {"std_err", s.pi_mean->std_err},
                        {"exact", s.pi_mean->exact},
                        {"trials", s.pi_mean->trials}};
    *result_json = copy_string(out.dump(2));
  });
}

decoh_status decoh_verify_json(const decoh_model* model, const char* request_json,
                               char** out_report_json) {
  return guarded([&] {
    require_c(model != nullptr && out_report_json != nullptr, "null argument");
    const ordered_json req = parse_json_arg(request_json, "verify request");
    const std::string check = req.at("check").get<std::string>();
    const decoh::VerifyMode mode = parse_verify_mode(req.at("mode"));
    const decoh::UnravellingModel& m = model->prepared.model();
    const decoh::PureState& s = model->prepared.initial();

    ordered_json out;
    if (check == "mean_condition") {
      out = report_json(decoh::check_mean_condition(m, s, mode));
    } else if (check == "P1chain") {
      out = report_json(decoh::check_decoherence_chain(m, s, mode));
    } else if (check == "P3") {
      const decoh::Observable obs(
          req.at("observable").at("eigenvalues").get<std::vector<double>>());
      out = report_json(decoh::check_uncertainty_reduction(m, s, obs, mode));
    } else if (check == "P4") {
      out = report_json(decoh::check_entropy_gain(m, s, mode));
    } else if (check == "vN") {
      out = report_json(decoh::check_vn_entropy_increase(m, s, mode));
    } else if (check == "equality") {
      out = ordered_json::array();
      for (const auto& rep : decoh::check_equality_cases(s)) out.push_back(report_json(rep));
    } else {
      decoh::fail(decoh::Errc::parse_error, "unknown check '" + check + "'");
    }
    *out_report_json = copy_string(out.dump(2));
  });
}

decoh_status decoh_run_experiment_json(const char* config_json, char** out_report_json) {
  return guarded([&] {
    require_c(out_report_json != nullptr, "null argument");
    const ordered_json j = parse_json_arg(config_json, "experiment config");
    const decoh::ExperimentConfig cfg = decoh::parse_config(j);
    const decoh::ExperimentResult result = decoh::run_experiment(cfg);
    *out_report_json = copy_string(result.report.dump(2));
  });
}

int decoh_run_experiment_file(const char* config_path, const decoh_run_options* options) {
  if (config_path == nullptr) {
    g_last_error = "null config path";
    return 2;
  }
  decoh::RunOverrides ov;
  if (options != nullptr) {
    if (options->output_dir != nullptr) ov.output_dir = options->output_dir;
    if (options->has_seed_override) ov.seed = options->seed_override;
    if (options->mode_override != nullptr) ov.mode = options->mode_override;
    if (options->has_trials_override) ov.trials = options->trials_override;
    ov.quiet = options->quiet != 0;
  }
  const int rc = decoh::run_experiment_file(config_path, ov, &std::cerr);
  g_last_error = rc == 2 ? "experiment failed; see log output" : "";
  return rc;
}

void decoh_string_free(char* s) { delete[] s; }

}  // extern "C"
