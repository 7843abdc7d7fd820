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

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "decoh/prob_space.hpp"
#include "decoh/quantum_state.hpp"

namespace decoh {

// One realization of the random transformation: outcome probabilities pi and
// phases phi, one entry per basis index.
struct Draw {
  std::vector<double> pi;
  std::vector<double> phi;
};

// Distribution of a single random phase offset.
struct PhaseSpec {
  enum class Kind { degenerate, uniform_full, uniform_symmetric };
  Kind kind = Kind::degenerate;
  double half_width = 0.0;  // uniform_symmetric: offset ~ U(-half_width, half_width)

  static PhaseSpec degenerate() { return {Kind::degenerate, 0.0}; }
  static PhaseSpec uniform_full() { return {Kind::uniform_full, 0.0}; }
  static PhaseSpec uniform_symmetric(double a) { return {Kind::uniform_symmetric, a}; }

  // E[e^{i offset}], real for all supported kinds.
  double characteristic() const;
};

// pi is the indicator of a measured outcome drawn from the state's
// probabilities; phases stay at their initial values.
struct ProjectiveMeasurement {};

// pi is the conditional outcome distribution given the block of a partition,
// on an explicit finite space carrying the outcome variable x.
struct PartitionConditioning {
  FiniteProbSpace space;
  RandomVariable x;
  Partition partition;
};

// pi stays at the initial probabilities; phases pick up independent random
// offsets. One spec broadcasts to every index.
struct PhaseOnly {
  std::vector<PhaseSpec> specs;
};

// pi ~ Dirichlet(concentration * p), whose mean is exactly p. Optional
// linear phase coupling phi_i = theta_i + gamma * (pi_i - p_i).
struct DirichletMartingale {
  double concentration = 4.0;
  bool linear_coupling = false;
  double gamma = 0.0;
};

// Deliberately broken stub: pi is always uniform, which violates the mean
// condition whenever p is not uniform. Exists to prove the checks can fail.
struct AdversarialUniform {};

using UnravellingModel = std::variant<ProjectiveMeasurement, PartitionConditioning, PhaseOnly,
                                      DirichletMartingale, AdversarialUniform>;

std::string model_name(const UnravellingModel& model);

// Structural compatibility of model and state; throws on mismatch.
void validate_model(const UnravellingModel& model, const PureState& initial);

bool phase_only_all_degenerate(const PhaseOnly& model);

// Closed-form E[sqrt(pi_i pi_j)] for pi ~ Dirichlet(kappa * p), i != j.
double dirichlet_cross_moment(double kappa, double pi, double pj);

// Closed-form E[var_pi(x)] / var_p(x) for pi ~ Dirichlet(kappa * p).
double dirichlet_variance_factor(double kappa);

// Finite law of (pi, phi): points sorted by descending weight. Only models
// with finite support have one; others throw Errc::unsupported.
struct LawPoint {
  double weight = 0.0;
  std::vector<double> pi;
  std::vector<double> phi;
};

struct DiscreteLaw {
  std::vector<LawPoint> points;
};

// Model with per-state tables resolved, ready to sample. sample(seed, trial)
// is a pure function of its arguments, so trials can be evaluated in any
// order or in parallel without changing a single bit of the result.
class PreparedModel {
 public:
  PreparedModel(UnravellingModel model, PureState initial);

  std::size_t dim() const noexcept { return initial_.dim(); }
  const UnravellingModel& model() const noexcept { return model_; }
  const PureState& initial() const noexcept { return initial_; }

  bool finite_support() const noexcept { return finite_support_; }
  // False when the law is concentrated on a single point.
  bool randomized() const noexcept { return randomized_; }

  void sample(std::uint64_t seed, std::uint64_t trial, Draw& out) const;
  Draw sample(std::uint64_t seed, std::uint64_t trial) const;

  DiscreteLaw exact_law() const;

 private:
  UnravellingModel model_;
  PureState initial_;
  bool finite_support_ = false;
  bool randomized_ = false;

  // resolved tables
  std::vector<double> cum_;                      // cumulative outcome/atom weights
  std::vector<std::vector<double>> block_pi_;    // conditional distribution per block
  std::vector<PhaseSpec> specs_;                 // one per index
  std::vector<double> alpha_;                    // Dirichlet shapes
};

struct RunMode {
  enum class Kind { exact, monte_carlo };
  Kind kind = Kind::exact;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  static RunMode exact() { return {Kind::exact, 0, 0}; }
  static RunMode monte_carlo(std::uint64_t trials, std::uint64_t seed) {
    return {Kind::monte_carlo, trials, seed};
  }
};

struct MeanConditionResult {
  bool holds = false;
  bool exact = true;
  std::uint64_t trials = 0;
  std::vector<double> mean;     // E[pi_i]
  std::vector<double> std_err;  // zero in exact mode
  std::vector<double> margin;   // acceptance threshold per component
  double worst_deviation = 0.0;
};

// Checks E[pi_i] = p_i. Exact mode uses the finite law or the constant pi of
// phase-only models and requires deviations within max(tol, 1e-12); it throws
// Errc::unsupported on continuous laws. Monte Carlo mode accepts
// max(tol, 3 * std_err).
MeanConditionResult verify_mean_condition(const PreparedModel& prepared, const RunMode& mode,
                                          double tol = 0.0);

}  // namespace decoh
