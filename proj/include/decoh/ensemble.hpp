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
#include <optional>
#include <vector>

#include "decoh/matrix.hpp"
#include "decoh/quantum_state.hpp"
#include "decoh/unravelling.hpp"

namespace decoh {

struct ScalarEstimate {
  double value = 0.0;
  double std_err = 0.0;
  bool exact = true;
  std::uint64_t trials = 0;
};

struct VectorEstimate {
  std::vector<double> value;
  std::vector<double> std_err;
  bool exact = true;
  std::uint64_t trials = 0;
};

struct MatrixEstimate {
  ComplexMatrix value;
  RealMatrix std_err_re;
  RealMatrix std_err_im;
  bool exact = true;
  std::uint64_t trials = 0;
};

struct RealMatrixEstimate {
  RealMatrix value;
  RealMatrix std_err;
  bool exact = true;
  std::uint64_t trials = 0;
};

enum QuantityMask : unsigned {
  kQuantityDensity = 1u,
  kQuantityCross = 2u,
  kQuantityShannon = 4u,
  kQuantityVariance = 8u,
  kQuantityPiMean = 16u,
  kQuantityAll = 31u,
};

struct EnsembleSummary {
  std::optional<MatrixEstimate> density;      // E[o_ij], o_ij = sqrt(pi_i pi_j) e^{i(phi_i-phi_j)}
  std::optional<RealMatrixEstimate> cross;    // E[sqrt(pi_i pi_j)]
  std::optional<ScalarEstimate> shannon;      // E[H(pi)]
  std::optional<ScalarEstimate> variance;     // E[var_pi(obs)]
  std::optional<VectorEstimate> pi_mean;      // E[pi_i]
};

// Computes the quantities selected by mask in one pass over the ensemble.
//
// Exact mode evaluates the finite law (or the phase-only closed form) and
// reports zero standard errors. Monte Carlo mode averages mode.trials draws
// (>= 1000) with per-component standard errors. MC trials are grouped into
// fixed blocks of 4096; each block owns a Welford accumulator and the blocks
// are merged along a fixed binary tree over the block index, so the result
// is bit-identical no matter how many worker threads execute the blocks.
// Worker count comes from DECOH_WORKERS (default: hardware concurrency).
//
// obs may be null unless kQuantityVariance is requested.
EnsembleSummary estimate(const PreparedModel& prepared, const Observable* obs, const RunMode& mode,
                         unsigned mask);

MatrixEstimate average_density(const PreparedModel& prepared, const RunMode& mode);
RealMatrixEstimate cross_term_matrix(const PreparedModel& prepared, const RunMode& mode);
ScalarEstimate expected_shannon(const PreparedModel& prepared, const RunMode& mode);
ScalarEstimate expected_variance(const PreparedModel& prepared, const Observable& obs,
                                 const RunMode& mode);
VectorEstimate pi_mean(const PreparedModel& prepared, const RunMode& mode);

int mc_worker_count();

}  // namespace decoh
