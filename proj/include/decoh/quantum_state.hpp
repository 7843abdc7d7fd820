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

#include <span>
#include <vector>

#include "decoh/matrix.hpp"

namespace decoh {

// Pure state in the preferred basis, stored as outcome probabilities plus
// phases. Probabilities must be strictly positive (>= 1e-12) and sum to one
// within 1e-12; phases are reduced to [0, 2*pi). At least two outcomes.
class PureState {
 public:
  PureState(std::vector<double> probs, std::vector<double> phases);

  std::size_t dim() const noexcept { return probs_.size(); }
  const std::vector<double>& probs() const noexcept { return probs_; }
  const std::vector<double>& phases() const noexcept { return phases_; }

 private:
  std::vector<double> probs_;
  std::vector<double> phases_;
};

// Density matrix: Hermitian within 1e-12, unit trace within 1e-12, and no
// eigenvalue below -1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);

  std::size_t dim() const noexcept { return entries_.dim(); }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  cplx operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

 private:
  ComplexMatrix entries_;
};

// Diagonal observable in the preferred basis; eigenvalues pairwise distinct
// with minimum gap 1e-9.
class Observable {
 public:
  explicit Observable(std::vector<double> eigenvalues);

  std::size_t dim() const noexcept { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  std::vector<double> eigenvalues_;
};

// rho_ij = sqrt(p_i p_j) e^{i(theta_i - theta_j)}, the rank-one projector.
DensityMatrix density_of(const PureState& state);

RealMatrix offdiag_magnitudes(const DensityMatrix& rho);

// Descending eigenvalues; wraps the Jacobi solver with the density tolerance.
std::vector<double> eigenvalues(const DensityMatrix& rho);

// -sum lambda log lambda in nats; eigenvalues in [-1e-10, 0) clamp to zero,
// anything lower is an error.
double vn_entropy(const DensityMatrix& rho);

// -sum p log p in nats with 0 log 0 = 0; negative entries are an error.
double shannon_entropy(std::span<const double> probs);

// Variance of the observable under the given outcome distribution.
double variance(std::span<const double> probs, const Observable& obs);

}  // namespace decoh
