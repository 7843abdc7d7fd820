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

#include "decoh/quantum_state.hpp"

#include <algorithm>
#include <cmath>

#include "decoh/error.hpp"
#include "decoh/linalg.hpp"

namespace decoh {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_phase(double phi) {
  require(std::isfinite(phi), Errc::invalid_argument, "phase must be finite");
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r == kTwoPi) r = 0.0;
  return r;
}

}  // namespace

PureState::PureState(std::vector<double> probs, std::vector<double> phases)
    : probs_(std::move(probs)), phases_(std::move(phases)) {
  require(probs_.size() >= 2, Errc::invalid_argument, "state needs at least two outcomes");
  require(phases_.size() == probs_.size(), Errc::dimension_mismatch,
          "phase count does not match outcome count");
  double sum = 0.0;
  for (double p : probs_) {
    require(std::isfinite(p) && p >= 1e-12, Errc::invalid_argument,
            "outcome probabilities must be at least 1e-12");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-12, Errc::invalid_argument,
          "outcome probabilities must sum to one");
  for (double& phi : phases_) phi = wrap_phase(phi);
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  require(entries_.dim() >= 1, Errc::invalid_argument, "empty density matrix");
  require(hermiticity_defect(entries_) <= 1e-12, Errc::invalid_argument,
          "density matrix is not Hermitian within 1e-12");
  const cplx tr = trace(entries_);
  require(std::abs(tr - 1.0) <= 1e-12, Errc::invalid_argument,
          "density matrix trace must be one within 1e-12");
  const std::vector<double> eig = hermitian_eigenvalues(entries_, 1e-9);
  require(eig.back() >= -1e-10, Errc::invalid_argument,
          "density matrix has an eigenvalue below -1e-10");
}

Observable::Observable(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  require(eigenvalues_.size() >= 2, Errc::invalid_argument,
          "observable needs at least two eigenvalues");
  for (double v : eigenvalues_)
    require(std::isfinite(v), Errc::invalid_argument, "observable eigenvalues must be finite");
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i)
    for (std::size_t j = i + 1; j < eigenvalues_.size(); ++j)
      require(std::abs(eigenvalues_[i] - eigenvalues_[j]) >= 1e-9, Errc::invalid_argument,
              "observable eigenvalues closer than 1e-9");
}

DensityMatrix density_of(const PureState& state) {
  const std::size_t n = state.dim();
  ComplexMatrix rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = state.probs()[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double mag = std::sqrt(state.probs()[i] * state.probs()[j]);
      const double d = state.phases()[i] - state.phases()[j];
      rho(i, j) = cplx(mag * std::cos(d), mag * std::sin(d));
      rho(j, i) = std::conj(rho(i, j));
    }
  }
  return DensityMatrix(std::move(rho));
}

RealMatrix offdiag_magnitudes(const DensityMatrix& rho) {
  RealMatrix out(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j)
      if (i != j) out(i, j) = std::abs(rho(i, j));
  return out;
}

std::vector<double> eigenvalues(const DensityMatrix& rho) {
  return hermitian_eigenvalues(rho.entries(), 1e-9);
}

double vn_entropy(const DensityMatrix& rho) {
  double h = 0.0;
  for (double lambda : eigenvalues(rho)) {
    require(lambda >= -1e-10, Errc::invalid_argument, "eigenvalue below -1e-10");
    if (lambda <= 0.0) continue;
    h -= lambda * std::log(lambda);
  }
  return h;
}

double shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    require(std::isfinite(p) && p >= 0.0, Errc::invalid_argument,
            "probabilities must be non-negative");
    if (p == 0.0) continue;
    h -= p * std::log(p);
  }
  return h;
}

double variance(std::span<const double> probs, const Observable& obs) {
  require(probs.size() == obs.dim(), Errc::dimension_mismatch,
          "distribution does not match observable");
  double mean = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) mean += probs[i] * obs.eigenvalues()[i];
  double var = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double d = obs.eigenvalues()[i] - mean;
    var += probs[i] * d * d;
  }
  return var;
}

}  // namespace decoh
