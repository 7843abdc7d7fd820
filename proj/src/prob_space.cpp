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

#include "decoh/prob_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "decoh/error.hpp"
#include "decoh/linalg.hpp"

namespace decoh {

FiniteProbSpace::FiniteProbSpace(std::vector<double> weights) : weights_(std::move(weights)) {
  require(!weights_.empty(), Errc::invalid_argument, "space needs at least one atom");
  double sum = 0.0;
  for (double w : weights_) {
    require(std::isfinite(w) && w >= 0.0, Errc::invalid_argument,
            "atom weights must be nonnegative");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-12, Errc::invalid_argument,
          "atom weights must sum to one within 1e-12");
  if (sum != 1.0)
    for (double& w : weights_) w /= sum;
  sum_order_.resize(weights_.size());
  std::iota(sum_order_.begin(), sum_order_.end(), std::size_t{0});
  std::stable_sort(sum_order_.begin(), sum_order_.end(),
                   [&](std::size_t a, std::size_t b) { return weights_[a] > weights_[b]; });
}

FiniteProbSpace build_space(std::size_t atom_count, std::vector<double> weights) {
  require(weights.size() == atom_count, Errc::dimension_mismatch,
          "weight count does not match atom count");
  return FiniteProbSpace(std::move(weights));
}

double FiniteProbSpace::expect(std::span<const double> values) const {
  require(values.size() == weights_.size(), Errc::dimension_mismatch,
          "value count does not match atom count");
  double s = 0.0;
  for (std::size_t a : sum_order_) s += weights_[a] * values[a];
  return s;
}

cplx FiniteProbSpace::expect(std::span<const cplx> values) const {
  require(values.size() == weights_.size(), Errc::dimension_mismatch,
          "value count does not match atom count");
  cplx s = 0.0;
  for (std::size_t a : sum_order_) s += weights_[a] * values[a];
  return s;
}

std::vector<double> distinct_levels(const RandomVariable& x) {
  std::vector<double> levels = x.values;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

Partition::Partition(std::vector<std::vector<std::size_t>> blocks, std::size_t atom_count)
    : blocks_(std::move(blocks)) {
  require(atom_count > 0, Errc::invalid_argument, "partition over empty space");
  block_of_.assign(atom_count, atom_count);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    require(!blocks_[b].empty(), Errc::invalid_argument, "partition block is empty");
    for (std::size_t atom : blocks_[b]) {
      require(atom < atom_count, Errc::invalid_argument, "partition names an unknown atom");
      require(block_of_[atom] == atom_count, Errc::invalid_argument,
              "partition blocks overlap");
      block_of_[atom] = b;
    }
  }
  for (std::size_t atom = 0; atom < atom_count; ++atom)
    require(block_of_[atom] != atom_count, Errc::invalid_argument,
            "partition does not cover every atom");
}

Partition Partition::trivial(std::size_t atom_count) {
  std::vector<std::size_t> all(atom_count);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return Partition({all}, atom_count);
}

Partition Partition::finest(std::size_t atom_count) {
  std::vector<std::vector<std::size_t>> blocks(atom_count);
  for (std::size_t a = 0; a < atom_count; ++a) blocks[a] = {a};
  return Partition(std::move(blocks), atom_count);
}

bool Partition::refines(const Partition& coarser) const {
  require(atom_count() == coarser.atom_count(), Errc::dimension_mismatch,
          "partitions live on different spaces");
  for (const auto& block : blocks_) {
    const std::size_t target = coarser.block_of(block.front());
    for (std::size_t atom : block)
      if (coarser.block_of(atom) != target) return false;
  }
  return true;
}

std::vector<RandomVariable> condition(const FiniteProbSpace& space, const RandomVariable& x,
                                      const Partition& partition) {
  const std::size_t m = space.atom_count();
  require(x.values.size() == m, Errc::dimension_mismatch, "variable does not match space");
  require(partition.atom_count() == m, Errc::dimension_mismatch, "partition does not match space");

  const std::vector<double> levels = distinct_levels(x);
  const std::size_t n = levels.size();

  auto level_of = [&](double v) {
    return static_cast<std::size_t>(
        std::lower_bound(levels.begin(), levels.end(), v) - levels.begin());
  };

  std::vector<double> level_prob(n, 0.0);
  for (std::size_t atom = 0; atom < m; ++atom)
    level_prob[level_of(x.values[atom])] += space.weight(atom);
  for (std::size_t i = 0; i < n; ++i)
    require(level_prob[i] > 0.0, Errc::invalid_argument,
            "a level of the variable has zero probability");

  std::vector<RandomVariable> pi(n);
  for (auto& rv : pi) rv.values.assign(m, 0.0);

  for (const auto& block : partition.blocks()) {
    double block_weight = 0.0;
    std::vector<double> level_weight(n, 0.0);
    for (std::size_t atom : block) {
      block_weight += space.weight(atom);
      level_weight[level_of(x.values[atom])] += space.weight(atom);
    }
    require(block_weight > 0.0, Errc::invalid_argument,
            "conditioning on a zero-probability block");
    for (std::size_t i = 0; i < n; ++i) {
      const double value = level_weight[i] / block_weight;
      for (std::size_t atom : block) pi[i].values[atom] = value;
    }
  }
  return pi;
}

GramResult gram_independence(const FiniteProbSpace& space, std::span<const RandomVariable> vars,
                             double tol) {
  require(!vars.empty(), Errc::invalid_argument, "no variables given");
  const std::size_t n = vars.size();
  GramResult out;
  out.gram = RealMatrix(n);
  std::vector<double> prod(space.atom_count());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k; l < n; ++l) {
      for (std::size_t a = 0; a < space.atom_count(); ++a)
        prod[a] = vars[k].values[a] * vars[l].values[a];
      const double g = space.expect(prod);
      out.gram(k, l) = g;
      out.gram(l, k) = g;
    }
  }
  const std::vector<double> eig = symmetric_eigenvalues(out.gram);
  out.max_eigenvalue = eig.front();
  out.min_eigenvalue = eig.back();
  out.independent = out.min_eigenvalue > tol * std::max(out.max_eigenvalue, 0.0);
  return out;
}

}  // namespace decoh
