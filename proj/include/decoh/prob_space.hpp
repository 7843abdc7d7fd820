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

#include <cstddef>
#include <span>
#include <vector>

#include "decoh/matrix.hpp"

namespace decoh {

// Finite probability space: atoms 0..m-1 with nonnegative weights summing to
// one within 1e-12; the constructor renormalizes them to the exact computed
// sum. Expectations are summed in descending weight order, a fixed rule that
// keeps results independent of caller-side orderings.
class FiniteProbSpace {
 public:
  explicit FiniteProbSpace(std::vector<double> weights);

  std::size_t atom_count() const noexcept { return weights_.size(); }
  double weight(std::size_t atom) const { return weights_.at(atom); }
  const std::vector<double>& weights() const noexcept { return weights_; }

  double expect(std::span<const double> values) const;
  cplx expect(std::span<const cplx> values) const;

 private:
  std::vector<double> weights_;
  std::vector<std::size_t> sum_order_;
};

// Convenience constructor that cross-checks the declared atom count.
FiniteProbSpace build_space(std::size_t atom_count, std::vector<double> weights);

// Real random variable on a finite space: one value per atom.
struct RandomVariable {
  std::vector<double> values;
};

// Distinct values of x in ascending order; exact double comparison defines
// the level structure.
std::vector<double> distinct_levels(const RandomVariable& x);

// Partition of the atoms; stands in for the sub-sigma-algebra it generates.
class Partition {
 public:
  Partition(std::vector<std::vector<std::size_t>> blocks, std::size_t atom_count);

  static Partition trivial(std::size_t atom_count);
  static Partition finest(std::size_t atom_count);

  std::size_t atom_count() const noexcept { return block_of_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
  std::size_t block_of(std::size_t atom) const { return block_of_.at(atom); }

  // True when every block of *this lies inside a block of coarser.
  bool refines(const Partition& coarser) const;

 private:
  std::vector<std::vector<std::size_t>> blocks_;
  std::vector<std::size_t> block_of_;
};

// Conditional outcome probabilities pi_i = P(X = x_i | partition), one random
// variable per level of x, levels in ascending value order. Each pi_i is
// constant on partition blocks by construction.
std::vector<RandomVariable> condition(const FiniteProbSpace& space, const RandomVariable& x,
                                      const Partition& partition);

struct GramResult {
  bool independent = false;
  RealMatrix gram;           // G_kl = E[v_k v_l]
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

// Linear independence of random variables in L2: the Gram matrix is singular
// exactly on dependent families, so independence is min-eig > tol * max-eig.
GramResult gram_independence(const FiniteProbSpace& space, std::span<const RandomVariable> vars,
                             double tol = 1e-10);

}  // namespace decoh
