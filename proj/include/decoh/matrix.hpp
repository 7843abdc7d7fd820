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

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "decoh/error.hpp"

namespace decoh {

using cplx = std::complex<double>;

// Dense square matrix, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim, T fill = T{}) : dim_(dim), a_(dim * dim, fill) {}

  std::size_t dim() const noexcept { return dim_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

  const std::vector<T>& data() const noexcept { return a_; }
  std::vector<T>& data() noexcept { return a_; }

 private:
  std::size_t dim_ = 0;
  std::vector<T> a_;
};

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<cplx>;

inline cplx trace(const ComplexMatrix& m) {
  cplx t = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

// Largest entrywise deviation from m == adjoint(m).
inline double hermiticity_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.dim() == b.dim(), Errc::dimension_mismatch, "matrix dimensions differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

inline double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  require(a.dim() == b.dim(), Errc::dimension_mismatch, "matrix dimensions differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

// Sum of |m_ij| over i != j.
inline double offdiag_l1(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (i != j) s += std::abs(m(i, j));
  return s;
}

}  // namespace decoh
