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

#include "decoh/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "decoh/error.hpp"

namespace decoh {
namespace {

double max_entry_abs(const ComplexMatrix& m) {
  double worst = 0.0;
  for (const auto& v : m.data()) worst = std::max(worst, std::abs(v));
  return worst;
}

double offdiag_sq(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i + 1; j < m.dim(); ++j) s += std::norm(m(i, j));
  return 2.0 * s;
}

double frobenius_sq(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& v : m.data()) s += std::norm(v);
  return s;
}

// One complex Jacobi rotation annihilating m(p, q).
//
// With m(p,q) = r e^{i a}, the unitary acts on the (p, q) plane as
//   [ c        s e^{i a} ]
//   [-s e^{-ia}    c     ]
// and the angle satisfies tan(2 theta) = 2 r / (m(q,q) - m(p,p)), solved in
// the numerically stable tangent form.
void rotate(ComplexMatrix& m, std::size_t p, std::size_t q) {
  const cplx mpq = m(p, q);
  const double r = std::abs(mpq);
  if (r == 0.0) return;
  const cplx phase = mpq / r;  // e^{i a}

  const double app = m(p, p).real();
  const double aqq = m(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const std::size_t n = m.dim();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const cplx akp = m(k, p);
    const cplx akq = m(k, q);
    m(k, p) = c * akp - s * std::conj(phase) * akq;
    m(k, q) = s * phase * akp + c * akq;
    m(p, k) = std::conj(m(k, p));
    m(q, k) = std::conj(m(k, q));
  }
  const double dpp = app * c * c - 2.0 * r * c * s + aqq * s * s;
  const double dqq = app * s * s + 2.0 * r * c * s + aqq * c * c;
  m(p, p) = dpp;
  m(q, q) = dqq;
  m(p, q) = 0.0;
  m(q, p) = 0.0;
}

std::vector<double> jacobi_eigenvalues(ComplexMatrix m) {
  const std::size_t n = m.dim();
  // Work on the Hermitian average so roundoff asymmetry cannot drift.
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = cplx(m(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }

  const double fro = frobenius_sq(m);
  const double stop = (fro > 0.0) ? 1e-28 * fro : 0.0;
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_sq(m) <= stop) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(m, p, q);
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i).real();
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double hermiticity_tol) {
  require(m.dim() > 0, Errc::invalid_argument, "empty matrix");
  const double scale = std::max(1.0, max_entry_abs(m));
  require(hermiticity_defect(m) <= hermiticity_tol * scale, Errc::invalid_argument,
          "matrix is not Hermitian within tolerance");
  return jacobi_eigenvalues(m);
}

std::vector<double> symmetric_eigenvalues(const RealMatrix& m, double symmetry_tol) {
  ComplexMatrix c(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) c(i, j) = m(i, j);
  return hermitian_eigenvalues(c, symmetry_tol);
}

}  // namespace decoh
