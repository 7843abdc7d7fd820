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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "decoh/error.hpp"
#include "decoh/linalg.hpp"
#include "oracle.hpp"

using namespace decoh;

namespace {

// A ~ G A G^H for the complex Givens rotation mixing rows/columns p and q.
// Applying these to a diagonal matrix builds test cases with a known
// spectrum, which is the whole oracle for the solver.
void apply_givens(ComplexMatrix& a, std::size_t p, std::size_t q, double angle, double phase) {
  const std::size_t n = a.dim();
  const double c = std::cos(angle);
  const cplx s = std::polar(std::sin(angle), phase);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx ap = a(p, k), aq = a(q, k);
    a(p, k) = c * ap + s * aq;
    a(q, k) = -std::conj(s) * ap + c * aq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx ap = a(k, p), aq = a(k, q);
    a(k, p) = c * ap + std::conj(s) * aq;
    a(k, q) = -s * ap + c * aq;
  }
}

ComplexMatrix from_spectrum(const std::vector<double>& lambda, oracle::TestRng& rng,
                            std::size_t rotations) {
  const std::size_t n = lambda.size();
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = lambda[i];
  for (std::size_t r = 0; r < rotations; ++r) {
    std::size_t p = rng.index(n);
    std::size_t q = rng.index(n);
    if (p == q) q = (q + 1) % n;
    apply_givens(a, p, q, rng.uniform(0.0, 3.14159), rng.uniform(0.0, 6.28318));
  }
  // Rotations preserve hermiticity up to roundoff; fold the drift away so
  // the solver sees an exactly Hermitian input.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  return a;
}

}  // namespace

TEST_CASE("two by two closed forms") {
  ComplexMatrix m(2);
  m(0, 0) = 2.0;
  m(1, 1) = 2.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  auto eig = hermitian_eigenvalues(m);
  CHECK(eig[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(eig[1] == doctest::Approx(1.0).epsilon(1e-14));

  // [[1, i], [-i, 1]] has eigenvalues 2 and 0.
  ComplexMatrix c(2);
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(0, 1) = {0.0, 1.0};
  c(1, 0) = {0.0, -1.0};
  eig = hermitian_eigenvalues(c);
  CHECK(eig[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(eig[1]) <= 1e-14);

  // [[a, b e^{i phi}], [b e^{-i phi}, a]] has eigenvalues a +- b.
  const double a = 0.37, b = 0.21, phi = 2.1;
  ComplexMatrix g(2);
  g(0, 0) = a;
  g(1, 1) = a;
  g(0, 1) = std::polar(b, phi);
  g(1, 0) = std::polar(b, -phi);
  eig = hermitian_eigenvalues(g);
  CHECK(eig[0] == doctest::Approx(a + b).epsilon(1e-14));
  CHECK(eig[1] == doctest::Approx(a - b).epsilon(1e-14));
}

TEST_CASE("diagonal input is returned sorted") {
  ComplexMatrix m(4);
  m(0, 0) = 0.1;
  m(1, 1) = 0.7;
  m(2, 2) = -0.3;
  m(3, 3) = 0.5;
  auto eig = hermitian_eigenvalues(m);
  CHECK(eig == std::vector<double>{0.7, 0.5, 0.1, -0.3});

  ComplexMatrix one(1);
  one(0, 0) = 42.0;
  CHECK(hermitian_eigenvalues(one) == std::vector<double>{42.0});
}

TEST_CASE("non-hermitian input is rejected") {
  ComplexMatrix m(2);
  m(0, 0) = 1.0;
  m(1, 1) = 0.0;
  m(0, 1) = {0.5, 0.0};
  m(1, 0) = {0.4, 0.0};
  CHECK_THROWS_AS(hermitian_eigenvalues(m), Error);

  // Tiny defects below the tolerance are averaged away instead.
  m(1, 0) = {0.5 - 1e-12, 0.0};
  CHECK_NOTHROW(hermitian_eigenvalues(m));
}

TEST_CASE("known spectra survive random rotations") {
  oracle::TestRng rng(404);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng.index(15);
    std::vector<double> lambda(n);
    for (double& v : lambda) v = rng.uniform(-5.0, 5.0);
    // Force a degenerate cluster in a third of the cases.
    if (t % 3 == 0 && n >= 3) lambda[1] = lambda[2] = lambda[0];

    ComplexMatrix a = from_spectrum(lambda, rng, 3 * n);
    auto eig = hermitian_eigenvalues(a);

    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    double scale = 1.0;
    for (double v : lambda) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(eig[i] - lambda[i]) <= 1e-11 * scale);
  }
}

TEST_CASE("trace and frobenius norm are preserved") {
  oracle::TestRng rng(405);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + rng.index(10);
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
      a(i, i) = rng.uniform(-1.0, 1.0);
      for (std::size_t j = i + 1; j < n; ++j) {
        a(i, j) = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        a(j, i) = std::conj(a(i, j));
      }
    }
    auto eig = hermitian_eigenvalues(a);

    double tr = 0.0, fro2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      tr += a(i, i).real();
      for (std::size_t j = 0; j < n; ++j) fro2 += std::norm(a(i, j));
    }
    double eig_sum = 0.0, eig_sq = 0.0;
    for (double v : eig) {
      eig_sum += v;
      eig_sq += v * v;
    }
    CHECK(std::abs(eig_sum - tr) <= 1e-12 * n);
    CHECK(std::abs(eig_sq - fro2) <= 1e-11 * fro2 + 1e-12);

    CHECK(std::is_sorted(eig.begin(), eig.end(), std::greater_equal<>()));
  }
}

TEST_CASE("deterministic: same bits in, same bits out") {
  oracle::TestRng rng(406);
  ComplexMatrix a(6);
  for (std::size_t i = 0; i < 6; ++i) {
    a(i, i) = rng.uniform(-1.0, 1.0);
    for (std::size_t j = i + 1; j < 6; ++j) {
      a(i, j) = cplx{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      a(j, i) = std::conj(a(i, j));
    }
  }
  auto e1 = hermitian_eigenvalues(a);
  auto e2 = hermitian_eigenvalues(a);
  CHECK(e1 == e2);
}

TEST_CASE("real symmetric front end") {
  RealMatrix m(3);
  m(0, 0) = 2.0;
  m(1, 1) = 2.0;
  m(2, 2) = 2.0;
  m(0, 1) = m(1, 0) = 1.0;
  m(1, 2) = m(2, 1) = 1.0;
  auto eig = symmetric_eigenvalues(m);
  // Tridiagonal [2,1;1,2,1;1,2]: eigenvalues 2 + sqrt(2), 2, 2 - sqrt(2).
  CHECK(eig[0] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-14));
  CHECK(eig[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(eig[2] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));

  RealMatrix asym(2);
  asym(0, 1) = 1.0;
  asym(1, 0) = 0.5;
  CHECK_THROWS_AS(symmetric_eigenvalues(asym), Error);
}
