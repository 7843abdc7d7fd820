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

#include <vector>

#include "decoh/matrix.hpp"

namespace decoh {

// Eigenvalues of a Hermitian matrix, descending order. Cyclic Jacobi with
// complex plane rotations; deterministic sweep order, so identical input
// bits give identical output bits. Rejects inputs whose hermiticity defect
// exceeds hermiticity_tol (relative to the largest entry magnitude).
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double hermiticity_tol = 1e-9);

// Real symmetric specialization, same contract.
std::vector<double> symmetric_eigenvalues(const RealMatrix& m, double symmetry_tol = 1e-9);

}  // namespace decoh
