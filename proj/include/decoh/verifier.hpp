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
#include <vector>

#include "decoh/ensemble.hpp"
#include "decoh/quantum_state.hpp"
#include "decoh/unravelling.hpp"

namespace decoh {

enum class Verdict { pass, fail, inapplicable };

const char* to_string(Verdict v);

// One audited comparison: "left <relation> right" with the slack that was
// granted. holds records whether the comparison came out true.
struct Witness {
  std::string name;
  double left = 0.0;
  std::string relation;
  double right = 0.0;
  double margin = 0.0;
  bool holds = false;
};

struct PropositionReport {
  std::string id;
  Verdict verdict = Verdict::inapplicable;
  std::string note;
  bool exact = true;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<Witness> witnesses;

  bool passed() const { return verdict == Verdict::pass; }
  bool failed() const { return verdict == Verdict::fail; }
};

// Exact mode uses finite laws or closed forms with margin 1e-12. Statistical
// mode runs every seed (at least three) at the given trial count; a check
// passes only if it passes for every seed, with margins of three standard
// errors wherever an estimate carries noise.
struct VerifyMode {
  bool exact = true;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> seeds;

  static VerifyMode exact_mode() { return {true, 0, {}}; }
  static VerifyMode statistical(std::uint64_t trials, std::vector<std::uint64_t> seeds) {
    return {false, trials, std::move(seeds)};
  }
};

// E[pi_i] = p_i for every i. Verdict is pass or fail, never inapplicable.
PropositionReport check_mean_condition(const UnravellingModel& model, const PureState& initial,
                                       const VerifyMode& mode, double tol = 0.0);

// |rho_ij| <= E[sqrt(pi_i pi_j)] < sqrt(p_i p_j), the strict part requiring
// linearly independent conditional probabilities. Dependent families and
// violated mean conditions yield verdict inapplicable, with the non-strict
// part still witnessed.
PropositionReport check_decoherence_chain(const UnravellingModel& model, const PureState& initial,
                                          const VerifyMode& mode);

// E[var_pi(obs)] < var_p(obs) strictly under linear independence.
PropositionReport check_uncertainty_reduction(const UnravellingModel& model,
                                              const PureState& initial, const Observable& obs,
                                              const VerifyMode& mode);

// E[H(pi)] < H(p) strictly under linear independence.
PropositionReport check_entropy_gain(const UnravellingModel& model, const PureState& initial,
                                     const VerifyMode& mode);

// H_vN(E[rho]) > 0 for genuinely randomizing transformations; deterministic
// no-ops keep the state pure and are inapplicable.
PropositionReport check_vn_entropy_increase(const UnravellingModel& model,
                                            const PureState& initial, const VerifyMode& mode);

// Exact boundary cases: full measurement reproduces the diagonal ensemble,
// undisturbed phases preserve all off-diagonal magnitudes, and conditioning
// on the trivial partition changes nothing.
std::vector<PropositionReport> check_equality_cases(const PureState& initial);

}  // namespace decoh
