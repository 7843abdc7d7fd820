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

#include "decoh/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "decoh/error.hpp"
#include "decoh/linalg.hpp"

namespace decoh {
namespace {

constexpr double kExactMargin = 1e-12;

void validate_mode(const VerifyMode& mode) {
  if (mode.exact) return;
  require(mode.trials >= 1000, Errc::invalid_argument, "statistical mode needs >= 1000 trials");
  require(mode.seeds.size() >= 3, Errc::invalid_argument, "statistical mode needs >= 3 seeds");
}

Witness make_witness(std::string name, double left, std::string relation, double right,
                     double margin, bool holds) {
  return Witness{std::move(name), left, std::move(relation), right, margin, holds};
}

std::string seed_tag(bool exact, std::uint64_t seed) {
  return exact ? std::string{} : "seed=" + std::to_string(seed) + ":";
}

struct IndependenceInfo {
  bool independent = false;
  std::string reason;
};

// Linear independence of the conditional probabilities pi_1..pi_n as elements
// of L2. Finite laws get the Gram test on their support; the Dirichlet family
// has full simplex support, which rules out any nontrivial dependency; a
// phase-only transformation keeps pi constant, the canonical dependent case.
IndependenceInfo independence_of(const PreparedModel& prepared) {
  if (std::holds_alternative<DirichletMartingale>(prepared.model()))
    return {true, "probabilities have full simplex support"};
  if (std::holds_alternative<PhaseOnly>(prepared.model()))
    return {false, "probabilities stay constant"};

  const DiscreteLaw law = prepared.exact_law();
  std::vector<double> weights(law.points.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < law.points.size(); ++k) sum += law.points[k].weight;
  for (std::size_t k = 0; k < law.points.size(); ++k) weights[k] = law.points[k].weight / sum;

  const FiniteProbSpace support(std::move(weights));
  const std::size_t n = prepared.dim();
  std::vector<RandomVariable> vars(n);
  for (std::size_t i = 0; i < n; ++i) {
    vars[i].values.resize(law.points.size());
    for (std::size_t k = 0; k < law.points.size(); ++k) vars[i].values[k] = law.points[k].pi[i];
  }
  const GramResult g = gram_independence(support, vars);
  return {g.independent, g.independent ? "Gram matrix of probabilities is nonsingular"
                                       : "Gram matrix of probabilities is singular"};
}

// Runs the mean-condition gate for every seed (or once in exact mode) and
// appends its witnesses. Returns false when any run violates the condition.
bool mean_gate(const PreparedModel& prepared, const VerifyMode& mode, PropositionReport& rep) {
  bool ok = true;
  auto absorb = [&](const MeanConditionResult& res, std::uint64_t seed) {
    double worst_margin = 0.0;
    for (double m : res.margin) worst_margin = std::max(worst_margin, m);
    rep.witnesses.push_back(make_witness(seed_tag(res.exact, seed) + "mean_condition",
                                         res.worst_deviation, "=", 0.0, worst_margin, res.holds));
    ok = ok && res.holds;
  };
  if (mode.exact) {
    absorb(verify_mean_condition(prepared, RunMode::exact()), 0);
  } else {
    for (std::uint64_t seed : mode.seeds)
      absorb(verify_mean_condition(prepared, RunMode::monte_carlo(mode.trials, seed)), seed);
  }
  return ok;
}

void stamp_mode(PropositionReport& rep, const VerifyMode& mode) {
  rep.exact = mode.exact;
  rep.trials = mode.exact ? 0 : mode.trials;
  rep.seeds = mode.exact ? std::vector<std::uint64_t>{} : mode.seeds;
}

template <class EvalRun>
void for_each_run(const PreparedModel& prepared, const Observable* obs, const VerifyMode& mode,
                  unsigned mask, EvalRun&& eval) {
  if (mode.exact) {
    eval(estimate(prepared, obs, RunMode::exact(), mask), 0);
  } else {
    for (std::uint64_t seed : mode.seeds)
      eval(estimate(prepared, obs, RunMode::monte_carlo(mode.trials, seed), mask), seed);
  }
}

// Scalar strict-contraction body shared by P3 and P4.
PropositionReport scalar_contraction(const char* id, const char* quantity,
                                     const UnravellingModel& model, const PureState& initial,
                                     const Observable* obs, const VerifyMode& mode,
                                     unsigned quantity_mask, double exact_target) {
  PropositionReport rep;
  rep.id = id;
  validate_mode(mode);
  stamp_mode(rep, mode);
  const PreparedModel prepared(model, initial);

  if (!mean_gate(prepared, mode, rep)) {
    rep.verdict = Verdict::inapplicable;
    rep.note = "mean condition violated; the contraction premise does not hold";
    return rep;
  }
  const IndependenceInfo ind = independence_of(prepared);
  const bool strict = ind.independent;

  bool all_hold = true;
  for_each_run(prepared, obs, mode, quantity_mask, [&](const EnsembleSummary& s,
                                                       std::uint64_t seed) {
    const ScalarEstimate& est = (quantity_mask == kQuantityShannon) ? *s.shannon : *s.variance;
    const double margin = std::max(3.0 * est.std_err, kExactMargin);
    const bool holds = strict ? (exact_target - est.value > margin)
                              : (est.value <= exact_target + margin);
    rep.witnesses.push_back(make_witness(seed_tag(mode.exact, seed) + quantity, est.value,
                                         strict ? "<" : "<=", exact_target, margin, holds));
    all_hold = all_hold && holds;
  });

  if (!strict) {
    rep.verdict = Verdict::inapplicable;
    rep.note = std::holds_alternative<PhaseOnly>(model)
                   ? "phase-only: neither information gain nor loss"
                   : ind.reason + "; only the non-strict bound applies";
    return rep;
  }
  rep.verdict = all_hold ? Verdict::pass : Verdict::fail;
  rep.note = "strict contraction under linearly independent probabilities";
  return rep;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inapplicable:
      return "inapplicable";
  }
  return "unknown";
}

PropositionReport check_mean_condition(const UnravellingModel& model, const PureState& initial,
                                       const VerifyMode& mode, double tol) {
  PropositionReport rep;
  rep.id = "mean_condition";
  validate_mode(mode);
  stamp_mode(rep, mode);
  const PreparedModel prepared(model, initial);

  bool all_hold = true;
  auto absorb = [&](const MeanConditionResult& res, std::uint64_t seed) {
    for (std::size_t i = 0; i < res.mean.size(); ++i)
      rep.witnesses.push_back(make_witness(
          seed_tag(res.exact, seed) + "mean[" + std::to_string(i) + "]", res.mean[i], "=",
          initial.probs()[i], res.margin[i],
          std::abs(res.mean[i] - initial.probs()[i]) <= res.margin[i]));
    all_hold = all_hold && res.holds;
  };
  if (mode.exact) {
    absorb(verify_mean_condition(prepared, RunMode::exact(), tol), 0);
  } else {
    for (std::uint64_t seed : mode.seeds)
      absorb(verify_mean_condition(prepared, RunMode::monte_carlo(mode.trials, seed), tol), seed);
  }
  rep.verdict = all_hold ? Verdict::pass : Verdict::fail;
  rep.note = all_hold ? "ensemble mean reproduces the initial distribution"
                      : "ensemble mean deviates from the initial distribution";
  return rep;
}

PropositionReport check_decoherence_chain(const UnravellingModel& model, const PureState& initial,
                                          const VerifyMode& mode) {
  PropositionReport rep;
  rep.id = "P1chain";
  validate_mode(mode);
  stamp_mode(rep, mode);
  const PreparedModel prepared(model, initial);
  const std::size_t n = initial.dim();

  if (!mean_gate(prepared, mode, rep)) {
    rep.verdict = Verdict::inapplicable;
    rep.note = "mean condition violated; the contraction premise does not hold";
    return rep;
  }
  const IndependenceInfo ind = independence_of(prepared);
  const bool strict = ind.independent;
  // Constant probabilities turn the second link into an equality.
  const bool phase_only = std::holds_alternative<PhaseOnly>(model);

  bool all_hold = true;
  for_each_run(
      prepared, nullptr, mode, kQuantityDensity | kQuantityCross,
      [&](const EnsembleSummary& s, std::uint64_t seed) {
        const std::string tag = seed_tag(mode.exact, seed);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            const std::string ij = "[" + std::to_string(i) + "," + std::to_string(j) + "]";
            const double left = std::abs(s.density->value(i, j));
            const double mid = s.cross->value(i, j);
            const double right = std::sqrt(initial.probs()[i] * initial.probs()[j]);

            // |mean(z)| <= mean(|z|) holds for the sampled averages
            // themselves, so the first link needs only roundoff slack.
            const bool h1 = left <= mid + kExactMargin;
            rep.witnesses.push_back(
                make_witness(tag + "offdiag_vs_cross" + ij, left, "<=", mid, kExactMargin, h1));

            const double margin =
                std::max(3.0 * s.cross->std_err(i, j), kExactMargin);
            const bool h2 = strict ? (right - mid > margin)
                                   : (phase_only ? std::abs(mid - right) <= margin
                                                 : mid <= right + margin);
            rep.witnesses.push_back(make_witness(
                tag + "cross_vs_target" + ij, mid,
                strict ? "<" : (phase_only ? "=" : "<="), right, margin, h2));
            all_hold = all_hold && h1 && h2;
          }
        }
      });

  if (!strict) {
    rep.verdict = Verdict::inapplicable;
    rep.note = phase_only ? "phase-only: neither information gain nor loss"
                          : ind.reason + "; only the non-strict chain applies";
    return rep;
  }
  rep.verdict = all_hold ? Verdict::pass : Verdict::fail;
  rep.note = "strict contraction under linearly independent probabilities";
  return rep;
}

PropositionReport check_uncertainty_reduction(const UnravellingModel& model,
                                              const PureState& initial, const Observable& obs,
                                              const VerifyMode& mode) {
  require(obs.dim() == initial.dim(), Errc::dimension_mismatch,
          "observable does not match state dimension");
  return scalar_contraction("P3", "expected_variance", model, initial, &obs, mode,
                            kQuantityVariance, variance(initial.probs(), obs));
}

PropositionReport check_entropy_gain(const UnravellingModel& model, const PureState& initial,
                                     const VerifyMode& mode) {
  return scalar_contraction("P4", "expected_shannon", model, initial, nullptr, mode,
                            kQuantityShannon, shannon_entropy(initial.probs()));
}

PropositionReport check_vn_entropy_increase(const UnravellingModel& model,
                                            const PureState& initial, const VerifyMode& mode) {
  PropositionReport rep;
  rep.id = "vN";
  validate_mode(mode);
  stamp_mode(rep, mode);
  const PreparedModel prepared(model, initial);

  if (!prepared.randomized()) {
    rep.verdict = Verdict::inapplicable;
    rep.note = "deterministic transformation keeps the state pure";
    return rep;
  }

  bool all_hold = true;
  for_each_run(prepared, nullptr, mode, kQuantityDensity, [&](const EnsembleSummary& s,
                                                              std::uint64_t seed) {
    const DensityMatrix rho(s.density->value);
    const double vn = vn_entropy(rho);
    double margin = kExactMargin;
    if (!mode.exact) {
      // First-order sensitivity of the entropy to estimate noise scales with
      // log of the smallest eigenvalue; clamp to keep the margin finite.
      double fro_sq = 0.0;
      for (std::size_t k = 0; k < s.density->std_err_re.data().size(); ++k) {
        fro_sq += s.density->std_err_re.data()[k] * s.density->std_err_re.data()[k];
        fro_sq += s.density->std_err_im.data()[k] * s.density->std_err_im.data()[k];
      }
      const double lambda_min = std::max(eigenvalues(rho).back(), 1e-6);
      margin = std::max(margin, 3.0 * std::sqrt(fro_sq) * (1.0 + std::abs(std::log(lambda_min))));
    }
    const bool holds = vn > margin;
    rep.witnesses.push_back(
        make_witness(seed_tag(mode.exact, seed) + "vn_entropy", vn, ">", 0.0, margin, holds));
    all_hold = all_hold && holds;
  });

  rep.verdict = all_hold ? Verdict::pass : Verdict::fail;
  rep.note = "ensemble averaging strictly mixes the state";
  return rep;
}

std::vector<PropositionReport> check_equality_cases(const PureState& initial) {
  const std::size_t n = initial.dim();
  std::vector<PropositionReport> out;

  FiniteProbSpace canonical(initial.probs());
  RandomVariable ids;
  ids.values.resize(n);
  std::iota(ids.values.begin(), ids.values.end(), 0.0);

  {
    // Conditioning on everything is the same ensemble as measuring.
    PropositionReport rep;
    rep.id = "equality:max_info";
    const PreparedModel fine(PartitionConditioning{canonical, ids, Partition::finest(n)}, initial);
    const PreparedModel meas(ProjectiveMeasurement{}, initial);
    const MatrixEstimate a = average_density(fine, RunMode::exact());
    const MatrixEstimate b = average_density(meas, RunMode::exact());
    const double diff = max_abs_diff(a.value, b.value);
    const double off = offdiag_l1(a.value);
    rep.witnesses.push_back(make_witness("density_match", diff, "=", 0.0, 1e-14, diff <= 1e-14));
    rep.witnesses.push_back(make_witness("offdiag_gone", off, "=", 0.0, 1e-12, off <= 1e-12));
    rep.verdict = (diff <= 1e-14 && off <= 1e-12) ? Verdict::pass : Verdict::fail;
    rep.note = "maximal information destroys all off-diagonal terms";
    out.push_back(std::move(rep));
  }

  {
    // Random phases alone never shrink the cross terms.
    PropositionReport rep;
    rep.id = "equality:phase_only";
    const PreparedModel pm(PhaseOnly{{PhaseSpec::uniform_full()}}, initial);
    const EnsembleSummary s = estimate(pm, nullptr, RunMode::exact(),
                                       kQuantityDensity | kQuantityCross | kQuantityShannon);
    double cross_diff = 0.0;
    double diag_diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag_diff = std::max(diag_diff, std::abs(s.density->value(i, i).real() - initial.probs()[i]));
      for (std::size_t j = i + 1; j < n; ++j)
        cross_diff = std::max(cross_diff, std::abs(s.cross->value(i, j) -
                                                   std::sqrt(initial.probs()[i] *
                                                             initial.probs()[j])));
    }
    const double shannon_diff = std::abs(s.shannon->value - shannon_entropy(initial.probs()));
    const double vn = vn_entropy(DensityMatrix(s.density->value));
    const double vn_diff = std::abs(vn - shannon_entropy(initial.probs()));
    rep.witnesses.push_back(
        make_witness("cross_preserved", cross_diff, "=", 0.0, 1e-14, cross_diff <= 1e-14));
    rep.witnesses.push_back(
        make_witness("diagonal_preserved", diag_diff, "=", 0.0, 1e-14, diag_diff <= 1e-14));
    rep.witnesses.push_back(
        make_witness("shannon_preserved", shannon_diff, "=", 0.0, 1e-14, shannon_diff <= 1e-14));
    rep.witnesses.push_back(
        make_witness("vn_equals_shannon", vn_diff, "=", 0.0, 1e-10, vn_diff <= 1e-10));
    const bool ok = cross_diff <= 1e-14 && diag_diff <= 1e-14 && shannon_diff <= 1e-14 &&
                    vn_diff <= 1e-10;
    rep.verdict = ok ? Verdict::pass : Verdict::fail;
    rep.note = "full phase randomization gains no information and loses none";
    out.push_back(std::move(rep));
  }

  {
    // Conditioning on nothing is a no-op.
    PropositionReport rep;
    rep.id = "equality:no_info";
    const PreparedModel pm(PartitionConditioning{canonical, ids, Partition::trivial(n)}, initial);
    const EnsembleSummary s =
        estimate(pm, nullptr, RunMode::exact(), kQuantityDensity | kQuantityShannon);
    const double diff = max_abs_diff(s.density->value, density_of(initial).entries());
    const double shannon_diff = std::abs(s.shannon->value - shannon_entropy(initial.probs()));
    rep.witnesses.push_back(make_witness("density_match", diff, "=", 0.0, 1e-14, diff <= 1e-14));
    rep.witnesses.push_back(
        make_witness("shannon_preserved", shannon_diff, "=", 0.0, 1e-14, shannon_diff <= 1e-14));
    rep.verdict = (diff <= 1e-14 && shannon_diff <= 1e-14) ? Verdict::pass : Verdict::fail;
    rep.note = "trivial conditioning leaves the ensemble unchanged";
    out.push_back(std::move(rep));
  }

  return out;
}

}  // namespace decoh
