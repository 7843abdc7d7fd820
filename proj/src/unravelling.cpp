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

#include "decoh/unravelling.hpp"

#include <algorithm>
#include <cmath>

#include "decoh/ensemble.hpp"
#include "decoh/error.hpp"
#include "decoh/philox.hpp"

namespace decoh {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;

std::vector<double> cumulative(const std::vector<double>& w) {
  std::vector<double> cum(w.size());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    s += w[i];
    cum[i] = s;
  }
  return cum;
}

std::size_t pick(const std::vector<double>& cum, double u) {
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  const std::size_t k = static_cast<std::size_t>(it - cum.begin());
  return std::min(k, cum.size() - 1);
}

bool lex_less(const LawPoint& a, const LawPoint& b) {
  if (a.pi != b.pi)
    return std::lexicographical_compare(a.pi.begin(), a.pi.end(), b.pi.begin(), b.pi.end());
  return std::lexicographical_compare(a.phi.begin(), a.phi.end(), b.phi.begin(), b.phi.end());
}

// Merge identical support points, then order by descending weight. The
// resulting point order is a pure function of the law, which pins down the
// exact-expectation summation order.
DiscreteLaw canonical_law(std::vector<LawPoint> points) {
  std::sort(points.begin(), points.end(), lex_less);
  std::vector<LawPoint> merged;
  for (auto& pt : points) {
    if (!merged.empty() && merged.back().pi == pt.pi && merged.back().phi == pt.phi)
      merged.back().weight += pt.weight;
    else
      merged.push_back(std::move(pt));
  }
  std::stable_sort(merged.begin(), merged.end(),
                   [](const LawPoint& a, const LawPoint& b) { return a.weight > b.weight; });
  return DiscreteLaw{std::move(merged)};
}

}  // namespace

double PhaseSpec::characteristic() const {
  switch (kind) {
    case Kind::degenerate:
      return 1.0;
    case Kind::uniform_full:
      return 0.0;
    case Kind::uniform_symmetric:
      return std::sin(half_width) / half_width;
  }
  fail(Errc::invalid_argument, "unknown phase spec");
}

std::string model_name(const UnravellingModel& model) {
  struct Visitor {
    std::string operator()(const ProjectiveMeasurement&) const { return "projective_measurement"; }
    std::string operator()(const PartitionConditioning&) const { return "partition_conditioning"; }
    std::string operator()(const PhaseOnly&) const { return "phase_only"; }
    std::string operator()(const DirichletMartingale&) const { return "dirichlet_martingale"; }
    std::string operator()(const AdversarialUniform&) const { return "adversarial_uniform"; }
  };
  return std::visit(Visitor{}, model);
}

void validate_model(const UnravellingModel& model, const PureState& initial) {
  const std::size_t n = initial.dim();
  if (const auto* pc = std::get_if<PartitionConditioning>(&model)) {
    require(pc->x.values.size() == pc->space.atom_count(), Errc::dimension_mismatch,
            "outcome variable does not match space");
    require(pc->partition.atom_count() == pc->space.atom_count(), Errc::dimension_mismatch,
            "partition does not match space");
    require(distinct_levels(pc->x).size() == n, Errc::dimension_mismatch,
            "outcome variable level count does not match state dimension");
  } else if (const auto* po = std::get_if<PhaseOnly>(&model)) {
    require(po->specs.size() == 1 || po->specs.size() == n, Errc::dimension_mismatch,
            "phase spec count must be 1 or the state dimension");
    for (const PhaseSpec& s : po->specs) {
      if (s.kind == PhaseSpec::Kind::uniform_symmetric)
        require(std::isfinite(s.half_width) && s.half_width > 0.0 && s.half_width <= kPi,
                Errc::invalid_argument, "phase half-width must lie in (0, pi]");
    }
  } else if (const auto* dm = std::get_if<DirichletMartingale>(&model)) {
    require(std::isfinite(dm->concentration) && dm->concentration > 0.0, Errc::invalid_argument,
            "concentration must be positive");
    require(std::isfinite(dm->gamma), Errc::invalid_argument, "phase coupling must be finite");
  }
}

bool phase_only_all_degenerate(const PhaseOnly& model) {
  return std::all_of(model.specs.begin(), model.specs.end(), [](const PhaseSpec& s) {
    return s.kind == PhaseSpec::Kind::degenerate;
  });
}

double dirichlet_cross_moment(double kappa, double pi, double pj) {
  require(kappa > 0.0 && pi > 0.0 && pj > 0.0, Errc::invalid_argument,
          "cross moment needs positive parameters");
  const double ai = kappa * pi;
  const double aj = kappa * pj;
  return std::exp(std::lgamma(kappa) - std::lgamma(kappa + 1.0) + std::lgamma(ai + 0.5) -
                  std::lgamma(ai) + std::lgamma(aj + 0.5) - std::lgamma(aj));
}

double dirichlet_variance_factor(double kappa) {
  require(kappa > 0.0, Errc::invalid_argument, "concentration must be positive");
  return kappa / (kappa + 1.0);
}

PreparedModel::PreparedModel(UnravellingModel model, PureState initial)
    : model_(std::move(model)), initial_(std::move(initial)) {
  validate_model(model_, initial_);
  const std::size_t n = initial_.dim();

  if (std::holds_alternative<ProjectiveMeasurement>(model_)) {
    cum_ = cumulative(initial_.probs());
    finite_support_ = true;
  } else if (const auto* pc = std::get_if<PartitionConditioning>(&model_)) {
    cum_ = cumulative(pc->space.weights());
    const std::vector<RandomVariable> pi = condition(pc->space, pc->x, pc->partition);
    block_pi_.resize(pc->partition.blocks().size());
    for (std::size_t b = 0; b < block_pi_.size(); ++b) {
      const std::size_t atom = pc->partition.blocks()[b].front();
      block_pi_[b].resize(n);
      for (std::size_t i = 0; i < n; ++i) block_pi_[b][i] = pi[i].values[atom];
    }
    finite_support_ = true;
  } else if (const auto* po = std::get_if<PhaseOnly>(&model_)) {
    specs_ = po->specs;
    if (specs_.size() == 1) specs_.assign(n, specs_.front());
    finite_support_ = phase_only_all_degenerate(*po);
  } else if (const auto* dm = std::get_if<DirichletMartingale>(&model_)) {
    alpha_.resize(n);
    for (std::size_t i = 0; i < n; ++i) alpha_[i] = dm->concentration * initial_.probs()[i];
    finite_support_ = false;
  } else {
    finite_support_ = true;  // adversarial stub
  }

  if (finite_support_) {
    randomized_ = exact_law().points.size() >= 2;
  } else if (std::holds_alternative<PhaseOnly>(model_)) {
    randomized_ = true;  // some spec is non-degenerate
  } else {
    randomized_ = true;  // continuous pi
  }
}

void PreparedModel::sample(std::uint64_t seed, std::uint64_t trial, Draw& out) const {
  const std::size_t n = dim();
  out.pi.resize(n);
  out.phi.resize(n);
  TrialRng rng(seed, trial);

  if (std::holds_alternative<ProjectiveMeasurement>(model_)) {
    const std::size_t k = pick(cum_, rng.uniform01());
    std::fill(out.pi.begin(), out.pi.end(), 0.0);
    out.pi[k] = 1.0;
    out.phi = initial_.phases();
  } else if (const auto* pc = std::get_if<PartitionConditioning>(&model_)) {
    const std::size_t atom = pick(cum_, rng.uniform01());
    out.pi = block_pi_[pc->partition.block_of(atom)];
    out.phi = initial_.phases();
  } else if (std::holds_alternative<PhaseOnly>(model_)) {
    out.pi = initial_.probs();
    for (std::size_t i = 0; i < n; ++i) {
      double offset = 0.0;
      switch (specs_[i].kind) {
        case PhaseSpec::Kind::degenerate:
          break;
        case PhaseSpec::Kind::uniform_full:
          offset = rng.uniform(0.0, kTwoPi);
          break;
        case PhaseSpec::Kind::uniform_symmetric:
          offset = rng.uniform(-specs_[i].half_width, specs_[i].half_width);
          break;
      }
      out.phi[i] = initial_.phases()[i] + offset;
    }
  } else if (const auto* dm = std::get_if<DirichletMartingale>(&model_)) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      out.pi[i] = rng.gamma(alpha_[i]);
      sum += out.pi[i];
    }
    for (std::size_t i = 0; i < n; ++i) out.pi[i] /= sum;
    if (dm->linear_coupling) {
      for (std::size_t i = 0; i < n; ++i)
        out.phi[i] = initial_.phases()[i] + dm->gamma * (out.pi[i] - initial_.probs()[i]);
    } else {
      out.phi = initial_.phases();
    }
  } else {
    std::fill(out.pi.begin(), out.pi.end(), 1.0 / static_cast<double>(n));
    out.phi = initial_.phases();
  }
}

Draw PreparedModel::sample(std::uint64_t seed, std::uint64_t trial) const {
  Draw d;
  sample(seed, trial, d);
  return d;
}

DiscreteLaw PreparedModel::exact_law() const {
  require(finite_support_, Errc::unsupported, "model law has no finite support");
  const std::size_t n = dim();
  std::vector<LawPoint> points;

  if (std::holds_alternative<ProjectiveMeasurement>(model_)) {
    for (std::size_t k = 0; k < n; ++k) {
      LawPoint pt;
      pt.weight = initial_.probs()[k];
      pt.pi.assign(n, 0.0);
      pt.pi[k] = 1.0;
      pt.phi = initial_.phases();
      points.push_back(std::move(pt));
    }
  } else if (const auto* pc = std::get_if<PartitionConditioning>(&model_)) {
    for (std::size_t b = 0; b < pc->partition.blocks().size(); ++b) {
      LawPoint pt;
      pt.weight = 0.0;
      for (std::size_t atom : pc->partition.blocks()[b]) pt.weight += pc->space.weight(atom);
      pt.pi = block_pi_[b];
      pt.phi = initial_.phases();
      points.push_back(std::move(pt));
    }
  } else if (std::holds_alternative<PhaseOnly>(model_)) {
    points.push_back(LawPoint{1.0, initial_.probs(), initial_.phases()});
  } else {
    LawPoint pt;
    pt.weight = 1.0;
    pt.pi.assign(n, 1.0 / static_cast<double>(n));
    pt.phi = initial_.phases();
    points.push_back(std::move(pt));
  }
  return canonical_law(std::move(points));
}

MeanConditionResult verify_mean_condition(const PreparedModel& prepared, const RunMode& mode,
                                          double tol) {
  require(std::isfinite(tol) && tol >= 0.0, Errc::invalid_argument,
          "tolerance must be non-negative");
  const std::size_t n = prepared.dim();
  const std::vector<double>& p = prepared.initial().probs();

  MeanConditionResult out;
  out.mean.assign(n, 0.0);
  out.std_err.assign(n, 0.0);
  out.margin.assign(n, 0.0);

  if (mode.kind == RunMode::Kind::exact) {
    out.exact = true;
    out.trials = 0;
    if (prepared.finite_support()) {
      const DiscreteLaw law = prepared.exact_law();
      for (const LawPoint& pt : law.points)
        for (std::size_t i = 0; i < n; ++i) out.mean[i] += pt.weight * pt.pi[i];
    } else if (std::holds_alternative<PhaseOnly>(prepared.model())) {
      // Only the phases are random; the outcome probabilities sit at p.
      out.mean = p;
    } else {
      fail(Errc::unsupported, "exact mode requested on a continuous-law model");
    }
    for (std::size_t i = 0; i < n; ++i) out.margin[i] = std::max(tol, 1e-12);
  } else {
    out.exact = false;
    out.trials = mode.trials;
    const VectorEstimate est = pi_mean(prepared, mode);
    out.mean = est.value;
    out.std_err = est.std_err;
    for (std::size_t i = 0; i < n; ++i) out.margin[i] = std::max(tol, 3.0 * est.std_err[i]);
  }

  out.holds = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = std::abs(out.mean[i] - p[i]);
    out.worst_deviation = std::max(out.worst_deviation, dev);
    if (dev > out.margin[i]) out.holds = false;
  }
  return out;
}

}  // namespace decoh
