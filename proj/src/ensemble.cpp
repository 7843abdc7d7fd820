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

#include "decoh/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "decoh/error.hpp"

namespace decoh {
namespace {

constexpr std::uint64_t kBlockTrials = 4096;

// Component layout of the per-trial observation vector.
struct Layout {
  unsigned mask = 0;
  std::size_t n = 0;
  std::size_t tri = 0;  // entries on and above the diagonal
  std::size_t off_pi = 0;
  std::size_t off_density = 0;  // re, im interleaved per upper-triangular entry
  std::size_t off_cross = 0;
  std::size_t off_shannon = 0;
  std::size_t off_variance = 0;
  std::size_t comps = 0;

  Layout(unsigned mask_, std::size_t n_) : mask(mask_), n(n_), tri(n_ * (n_ + 1) / 2) {
    std::size_t at = 0;
    if (mask & kQuantityPiMean) {
      off_pi = at;
      at += n;
    }
    if (mask & kQuantityDensity) {
      off_density = at;
      at += 2 * tri;
    }
    if (mask & kQuantityCross) {
      off_cross = at;
      at += tri;
    }
    if (mask & kQuantityShannon) {
      off_shannon = at;
      at += 1;
    }
    if (mask & kQuantityVariance) {
      off_variance = at;
      at += 1;
    }
    comps = at;
  }

  std::size_t upper(std::size_t i, std::size_t j) const {  // i <= j
    return i * n - i * (i - 1) / 2 + (j - i);
  }
};

void fill_observation(const Layout& lay, const Draw& d, const Observable* obs, double* x) {
  const std::size_t n = lay.n;
  if (lay.mask & kQuantityPiMean)
    for (std::size_t i = 0; i < n; ++i) x[lay.off_pi + i] = d.pi[i];

  if (lay.mask & (kQuantityDensity | kQuantityCross)) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const std::size_t t = lay.upper(i, j);
        if (i == j) {
          if (lay.mask & kQuantityDensity) {
            x[lay.off_density + 2 * t] = d.pi[i];
            x[lay.off_density + 2 * t + 1] = 0.0;
          }
          if (lay.mask & kQuantityCross) x[lay.off_cross + t] = d.pi[i];
        } else {
          const double mag = std::sqrt(d.pi[i] * d.pi[j]);
          if (lay.mask & kQuantityDensity) {
            const double delta = d.phi[i] - d.phi[j];
            x[lay.off_density + 2 * t] = mag * std::cos(delta);
            x[lay.off_density + 2 * t + 1] = mag * std::sin(delta);
          }
          if (lay.mask & kQuantityCross) x[lay.off_cross + t] = mag;
        }
      }
    }
  }

  if (lay.mask & kQuantityShannon) {
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (d.pi[i] > 0.0) h -= d.pi[i] * std::log(d.pi[i]);
    x[lay.off_shannon] = h;
  }

  if (lay.mask & kQuantityVariance) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += d.pi[i] * obs->eigenvalues()[i];
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dv = obs->eigenvalues()[i] - mean;
      var += d.pi[i] * dv * dv;
    }
    x[lay.off_variance] = var;
  }
}

struct Accum {
  std::uint64_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  explicit Accum(std::size_t comps = 0) : mean(comps, 0.0), m2(comps, 0.0) {}

  void add(const double* x) {
    ++count;
    const double inv = 1.0 / static_cast<double>(count);
    for (std::size_t c = 0; c < mean.size(); ++c) {
      const double delta = x[c] - mean[c];
      mean[c] += delta * inv;
      m2[c] += delta * (x[c] - mean[c]);
    }
  }

  // Chan's pairwise update; order of operands is fixed by the merge tree.
  void merge(const Accum& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double n1 = static_cast<double>(count);
    const double n2 = static_cast<double>(o.count);
    const double nt = n1 + n2;
    for (std::size_t c = 0; c < mean.size(); ++c) {
      const double delta = o.mean[c] - mean[c];
      mean[c] += delta * (n2 / nt);
      m2[c] += o.m2[c] + delta * delta * (n1 * n2 / nt);
    }
    count += o.count;
  }
};

Accum merge_range(std::vector<Accum>& blocks, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return std::move(blocks[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  Accum left = merge_range(blocks, lo, mid);
  const Accum right = merge_range(blocks, mid, hi);
  left.merge(right);
  return left;
}

Accum run_monte_carlo(const PreparedModel& prepared, const Layout& lay, const Observable* obs,
                      std::uint64_t trials, std::uint64_t seed) {
  const std::size_t block_count =
      static_cast<std::size_t>((trials + kBlockTrials - 1) / kBlockTrials);
  std::vector<Accum> blocks(block_count, Accum(lay.comps));

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    Draw draw;
    std::vector<double> x(lay.comps);
    try {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= block_count) return;
        const std::uint64_t lo = static_cast<std::uint64_t>(b) * kBlockTrials;
        const std::uint64_t hi = std::min(trials, lo + kBlockTrials);
        Accum& acc = blocks[b];
        for (std::uint64_t t = lo; t < hi; ++t) {
          prepared.sample(seed, t, draw);
          fill_observation(lay, draw, obs, x.data());
          acc.add(x.data());
        }
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(err_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  const int workers = std::min<int>(mc_worker_count(), static_cast<int>(block_count));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  return merge_range(blocks, 0, block_count);
}

// Exact moments for phase-only models: pi is frozen at p and the independent
// phase offsets contribute their characteristic values c_i = E[e^{i eps_i}],
// giving E[o_ij] = sqrt(p_i p_j) e^{i(theta_i - theta_j)} c_i c_j for i != j.
EnsembleSummary phase_only_exact(const PreparedModel& prepared, const Observable* obs,
                                 unsigned mask) {
  const std::size_t n = prepared.dim();
  const std::vector<double>& p = prepared.initial().probs();
  const std::vector<double>& theta = prepared.initial().phases();
  const auto& model = std::get<PhaseOnly>(prepared.model());
  std::vector<double> c(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const PhaseSpec& spec =
        model.specs.size() == 1 ? model.specs.front() : model.specs[i];
    c[i] = spec.characteristic();
  }

  EnsembleSummary out;
  if (mask & kQuantityDensity) {
    MatrixEstimate est;
    est.value = ComplexMatrix(n);
    est.std_err_re = RealMatrix(n);
    est.std_err_im = RealMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
      est.value(i, i) = p[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        const double mag = std::sqrt(p[i] * p[j]) * c[i] * c[j];
        const double delta = theta[i] - theta[j];
        est.value(i, j) = cplx(mag * std::cos(delta), mag * std::sin(delta));
        est.value(j, i) = std::conj(est.value(i, j));
      }
    }
    out.density = std::move(est);
  }
  if (mask & kQuantityCross) {
    RealMatrixEstimate est;
    est.value = RealMatrix(n);
    est.std_err = RealMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
      est.value(i, i) = p[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        est.value(i, j) = std::sqrt(p[i] * p[j]);
        est.value(j, i) = est.value(i, j);
      }
    }
    out.cross = std::move(est);
  }
  if (mask & kQuantityShannon) out.shannon = ScalarEstimate{shannon_entropy(p), 0.0, true, 0};
  if (mask & kQuantityVariance)
    out.variance = ScalarEstimate{variance(p, *obs), 0.0, true, 0};
  if (mask & kQuantityPiMean) out.pi_mean = VectorEstimate{p, std::vector<double>(n, 0.0), true, 0};
  return out;
}

EnsembleSummary law_exact(const PreparedModel& prepared, const Observable* obs, unsigned mask) {
  const std::size_t n = prepared.dim();
  const Layout lay(mask, n);
  const DiscreteLaw law = prepared.exact_law();

  std::vector<double> acc(lay.comps, 0.0);
  std::vector<double> x(lay.comps);
  Draw draw;
  for (const LawPoint& pt : law.points) {
    draw.pi = pt.pi;
    draw.phi = pt.phi;
    fill_observation(lay, draw, obs, x.data());
    for (std::size_t c = 0; c < lay.comps; ++c) acc[c] += pt.weight * x[c];
  }

  EnsembleSummary out;
  if (mask & kQuantityDensity) {
    MatrixEstimate est;
    est.value = ComplexMatrix(n);
    est.std_err_re = RealMatrix(n);
    est.std_err_im = RealMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const std::size_t t = lay.upper(i, j);
        est.value(i, j) = cplx(acc[lay.off_density + 2 * t], acc[lay.off_density + 2 * t + 1]);
        if (j > i) est.value(j, i) = std::conj(est.value(i, j));
      }
    out.density = std::move(est);
  }
  if (mask & kQuantityCross) {
    RealMatrixEstimate est;
    est.value = RealMatrix(n);
    est.std_err = RealMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        est.value(i, j) = acc[lay.off_cross + lay.upper(i, j)];
        est.value(j, i) = est.value(i, j);
      }
    out.cross = std::move(est);
  }
  if (mask & kQuantityShannon) out.shannon = ScalarEstimate{acc[lay.off_shannon], 0.0, true, 0};
  if (mask & kQuantityVariance)
    out.variance = ScalarEstimate{acc[lay.off_variance], 0.0, true, 0};
  if (mask & kQuantityPiMean) {
    VectorEstimate est;
    est.value.assign(acc.begin() + static_cast<std::ptrdiff_t>(lay.off_pi),
                     acc.begin() + static_cast<std::ptrdiff_t>(lay.off_pi + n));
    est.std_err.assign(n, 0.0);
    out.pi_mean = std::move(est);
  }
  return out;
}

EnsembleSummary monte_carlo_summary(const PreparedModel& prepared, const Observable* obs,
                                    const RunMode& mode, unsigned mask) {
  const std::size_t n = prepared.dim();
  const Layout lay(mask, n);
  const Accum acc = run_monte_carlo(prepared, lay, obs, mode.trials, mode.seed);

  const double cnt = static_cast<double>(acc.count);
  auto std_err = [&](std::size_t c) { return std::sqrt(acc.m2[c] / ((cnt - 1.0) * cnt)); };

  EnsembleSummary out;
  if (mask & kQuantityDensity) {
    MatrixEstimate est;
    est.exact = false;
    est.trials = acc.count;
    est.value = ComplexMatrix(n);
    est.std_err_re = RealMatrix(n);
    est.std_err_im = RealMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const std::size_t t = lay.upper(i, j);
        est.value(i, j) =
            cplx(acc.mean[lay.off_density + 2 * t], acc.mean[lay.off_density + 2 * t + 1]);
        if (j > i) est.value(j, i) = std::conj(est.value(i, j));
        est.std_err_re(i, j) = est.std_err_re(j, i) = std_err(lay.off_density + 2 * t);
        est.std_err_im(i, j) = est.std_err_im(j, i) = std_err(lay.off_density + 2 * t + 1);
      }
    out.density = std::move(est);
  }
  if (mask & kQuantityCross) {
    RealMatrixEstimate est;
    est.exact = false;
    est.trials = acc.count;
    est.value = RealMatrix(n);
    est.std_err = RealMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const std::size_t t = lay.upper(i, j);
        est.value(i, j) = est.value(j, i) = acc.mean[lay.off_cross + t];
        est.std_err(i, j) = est.std_err(j, i) = std_err(lay.off_cross + t);
      }
    out.cross = std::move(est);
  }
  if (mask & kQuantityShannon)
    out.shannon =
        ScalarEstimate{acc.mean[lay.off_shannon], std_err(lay.off_shannon), false, acc.count};
  if (mask & kQuantityVariance)
    out.variance =
        ScalarEstimate{acc.mean[lay.off_variance], std_err(lay.off_variance), false, acc.count};
  if (mask & kQuantityPiMean) {
    VectorEstimate est;
    est.exact = false;
    est.trials = acc.count;
    est.value.resize(n);
    est.std_err.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      est.value[i] = acc.mean[lay.off_pi + i];
      est.std_err[i] = std_err(lay.off_pi + i);
    }
    out.pi_mean = std::move(est);
  }
  return out;
}

}  // namespace

EnsembleSummary estimate(const PreparedModel& prepared, const Observable* obs, const RunMode& mode,
                         unsigned mask) {
  require(mask != 0 && (mask & ~kQuantityAll) == 0, Errc::invalid_argument,
          "no quantity requested");
  if (mask & kQuantityVariance) {
    require(obs != nullptr, Errc::invalid_argument, "variance estimate needs an observable");
    require(obs->dim() == prepared.dim(), Errc::dimension_mismatch,
            "observable does not match state dimension");
  }

  if (mode.kind == RunMode::Kind::exact) {
    if (std::holds_alternative<PhaseOnly>(prepared.model()))
      return phase_only_exact(prepared, obs, mask);
    return law_exact(prepared, obs, mask);
  }

  require(mode.trials >= 1000, Errc::invalid_argument, "Monte Carlo needs at least 1000 trials");
  return monte_carlo_summary(prepared, obs, mode, mask);
}

MatrixEstimate average_density(const PreparedModel& prepared, const RunMode& mode) {
  return *estimate(prepared, nullptr, mode, kQuantityDensity).density;
}

RealMatrixEstimate cross_term_matrix(const PreparedModel& prepared, const RunMode& mode) {
  return *estimate(prepared, nullptr, mode, kQuantityCross).cross;
}

ScalarEstimate expected_shannon(const PreparedModel& prepared, const RunMode& mode) {
  return *estimate(prepared, nullptr, mode, kQuantityShannon).shannon;
}

ScalarEstimate expected_variance(const PreparedModel& prepared, const Observable& obs,
                                 const RunMode& mode) {
  return *estimate(prepared, &obs, mode, kQuantityVariance).variance;
}

VectorEstimate pi_mean(const PreparedModel& prepared, const RunMode& mode) {
  return *estimate(prepared, nullptr, mode, kQuantityPiMean).pi_mean;
}

int mc_worker_count() {
  if (const char* env = std::getenv("DECOH_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace decoh
