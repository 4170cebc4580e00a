// Copyright 2026 The qhit Authors
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

#include "qhit/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "qhit/errors.hpp"
#include "qhit/random.hpp"

namespace qhit {

namespace {

double survival_spectral_radius(const SuperOperator& t, const SuperProjectors& sp) {
  if (sp.qq.rows() != t.rep().rows()) throw DimensionError("series: projectors do not match the map");
  const double s = spectral_radius(sp.qq * t.rep());
  if (!(s < 1.0)) {
    std::ostringstream os;
    os << "series: spectral radius of QPhi is " << s << " >= 1; the monitored series does not converge";
    throw ConvergenceError(os.str());
  }
  return s;
}

}  // namespace

FirstVisitDistribution first_visit_series(const SuperOperator& t, const SuperProjectors& sp,
                                          const DensityMatrix& rho, int r_max) {
  if (r_max < 1) throw ArgumentError("first_visit_series: r_max must be at least 1");
  if (rho.dim() != t.dim()) throw DimensionError("first_visit_series: state dimension mismatch");
  FirstVisitDistribution out;
  out.spectral_radius = survival_spectral_radius(t, sp);
  out.r_max = r_max;
  out.probabilities.reserve(static_cast<std::size_t>(r_max));

  ComplexVector sigma = rho.vectorized();
  for (int r = 1; r <= r_max; ++r) {
    const ComplexVector stepped = t.rep() * sigma;
    out.probabilities.push_back(trace_of_vec(sp.pp * stepped).real());
    sigma = sp.qq * stepped;
  }
  out.tail_bound = sigma.lpNorm<1>() / (1.0 - out.spectral_radius);
  return out;
}

SeriesResult tau_series_detailed(const SuperOperator& t, const SuperProjectors& sp, const DensityMatrix& rho,
                                 const Tolerance& tol) {
  if (rho.dim() != t.dim()) throw DimensionError("tau_series: state dimension mismatch");
  SeriesResult out;
  out.spectral_radius = survival_spectral_radius(t, sp);
  const double geometric = 1.0 / (1.0 - out.spectral_radius);
  const double target = tol.atol() / 10.0;

  ComplexVector sigma = rho.vectorized();
  for (int r = 1; r <= kSeriesMaxTerms; ++r) {
    const ComplexVector stepped = t.rep() * sigma;
    const double pr = trace_of_vec(sp.pp * stepped).real();
    out.tau += static_cast<double>(r) * pr;
    out.probability += pr;
    sigma = sp.qq * stepped;
    out.terms = r;
    // Σ_{k>r} k π_k = r·m + Σ_{k>r} m_k with m_k the surviving mass after k−1 steps
    out.tail_bound = sigma.lpNorm<1>() * (static_cast<double>(r) + geometric);
    if (out.tail_bound < target) return out;
  }
  std::ostringstream os;
  os << "tau_series: tail bound " << out.tail_bound << " still above " << target << " after "
     << kSeriesMaxTerms << " terms";
  throw ConvergenceError(os.str());
}

// ---------------------------------------------------------------------------
// Monte-Carlo

namespace {

struct BatchStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
};

// Chan et al. pairwise merge of running mean / sum of squared deviations.
void merge(BatchStats& acc, const BatchStats& b) {
  if (b.count == 0) return;
  if (acc.count == 0) {
    acc = b;
    return;
  }
  const auto n = static_cast<double>(acc.count + b.count);
  const double delta = b.mean - acc.mean;
  acc.mean += delta * static_cast<double>(b.count) / n;
  acc.m2 += b.m2 + delta * delta * static_cast<double>(acc.count) * static_cast<double>(b.count) / n;
  acc.count += b.count;
}

std::vector<double> cumulative(const RealVector& weights) {
  std::vector<double> c(static_cast<std::size_t>(weights.size()));
  double s = 0.0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    s += weights(i);
    c[static_cast<std::size_t>(i)] = s;
  }
  return c;
}

Eigen::Index sample(const std::vector<double>& cum, rnd::Engine& eng) {
  const double u = rnd::uniform01(eng) * cum.back();
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  const auto idx = static_cast<Eigen::Index>(it - cum.begin());
  return std::min<Eigen::Index>(idx, static_cast<Eigen::Index>(cum.size()) - 1);
}

}  // namespace

MonteCarloEstimate classical_monte_carlo(const RealMatrix& p, const ChainStart& start,
                                         const std::vector<Eigen::Index>& target, std::int64_t trials,
                                         std::uint64_t seed, std::int64_t step_cap) {
  const Eigen::Index n = p.rows();
  if (n == 0 || p.cols() != n) throw DimensionError("classical_monte_carlo: matrix must be square");
  if (trials < 1) throw ArgumentError("classical_monte_carlo: trials must be at least 1");
  if (step_cap < 1) throw ArgumentError("classical_monte_carlo: step cap must be at least 1");
  if ((p.array() < 0.0).any()) throw ValidationError("classical_monte_carlo: negative transition probability");
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(p.col(j).sum() - 1.0) > Tolerance{}.atol()) {
      throw ValidationError("classical_monte_carlo: matrix is not column-stochastic");
    }
  }
  if (target.empty()) throw ArgumentError("classical_monte_carlo: empty target set");
  std::vector<char> in_target(static_cast<std::size_t>(n), 0);
  for (const auto k : target) {
    if (k < 0 || k >= n) throw ArgumentError("classical_monte_carlo: target index out of range");
    in_target[static_cast<std::size_t>(k)] = 1;
  }

  std::vector<double> start_cum;
  Eigen::Index fixed_start = -1;
  if (const auto* s = std::get_if<Eigen::Index>(&start)) {
    if (*s < 0 || *s >= n) throw ArgumentError("classical_monte_carlo: start index out of range");
    fixed_start = *s;
  } else {
    const auto& x = std::get<RealVector>(start);
    if (x.size() != n || (x.array() < 0.0).any() || std::abs(x.sum() - 1.0) > Tolerance{}.atol()) {
      throw ValidationError("classical_monte_carlo: start is not a probability distribution");
    }
    start_cum = cumulative(x);
  }

  std::vector<std::vector<double>> columns;
  columns.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) columns.push_back(cumulative(p.col(j)));

  const std::int64_t batches = (trials + kMonteCarloBatch - 1) / kMonteCarloBatch;
  std::vector<BatchStats> stats(static_cast<std::size_t>(batches));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(batches));

  auto run_batch = [&](std::int64_t b) {
    const auto seed_lo = static_cast<std::uint32_t>(seed & 0xffffffffULL);
    const auto seed_hi = static_cast<std::uint32_t>(seed >> 32);
    std::seed_seq seq{seed_lo, seed_hi, static_cast<std::uint32_t>(b)};
    rnd::Engine eng(seq);
    const std::int64_t count = std::min(kMonteCarloBatch, trials - b * kMonteCarloBatch);
    BatchStats st;
    for (std::int64_t k = 0; k < count; ++k) {
      Eigen::Index state = fixed_start >= 0 ? fixed_start : sample(start_cum, eng);
      std::int64_t steps = 0;
      do {
        if (++steps > step_cap) {
          std::ostringstream os;
          os << "classical_monte_carlo: trajectory exceeded " << step_cap << " steps";
          throw ConvergenceError(os.str());
        }
        state = sample(columns[static_cast<std::size_t>(state)], eng);
      } while (!in_target[static_cast<std::size_t>(state)]);
      // Welford update
      ++st.count;
      const double delta = static_cast<double>(steps) - st.mean;
      st.mean += delta / static_cast<double>(st.count);
      st.m2 += delta * (static_cast<double>(steps) - st.mean);
    }
    stats[static_cast<std::size_t>(b)] = st;
  };

  std::atomic<std::int64_t> next{0};
  const auto workers = static_cast<std::int64_t>(
      std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(batches))));
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (std::int64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::int64_t b = next++; b < batches; b = next++) {
          try {
            run_batch(b);
          } catch (...) {
            errors[static_cast<std::size_t>(b)] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  BatchStats total;
  for (const auto& st : stats) merge(total, st);

  MonteCarloEstimate out;
  out.mean = total.mean;
  out.trials = total.count;
  out.seed = seed;
  out.std_error = total.count > 1
                      ? std::sqrt(total.m2 / static_cast<double>(total.count - 1) / static_cast<double>(total.count))
                      : 0.0;
  return out;
}

}  // namespace qhit
