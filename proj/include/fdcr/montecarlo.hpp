// Copyright 2026 the fdcr authors
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

/**
 * @file montecarlo.hpp
 * @brief Correlated Rayleigh-fading sampling and parameter sweeps.
 *
 * Every CNR is exponential: mean * |u|^2 with u a unit circular complex
 * Gaussian. The two PU direct gains are correlated at the complex-gain level
 * (u_21 = rho u_12 + sqrt(1 - rho^2) w). Sweeps use common random numbers:
 * one set of unit draws per trial, shared by both signaling schemes and by
 * every (family, axis) grid cell, which makes per-realization dominance and
 * monotone trend assertions exact rather than statistical.
 *
 * Trials are aggregated in fixed-size blocks reduced in index order, so the
 * result is bit-identical for any thread count.
 */

#ifndef FDCR_MONTECARLO_HPP
#define FDCR_MONTECARLO_HPP

#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fdcr/model.hpp"
#include "fdcr/rng.hpp"
#include "fdcr/solver.hpp"

namespace fdcr {

/// Unit-mean squared-envelope draws for one channel realization.
/// Draw order (fixed): PU direct pair, SU direct, SU->PU pair, PU->SU pair,
/// RSI pair.
struct ChannelDraw {
  double g_p1 = 0.0, g_p2 = 0.0;  // correlated |u_12|^2, |u_21|^2
  double g_s = 0.0;
  double g_is1 = 0.0, g_is2 = 0.0;
  double g_ip1 = 0.0, g_ip2 = 0.0;
  double g_up1 = 0.0, g_up2 = 0.0;

  static ChannelDraw sample(double rho, SplitMix64& g) {
    ChannelDraw d;
    const auto pair = correlated_unit_pair(rho, g);
    d.g_p1 = std::norm(pair.first);
    d.g_p2 = std::norm(pair.second);
    d.g_s = std::norm(complex_unit_gaussian(g));
    d.g_is1 = std::norm(complex_unit_gaussian(g));
    d.g_is2 = std::norm(complex_unit_gaussian(g));
    d.g_ip1 = std::norm(complex_unit_gaussian(g));
    d.g_ip2 = std::norm(complex_unit_gaussian(g));
    d.g_up1 = std::norm(complex_unit_gaussian(g));
    d.g_up2 = std::norm(complex_unit_gaussian(g));
    return d;
  }
};

/// Scales a unit draw by the statistics' mean CNRs.
inline ScenarioInstance instance_from(const ScenarioStatistics& st, const ChannelDraw& d) {
  ScenarioInstance sc;
  sc.p = st.p;
  sc.r0 = st.r0;
  sc.gamma_p = {db_to_linear(st.gamma_p_db.n1) * d.g_p1,
                db_to_linear(st.gamma_p_db.n2) * d.g_p2};
  sc.gamma_s = db_to_linear(st.gamma_s_db) * d.g_s;
  sc.i_s = {db_to_linear(st.i_s_db.n1) * d.g_is1, db_to_linear(st.i_s_db.n2) * d.g_is2};
  sc.i_p = {db_to_linear(st.i_p_db.n1) * d.g_ip1, db_to_linear(st.i_p_db.n2) * d.g_ip2};
  sc.upsilon_p = {db_to_linear(st.upsilon_p_db.n1) * d.g_up1,
                  db_to_linear(st.upsilon_p_db.n2) * d.g_up2};
  sc.ps_max = st.ps_max;
  return sc;
}

inline ScenarioInstance sample_scenario(const ScenarioStatistics& st, SplitMix64& g) {
  return instance_from(st, ChannelDraw::sample(st.pu_direct_correlation, g));
}

enum class SweepAxis { gamma_s_db, upsilon_p_db, i_s_db, r0 };
enum class SweepFamily { gamma_p_db, r0, ps_max };

/// Statistics for one sweep grid cell. Pair-valued fields swept by the axis
/// or the family (gamma_p, i_s, upsilon_p, r0) are set symmetric.
inline ScenarioStatistics sweep_point(const ScenarioStatistics& base, SweepFamily family,
                                      double family_value, SweepAxis axis, double axis_value) {
  ScenarioStatistics st = base;
  switch (family) {
    case SweepFamily::gamma_p_db: st.gamma_p_db = {family_value, family_value}; break;
    case SweepFamily::r0: st.r0 = {family_value, family_value}; break;
    case SweepFamily::ps_max: st.ps_max = family_value; break;
  }
  switch (axis) {
    case SweepAxis::gamma_s_db: st.gamma_s_db = axis_value; break;
    case SweepAxis::upsilon_p_db: st.upsilon_p_db = {axis_value, axis_value}; break;
    case SweepAxis::i_s_db: st.i_s_db = {axis_value, axis_value}; break;
    case SweepAxis::r0: st.r0 = {axis_value, axis_value}; break;
  }
  return st;
}

struct SweepSpec {
  ScenarioStatistics base;
  SweepAxis axis = SweepAxis::gamma_s_db;
  std::vector<double> axis_values;
  SweepFamily family = SweepFamily::gamma_p_db;
  std::vector<double> family_values;
  int trials = 10000;
  std::uint64_t seed = 1;

  void validate() const {
    base.validate();
    if (trials < 1) throw std::invalid_argument("SweepSpec: trials must be >= 1");
    if (axis_values.empty()) throw std::invalid_argument("SweepSpec: no axis values");
    if (family_values.empty()) throw std::invalid_argument("SweepSpec: no family values");
    for (std::size_t k = 0; k < axis_values.size(); ++k) {
      if (!std::isfinite(axis_values[k]))
        throw std::invalid_argument("SweepSpec: axis values must be finite");
      if (k > 0 && axis_values[k] <= axis_values[k - 1])
        throw std::invalid_argument("SweepSpec: axis values must be sorted ascending");
    }
    if (axis == SweepAxis::r0 && family == SweepFamily::r0)
      throw std::invalid_argument("SweepSpec: axis and family both sweep r0");
    for (double f : family_values)
      for (double a : axis_values) sweep_point(base, family, f, axis, a).validate();
  }
};

struct SweepCell {
  double family_value = 0.0;
  double axis_value = 0.0;
  double mean_rs_pgs = 0.0;
  double mean_rs_igs = 0.0;
  double mean_cx = 0.0;       // mean optimal C_x over all trials (idle counts as 0)
  double idle_fraction = 0.0;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // family-major, axis-minor
  int trials = 0;
  std::uint64_t seed = 0;
  // Measured Pearson correlation of the two PU direct-link envelopes, kept
  // as run metadata alongside the complex-gain correlation it results from.
  double envelope_correlation = 0.0;
};

inline SweepResult run_sweep(const SweepSpec& spec, int threads = 1) {
  spec.validate();
  const std::size_t nfam = spec.family_values.size();
  const std::size_t nax = spec.axis_values.size();
  const std::size_t ncells = nfam * nax;

  std::vector<ScenarioStatistics> cells(ncells);
  for (std::size_t f = 0; f < nfam; ++f)
    for (std::size_t a = 0; a < nax; ++a)
      cells[f * nax + a] = sweep_point(spec.base, spec.family, spec.family_values[f],
                                       spec.axis, spec.axis_values[a]);

  struct CellSums {
    double rs_pgs = 0.0, rs_igs = 0.0, cx = 0.0;
    std::int64_t idle = 0;
  };
  struct EnvSums {
    double e1 = 0.0, e2 = 0.0, e11 = 0.0, e22 = 0.0, e12 = 0.0;
  };

  constexpr int kBlock = 256;
  const int nblocks = (spec.trials + kBlock - 1) / kBlock;
  std::vector<std::vector<CellSums>> block_cells(nblocks,
                                                 std::vector<CellSums>(ncells));
  std::vector<EnvSums> block_env(nblocks);

  auto run_block = [&](int blk) {
    const int lo = blk * kBlock;
    const int hi = std::min(spec.trials, lo + kBlock);
    auto& sums = block_cells[blk];
    auto& env = block_env[blk];
    for (int t = lo; t < hi; ++t) {
      SplitMix64 g(substream_seed(spec.seed, static_cast<std::uint64_t>(t)));
      const ChannelDraw draw = ChannelDraw::sample(spec.base.pu_direct_correlation, g);
      const double e1 = std::sqrt(draw.g_p1);
      const double e2 = std::sqrt(draw.g_p2);
      env.e1 += e1;
      env.e2 += e2;
      env.e11 += e1 * e1;
      env.e22 += e2 * e2;
      env.e12 += e1 * e2;
      for (std::size_t c = 0; c < ncells; ++c) {
        const ScenarioInstance sc = instance_from(cells[c], draw);
        const Solution pgs = solve_pgs(sc);
        const Solution igs = solve_igs(sc);
        if (igs.rates.r_s < pgs.rates.r_s - 1e-9)
          throw std::logic_error("run_sweep: per-realization IGS/PGS dominance violated");
        sums[c].rs_pgs += pgs.rates.r_s;
        sums[c].rs_igs += igs.rates.r_s;
        sums[c].cx += igs.design.cx;
        sums[c].idle += igs.idle() ? 1 : 0;
      }
    }
  };

  if (threads <= 1 || nblocks == 1) {
    for (int blk = 0; blk < nblocks; ++blk) run_block(blk);
  } else {
    const int nworkers = std::min(threads, nblocks);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nworkers);
    pool.reserve(nworkers);
    for (int w = 0; w < nworkers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (int blk = w; blk < nblocks; blk += nworkers) run_block(blk);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // Deterministic reduction in block order.
  std::vector<CellSums> total(ncells);
  EnvSums env;
  for (int blk = 0; blk < nblocks; ++blk) {
    for (std::size_t c = 0; c < ncells; ++c) {
      total[c].rs_pgs += block_cells[blk][c].rs_pgs;
      total[c].rs_igs += block_cells[blk][c].rs_igs;
      total[c].cx += block_cells[blk][c].cx;
      total[c].idle += block_cells[blk][c].idle;
    }
    env.e1 += block_env[blk].e1;
    env.e2 += block_env[blk].e2;
    env.e11 += block_env[blk].e11;
    env.e22 += block_env[blk].e22;
    env.e12 += block_env[blk].e12;
  }

  SweepResult res;
  res.trials = spec.trials;
  res.seed = spec.seed;
  const double n = spec.trials;
  res.cells.reserve(ncells);
  for (std::size_t f = 0; f < nfam; ++f)
    for (std::size_t a = 0; a < nax; ++a) {
      const auto& s = total[f * nax + a];
      res.cells.push_back({spec.family_values[f], spec.axis_values[a], s.rs_pgs / n,
                           s.rs_igs / n, s.cx / n, static_cast<double>(s.idle) / n});
    }
  const double cov = env.e12 / n - (env.e1 / n) * (env.e2 / n);
  const double v1 = env.e11 / n - (env.e1 / n) * (env.e1 / n);
  const double v2 = env.e22 / n - (env.e2 / n) * (env.e2 / n);
  res.envelope_correlation = (v1 > 0.0 && v2 > 0.0) ? cov / std::sqrt(v1 * v2) : 0.0;
  return res;
}

/// Simulation defaults: R_0 = 1 b/s/Hz, p_i = 1 W, mean PU direct 15 dB,
/// PU->SU (5, 8) dB, RSI 10 dB, SU budget 1 W, SU->PU (20, 10) dB,
/// SU direct 15 dB, PU direct-pair correlation 0.95.
inline ScenarioStatistics default_statistics() {
  ScenarioStatistics st;
  st.p = {1.0, 1.0};
  st.r0 = {1.0, 1.0};
  st.gamma_p_db = {15.0, 15.0};
  st.gamma_s_db = 15.0;
  st.i_s_db = {20.0, 10.0};
  st.i_p_db = {5.0, 8.0};
  st.upsilon_p_db = {10.0, 10.0};
  st.ps_max = 1.0;
  st.pu_direct_correlation = 0.95;
  return st;
}

/// Built-in sweep configurations of the three bundled experiments:
///  1: SU rate vs mean SU direct CNR (0..30 dB) for mean PU direct in
///     {10, 15, 20} dB;
///  2: SU rate vs mean SU->PU interference (-10..20 dB, symmetric) for PU
///     targets {0.5, 1, 2} b/s/Hz;
///  3: SU rate vs mean RSI (0..40 dB) for SU budgets {0.5, 1, 2} W.
inline SweepSpec example_sweep(int which, int trials = 10000, std::uint64_t seed = 1) {
  SweepSpec spec;
  spec.base = default_statistics();
  spec.trials = trials;
  spec.seed = seed;
  auto steps = [](double lo, double hi, double step) {
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-9; x += step) v.push_back(x);
    return v;
  };
  switch (which) {
    case 1:
      spec.axis = SweepAxis::gamma_s_db;
      spec.axis_values = steps(0.0, 30.0, 5.0);
      spec.family = SweepFamily::gamma_p_db;
      spec.family_values = {10.0, 15.0, 20.0};
      break;
    case 2:
      spec.axis = SweepAxis::i_s_db;
      spec.axis_values = steps(-10.0, 20.0, 5.0);
      spec.family = SweepFamily::r0;
      spec.family_values = {0.5, 1.0, 2.0};
      break;
    case 3:
      spec.axis = SweepAxis::upsilon_p_db;
      spec.axis_values = steps(0.0, 40.0, 5.0);
      spec.family = SweepFamily::ps_max;
      spec.family_values = {0.5, 1.0, 2.0};
      break;
    default:
      throw std::invalid_argument("example_sweep: example must be 1, 2 or 3");
  }
  return spec;
}

}  // namespace fdcr

#endif  // FDCR_MONTECARLO_HPP
