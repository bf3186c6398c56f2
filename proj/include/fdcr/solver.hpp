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
 * @file solver.hpp
 * @brief Closed-form SU signal design under PU rate constraints.
 *
 * Two designs are offered for the secondary transmitter:
 *  - proper signaling (PGS): the transmit power is the minimum of the two
 *    per-constraint power bounds and the budget, with zero circularity;
 *  - improper signaling (IGS): power and circularity are jointly optimal.
 *    Each PU rate constraint induces a power-bound curve p_s^(i)(C_x) that is
 *    strictly increasing in C_x; the pointwise minimum of both curves and the
 *    budget partitions [0, 1] at up to three breakpoints, and on each piece
 *    the optimum sits at an interval endpoint decided by a monotonicity test.
 *
 * All functions are pure; values are safe to share across threads.
 */

#ifndef FDCR_SOLVER_HPP
#define FDCR_SOLVER_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "fdcr/model.hpp"

namespace fdcr {

constexpr double kUnbounded = std::numeric_limits<double>::infinity();
constexpr double kCxOneEps = 1e-9;        // width of the degenerate cx = 1 branch
constexpr double kBreakpointMergeTol = 1e-9;

enum class BreakpointKind { budget_node1, budget_node2, cross };

struct Breakpoint {
  double cx = 0.0;
  BreakpointKind kind = BreakpointKind::cross;
};

/// Ordered distinct interior intersection points of the two power-bound
/// curves and the budget line; k = count() is in {0, 1, 2, 3}.
struct BreakpointSet {
  std::vector<Breakpoint> points;
  int count() const { return static_cast<int>(points.size()); }
};

enum class BindingRegime { budget, constraint_node1, constraint_node2 };

/// Per-interval optimum of the piecewise design problem.
struct SubproblemCandidate {
  int interval = 0;  // 1-based interval index z
  SignalDesign design;
  double su_rate = 0.0;
  BindingRegime regime = BindingRegime::budget;
};

enum class Scheme { pgs, igs, idle };

struct Solution {
  SignalDesign design;
  RateReport rates;
  std::vector<SubproblemCandidate> candidates;  // IGS only; empty otherwise
  Scheme scheme = Scheme::idle;

  bool idle() const { return scheme == Scheme::idle; }
};

/// True iff the interference margin of PU stream `node` exceeds the RSI seen
/// at its receiver; the SU may transmit only when this holds for both streams.
inline bool working_condition(const ScenarioInstance& sc, int node) {
  const int j = receiver_of(node);
  return i_max(sc, node) > sc.p.at(j) * sc.upsilon_p.at(j);
}

inline bool working_condition(const ScenarioInstance& sc) {
  return working_condition(sc, 1) && working_condition(sc, 2);
}

/// Proper-signaling power bound for constraint `node`:
/// [beta_j Psi_i(1,1) / I_s_j]^+, kUnbounded when the SU never interferes.
inline double pgs_bound(const ScenarioInstance& sc, int node) {
  const int j = receiver_of(node);
  const double isj = sc.i_s.at(j);
  const double margin = psi_margin(sc, node, 1, 1);
  if (isj == 0.0) return margin >= 0.0 ? kUnbounded : 0.0;
  return std::max(0.0, beta(sc, j) * margin / isj);
}

/// Improper-signaling power bound p_s^(i)(C_x): the positive root of the
/// constraint quadratic, clamped at zero. At cx = 1 the quadratic degenerates
/// to a linear inequality, solved analytically: unbounded when Psi_i(1,2) >= 0,
/// else -beta_j Psi_i(2,2) / (2 I_s_j Psi_i(1,2)).
inline double igs_power_bound(const ScenarioInstance& sc, int node, double cx) {
  assert(cx >= 0.0 && cx <= 1.0);
  const int j = receiver_of(node);
  const double isj = sc.i_s.at(j);
  const double s = psi_margin(sc, node, 1, 2);
  const double t = psi_margin(sc, node, 2, 2);
  if (isj == 0.0) return t >= 0.0 ? kUnbounded : 0.0;
  const double b = beta(sc, j);
  if (cx > 1.0 - kCxOneEps) {
    if (s >= 0.0) return kUnbounded;
    return std::max(0.0, -b * t / (2.0 * isj * s));
  }
  const double eps = (1.0 - cx) * (1.0 + cx);
  const double radicand = s * s + eps * t;
  if (radicand < 0.0) return 0.0;  // constraint unsatisfiable at any power
  return std::max(0.0, b * (std::sqrt(radicand) + s) / (isj * eps));
}

namespace detail {

/// Behaviour of p_s^(i)(C_x) as C_x -> 1. The curve either converges to a
/// finite value (Psi_i(1,2) < 0) or diverges like (1-C_x^2)^(-1/2)
/// (Psi = 0) or (1-C_x^2)^(-1) (Psi > 0). Two curves are ordered near 1 by
/// divergence class first, then by the finite value or leading coefficient,
/// which keeps the endpoint-ordering existence test meaningful when both
/// bounds are unbounded at 1.
struct BoundAtOne {
  int div_class = 0;   // 0 finite, 1 inverse-sqrt, 2 inverse-linear
  double value = 0.0;  // finite limit, or divergence coefficient
};

inline BoundAtOne bound_at_one(const ScenarioInstance& sc, int node) {
  const int j = receiver_of(node);
  const double isj = sc.i_s.at(j);
  const double s = psi_margin(sc, node, 1, 2);
  const double t = psi_margin(sc, node, 2, 2);
  if (isj == 0.0) return t >= 0.0 ? BoundAtOne{2, kUnbounded} : BoundAtOne{0, 0.0};
  const double b = beta(sc, j);
  if (s > 0.0) return {2, 2.0 * b * s / isj};
  if (s == 0.0) {
    if (t > 0.0) return {1, b * std::sqrt(t) / isj};
    return {0, 0.0};
  }
  return {0, std::max(0.0, -b * t / (2.0 * isj * s))};
}

inline bool strictly_less(const BoundAtOne& a, const BoundAtOne& b) {
  if (a.div_class != b.div_class) return a.div_class < b.div_class;
  return a.value < b.value;
}

inline bool nearly_equal(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

/// Intersection r^(i) of p_s^(i)(C_x) with the budget, when the curve starts
/// below the budget and ends above it.
inline std::optional<double> budget_intersection(const ScenarioInstance& sc, int node) {
  const double at0 = igs_power_bound(sc, node, 0.0);
  const double at1 = igs_power_bound(sc, node, 1.0);
  if (!(at0 < sc.ps_max && at1 > sc.ps_max)) return std::nullopt;
  const int j = receiver_of(node);
  const double b = beta(sc, j);
  const double isj = sc.i_s.at(j);
  if (isj == 0.0) return std::nullopt;
  const double s = psi_margin(sc, node, 1, 2);
  const double t = psi_margin(sc, node, 2, 2);
  const double denom = sc.ps_max * isj;
  const double radicand = 1.0 - (b * b * t + 2.0 * sc.ps_max * b * isj * s) / (denom * denom);
  // The endpoint test is authoritative; a non-real or non-interior radicand
  // still yields no breakpoint.
  if (!(radicand > 0.0 && radicand < 1.0)) return std::nullopt;
  return std::sqrt(radicand);
}

/// Intersection r^(3) of the two constraint curves, when they are not
/// identical and their endpoint ordering flips across (0, 1).
inline std::optional<double> cross_intersection(const ScenarioInstance& sc) {
  const double i1 = sc.i_s.n1;  // receiver-side CNR of constraint 2
  const double i2 = sc.i_s.n2;  // receiver-side CNR of constraint 1
  if (i1 == 0.0 || i2 == 0.0) return std::nullopt;
  const double b1 = beta(sc, 1);
  const double b2 = beta(sc, 2);
  const double s1 = psi_margin(sc, 1, 1, 2);
  const double s2 = psi_margin(sc, 2, 1, 2);
  const double t1 = psi_margin(sc, 1, 2, 2);
  const double t2 = psi_margin(sc, 2, 2, 2);

  // Identical curves never cross: compare the scaled quadratic coefficients.
  const double a1 = b2 / i2;  // constraint 1 sees receiver 2
  const double a2 = b1 / i1;
  if (detail::nearly_equal(a1 * s1, a2 * s2, kBreakpointMergeTol) &&
      detail::nearly_equal(a1 * a1 * t1, a2 * a2 * t2, kBreakpointMergeTol))
    return std::nullopt;

  const double at0_1 = igs_power_bound(sc, 1, 0.0);
  const double at0_2 = igs_power_bound(sc, 2, 0.0);
  const auto one_1 = detail::bound_at_one(sc, 1);
  const auto one_2 = detail::bound_at_one(sc, 2);
  const bool flips = (at0_1 < at0_2 && detail::strictly_less(one_2, one_1)) ||
                     (at0_2 < at0_1 && detail::strictly_less(one_1, one_2));
  if (!flips) return std::nullopt;

  const double lead = b1 * i2 * s2 - b2 * i1 * s1;
  const double trail = b2 * i1 * s2 * t1 - b1 * i2 * s1 * t2;
  const double denom = b2 * b2 * i1 * i1 * t1 - b1 * b1 * i2 * i2 * t2;
  if (denom == 0.0) return std::nullopt;
  const double radicand = 1.0 - 4.0 * b1 * b2 * i1 * i2 * lead * trail / (denom * denom);
  if (!(radicand > 0.0 && radicand < 1.0)) return std::nullopt;
  return std::sqrt(radicand);
}

/// All distinct interior breakpoints, ascending, duplicates within 1e-9
/// merged (budget points take precedence over the cross point).
inline BreakpointSet breakpoints(const ScenarioInstance& sc) {
  std::vector<Breakpoint> raw;
  if (auto r = budget_intersection(sc, 1)) raw.push_back({*r, BreakpointKind::budget_node1});
  if (auto r = budget_intersection(sc, 2)) raw.push_back({*r, BreakpointKind::budget_node2});
  if (auto r = cross_intersection(sc)) raw.push_back({*r, BreakpointKind::cross});
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Breakpoint& a, const Breakpoint& b) { return a.cx < b.cx; });
  BreakpointSet out;
  for (const auto& bp : raw) {
    if (bp.cx <= kBreakpointMergeTol || bp.cx >= 1.0 - kBreakpointMergeTol) continue;
    if (!out.points.empty() && bp.cx - out.points.back().cx <= kBreakpointMergeTol) continue;
    out.points.push_back(bp);
  }
  return out;
}

/// Along the binding constraint curve of node `m`, the SU rate is strictly
/// increasing in C_x iff beta_j gamma_s Psi_m(1,2) / (I_s_j Delta) > -1.
inline bool monotonicity_condition(const ScenarioInstance& sc, int binding_node) {
  const int j = receiver_of(binding_node);
  const double isj = sc.i_s.at(j);
  const double margin = psi_margin(sc, binding_node, 1, 2);
  if (isj == 0.0) return margin >= 0.0;
  return beta(sc, j) * sc.gamma_s * margin / (isj * sc.delta()) > -1.0;
}

/// Resolves one interval [cx_lo, cx_hi] of the piecewise problem: identify
/// the active bound at the midpoint (ties prefer the budget, then the lower
/// constraint index), then pick the interval endpoint according to the rate
/// monotonicity in that regime. Candidate powers are clamped to the budget.
inline SubproblemCandidate solve_subproblem(const ScenarioInstance& sc, double cx_lo,
                                            double cx_hi, int interval) {
  assert(0.0 <= cx_lo && cx_lo < cx_hi && cx_hi <= 1.0);
  const double mid = 0.5 * (cx_lo + cx_hi);
  const double at_mid[3] = {sc.ps_max, igs_power_bound(sc, 1, mid),
                            igs_power_bound(sc, 2, mid)};
  int m = 0;
  for (int l : {1, 2})
    if (at_mid[l] < at_mid[m]) m = l;

  SubproblemCandidate cand;
  cand.interval = interval;
  if (m == 0) {
    // On the budget the rate strictly decreases in C_x.
    cand.design = {sc.ps_max, cx_lo};
    cand.regime = BindingRegime::budget;
  } else {
    const bool increasing = monotonicity_condition(sc, m);
    const double cx = increasing ? cx_hi : cx_lo;
    cand.design = {std::min(igs_power_bound(sc, m, cx), sc.ps_max), cx};
    cand.regime = m == 1 ? BindingRegime::constraint_node1 : BindingRegime::constraint_node2;
  }
  cand.su_rate = su_rate(cand.design, sc);
  return cand;
}

inline Solution idle_solution(const ScenarioInstance& sc) {
  Solution sol;
  sol.design = {0.0, 0.0};
  sol.rates = rate_report(sol.design, sc);
  sol.scheme = Scheme::idle;
  return sol;
}

/// Proper-signaling design: transmit at the smallest of the two constraint
/// bounds and the budget, or stay idle when the working condition fails.
inline Solution solve_pgs(const ScenarioInstance& sc) {
  if (!working_condition(sc)) return idle_solution(sc);
  Solution sol;
  sol.design = {std::min({pgs_bound(sc, 1), pgs_bound(sc, 2), sc.ps_max}), 0.0};
  sol.rates = rate_report(sol.design, sc);
  sol.scheme = Scheme::pgs;
  return sol;
}

/// Joint power/circularity design: resolve every breakpoint interval and
/// return the candidate with the largest SU rate (ties toward smaller C_x).
inline Solution solve_igs(const ScenarioInstance& sc) {
  if (!working_condition(sc)) return idle_solution(sc);
  const BreakpointSet bps = breakpoints(sc);
  std::vector<double> edges;
  edges.reserve(bps.count() + 2);
  edges.push_back(0.0);
  for (const auto& bp : bps.points) edges.push_back(bp.cx);
  edges.push_back(1.0);

  Solution sol;
  sol.scheme = Scheme::igs;
  for (int z = 1; z < static_cast<int>(edges.size()); ++z)
    sol.candidates.push_back(solve_subproblem(sc, edges[z - 1], edges[z], z));

  const SubproblemCandidate* best = &sol.candidates.front();
  for (const auto& c : sol.candidates) {
    if (c.su_rate > best->su_rate ||
        (c.su_rate == best->su_rate && c.design.cx < best->design.cx))
      best = &c;
  }
  sol.design = best->design;
  sol.rates = rate_report(sol.design, sc);
  return sol;
}

}  // namespace fdcr

#endif  // FDCR_SOLVER_HPP
