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

// Shared fixtures: the reference scenario (the simulation defaults taken as
// instantaneous CNRs) and a frozen asymmetric scenario whose power-bound
// curves produce all three breakpoints. Expected values quoted in the tests
// were computed with an independent prototype of the closed forms and a
// brute-force grid search, not with this library.

#ifndef FDCR_TEST_SUPPORT_HPP
#define FDCR_TEST_SUPPORT_HPP

#include <cmath>

#include "fdcr/model.hpp"

namespace fdcr_test {

inline fdcr::ScenarioInstance canonical() {
  using fdcr::db_to_linear;
  fdcr::ScenarioInstance sc;
  sc.p = {1.0, 1.0};
  sc.r0 = {1.0, 1.0};
  sc.gamma_p = {db_to_linear(15.0), db_to_linear(15.0)};
  sc.gamma_s = db_to_linear(15.0);
  sc.i_s = {db_to_linear(20.0), db_to_linear(10.0)};
  sc.i_p = {db_to_linear(5.0), db_to_linear(8.0)};
  sc.upsilon_p = {db_to_linear(10.0), db_to_linear(10.0)};
  sc.ps_max = 1.0;
  return sc;
}

// Asymmetric targets and channels; both budget intersections and the curve
// crossing exist, ordered cross < budget(2) < budget(1).
inline fdcr::ScenarioInstance three_breakpoint_scenario() {
  fdcr::ScenarioInstance sc;
  sc.p = {1.0, 1.0};
  sc.r0 = {0.5, 1.0};
  sc.gamma_p = {0.8723779506674221, 22.49083219520666};
  sc.gamma_s = 26.463550062829693;
  sc.i_s = {23.1727085194838, 1.042311848157797};
  sc.i_p = {6.425026587319391, 4.22980149928101};
  sc.upsilon_p = {4.287331255407079, 0.25987231752641304};
  sc.ps_max = 1.0;
  return sc;
}

// Independent evaluation routes used as oracles against the library's
// simplified closed forms.

// PU rate assembled from the proper-signaling term plus the circularity
// correction, term by term.
inline double pu_rate_composed(const fdcr::SignalDesign& d,
                               const fdcr::ScenarioInstance& sc, int node) {
  using namespace fdcr;
  const int j = receiver_of(node);
  const double b = beta(sc, j);
  const double q = d.ps * sc.i_s.at(j);
  const auto c = circularity_coefficients(d, sc, node);
  const double proper = std::log2(1.0 + sc.p.at(node) * sc.gamma_p.at(node) / (b + q));
  const double one_m_cy2 = (1.0 - c.c_y) * (1.0 + c.c_y);
  const double one_m_ci2 = (1.0 - c.c_i) * (1.0 + c.c_i);
  return proper + 0.5 * std::log2(one_m_cy2 / one_m_ci2);
}

// Proper-signaling rate forms written out directly.
inline double proper_su_rate(const fdcr::SignalDesign& d, const fdcr::ScenarioInstance& sc) {
  return std::log2(1.0 + d.ps * sc.gamma_s / sc.delta());
}

inline double proper_pu_rate(const fdcr::SignalDesign& d, const fdcr::ScenarioInstance& sc,
                             int node) {
  using namespace fdcr;
  const int j = receiver_of(node);
  return std::log2(1.0 + sc.p.at(node) * sc.gamma_p.at(node) /
                             (beta(sc, j) + d.ps * sc.i_s.at(j)));
}

}  // namespace fdcr_test

#endif  // FDCR_TEST_SUPPORT_HPP
