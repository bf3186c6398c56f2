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

#include <catch2/catch_amalgamated.hpp>

#include "fdcr/model.hpp"
#include "fdcr/oracle.hpp"
#include "fdcr/rng.hpp"
#include "test_support.hpp"

using namespace fdcr;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using fdcr_test::canonical;

using fdcr_test::proper_pu_rate;
using fdcr_test::proper_su_rate;
using fdcr_test::pu_rate_composed;

namespace {

SignalDesign random_design(const ScenarioInstance& sc, SplitMix64& g) {
  return {uniform01(g) * sc.ps_max, uniform01(g)};
}

}  // namespace

TEST_CASE("dB conversion") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK_THAT(db_to_linear(10.0), WithinRel(10.0, 1e-14));
  CHECK_THAT(db_to_linear(15.0), WithinRel(31.622776601683793, 1e-14));
  CHECK_THAT(linear_to_db(db_to_linear(-7.3)), WithinAbs(-7.3, 1e-12));
}

TEST_CASE("beta is the RSI-plus-noise floor") {
  auto sc = canonical();
  CHECK_THAT(beta(sc, 1), WithinRel(11.0, 1e-12));  // p = 1, upsilon = 10
  sc.upsilon_p = {0.0, 0.0};
  CHECK(beta(sc, 1) == 1.0);
  sc.p = {2.0, 2.0};
  sc.upsilon_p = {5.0, 5.0};
  CHECK_THAT(beta(sc, 2), WithinRel(11.0, 1e-12));
}

TEST_CASE("gamma_target") {
  auto sc = canonical();
  CHECK_THAT(gamma_target(sc, 1, 1), WithinRel(1.0, 1e-12));
  CHECK_THAT(gamma_target(sc, 1, 2), WithinRel(3.0, 1e-12));
  sc.r0 = {1e-12, 1e-12};
  CHECK_THAT(gamma_target(sc, 1, 1), WithinAbs(0.0, 1e-9));
}

TEST_CASE("phi_required") {
  auto sc = canonical();
  CHECK_THAT(phi_required(sc, 1, 1), WithinRel(2.8747978728803449, 1e-12));
  CHECK_THAT(phi_required(sc, 1, 2), WithinRel(14.014058555678046, 1e-12));
  sc.gamma_p = {0.0, 0.0};
  CHECK(phi_required(sc, 1, 1) == 0.0);
  CHECK(phi_required(sc, 1, 2) == 0.0);
}

TEST_CASE("psi_margin") {
  auto sc = canonical();
  CHECK_THAT(psi_margin(sc, 1, 1, 1), WithinRel(1.8747978728803449, 1e-12));
  CHECK_THAT(psi_margin(sc, 1, 1, 2), WithinRel(-0.041734042373218316, 1e-12));
  CHECK_THAT(psi_margin(sc, 1, 2, 2), WithinRel(3.6713528518926823, 1e-12));
  sc.r0 = {0.0, 0.0};
  CHECK_THROWS_AS(psi_margin(sc, 1, 1, 1), std::domain_error);
}

TEST_CASE("doubling identities") {
  SplitMix64 g(42);
  for (int k = 0; k < 1000; ++k) {
    const auto sc = random_scenario(42, k);
    for (int i : {1, 2}) {
      const double p1 = phi_required(sc, i, 1);
      const double p2 = phi_required(sc, i, 2);
      CHECK_THAT(p2, WithinRel(p1 * p1 + 2.0 * p1, 1e-12));
      const double g1 = gamma_target(sc, i, 1);
      const double g2 = gamma_target(sc, i, 2);
      CHECK_THAT(g2, WithinRel(g1 * g1 + 2.0 * g1, 1e-12));
    }
  }
}

TEST_CASE("circularity coefficients") {
  const auto sc = canonical();
  SECTION("silent or proper SU leaves the PU signal proper") {
    auto c = circularity_coefficients({0.0, 0.7}, sc, 1);
    CHECK(c.c_y == 0.0);
    CHECK(c.c_i == 0.0);
    c = circularity_coefficients({0.5, 0.0}, sc, 2);
    CHECK(c.c_y == 0.0);
    CHECK(c.c_i == 0.0);
  }
  SECTION("maximally improper unit-power design at node 2") {
    const auto c = circularity_coefficients({1.0, 1.0}, sc, 2);
    CHECK_THAT(c.c_i, WithinRel(100.0 / 111.0, 1e-12));
    CHECK_THAT(c.c_y, WithinRel(0.70115028176235494, 1e-12));
  }
  SECTION("ordering and range") {
    for (int k = 0; k < 2000; ++k) {
      const auto rsc = random_scenario(99, k);
      SplitMix64 g(substream_seed(100, k));
      const SignalDesign d{uniform01(g) * rsc.ps_max, uniform01(g)};
      for (int i : {1, 2}) {
        const auto c = circularity_coefficients(d, rsc, i);
        CHECK(c.c_y <= c.c_i);  // c_y has the strictly larger denominator
        CHECK(c.c_y >= 0.0);
        CHECK(c.c_i <= d.cx);
      }
    }
  }
}

TEST_CASE("pu_rate") {
  const auto sc = canonical();
  SECTION("no SU interference") {
    CHECK_THAT(pu_rate({0.0, 0.0}, sc, 1), WithinRel(1.9541210548000834, 1e-12));
    CHECK_THAT(pu_rate({0.0, 0.0}, sc, 2), WithinRel(1.9541210548000834, 1e-12));
  }
  SECTION("constraint-binding design meets the target exactly") {
    CHECK_THAT(pu_rate({1.0, 0.98222101373072168}, sc, 2), WithinAbs(1.0, 1e-9));
  }
  SECTION("simplified form equals the circularity composition") {
    for (int k = 0; k < 10000; ++k) {
      const auto rsc = random_scenario(7, k);
      SplitMix64 g(substream_seed(8, k));
      const auto d = random_design(rsc, g);
      for (int i : {1, 2}) {
        const double a = pu_rate(d, rsc, i);
        const double b = pu_rate_composed(d, rsc, i);
        CHECK(std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}));
      }
    }
  }
  SECTION("proper reduction at cx = 0") {
    for (int k = 0; k < 2000; ++k) {
      const auto rsc = random_scenario(17, k);
      SplitMix64 g(substream_seed(18, k));
      const SignalDesign d{uniform01(g) * rsc.ps_max, 0.0};
      for (int i : {1, 2}) {
        const double a = pu_rate(d, rsc, i);
        const double b = proper_pu_rate(d, rsc, i);
        CHECK(std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}));
      }
    }
  }
}

TEST_CASE("su_rate") {
  const auto sc = canonical();
  CHECK(su_rate({0.0, 0.0}, sc) == 0.0);
  CHECK_THAT(su_rate({0.20622776601683795, 0.0}, sc), WithinRel(0.69845343129674542, 1e-12));
  CHECK_THAT(su_rate({1.0, 0.98222101373072168}, sc), WithinRel(1.4399462063177906, 1e-12));

  SECTION("proper reduction at cx = 0") {
    for (int k = 0; k < 2000; ++k) {
      const auto rsc = random_scenario(23, k);
      SplitMix64 g(substream_seed(24, k));
      const SignalDesign d{uniform01(g) * rsc.ps_max, 0.0};
      const double a = su_rate(d, rsc);
      const double b = proper_su_rate(d, rsc);
      CHECK(std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}));
    }
  }
}

TEST_CASE("rate monotonicity in the design variables") {
  // Finite-difference sign checks over interior grids, away from the flat
  // point at cx = 0.
  for (int k = 0; k < 200; ++k) {
    const auto sc = random_scenario(31, k);
    SplitMix64 g(substream_seed(32, k));
    const double ps = std::max(1e-3, uniform01(g) * sc.ps_max);
    double prev_pu1 = pu_rate({ps, 0.01}, sc, 1);
    double prev_pu2 = pu_rate({ps, 0.01}, sc, 2);
    double prev_su = su_rate({ps, 0.01}, sc);
    for (int s = 1; s <= 40; ++s) {
      const double cx = 0.01 + s * (0.98 / 40.0);
      const double pu1 = pu_rate({ps, cx}, sc, 1);
      const double pu2 = pu_rate({ps, cx}, sc, 2);
      const double su = su_rate({ps, cx}, sc);
      CHECK(pu1 > prev_pu1);  // PU rates strictly increase with impropriety
      CHECK(pu2 > prev_pu2);
      CHECK(su < prev_su);  // the SU pays for it
      prev_pu1 = pu1;
      prev_pu2 = pu2;
      prev_su = su;
    }
    const double cx = uniform01(g);
    double prev = su_rate({1e-6, cx}, sc);
    for (int s = 1; s <= 20; ++s) {
      const double p = s * sc.ps_max / 20.0;
      const double cur = su_rate({p, cx}, sc);
      CHECK(cur > prev);  // and strictly gains from power
      prev = cur;
    }
  }
}

TEST_CASE("i_max") {
  auto sc = canonical();
  CHECK_THAT(i_max(sc, 1), WithinRel(30.622776601683793, 1e-12));
  sc.r0 = {2.0, 2.0};
  CHECK_THAT(i_max(sc, 1), WithinRel(9.5409255338945975, 1e-12));
  sc = canonical();
  sc.gamma_p = {0.5, 0.5};  // below the required SINR: PU in outage on its own
  CHECK(i_max(sc, 1) == 0.0);
}

TEST_CASE("rate_report fields") {
  const auto sc = canonical();
  const auto rep = rate_report({1.0, 0.98222101373072168}, sc);
  CHECK_THAT(rep.r_s, WithinRel(1.4399462063177906, 1e-12));
  CHECK_THAT(rep.r_p.n1, WithinRel(1.4778051848973606, 1e-9));
  CHECK_THAT(rep.r_p.n2, WithinAbs(1.0, 1e-9));
  CHECK(rep.r_p.n1 >= 0.0);
  CHECK(rep.c_y.n1 <= rep.c_i.n1);
  CHECK(rep.c_y.n2 <= rep.c_i.n2);
}

TEST_CASE("scenario validation") {
  auto sc = canonical();
  CHECK_NOTHROW(sc.validate());
  sc.gamma_s = -1.0;
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  sc = canonical();
  sc.ps_max = 0.0;
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  sc = canonical();
  sc.r0 = {1.0, 0.0};
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  ScenarioStatistics st;
  st.gamma_s_db = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(st.validate(), std::invalid_argument);
  st = ScenarioStatistics{};
  st.pu_direct_correlation = 1.5;
  CHECK_THROWS_AS(st.validate(), std::invalid_argument);
}
