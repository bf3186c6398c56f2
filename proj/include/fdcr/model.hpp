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
 * @file model.hpp
 * @brief Link-level model of a full-duplex primary pair sharing spectrum with
 *        a half-duplex secondary pair.
 *
 * The primary (PU) pair operates in-band full duplex with proper Gaussian
 * signaling; the secondary (SU) pair underlays it with a possibly improper
 * Gaussian signal described by a transmit power and a circularity
 * coefficient. Everything is expressed at channel-to-noise-ratio (CNR) level:
 * noise variance is already folded into the CNRs, and all rate expressions
 * are closed forms of the CNRs and the SU design pair.
 *
 * Public inputs use dB for CNRs and convert once at the boundary; all
 * computation is linear 64-bit.
 */

#ifndef FDCR_MODEL_HPP
#define FDCR_MODEL_HPP

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fdcr {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// PU node index arithmetic: the stream transmitted by node i is received by
/// node 3 - i.
constexpr int receiver_of(int node) { return 3 - node; }

constexpr double kLog2e = 1.4426950408889634074;  // 1/ln(2)

/// log2(1 + x) without cancellation for small x.
inline double log2p1(double x) { return std::log1p(x) * kLog2e; }

/// A value held per PU node, addressed with the 1-based node index used
/// throughout the model.
struct NodePair {
  double n1 = 0.0;
  double n2 = 0.0;

  double at(int node) const {
    assert(node == 1 || node == 2);
    return node == 1 ? n1 : n2;
  }
  double& at(int node) {
    assert(node == 1 || node == 2);
    return node == 1 ? n1 : n2;
  }
  bool operator==(const NodePair&) const = default;
};

/**
 * One instantaneous channel realization plus the fixed link parameters.
 *
 * CNR fields are linear (dimensionless), powers are watts, target rates are
 * bits/s/Hz. `i_s.at(i)` is the SU-to-PU interference CNR *at PU node i*;
 * the rate of PU stream i therefore sees `i_s.at(3 - i)`.
 */
struct ScenarioInstance {
  NodePair p;          // PU transmit powers p_i
  NodePair r0;         // PU minimum target rates R_0,p_i
  NodePair gamma_p;    // PU direct CNRs (stream i, measured at node 3-i)
  double gamma_s = 0;  // SU direct CNR
  NodePair i_s;        // SU -> PU interference CNRs, indexed by receiving node
  NodePair i_p;        // PU -> SU interference CNRs
  NodePair upsilon_p;  // residual-self-interference CNRs, per node
  double ps_max = 0;   // SU power budget

  /// Aggregate PU-to-SU interference plus noise, p_1 I_p_1 + p_2 I_p_2 + 1.
  double delta() const { return p.n1 * i_p.n1 + p.n2 * i_p.n2 + 1.0; }

  /// Throws std::invalid_argument on a violated field invariant.
  void validate() const {
    auto nonneg = [](double v, const char* name) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be finite and >= 0");
    };
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be finite and > 0");
    };
    for (int i : {1, 2}) {
      positive(p.at(i), "p");
      positive(r0.at(i), "r0");
      nonneg(gamma_p.at(i), "gamma_p");
      nonneg(i_s.at(i), "i_s");
      nonneg(i_p.at(i), "i_p");
      nonneg(upsilon_p.at(i), "upsilon_p");
    }
    nonneg(gamma_s, "gamma_s");
    positive(ps_max, "ps_max");
  }
};

/// Mean CNRs in dB plus the PU direct-pair correlation, used to sample
/// ScenarioInstance realizations under Rayleigh fading.
struct ScenarioStatistics {
  NodePair p{1.0, 1.0};
  NodePair r0{1.0, 1.0};
  NodePair gamma_p_db;
  double gamma_s_db = 0.0;
  NodePair i_s_db;
  NodePair i_p_db;
  NodePair upsilon_p_db;
  double ps_max = 1.0;
  double pu_direct_correlation = 0.95;

  void validate() const {
    auto finite = [](double v, const char* name) {
      if (!std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be finite");
    };
    for (int i : {1, 2}) {
      if (!(p.at(i) > 0.0)) throw std::invalid_argument("p must be > 0");
      if (!(r0.at(i) > 0.0)) throw std::invalid_argument("r0 must be > 0");
      finite(gamma_p_db.at(i), "gamma_p_db");
      finite(i_s_db.at(i), "i_s_db");
      finite(i_p_db.at(i), "i_p_db");
      finite(upsilon_p_db.at(i), "upsilon_p_db");
    }
    finite(gamma_s_db, "gamma_s_db");
    if (!(ps_max > 0.0)) throw std::invalid_argument("ps_max must be > 0");
    if (!(pu_direct_correlation >= 0.0 && pu_direct_correlation <= 1.0))
      throw std::invalid_argument("pu_direct_correlation must be in [0, 1]");
  }
};

/// The SU decision pair: transmit power and circularity coefficient.
/// (0, 0) is the idle design.
struct SignalDesign {
  double ps = 0.0;
  double cx = 0.0;
  bool operator==(const SignalDesign&) const = default;
};

/// Rates and received-signal circularity at a given design.
struct RateReport {
  NodePair r_p;  // PU achievable rates
  double r_s = 0.0;
  NodePair c_y;  // received-signal circularity per PU node
  NodePair c_i;  // interference-plus-noise circularity per PU node
};

/// beta_j = p_j * upsilon_p_j + 1, the RSI-plus-noise floor at receiver j.
inline double beta(const ScenarioInstance& sc, int receiver_node) {
  return sc.p.at(receiver_node) * sc.upsilon_p.at(receiver_node) + 1.0;
}

/// Gamma_i(x) = 2^(x R_0,p_i) - 1: SINR required for a rate of x R_0,p_i.
inline double gamma_target(const ScenarioInstance& sc, int node, int x) {
  assert(x == 1 || x == 2);
  return std::exp2(static_cast<double>(x) * sc.r0.at(node)) - 1.0;
}

/// phi_i(x) = 2^(x R_p_i(0,0)) - 1: SINR required for x times the PU rate in
/// the absence of the SU. phi_i(1) is exactly p_i gamma_p_i / beta_j.
inline double phi_required(const ScenarioInstance& sc, int node, int x) {
  assert(x == 1 || x == 2);
  const double t = sc.p.at(node) * sc.gamma_p.at(node) / beta(sc, receiver_of(node));
  return x == 1 ? t : t * t + 2.0 * t;
}

/// Psi_i(x, y) = phi_i(x) / Gamma_i(y) - 1. May be negative. Throws
/// std::domain_error when the target rate degenerates to zero.
inline double psi_margin(const ScenarioInstance& sc, int node, int x, int y) {
  const double target = gamma_target(sc, node, y);
  if (!(target > 0.0))
    throw std::domain_error("psi_margin: degenerate PU target rate (Gamma = 0)");
  return phi_required(sc, node, x) / target - 1.0;
}

struct CircularityPair {
  double c_y = 0.0;
  double c_i = 0.0;
};

/// Circularity of the received and interference-plus-noise signals at the
/// receiver of PU stream `node`. Zero when the SU is silent or proper.
inline CircularityPair circularity_coefficients(const SignalDesign& d,
                                                const ScenarioInstance& sc,
                                                int node) {
  const int j = receiver_of(node);
  const double b = beta(sc, j);
  const double q = d.ps * sc.i_s.at(j);
  const double t = q * d.cx;
  return {t / (sc.p.at(node) * sc.gamma_p.at(node) + b + q), t / (b + q)};
}

/// Achievable rate of PU stream `node` under the SU design, in bits/s/Hz.
inline double pu_rate(const SignalDesign& d, const ScenarioInstance& sc, int node) {
  const int j = receiver_of(node);
  const double b = beta(sc, j);
  const double q = d.ps * sc.i_s.at(j);
  const double s = sc.p.at(node) * sc.gamma_p.at(node);
  const double u = b + q;      // interference-plus-noise power
  const double t = q * d.cx;   // improper part, always < u since b >= 1
  // (1/2) log2(((s+u)^2 - t^2) / (u^2 - t^2)) with the ratio written as
  // 1 + s(s + 2u) / ((u - t)(u + t)) for accuracy at small rates.
  return 0.5 * log2p1(s * (s + 2.0 * u) / ((u - t) * (u + t)));
}

/// SU achievable rate under its own design, in bits/s/Hz.
inline double su_rate(const SignalDesign& d, const ScenarioInstance& sc) {
  const double dl = sc.delta();
  const double a = d.ps * sc.gamma_s / dl;
  return 0.5 * log2p1(a * a * (1.0 - d.cx) * (1.0 + d.cx) + 2.0 * a);
}

/// Maximum allowable interference-to-noise ratio at the receiver of PU
/// stream `node` before its target rate is violated; clamped at zero
/// (zero means the PU is in outage on its own).
inline double i_max(const ScenarioInstance& sc, int node) {
  const double target = gamma_target(sc, node, 1);
  assert(target > 0.0);
  return std::max(0.0, sc.p.at(node) * sc.gamma_p.at(node) / target - 1.0);
}

inline RateReport rate_report(const SignalDesign& d, const ScenarioInstance& sc) {
  RateReport rep;
  for (int i : {1, 2}) {
    rep.r_p.at(i) = pu_rate(d, sc, i);
    const auto c = circularity_coefficients(d, sc, i);
    rep.c_y.at(i) = c.c_y;
    rep.c_i.at(i) = c.c_i;
  }
  rep.r_s = su_rate(d, sc);
  return rep;
}

}  // namespace fdcr

#endif  // FDCR_MODEL_HPP
