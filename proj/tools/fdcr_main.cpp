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

// Command-line front end: solve single scenarios, verify the solver against
// the grid oracle, run the bundled sweep experiments, print defaults.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fdcr/fdcr.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

int thread_count() {
  if (const char* env = std::getenv("FDCR_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

nlohmann::json load_with_overrides(const std::string& path,
                                   const std::vector<std::string>& overrides) {
  nlohmann::json doc = fdcr::load_json_file(path);
  for (const auto& o : overrides) fdcr::apply_override(doc, o);
  return doc;
}

const char* regime_name(fdcr::BindingRegime r) {
  switch (r) {
    case fdcr::BindingRegime::budget: return "budget";
    case fdcr::BindingRegime::constraint_node1: return "constraint1";
    case fdcr::BindingRegime::constraint_node2: return "constraint2";
  }
  return "?";
}

void print_solution(const fdcr::ScenarioInstance& sc, const fdcr::Solution& sol) {
  const char* scheme = sol.scheme == fdcr::Scheme::pgs   ? "pgs"
                       : sol.scheme == fdcr::Scheme::igs ? "igs"
                                                         : "idle";
  std::printf("scheme=%s ps=%.6f cx=%.6f rs=%.6f\n", scheme, sol.design.ps,
              sol.design.cx, sol.rates.r_s);
  std::printf("pu_rates: r_p1=%.6f (target %.6f) r_p2=%.6f (target %.6f)\n",
              sol.rates.r_p.n1, sc.r0.n1, sol.rates.r_p.n2, sc.r0.n2);
  if (sol.idle()) {
    // Idle coincides with PU outage here: with no interference margin left,
    // the PU misses its target on its own RSI-plus-noise floor. Distinguish
    // whether the direct channel would fail even with the RSI removed.
    const bool channel_limited =
        std::log2(1.0 + sc.p.n1 * sc.gamma_p.n1) < sc.r0.n1 ||
        std::log2(1.0 + sc.p.n2 * sc.gamma_p.n2) < sc.r0.n2;
    std::printf("outage=1 idle_reason=%s\n",
                channel_limited ? "direct_channel" : "rsi_margin");
  }
  if (!sol.candidates.empty()) {
    std::printf("candidates:\n");
    for (const auto& c : sol.candidates)
      std::printf("  z=%d regime=%s ps=%.6f cx=%.6f rs=%.6f\n", c.interval,
                  regime_name(c.regime), c.design.ps, c.design.cx, c.su_rate);
  }
}

bool write_text(const std::string& path, const std::string& text, std::string* err) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    *err = "cannot open for writing: " + path;
    return false;
  }
  out << text;
  out.flush();
  if (!out) {
    *err = "write failed: " + path;
    return false;
  }
  return true;
}

struct GridArg {
  int n_p = 201;
  int n_c = 201;
};

GridArg parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos)
    throw fdcr::ParseError("grid must look like 201x201: " + text);
  GridArg g;
  g.n_p = std::stoi(text.substr(0, x));
  g.n_c = std::stoi(text.substr(x + 1));
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Achievable-rate design for a half-duplex secondary pair underlaying "
               "a full-duplex primary pair (proper and improper Gaussian signaling)"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one scenario file");
  std::string solve_file;
  std::string scheme = "igs";
  std::vector<std::string> solve_overrides;
  solve->add_option("scenario", solve_file, "scenario JSON file")->required();
  solve->add_option("--scheme", scheme, "igs (default) or pgs")
      ->check(CLI::IsMember({"igs", "pgs"}));
  solve->add_option("--set", solve_overrides, "override path=value (repeatable)");

  // verify
  auto* verify = app.add_subcommand("verify", "Compare the solver against the grid oracle");
  std::string verify_file;
  int random_count = 0;
  std::uint64_t verify_seed = 7;
  std::string grid_text = "201x201";
  std::string verify_out;
  std::vector<std::string> verify_overrides;
  verify->add_option("scenario", verify_file, "scenario JSON file");
  verify->add_option("--random", random_count, "number of random scenarios");
  verify->add_option("--seed", verify_seed, "seed for --random");
  verify->add_option("--grid", grid_text, "grid as NPxNC (default 201x201)");
  verify->add_option("--out", verify_out, "write the CSV report here (default stdout)");
  verify->add_option("--set", verify_overrides, "override path=value (repeatable)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep, emit CSV");
  int example = 0;
  std::string spec_file;
  int trials = 0;
  std::uint64_t sweep_seed = 0;
  bool seed_given = false;
  std::string sweep_out;
  std::vector<std::string> sweep_overrides;
  sweep->add_option("--example", example, "built-in experiment 1, 2 or 3")
      ->check(CLI::Range(1, 3));
  sweep->add_option("--spec", spec_file, "sweep spec JSON file");
  sweep->add_option("--trials", trials, "trials per grid cell")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_seed, "RNG seed");
  sweep->add_option("--out", sweep_out, "write the CSV here (default stdout)");
  sweep->add_option("--set", sweep_overrides, "override path=value on the spec (repeatable)");

  // defaults
  auto* defaults = app.add_subcommand("defaults", "Print the bundled default statistics");
  std::string defaults_out;
  defaults->add_option("--out", defaults_out, "write the JSON here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  seed_given = sweep->count("--seed") > 0;

  const int threads = thread_count();
  try {
    if (*solve) {
      const auto doc = load_with_overrides(solve_file, solve_overrides);
      const fdcr::ScenarioInstance sc = fdcr::scenario_from_json(doc);
      const fdcr::Solution sol =
          scheme == "pgs" ? fdcr::solve_pgs(sc) : fdcr::solve_igs(sc);
      print_solution(sc, sol);
      return kExitOk;
    }

    if (*verify) {
      const GridArg ga = parse_grid(grid_text);
      fdcr::GridSpec grid{ga.n_p, ga.n_c};
      grid.validate();
      std::vector<std::pair<std::string, fdcr::ScenarioInstance>> scenarios;
      if (random_count > 0) {
        for (int k = 0; k < random_count; ++k)
          scenarios.emplace_back("r" + std::to_string(k),
                                 fdcr::random_scenario(verify_seed, k));
      } else if (!verify_file.empty()) {
        const auto doc = load_with_overrides(verify_file, verify_overrides);
        scenarios.emplace_back(verify_file, fdcr::scenario_from_json(doc));
      } else {
        std::fprintf(stderr, "verify: give a scenario file or --random N\n");
        return kExitUsage;
      }
      std::string csv = fdcr::comparison_csv_header() + "\n";
      int failures = 0;
      for (const auto& [id, sc] : scenarios) {
        const fdcr::ComparisonReport rep = fdcr::compare(sc, grid, id, threads);
        csv += fdcr::comparison_csv_row(rep) + "\n";
        failures += rep.pass ? 0 : 1;
      }
      if (verify_out.empty()) {
        std::fputs(csv.c_str(), stdout);
      } else {
        std::string err;
        if (!write_text(verify_out, csv, &err)) {
          std::fprintf(stderr, "verify: %s\n", err.c_str());
          return kExitUsage;
        }
      }
      std::fprintf(stderr, "verify: %zu scenario(s), %d failure(s)\n", scenarios.size(),
                   failures);
      return failures == 0 ? kExitOk : kExitVerifyFail;
    }

    if (*sweep) {
      fdcr::SweepSpec spec;
      if (example > 0 && !spec_file.empty()) {
        std::fprintf(stderr, "sweep: --example and --spec are mutually exclusive\n");
        return kExitUsage;
      }
      if (example > 0) {
        spec = fdcr::example_sweep(example);
      } else if (!spec_file.empty()) {
        auto doc = load_with_overrides(spec_file, sweep_overrides);
        spec = fdcr::sweep_spec_from_json(doc);
      } else {
        std::fprintf(stderr, "sweep: give --example N or --spec file\n");
        return kExitUsage;
      }
      if (trials > 0) spec.trials = trials;
      if (seed_given) spec.seed = sweep_seed;
      spec.validate();
      const fdcr::SweepResult res = fdcr::run_sweep(spec, threads);
      const std::string csv = fdcr::sweep_csv(res);
      if (sweep_out.empty()) {
        std::fputs(csv.c_str(), stdout);
      } else {
        std::string err;
        if (!write_text(sweep_out, csv, &err)) {
          std::fprintf(stderr, "sweep: %s\n", err.c_str());
          return kExitUsage;
        }
      }
      std::fprintf(stderr,
                   "sweep: %zu cells x %d trials, seed %llu, envelope correlation %.4f\n",
                   res.cells.size(), res.trials,
                   static_cast<unsigned long long>(res.seed), res.envelope_correlation);
      return kExitOk;
    }

    if (*defaults) {
      const std::string text = fdcr::to_json(fdcr::default_statistics()).dump(2) + "\n";
      if (defaults_out.empty()) {
        std::fputs(text.c_str(), stdout);
      } else {
        std::string err;
        if (!write_text(defaults_out, text, &err)) {
          std::fprintf(stderr, "defaults: %s\n", err.c_str());
          return kExitUsage;
        }
      }
      return kExitOk;
    }
  } catch (const fdcr::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
