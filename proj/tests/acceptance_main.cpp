// Acceptance gate: one line per criterion, exit code = number of failures.
// Tolerances and time bounds are part of the statements being verified.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "epp/bicep.hpp"
#include "epp/choi.hpp"
#include "epp/universality.hpp"
#include "test_util.hpp"

using namespace epp;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

struct Gate1 {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += "FAILED: " + what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

int failures = 0;

template <typename Body>
void criterion(int idx, const std::string& name, Body&& body) {
  Gate1 g;
  const auto start = Clock::now();
  try {
    body(g);
  } catch (const std::exception& e) {
    g.ok = false;
    g.note(std::string("exception: ") + e.what());
  }
  const double ms = ms_since(start);
  std::printf("criterion %d [%s] %s — %s (%.1f ms)\n", idx,
              g.ok ? "PASS" : "FAIL", name.c_str(),
              g.detail.empty() ? "ok" : g.detail.c_str(), ms);
  std::fflush(stdout);
  if (!g.ok) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "two-pair protocol reproduces the worked fidelities", [](Gate1& g) {
    const auto start = Clock::now();
    const auto a = dejmps_outcome(isotropic(0.9), isotropic(0.85));
    const auto b = dejmps_outcome(isotropic(0.9), isotropic(0.83));
    const double ms = ms_since(start);
    g.require(std::abs(a.output_fidelity - 0.90551) <= 5e-4,
              "F'(0.9,0.85) off: " + fmt(a.output_fidelity));
    g.require(std::abs(b.output_fidelity - 0.89675) <= 5e-4,
              "F'(0.9,0.83) off: " + fmt(b.output_fidelity));
    g.require(ms < 10.0, "took " + fmt(ms) + " ms (bound 10)");
    g.note("F'=" + fmt(a.output_fidelity) + " and " + fmt(b.output_fidelity) +
           " vs 0.90551/0.89675 at 5e-4");
  });

  criterion(2, "exhaustive sweeps find zero universal candidates", [](Gate1& g) {
    auto start = Clock::now();
    const auto r2 = exhaustive_no_go(2, 0, CheckMode::Full, 8, 0, 0);
    const double ms2 = ms_since(start);
    g.require(r2.total_candidates == 720, "n=2 census size");
    g.require(r2.pass_count == 0,
              "n=2 pass_count = " + std::to_string(r2.pass_count));
    g.require(ms2 < 1000.0, "n=2 sweep took " + fmt(ms2) + " ms (bound 1 s)");

    start = Clock::now();
    const auto r3 = exhaustive_no_go(3, 0, CheckMode::Full, 8, 0, 0);
    const double ms3 = ms_since(start);
    g.require(r3.total_candidates == 1451520, "n=3 census size");
    g.require(r3.pass_count == 0,
              "n=3 pass_count = " + std::to_string(r3.pass_count));
    g.require(ms3 < 600000.0, "n=3 sweep exceeded 10 min");
    g.note("0/720 in " + fmt(ms2) + " ms, 0/1451520 in " + fmt(ms3) +
           " ms on 8 threads");
  });

  criterion(3, "every ordered-condition passer is trivial", [](Gate1& g) {
    const auto rep = exhaustive_no_go(2, 0, CheckMode::Ordered, 8, 1000, 0);
    g.require(rep.pass_count == 144,
              "passer census = " + std::to_string(rep.pass_count));
    g.require(rep.probe_ran, "probe did not run");
    g.require(rep.max_probe_deviation <= 1e-12,
              "max fidelity deviation " + fmt(rep.max_probe_deviation));
    g.require(rep.all_passers_trivial, "a passer moved some fidelity");
    g.note(std::to_string(rep.pass_count) +
           " passers, 1000 random inputs each, max |dF| = " +
           fmt(rep.max_probe_deviation) + " <= 1e-12");
  });

  criterion(4, "correlation-norm sweep matches the closed form", [](Gate1& g) {
    const auto start = Clock::now();
    double worst = 0;
    for (int n = 1; n <= 8; ++n) {
      const auto brute = t_norm_bruteforce(n);
      const double closed = t_norm_closed_form(n);
      const double rel = std::abs(brute.t_norm - closed) /
                         std::max(1.0, std::abs(closed));
      worst = std::max(worst, rel);
      g.require(rel <= 1e-9,
                "n=" + std::to_string(n) + " rel err " + fmt(rel));
      const auto verdict = separability_verdict(n);
      if (n % 2 == 0)
        g.require(verdict.violated && verdict.margin > 0,
                  "even n=" + std::to_string(n) + " must exceed the bound");
      else
        g.require(verdict.saturated && !verdict.violated,
                  "odd n=" + std::to_string(n) + " must saturate the bound");
    }
    g.require(std::abs(t_norm_closed_form(1) - 6.0) <= 1e-9, "n=1 value");
    g.require(std::abs(t_norm_closed_form(2) - 36.0) <= 1e-9, "n=2 value");
    g.require(std::abs(t_norm_closed_form(3) - 120.0) <= 1e-9, "n=3 value");
    const double ms = ms_since(start);
    g.require(ms < 5000.0, "sweep took " + fmt(ms) + " ms (bound 5 s)");
    g.note("n=1..8 agree at 1e-9 relative (worst " + fmt(worst) +
           "), values 6/36/120, even margins positive, odd saturated");
  });

  criterion(5, "partial transposes stay positive", [](Gate1& g) {
    double dense_worst = 0;
    for (int n = 1; n <= 4; ++n) {
      const auto j = build_choi(n);
      const Eigen::MatrixXcd pt =
          partial_transpose(choi_dense(j), 2 * (n + 1));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
          pt, Eigen::EigenvaluesOnly);
      const double min = es.eigenvalues().minCoeff();
      dense_worst = std::min(dense_worst, min);
      g.require(min >= -1e-9,
                "dense n=" + std::to_string(n) + " min " + fmt(min));
    }
    for (int n = 1; n <= 8; ++n)
      g.require(ppt_min_eigenvalue(build_choi(n)) == 0.0,
                "coefficient route n=" + std::to_string(n) + " min not 0");
    g.note("dense n<=4 min eigenvalue " + fmt(dense_worst) +
           " >= -1e-9; coefficient route exactly 0 for n<=8");
  });

  criterion(6, "path and dense simulators agree on random instances", [](Gate1& g) {
    const auto start = Clock::now();
    std::mt19937_64 eng(2026);
    double worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const int n = (trial % 2) ? 3 : 2;
      const auto c = random_clifford(n, eng());
      std::vector<BellDiagonalState> inputs;
      std::vector<Matrix> dense;
      for (int i = 0; i < n; ++i) {
        inputs.push_back(testutil::random_bds(eng));
        dense.push_back(dense_state(inputs.back()));
      }
      const auto p = simulate_pauli_path(c, inputs, 0);
      const auto d = simulate_dense(c, dense);
      double delta = std::abs(p.success_prob - d.success_prob);
      if (p.output_state && d.output_state) {
        delta = std::max(delta,
                         std::abs(p.output_fidelity - d.output_fidelity));
        for (int i = 0; i < 4; ++i)
          delta = std::max(delta, std::abs(p.output_state->p[i] -
                                           d.output_state->p[i]));
      } else if (p.output_state.has_value() != d.output_state.has_value()) {
        delta = 1.0;
      }
      worst = std::max(worst, delta);
    }
    const double ms = ms_since(start);
    g.require(worst <= 1e-10, "max |delta| " + fmt(worst));
    g.require(ms < 60000.0, "took " + fmt(ms) + " ms (bound 60 s)");
    g.note("200 random (tableau, state) draws at n in {2,3}, max |delta| = " +
           fmt(worst) + " <= 1e-10");
  });

  criterion(7, "general inputs reduce to their Bell-diagonal twirl", [](Gate1& g) {
    std::mt19937_64 eng(99);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto c = random_clifford(2, eng());
      const std::vector<Matrix> rho{testutil::random_density4(eng),
                                    testutil::random_density4(eng)};
      const std::vector<BellDiagonalState> twirled{
          pauli_twirl_dense(rho[0]), pauli_twirl_dense(rho[1])};
      const auto d = simulate_dense(c, rho);
      const auto p = simulate_pauli_path(c, twirled, 0);
      double delta = std::abs(d.success_prob - p.success_prob);
      if (d.output_state && p.output_state)
        delta = std::max(delta,
                         std::abs(d.output_fidelity - p.output_fidelity));
      worst = std::max(worst, delta);
    }
    g.require(worst <= 1e-10, "max |delta| " + fmt(worst));
    g.note("100 random full-rank input tuples, max outcome delta = " +
           fmt(worst) + " <= 1e-10");
  });

  criterion(8, "output-fidelity law never drops below the best input", [](Gate1& g) {
    std::mt19937_64 eng(7);
    double worst_gap = 0, worst_neutral = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      const int n = 1 + int(eng() % 6);
      std::vector<double> tuple;
      for (int i = 0; i < n; ++i)
        tuple.push_back(0.5 + 0.5 * testutil::unit(eng));
      const double best = *std::max_element(tuple.begin(), tuple.end());
      const double out = ppt_output_fidelity(tuple);
      worst_gap = std::max(worst_gap, best - out);

      std::vector<double> padded = tuple;
      padded.push_back(0.5);
      worst_neutral =
          std::max(worst_neutral, std::abs(ppt_output_fidelity(padded) - out));
    }
    g.require(worst_gap <= 1e-12, "law fell below max input by " +
                                      fmt(worst_gap));
    g.require(worst_neutral <= 1e-12,
              "a fidelity-1/2 input shifted the output by " +
                  fmt(worst_neutral));
    g.note("10000 tuples in [1/2,1]^n, n<=6: max shortfall " + fmt(worst_gap) +
           ", max neutral-input shift " + fmt(worst_neutral));
  });

  criterion(9, "every failing candidate yields a fidelity-losing witness", [](Gate1& g) {
    std::mt19937_64 eng(31337);
    double min_drop = 1.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto c = random_clifford(2, eng());
      const auto check = check_universal_condition(c, 2, 0);
      g.require(!check.passed, "a two-pair candidate passed the full check");
      if (check.passed) continue;
      const auto w = counterexample_witness(c, 2, 0);
      min_drop = std::min(min_drop, w.fidelity_drop);
      g.require(w.fidelity_drop >= 1e-6,
                "drop " + fmt(w.fidelity_drop) + " below 1e-6");
      g.require(w.outcome.output_fidelity < w.max_input_fidelity,
                "output did not fall strictly below the best input");
    }
    g.note("50 random failing candidates, min fidelity drop " +
           fmt(min_drop) + " >= 1e-6, all strictly below the best input");
  });

  std::printf("acceptance: %d/9 criteria passed\n", 9 - failures);
  return failures;
}
