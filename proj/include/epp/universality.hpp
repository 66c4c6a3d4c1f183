#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "epp/bicep.hpp"

namespace epp {

enum class CheckMode { Full, Ordered };

const char* check_mode_name(CheckMode m);

struct Violation {
  PauliString source;  // padded to n+m slots
  PauliString image;   // not harmless (hence undetectable)
};

// Result of sweeping one source family through the conjugation map.
//   Full mode sources:    {P single-noiseless on the first n slots} x I^m
//                         (4^n - 3^n strings)
//   Ordered mode sources: {I x P on slots 1..n-1} x I^m  (4^{n-1} strings)
// Only padded sources can carry weight: the assist pairs are noiseless.
struct CheckReport {
  CheckMode mode = CheckMode::Full;
  int n = 0;
  int m = 0;
  bool passed = false;
  uint64_t checked_count = 0;
  std::vector<Violation> violations;
};

CheckReport check_universal_condition(const CliffordTableau& c, int n, int m);
CheckReport check_ordered_condition(const CliffordTableau& c, int n, int m);

struct TrivialityReport {
  int trials = 0;
  double max_deviation = 0;  // max |output_fidelity - F_1| observed
  bool trivial = false;      // max_deviation <= 1e-12
};

// Requires c to pass the ordered condition. Random Bell-diagonal inputs with
// the largest fidelity placed at slot 0; deterministic for a fixed seed.
TrivialityReport triviality_probe(const CliffordTableau& c, int n, int m,
                                  int trials, uint64_t seed);

struct WitnessReport {
  Violation violation;
  std::vector<BellDiagonalState> inputs;
  ProtocolOutcome outcome;
  double max_input_fidelity = 0;
  double fidelity_drop = 0;  // max_input_fidelity - output fidelity
};

// Concrete non-universality demonstration for a Clifford failing the full
// check: perfect pairs at the violating source's identity slots, a rank-2
// state concentrated on the violating error elsewhere (0.9/0.1 split).
// Throws if the check passes.
WitnessReport counterexample_witness(const CliffordTableau& c, int n, int m);

// Worst-case output fidelity of a universal protocol:
// prod F / (prod F + prod (1-F)). Throws on the 0/0 configuration.
double fidelity_lower_bound(std::span<const double> fidelities);

struct SearchSample {
  uint64_t key = 0;
  bool passed = false;
  std::optional<Violation> violation;  // first violation of a failing candidate
  double probe_deviation = 0;          // ordered-mode passers only
};

struct SearchReport {
  CheckMode mode = CheckMode::Full;
  int n = 0;
  int m = 0;
  uint64_t total_candidates = 0;
  uint64_t pass_count = 0;
  bool probe_ran = false;           // ordered mode: passers were probed
  double max_probe_deviation = 0;
  bool all_passers_trivial = true;  // vacuously true with zero passers
  int threads = 1;
  int probe_trials = 0;
  uint64_t seed = 0;
  std::vector<SearchSample> samples;  // first passers, or first failures
  std::string quotient;               // search space, stated explicitly
};

// Sweeps every element of Sp(2(n+m), 2) through the chosen check;
// ordered mode additionally probes each passer for triviality.
// Deterministic output for fixed (seed, probe_trials) regardless of threads.
SearchReport exhaustive_no_go(int n, int m, CheckMode mode, int threads,
                              int probe_trials, uint64_t seed);

}  // namespace epp
