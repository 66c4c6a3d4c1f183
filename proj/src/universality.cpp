#include "epp/universality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace epp {
namespace {

constexpr std::size_t kSampleCap = 3;

void validate_check_args(const CliffordTableau& c, int n, int m) {
  if (n < 2 || n > 10) {
    throw std::invalid_argument("checks sweep 2 to 10 kept-register slots");
  }
  if (m < 0) {
    throw std::invalid_argument("assist count must be non-negative");
  }
  if (c.qubits() != n + m) {
    throw std::invalid_argument("tableau size does not match n + m");
  }
}

bool source_selected(const PauliString& p, int n, CheckMode mode) {
  if (mode == CheckMode::Full) {
    return p.weight() < n;  // at least one noiseless slot
  }
  return p.slot(0) == Pauli::I;  // first slot noiseless, the rest free
}

CheckReport run_check(const CliffordTableau& c, int n, int m, CheckMode mode) {
  validate_check_args(c, n, m);
  CheckReport rep;
  rep.mode = mode;
  rep.n = n;
  rep.m = m;
  const uint64_t limit = uint64_t{1} << (2 * n);
  for (uint64_t idx = 0; idx < limit; ++idx) {
    const PauliString p = PauliString::from_index(n, idx);
    if (!source_selected(p, n, mode)) continue;
    ++rep.checked_count;
    const PauliString source = p.padded(m);
    const PauliString image = c.conjugate(source);
    if (!classify(image).harmless) {
      rep.violations.push_back(Violation{source, image});
    }
  }
  rep.passed = rep.violations.empty();
  return rep;
}

// Early-exit variant used by the exhaustive sweep; sources are visited in
// index order, so a returned violation is the lowest-index one.
std::optional<Violation> first_violation(const CliffordTableau& c, int n,
                                         int m, CheckMode mode) {
  const uint64_t limit = uint64_t{1} << (2 * n);
  for (uint64_t idx = 0; idx < limit; ++idx) {
    const PauliString p = PauliString::from_index(n, idx);
    if (!source_selected(p, n, mode)) continue;
    const PauliString source = p.padded(m);
    const PauliString image = c.conjugate(source);
    if (!classify(image).harmless) return Violation{source, image};
  }
  return std::nullopt;
}

// Deterministic per-candidate seed derivation (splitmix64 finalizer), so the
// probe stream does not depend on thread count or visit order.
uint64_t mix_seed(uint64_t seed, uint64_t key) {
  uint64_t x = seed ^ (key * 0x9E3779B97F4A7C15ULL + 0x2545F4914F6CDD1DULL);
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

const char* check_mode_name(CheckMode m) {
  return m == CheckMode::Full ? "full" : "ordered";
}

CheckReport check_universal_condition(const CliffordTableau& c, int n, int m) {
  return run_check(c, n, m, CheckMode::Full);
}

CheckReport check_ordered_condition(const CliffordTableau& c, int n, int m) {
  return run_check(c, n, m, CheckMode::Ordered);
}

TrivialityReport triviality_probe(const CliffordTableau& c, int n, int m,
                                  int trials, uint64_t seed) {
  if (trials < 1) {
    throw std::invalid_argument("triviality probe needs at least one trial");
  }
  if (!check_ordered_condition(c, n, m).passed) {
    throw std::invalid_argument(
        "triviality probe requires a candidate passing the ordered check");
  }
  std::mt19937_64 eng(seed);
  // (0, 1], so the exponential transform below never sees log(0).
  auto unit = [&eng]() {
    return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53;
  };
  TrivialityReport rep;
  rep.trials = trials;
  std::vector<BellDiagonalState> inputs(static_cast<std::size_t>(n));
  for (int t = 0; t < trials; ++t) {
    for (auto& state : inputs) {
      std::array<double, 4> w{};
      double total = 0;
      for (auto& v : w) {
        v = -std::log(unit());
        total += v;
      }
      for (auto& v : w) v /= total;  // uniform on the probability simplex
      state = BellDiagonalState{w};
    }
    auto best = std::max_element(
        inputs.begin(), inputs.end(),
        [](const BellDiagonalState& a, const BellDiagonalState& b) {
          return a.fidelity() < b.fidelity();
        });
    std::iter_swap(inputs.begin(), best);
    const ProtocolOutcome out = simulate_pauli_path(c, inputs, m);
    if (!out.output_state) continue;  // not reachable for ordered passers
    rep.max_deviation = std::max(
        rep.max_deviation,
        std::abs(out.output_fidelity - inputs.front().fidelity()));
  }
  rep.trivial = rep.max_deviation <= 1e-12;
  return rep;
}

WitnessReport counterexample_witness(const CliffordTableau& c, int n, int m) {
  const CheckReport check = check_universal_condition(c, n, m);
  if (check.passed) {
    throw std::invalid_argument(
        "candidate passes the full check; no counterexample exists");
  }
  const Violation& violation = check.violations.front();
  WitnessReport rep;
  rep.violation = violation;
  rep.inputs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Pauli s = violation.source.slot(i);
    if (s == Pauli::I) {
      rep.inputs.emplace_back();  // perfect pair
    } else {
      std::array<double, 4> w{};
      w[0] = 0.9;
      w[static_cast<std::size_t>(s)] = 0.1;
      rep.inputs.push_back(BellDiagonalState{w});
    }
  }
  rep.outcome = simulate_pauli_path(c, rep.inputs, m);
  rep.max_input_fidelity = 0;
  for (const auto& state : rep.inputs) {
    rep.max_input_fidelity = std::max(rep.max_input_fidelity, state.fidelity());
  }
  rep.fidelity_drop = rep.max_input_fidelity - rep.outcome.output_fidelity;
  return rep;
}

double fidelity_lower_bound(std::span<const double> fidelities) {
  if (fidelities.empty()) {
    throw std::invalid_argument("lower bound needs at least one fidelity");
  }
  double good = 1;
  double bad = 1;
  for (const double f : fidelities) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw std::invalid_argument("fidelities must lie in [0, 1]");
    }
    good *= f;
    bad *= 1.0 - f;
  }
  const double total = good + bad;
  if (total <= 0) {
    throw std::invalid_argument(
        "lower bound undefined: both fidelity products vanish");
  }
  return good / total;
}

SearchReport exhaustive_no_go(int n, int m, CheckMode mode, int threads,
                              int probe_trials, uint64_t seed) {
  const int total = n + m;
  if (n < 2) {
    throw std::invalid_argument("search needs at least two kept-register slots");
  }
  if (m < 0) {
    throw std::invalid_argument("assist count must be non-negative");
  }
  if (total != 2 && total != 3) {
    throw std::invalid_argument(
        "exhaustive search supports two or three total qubits");
  }
  threads = std::clamp(threads, 1, 64);

  const std::vector<uint64_t> keys = enumerate_symplectic(total);
  const std::size_t count = keys.size();
  const std::size_t chunk_count =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count));

  struct Chunk {
    uint64_t pass = 0;
    double max_dev = 0;
    std::vector<SearchSample> pass_samples;
    std::vector<SearchSample> fail_samples;
    std::exception_ptr error;
  };
  std::vector<Chunk> chunks(chunk_count);

  auto work = [&](std::size_t ci) {
    Chunk& ch = chunks[ci];
    try {
      const std::size_t lo = count * ci / chunk_count;
      const std::size_t hi = count * (ci + 1) / chunk_count;
      for (std::size_t i = lo; i < hi; ++i) {
        const uint64_t key = keys[i];
        const CliffordTableau c = CliffordTableau::from_key(total, key);
        std::optional<Violation> v = first_violation(c, n, m, mode);
        if (v) {
          if (ch.fail_samples.size() < kSampleCap) {
            SearchSample s;
            s.key = key;
            s.passed = false;
            s.violation = std::move(*v);
            ch.fail_samples.push_back(std::move(s));
          }
          continue;
        }
        ++ch.pass;
        SearchSample s;
        s.key = key;
        s.passed = true;
        if (mode == CheckMode::Ordered && probe_trials > 0) {
          const TrivialityReport probe =
              triviality_probe(c, n, m, probe_trials, mix_seed(seed, key));
          ch.max_dev = std::max(ch.max_dev, probe.max_deviation);
          s.probe_deviation = probe.max_deviation;
        }
        if (ch.pass_samples.size() < kSampleCap) {
          ch.pass_samples.push_back(std::move(s));
        }
      }
    } catch (...) {
      ch.error = std::current_exception();
    }
  };

  if (chunk_count == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(chunk_count);
    for (std::size_t ci = 0; ci < chunk_count; ++ci) {
      pool.emplace_back(work, ci);
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& ch : chunks) {
    if (ch.error) std::rethrow_exception(ch.error);
  }

  SearchReport rep;
  rep.mode = mode;
  rep.n = n;
  rep.m = m;
  rep.total_candidates = count;
  rep.threads = static_cast<int>(chunk_count);
  rep.probe_trials = mode == CheckMode::Ordered ? probe_trials : 0;
  rep.seed = seed;
  rep.quotient = "Sp(" + std::to_string(2 * total) +
                 ", 2): tableaux on " + std::to_string(total) +
                 " qubits modulo Pauli factors and global phase";

  std::vector<SearchSample> pass_samples;
  std::vector<SearchSample> fail_samples;
  for (auto& ch : chunks) {  // chunk order preserves key order
    rep.pass_count += ch.pass;
    rep.max_probe_deviation = std::max(rep.max_probe_deviation, ch.max_dev);
    for (auto& s : ch.pass_samples) {
      if (pass_samples.size() < kSampleCap) pass_samples.push_back(std::move(s));
    }
    for (auto& s : ch.fail_samples) {
      if (fail_samples.size() < kSampleCap) fail_samples.push_back(std::move(s));
    }
  }
  rep.samples = pass_samples.empty() ? std::move(fail_samples)
                                     : std::move(pass_samples);
  rep.probe_ran =
      mode == CheckMode::Ordered && probe_trials > 0 && rep.pass_count > 0;
  if (rep.pass_count == 0) {
    rep.all_passers_trivial = true;  // vacuous
  } else {
    rep.all_passers_trivial =
        rep.probe_ran && rep.max_probe_deviation <= 1e-12;
  }
  return rep;
}

}  // namespace epp
