#pragma once

#include <limits>
#include <optional>
#include <span>

#include "epp/clifford.hpp"
#include "epp/states.hpp"

namespace epp {

// Success-branch weight routed by image class, with correct images split by
// the source's kept-slot component (I versus X/Y/Z).
struct OutcomeBreakdown {
  double correct_clean_kept = 0;  // source slot 0 = I, image correct
  double correct_noisy_kept = 0;  // source slot 0 in {X,Y,Z}, image correct
  double undetectable = 0;        // success with a kept-slot error
  double incorrect = 0;           // failed parity filter
};

struct ProtocolOutcome {
  double success_prob = 0;
  // Conditional on success; absent when success_prob == 0.
  std::optional<BellDiagonalState> output_state;
  double output_fidelity = std::numeric_limits<double>::quiet_NaN();
  // Unnormalized success weight per output Bell component (I,X,Y,Z).
  std::array<double, 4> success_components{0, 0, 0, 0};
  // Pauli path only; the dense oracle cannot attribute sources.
  std::optional<OutcomeBreakdown> breakdown;
};

// Exact enumeration of all 4^n error strings on the real inputs, padded by
// `assist` identity slots for the entanglement-assisted case. The kept pair
// is slot 0; success keeps images with slots 1..n+assist-1 in {I,Z}.
// Requires c.qubits() == inputs.size() + assist >= 2 and inputs.size() <= 10.
ProtocolOutcome simulate_pauli_path(const CliffordTableau& c,
                                    std::span<const BellDiagonalState> inputs,
                                    int assist = 0);

// Dense oracle: builds the interleaved product state, applies U on Alice's
// qubits and conj(U) on Bob's, sums the equal-parity outcomes of the
// measured pairs, and reads the kept pair's Bell diagonal. n <= 3 pairs.
ProtocolOutcome simulate_dense(const std::vector<Gate>& gates,
                               std::span<const Matrix> inputs);
// Tableau variant synthesizes a circuit first; any Pauli/phase ambiguity is
// invisible to the outcome (it acts diagonally, with signs, on Bell states).
ProtocolOutcome simulate_dense(const CliffordTableau& c,
                               std::span<const Matrix> inputs);

// The 2-to-1 CNOT protocol: simulate_pauli_path with CX 0 1.
ProtocolOutcome dejmps_outcome(const BellDiagonalState& a,
                               const BellDiagonalState& b);

OutcomeBreakdown output_decomposition(const CliffordTableau& c,
                                      std::span<const BellDiagonalState> inputs,
                                      int assist = 0);

// Unitary of a gate list on n qubits, qubit 0 = most significant bit.
Matrix gate_unitary(const std::vector<Gate>& gates, int n);

}  // namespace epp
