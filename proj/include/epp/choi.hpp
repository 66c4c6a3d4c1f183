#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "epp/pauli.hpp"
#include "epp/states.hpp"

namespace epp {

// Pauli-product description of the (n+1)-pair operator
//   J_n = phi^(x(n+1)) + (phi_perp)^(x(n+1)) / 3,
// pairs interleaved A1 B1 ... An Bn A^ B^. Both terms factor slot by slot,
// so every derived quantity comes from per-slot coefficient vectors.
struct ChoiOperator {
  int n = 0;  // input pairs; the operator lives on n+1 pairs
  // Coefficient of each Pauli letter in one slot's factor (I, X, Y, Z),
  // relative to the slot basis {II, XX, YY, ZZ}/4 on the pair. The
  // orthogonal term carries one global factor 1/3 on top of its slots.
  std::array<double, 4> perfect_term{1, 1, -1, 1};
  std::array<double, 4> orthogonal_term{3, -1, 1, -1};
  double trace = 0;                   // 1 + 3^n (unnormalized)
  double identity_coefficient = 0;    // (1 + 3^n) / 4^{n+1}
};

ChoiOperator build_choi(int n);  // 1 <= n <= 8

// Coefficient of sigma_P (x) sigma_P in the raw Pauli expansion of J_n;
// p has n+1 slots. The all-identity string gives identity_coefficient.
double choi_coefficient(const ChoiOperator& j, const PauliString& p);

// Dense materialization on 2(n+1) qubits (n <= 4), interleaved ordering.
Matrix choi_dense(const ChoiOperator& j);

// Transposes the Bob side (odd qubit positions) of an operator on
// `qubits` interleaved qubits.
Matrix partial_transpose(const Matrix& op, int qubits);

struct PptSpectrumLine {
  int k = 0;                 // antisymmetric-pattern weight
  double eigenvalue = 0;     // ((-1)^k + 3^{k-1}) / 2^{n+1}
  uint64_t multiplicity = 0; // C(n+1, k) * 3^{n+1-k}
};

struct PptReport {
  int n = 0;
  std::vector<PptSpectrumLine> spectrum;  // k = 0 .. n+1
  double min_eigenvalue = 0;              // 0, from the k = 1 cancellation
  double max_eigenvalue = 0;
  bool ppt = false;                       // min >= -1e-9
};

PptReport ppt_spectrum(const ChoiOperator& j);
double ppt_min_eigenvalue(const ChoiOperator& j);

// Strings with equal (#I, #Y parity) share one coefficient magnitude;
// the (#X + #Z) parity is determined by the other two.
struct BlochBucket {
  int identity_slots = 0;
  int y_parity = 0;
  int xz_parity = 0;
  uint64_t count = 0;
  double magnitude = 0;  // scaled |T| entry shared by the bucket
};

struct BlochCorrelationSummary {
  int n = 0;
  double t_norm = 0;
  double bound = 0;       // 2^n (2^{n+1} - 1)
  double margin = 0;      // t_norm - bound
  bool violated = false;  // t_norm > bound + 1e-9
  bool saturated = false; // |t_norm - bound| <= 1e-9
  std::vector<BlochBucket> buckets;
};

// Sweeps all 4^{n+1} strings (1 <= n <= 9) with exact integer accumulation:
// ||T||_1 = sum_{P != I} |(-1)^{#Y} + 3^{#I-1} (-1)^{#X+#Z}| 2^n / (3^n + 1).
BlochCorrelationSummary t_norm_bruteforce(int n);

// Even n: (2^{2n+1} (3^n - 1) + 2^n (3^{n+1} - 1)) / (3^n + 1);
// odd n: 2^n (2^{n+1} - 1).
double t_norm_closed_form(int n);

double separability_bound(int n);  // 2^n (2^{n+1} - 1)

// Closed-form norm plus multinomial bucket tallies; any n in [1, 30].
BlochCorrelationSummary separability_verdict(int n);

// Dense oracle for the correlation 1-norm (n <= 4): normalize J_n, take the
// Bloch correlation block over generators scaled to Tr(l_i l_j) = 2 delta_ij,
// and sum the singular values.
double t_norm_dense(const ChoiOperator& j);

// Output-fidelity law prod F / (prod F + prod (1-F)), computed in log-odds
// space; deliberately a different arithmetic route from
// universality.fidelity_lower_bound so the two can cross-check each other.
double ppt_output_fidelity(std::span<const double> fidelities);

// F'(F_1..F_n) - F_j via the factored expression
// (1 - F_j)(prod_{i!=j} F_i - prod_{i!=j}(1 - F_i)) F_j / (prod F + prod(1-F)).
// j is 1-based, matching the subscript convention; requires all F_i >= 1/2.
double universality_margin(std::span<const double> fidelities, int j);

}  // namespace epp
