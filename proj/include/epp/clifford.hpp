#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "epp/pauli.hpp"

namespace epp {

enum class GateKind : uint8_t { H, S, CX, CZ, X, Y, Z };

struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;  // second operand for CX/CZ, else -1

  bool operator==(const Gate&) const = default;
};

bool gate_is_two_qubit(GateKind k);

// Gate text: one gate per line ("H 0", "S 1", "CX 0 1", "CZ 1 2");
// ';' also separates, '#' starts a comment. Throws std::invalid_argument
// on unknown mnemonics, bad arity, or slot indices outside [0, n).
std::vector<Gate> parse_gates(std::string_view text, int n);
std::string format_gates(const std::vector<Gate>& gates);

// A Clifford operator modulo Pauli factors and global phase: the images of
// the generators X_i and Z_i under conjugation, phases discarded. Rows
// 0..n-1 hold the X images, rows n..2n-1 the Z images. Equivalently an
// element of Sp(2n, 2).
class CliffordTableau {
 public:
  explicit CliffordTableau(int n);  // identity
  static CliffordTableau identity(int n);
  static CliffordTableau from_gates(int n, const std::vector<Gate>& gates);
  // X images first, then Z images. Throws unless the rows preserve the
  // symplectic form (i.e. describe a genuine automorphism).
  static CliffordTableau from_images(int n, std::vector<PauliString> images);

  int qubits() const { return n_; }
  const PauliString& image_of_x(int i) const;
  const PauliString& image_of_z(int i) const;

  // Image of p under the automorphism: XOR-fold of the generator images
  // selected by p's bits (Y contributes both its X and Z row).
  PauliString conjugate(const PauliString& p) const;

  // Appends g to the circuit this tableau represents.
  void apply_gate(const Gate& g);

  // Symplectic-form preservation across all generator pairs; true for every
  // tableau built through this interface, checkable in O(n^2).
  bool preserves_commutation() const;

  // Same action on the first n slots, identity on `extra` appended slots.
  CliffordTableau extended(int extra) const;

  // Packed canonical key: 2n rows of 2n bits (x | z << n), row-major.
  // Requires n <= 4 (4n^2 <= 64 bits).
  uint64_t key() const;
  static CliffordTableau from_key(int n, uint64_t key);

  bool operator==(const CliffordTableau&) const = default;

 private:
  int n_ = 0;
  std::vector<PauliString> rows_;
};

// Composition: conjugate(compose(c1, c2), p) == conjugate(c1, conjugate(c2, p)).
CliffordTableau compose(const CliffordTableau& c1, const CliffordTableau& c2);

// Every element of Sp(2n, 2) exactly once, as sorted canonical keys.
// BFS closure over {H, S, CX}; n in {1, 2, 3}.
std::vector<uint64_t> enumerate_symplectic(int n);

// |Sp(2n, 2)| = 2^{n^2} * prod_{i=1..n} (4^i - 1).
uint64_t symplectic_order(int n);

// Exact-uniform sample of Sp(2n, 2) by rejection (symplectic basis built
// pair by pair). Deterministic for a fixed seed; n <= 10.
CliffordTableau random_clifford(int n, uint64_t seed);

// A {H, S, CX} circuit whose tableau equals t, via symplectic elimination.
std::vector<Gate> synthesize_gates(const CliffordTableau& t);

// Tableau of |0><0| x I + |1><1| x P with the given control slot; p acts on
// the remaining n-1 slots in order. Throws if sizes disagree.
CliffordTableau controlled_pauli(int n, int control, const PauliString& p);

// Tableau file format: header "n=<k>", then 2n image lines in parse() grammar
// (X images first). '#' comments allowed.
CliffordTableau parse_tableau(std::string_view text);
std::string format_tableau(const CliffordTableau& t);

}  // namespace epp
