#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "epp/pauli.hpp"

namespace epp {

// Probability vector over the Bell components (phi+, psi+, psi-, phi-),
// indexed by the unilateral error mapping phi+ to each: I, X, Y, Z.
// fidelity = p[0].
struct BellDiagonalState {
  std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};

  double fidelity() const { return p[0]; }
  double prob(Pauli component) const { return p[size_t(component)]; }

  bool operator==(const BellDiagonalState&) const = default;
};

// Throws unless entries are in [0,1] (tolerance 1e-12 below/above) and sum
// to 1 within 1e-12.
void validate(const BellDiagonalState& s);

BellDiagonalState make_bds(double pi, double px, double py, double pz);
BellDiagonalState isotropic(double fidelity);
BellDiagonalState bilateral_twirl(const BellDiagonalState& s);

// CLI literal: "iso:F" or "bds:pI,pX,pY,pZ".
BellDiagonalState parse_state(std::string_view text);
std::string format_state(const BellDiagonalState& s);

// Product-form weight function over error strings: W(P) = prod_i p_i[P_i].
class WeightTable {
 public:
  explicit WeightTable(std::span<const BellDiagonalState> inputs);

  int slots() const { return int(inputs_.size()); }
  double weight(const PauliString& p) const;
  double factor(int slot, Pauli component) const;

 private:
  std::vector<BellDiagonalState> inputs_;
};

using Matrix = Eigen::MatrixXcd;

// Bell vectors/projectors in the computational basis |00>,|01>,|10>,|11>
// (phases dropped; projectors are what matter downstream).
Eigen::Vector4cd bell_vector(Pauli error);
Matrix bell_projector(Pauli error);

Matrix dense_state(const BellDiagonalState& s);  // 4x4

// Bell-basis diagonal of a two-qubit state; off-diagonals dropped.
// This is the Pauli (Bell) twirl of rho.
BellDiagonalState pauli_twirl_dense(const Matrix& rho4);

// Tensor product over pair slots with qubit order A1 B1 A2 B2 ... An Bn,
// A1 the most significant index bit. n <= 5 (dim <= 1024).
Matrix product_state(std::span<const BellDiagonalState> inputs);

// Hermiticity within 1e-12, trace 1 within 1e-10, eigenvalues >= -1e-9.
void validate_density(const Matrix& rho);

// Index helpers for the interleaved qubit order (qubit 0 = most significant).
uint32_t interleave_bits(uint32_t alice, uint32_t bob, int n);

}  // namespace epp
