#include "epp/bicep.hpp"

#include <cmath>
#include <stdexcept>

namespace epp {

namespace {

using complexd = std::complex<double>;

ProtocolOutcome finalize(double success, const std::array<double, 4>& comps,
                         std::optional<OutcomeBreakdown> breakdown) {
  if (success < 0) {
    if (success < -1e-12) throw std::logic_error("negative success probability");
    success = 0;  // dense-path floating point noise on an impossible branch
  }
  ProtocolOutcome out;
  out.success_prob = success;
  out.success_components = comps;
  out.breakdown = breakdown;
  if (success > 0) {
    BellDiagonalState s;
    for (int e = 0; e < 4; ++e) s.p[e] = comps[e] / success;
    out.output_state = s;
    out.output_fidelity = s.p[0];
  }
  return out;
}

Matrix single_qubit_gate(GateKind k) {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m(2, 2);
  switch (k) {
    case GateKind::H: m << r, r, r, -r; break;
    case GateKind::S: m << 1, 0, 0, complexd(0, 1); break;
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Y: m << 0, complexd(0, -1), complexd(0, 1), 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    default: throw std::logic_error("not a single-qubit gate");
  }
  return m;
}

}  // namespace

Matrix gate_unitary(const std::vector<Gate>& gates, int n) {
  Eigen::Index dim = Eigen::Index(1) << n;
  Matrix u = Matrix::Identity(dim, dim);
  for (const Gate& g : gates) {
    if (g.q0 < 0 || g.q0 >= n || (gate_is_two_qubit(g.kind) && (g.q1 < 0 || g.q1 >= n)))
      throw std::invalid_argument("gate slot outside unitary width");
    Matrix full = Matrix::Zero(dim, dim);
    if (!gate_is_two_qubit(g.kind)) {
      Matrix m = single_qubit_gate(g.kind);
      int shift = n - 1 - g.q0;
      for (Eigen::Index b = 0; b < dim; ++b) {
        int qb = int(b >> shift) & 1;
        for (int q2 = 0; q2 < 2; ++q2) {
          complexd v = m(q2, qb);
          if (v != complexd(0, 0)) {
            Eigen::Index b2 = (b & ~(Eigen::Index(1) << shift)) |
                              (Eigen::Index(q2) << shift);
            full(b2, b) += v;
          }
        }
      }
    } else {
      int sc = n - 1 - g.q0, st = n - 1 - g.q1;
      for (Eigen::Index b = 0; b < dim; ++b) {
        int cb = int(b >> sc) & 1;
        if (g.kind == GateKind::CX) {
          Eigen::Index b2 = cb ? (b ^ (Eigen::Index(1) << st)) : b;
          full(b2, b) = 1;
        } else {  // CZ
          int tb = int(b >> st) & 1;
          full(b, b) = (cb && tb) ? -1 : 1;
        }
      }
    }
    u = full * u;
  }
  return u;
}

ProtocolOutcome simulate_pauli_path(const CliffordTableau& c,
                                    std::span<const BellDiagonalState> inputs,
                                    int assist) {
  int n = int(inputs.size());
  if (n == 0) throw std::invalid_argument("empty input list");
  if (n > 10) throw std::invalid_argument("Pauli path limited to 10 input pairs");
  if (assist < 0) throw std::invalid_argument("negative assist count");
  int total = n + assist;
  if (total < 2)
    throw std::invalid_argument("need at least 2 slots (one measured pair)");
  if (c.qubits() != total)
    throw std::invalid_argument("tableau covers " + std::to_string(c.qubits()) +
                                " slots, protocol needs " + std::to_string(total));

  WeightTable wt(inputs);
  uint32_t measured_mask = ((1u << total) - 1) & ~1u;
  std::array<double, 4> comps{0, 0, 0, 0};
  OutcomeBreakdown bd;
  uint32_t strings = 1u << (2 * n);
  for (uint32_t idx = 0; idx < strings; ++idx) {
    PauliString src = PauliString::from_index(n, idx);
    double w = wt.weight(src);
    if (w == 0.0) continue;
    PauliString img = c.conjugate(src.padded(assist));
    if ((img.x_bits() & measured_mask) == 0) {
      Pauli component = img.slot(0);
      comps[size_t(component)] += w;
      if (component == Pauli::I) {
        if (src.slot(0) == Pauli::I) bd.correct_clean_kept += w;
        else bd.correct_noisy_kept += w;
      } else {
        bd.undetectable += w;
      }
    } else {
      bd.incorrect += w;
    }
  }
  double success = comps[0] + comps[1] + comps[2] + comps[3];
  return finalize(success, comps, bd);
}

ProtocolOutcome simulate_dense(const std::vector<Gate>& gates,
                               std::span<const Matrix> inputs) {
  int n = int(inputs.size());
  if (n == 0) throw std::invalid_argument("empty input list");
  if (n > 3) throw std::invalid_argument("dense oracle limited to 3 pairs");
  if (n < 2) throw std::invalid_argument("need at least 2 slots (one measured pair)");
  for (const Matrix& rho : inputs) {
    if (rho.rows() != 4 || rho.cols() != 4)
      throw std::invalid_argument("dense inputs must be two-qubit states");
    validate_density(rho);
  }

  // Interleaved product: pair i occupies index bits (2n-1-2i, 2n-2-2i).
  Eigen::Index dim = Eigen::Index(1) << (2 * n);
  Matrix rho = inputs[0];
  for (int i = 1; i < n; ++i) {
    Matrix next(rho.rows() * 4, rho.cols() * 4);
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
      for (Eigen::Index c2 = 0; c2 < rho.cols(); ++c2)
        next.block(r * 4, c2 * 4, 4, 4) = rho(r, c2) * inputs[i];
    rho = std::move(next);
  }

  // Lift U (Alice) x conj(U) (Bob) into the interleaved order.
  Matrix u = gate_unitary(gates, n);
  Eigen::Index half = Eigen::Index(1) << n;
  Matrix w = Matrix::Zero(dim, dim);
  for (Eigen::Index a = 0; a < half; ++a)
    for (Eigen::Index a2 = 0; a2 < half; ++a2) {
      if (u(a, a2) == complexd(0, 0)) continue;
      for (Eigen::Index b = 0; b < half; ++b)
        for (Eigen::Index b2 = 0; b2 < half; ++b2) {
          complexd v = u(a, a2) * std::conj(u(b, b2));
          if (v == complexd(0, 0)) continue;
          w(interleave_bits(uint32_t(a), uint32_t(b), n),
            interleave_bits(uint32_t(a2), uint32_t(b2), n)) += v;
        }
    }
  rho = w * rho * w.adjoint();

  // Keep only rows/columns where every measured pair has equal parity.
  auto pair_parity_ok = [n](Eigen::Index idx) {
    for (int i = 1; i < n; ++i) {
      int ai = int(idx >> (2 * n - 1 - 2 * i)) & 1;
      int bi = int(idx >> (2 * n - 2 - 2 * i)) & 1;
      if (ai != bi) return false;
    }
    return true;
  };
  for (Eigen::Index r = 0; r < dim; ++r) {
    if (pair_parity_ok(r)) continue;
    rho.row(r).setZero();
    rho.col(r).setZero();
  }
  double success = rho.trace().real();

  // Partial trace down to the kept pair (the two most significant bits).
  int rest_bits = 2 * n - 2;
  Eigen::Index rest = Eigen::Index(1) << rest_bits;
  Matrix kept = Matrix::Zero(4, 4);
  for (Eigen::Index r = 0; r < 4; ++r)
    for (Eigen::Index c2 = 0; c2 < 4; ++c2) {
      complexd sum = 0;
      for (Eigen::Index t = 0; t < rest; ++t)
        sum += rho((r << rest_bits) | t, (c2 << rest_bits) | t);
      kept(r, c2) = sum;
    }

  std::array<double, 4> comps{0, 0, 0, 0};
  for (int e = 0; e < 4; ++e) {
    Eigen::Vector4cd v = bell_vector(Pauli(e));
    comps[e] = std::real((v.adjoint() * kept * v)(0, 0));
  }
  return finalize(success, comps, std::nullopt);
}

ProtocolOutcome simulate_dense(const CliffordTableau& c,
                               std::span<const Matrix> inputs) {
  if (c.qubits() != int(inputs.size()))
    throw std::invalid_argument("tableau/input size mismatch");
  return simulate_dense(synthesize_gates(c), inputs);
}

ProtocolOutcome dejmps_outcome(const BellDiagonalState& a,
                               const BellDiagonalState& b) {
  CliffordTableau cnot =
      CliffordTableau::from_gates(2, {Gate{GateKind::CX, 0, 1}});
  std::array<BellDiagonalState, 2> inputs{a, b};
  return simulate_pauli_path(cnot, inputs, 0);
}

OutcomeBreakdown output_decomposition(const CliffordTableau& c,
                                      std::span<const BellDiagonalState> inputs,
                                      int assist) {
  return *simulate_pauli_path(c, inputs, assist).breakdown;
}

}  // namespace epp
