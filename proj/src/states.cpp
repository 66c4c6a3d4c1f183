#include "epp/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace epp {

namespace {

constexpr double kProbTol = 1e-12;

double parse_double(std::string_view text) {
  size_t pos = 0;
  std::string s(text);
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters in number");
  return v;
}

}  // namespace

void validate(const BellDiagonalState& s) {
  double sum = 0;
  for (double v : s.p) {
    if (v < -kProbTol || v > 1 + kProbTol)
      throw std::invalid_argument("Bell component probability outside [0,1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbTol)
    throw std::invalid_argument("Bell component probabilities must sum to 1");
}

BellDiagonalState make_bds(double pi, double px, double py, double pz) {
  BellDiagonalState s{{pi, px, py, pz}};
  validate(s);
  return s;
}

BellDiagonalState isotropic(double fidelity) {
  if (fidelity < 0.0 || fidelity > 1.0)
    throw std::invalid_argument("fidelity outside [0,1]");
  double rest = (1.0 - fidelity) / 3.0;
  return BellDiagonalState{{fidelity, rest, rest, rest}};
}

BellDiagonalState bilateral_twirl(const BellDiagonalState& s) {
  validate(s);
  return isotropic(s.p[0]);
}

BellDiagonalState parse_state(std::string_view text) {
  if (text.rfind("iso:", 0) == 0) return isotropic(parse_double(text.substr(4)));
  if (text.rfind("bds:", 0) == 0) {
    std::string rest(text.substr(4));
    std::array<double, 4> v{};
    std::istringstream in(rest);
    std::string tok;
    size_t i = 0;
    while (std::getline(in, tok, ',')) {
      if (i >= 4) throw std::invalid_argument("bds literal takes 4 entries");
      v[i++] = parse_double(tok);
    }
    if (i != 4) throw std::invalid_argument("bds literal takes 4 entries");
    return make_bds(v[0], v[1], v[2], v[3]);
  }
  throw std::invalid_argument("state literal must start with 'iso:' or 'bds:'");
}

std::string format_state(const BellDiagonalState& s) {
  std::ostringstream out;
  out.precision(17);
  out << "bds:" << s.p[0] << ',' << s.p[1] << ',' << s.p[2] << ',' << s.p[3];
  return out.str();
}

WeightTable::WeightTable(std::span<const BellDiagonalState> inputs)
    : inputs_(inputs.begin(), inputs.end()) {
  if (inputs_.empty()) throw std::invalid_argument("empty input list");
  if (inputs_.size() > size_t(PauliString::kMaxSlots))
    throw std::invalid_argument("too many input pairs");
  for (const auto& s : inputs_) validate(s);
}

double WeightTable::weight(const PauliString& p) const {
  if (p.slots() != slots())
    throw std::invalid_argument("string/table slot count mismatch");
  double w = 1.0;
  for (int i = 0; i < p.slots(); ++i) w *= inputs_[i].prob(p.slot(i));
  return w;
}

double WeightTable::factor(int slot, Pauli component) const {
  return inputs_.at(slot).prob(component);
}

Eigen::Vector4cd bell_vector(Pauli error) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (error) {
    case Pauli::I: return {r, 0, 0, r};
    case Pauli::X: return {0, r, r, 0};
    case Pauli::Y: return {0, r, -r, 0};
    case Pauli::Z: return {r, 0, 0, -r};
  }
  throw std::logic_error("unreachable");
}

Matrix bell_projector(Pauli error) {
  Eigen::Vector4cd v = bell_vector(error);
  return v * v.adjoint();
}

Matrix dense_state(const BellDiagonalState& s) {
  validate(s);
  Matrix rho = Matrix::Zero(4, 4);
  for (int e = 0; e < 4; ++e) rho += s.p[e] * bell_projector(Pauli(e));
  return rho;
}

BellDiagonalState pauli_twirl_dense(const Matrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4)
    throw std::invalid_argument("twirl needs a 4x4 state");
  BellDiagonalState out;
  for (int e = 0; e < 4; ++e) {
    Eigen::Vector4cd v = bell_vector(Pauli(e));
    out.p[e] = std::real((v.adjoint() * rho4 * v)(0, 0));
  }
  return out;
}

Matrix product_state(std::span<const BellDiagonalState> inputs) {
  if (inputs.empty()) throw std::invalid_argument("empty input list");
  if (inputs.size() > 5) throw std::invalid_argument("dense product limited to n <= 5");
  Matrix rho = dense_state(inputs[0]);
  for (size_t i = 1; i < inputs.size(); ++i) {
    Matrix next = dense_state(inputs[i]);
    Matrix bigger = Matrix::Zero(rho.rows() * 4, rho.cols() * 4);
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
      for (Eigen::Index c = 0; c < rho.cols(); ++c)
        if (rho(r, c) != std::complex<double>(0, 0))
          bigger.block(r * 4, c * 4, 4, 4) = rho(r, c) * next;
    rho = std::move(bigger);
  }
  return rho;
}

void validate_density(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("state must be square");
  Eigen::Index d = rho.rows();
  if (d == 0 || (d & (d - 1)) != 0)
    throw std::invalid_argument("state dimension must be a power of two");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("state is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho.trace().imag()) > 1e-10)
    throw std::invalid_argument("state trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw std::invalid_argument("state has a negative eigenvalue");
}

uint32_t interleave_bits(uint32_t alice, uint32_t bob, int n) {
  // Qubit i of each side is bit (n-1-i); pair i occupies full-index bits
  // (2n-1-2i, 2n-2-2i) as (A_i, B_i).
  uint32_t out = 0;
  for (int i = 0; i < n; ++i) {
    uint32_t ai = (alice >> (n - 1 - i)) & 1;
    uint32_t bi = (bob >> (n - 1 - i)) & 1;
    out |= ai << (2 * n - 1 - 2 * i);
    out |= bi << (2 * n - 2 - 2 * i);
  }
  return out;
}

}  // namespace epp
