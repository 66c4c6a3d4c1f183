#include "epp/choi.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>

namespace epp {
namespace {

constexpr double kPptTol = 1e-9;
constexpr double kSaturationTol = 1e-9;

uint64_t ipow(uint64_t base, int exp) {
  uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<uint64_t>(n - k + i) / i;
  return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void fill_verdict(BlochCorrelationSummary& s) {
  s.bound = separability_bound(s.n);
  s.margin = s.t_norm - s.bound;
  s.violated = s.t_norm > s.bound + kSaturationTol;
  s.saturated = std::abs(s.t_norm - s.bound) <= kSaturationTol;
}

// 3 * coefficient magnitude of a bucket: |3 (-1)^{py} + 3^{#I} (-1)^{pxz}|,
// an exact integer for every bucket.
int64_t bucket_magnitude3(int identity_slots, int y_parity, int xz_parity) {
  const int64_t y_term = y_parity ? -3 : 3;
  const int64_t xz_term =
      (xz_parity ? -1 : 1) * static_cast<int64_t>(ipow(3, identity_slots));
  return std::abs(y_term + xz_term);
}

}  // namespace

ChoiOperator build_choi(int n) {
  if (n < 1 || n > 8) {
    throw std::invalid_argument(
        "coefficient representation supports 1 to 8 input pairs");
  }
  ChoiOperator j;
  j.n = n;
  j.trace = 1.0 + std::pow(3.0, n);
  j.identity_coefficient = j.trace / std::pow(4.0, n + 1);
  return j;
}

double choi_coefficient(const ChoiOperator& j, const PauliString& p) {
  if (p.slots() != j.n + 1) {
    throw std::invalid_argument("string must cover n + 1 pair slots");
  }
  double perfect = 1;
  double orthogonal = 1;
  for (int i = 0; i <= j.n; ++i) {
    const auto s = static_cast<std::size_t>(p.slot(i));
    perfect *= j.perfect_term[s];
    orthogonal *= j.orthogonal_term[s];
  }
  return (perfect + orthogonal / 3.0) / std::pow(4.0, j.n + 1);
}

Matrix choi_dense(const ChoiOperator& j) {
  if (j.n > 4) {
    throw std::invalid_argument("dense materialization supports n <= 4");
  }
  const Matrix phi = bell_projector(Pauli::I);
  const Matrix phi_perp = Matrix::Identity(4, 4) - phi;
  Matrix perfect = phi;
  Matrix orthogonal = phi_perp;
  for (int i = 0; i < j.n; ++i) {  // n + 1 pair factors in total
    perfect = kron(perfect, phi);
    orthogonal = kron(orthogonal, phi_perp);
  }
  return perfect + orthogonal / 3.0;
}

Matrix partial_transpose(const Matrix& op, int qubits) {
  if (qubits < 1 || qubits > 20) {
    throw std::invalid_argument("qubit count out of range");
  }
  const long dim = 1L << qubits;
  if (op.rows() != dim || op.cols() != dim) {
    throw std::invalid_argument("operator dimension does not match qubit count");
  }
  long bob_mask = 0;
  for (int q = 1; q < qubits; q += 2) {
    bob_mask |= 1L << (qubits - 1 - q);
  }
  const long alice_mask = (dim - 1) & ~bob_mask;
  Matrix out(dim, dim);
  for (long r = 0; r < dim; ++r) {
    for (long c = 0; c < dim; ++c) {
      const long rr = (r & alice_mask) | (c & bob_mask);
      const long cc = (c & alice_mask) | (r & bob_mask);
      out(r, c) = op(rr, cc);
    }
  }
  return out;
}

PptReport ppt_spectrum(const ChoiOperator& j) {
  PptReport rep;
  rep.n = j.n;
  const double denom = std::pow(2.0, j.n + 1);
  for (int k = 0; k <= j.n + 1; ++k) {
    PptSpectrumLine line;
    line.k = k;
    line.eigenvalue =
        ((k % 2 ? -1.0 : 1.0) + std::pow(3.0, k - 1)) / denom;
    line.multiplicity = binomial(j.n + 1, k) * ipow(3, j.n + 1 - k);
    rep.spectrum.push_back(line);
  }
  rep.min_eigenvalue = rep.spectrum.front().eigenvalue;
  rep.max_eigenvalue = rep.spectrum.front().eigenvalue;
  for (const auto& line : rep.spectrum) {
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, line.eigenvalue);
    rep.max_eigenvalue = std::max(rep.max_eigenvalue, line.eigenvalue);
  }
  rep.ppt = rep.min_eigenvalue >= -kPptTol;
  return rep;
}

double ppt_min_eigenvalue(const ChoiOperator& j) {
  return ppt_spectrum(j).min_eigenvalue;
}

BlochCorrelationSummary t_norm_bruteforce(int n) {
  if (n < 1 || n > 9) {
    throw std::invalid_argument("brute-force sweep supports 1 to 9 pairs");
  }
  const int slots = n + 1;
  // tallies[#I][#Y parity]
  std::vector<std::array<uint64_t, 2>> tallies(
      static_cast<std::size_t>(slots) + 1, std::array<uint64_t, 2>{0, 0});
  uint64_t total3 = 0;  // sum of 3 * |coefficient|, exact in integers
  const uint64_t limit = uint64_t{1} << (2 * slots);
  for (uint64_t idx = 0; idx < limit; ++idx) {
    int ni = 0;
    int ny = 0;
    int nxz = 0;
    for (uint64_t v = idx, s = 0; s < static_cast<uint64_t>(slots);
         ++s, v >>= 2) {
      switch (v & 3) {
        case 0: ++ni; break;
        case 2: ++ny; break;
        default: ++nxz; break;
      }
    }
    if (ni == slots) continue;  // the identity string is excluded
    total3 += static_cast<uint64_t>(bucket_magnitude3(ni, ny % 2, nxz % 2));
    ++tallies[static_cast<std::size_t>(ni)][static_cast<std::size_t>(ny % 2)];
  }
  const double scale =
      std::pow(2.0, n) / (3.0 * (std::pow(3.0, n) + 1.0));
  BlochCorrelationSummary summary;
  summary.n = n;
  summary.t_norm = static_cast<double>(total3) * scale;
  for (int i = 0; i < slots; ++i) {
    const int r = slots - i;
    for (int py = 0; py <= 1; ++py) {
      const uint64_t count = tallies[static_cast<std::size_t>(i)]
                                    [static_cast<std::size_t>(py)];
      if (count == 0) continue;
      BlochBucket bucket;
      bucket.identity_slots = i;
      bucket.y_parity = py;
      bucket.xz_parity = (r - py) % 2;
      bucket.count = count;
      bucket.magnitude =
          static_cast<double>(
              bucket_magnitude3(i, py, bucket.xz_parity)) * scale;
      summary.buckets.push_back(bucket);
    }
  }
  fill_verdict(summary);
  return summary;
}

double t_norm_closed_form(int n) {
  if (n < 1) {
    throw std::invalid_argument("need at least one pair");
  }
  const double p3 = std::pow(3.0, n);
  if (n % 2 == 0) {
    return (std::ldexp(p3 - 1.0, 2 * n + 1) + std::ldexp(3.0 * p3 - 1.0, n)) /
           (p3 + 1.0);
  }
  return std::ldexp(std::ldexp(1.0, n + 1) - 1.0, n);
}

double separability_bound(int n) {
  return std::ldexp(std::ldexp(1.0, n + 1) - 1.0, n);
}

BlochCorrelationSummary separability_verdict(int n) {
  if (n < 1 || n > 30) {
    throw std::invalid_argument("verdict supports 1 to 30 pairs");
  }
  BlochCorrelationSummary summary;
  summary.n = n;
  summary.t_norm = t_norm_closed_form(n);
  const int slots = n + 1;
  const double scale =
      std::pow(2.0, n) / (3.0 * (std::pow(3.0, n) + 1.0));
  for (int i = 0; i < slots; ++i) {  // i == slots would be the identity
    const int r = slots - i;
    const uint64_t error_strings = ipow(3, r);
    for (int py = 0; py <= 1; ++py) {
      // #Y parity splits the 3^r letterings of the non-identity slots
      const uint64_t parity_count =
          py == 0 ? (error_strings + 1) / 2 : (error_strings - 1) / 2;
      const uint64_t count = binomial(slots, i) * parity_count;
      if (count == 0) continue;
      BlochBucket bucket;
      bucket.identity_slots = i;
      bucket.y_parity = py;
      bucket.xz_parity = (r - py) % 2;
      bucket.count = count;
      bucket.magnitude =
          static_cast<double>(
              bucket_magnitude3(i, py, bucket.xz_parity)) * scale;
      summary.buckets.push_back(bucket);
    }
  }
  fill_verdict(summary);
  return summary;
}

double t_norm_dense(const ChoiOperator& j) {
  const int qubits = 2 * (j.n + 1);
  Matrix coeff = choi_dense(j) / j.trace;
  const long dim = coeff.rows();
  // In-place Pauli transform: after processing every qubit,
  // coeff(r, c) = Tr[rho sigma_R] / dim with the letter at each qubit read
  // from that qubit's (row bit, column bit) pair as (00,01,10,11)=(I,X,Y,Z).
  const std::complex<double> im(0, 1);
  for (int bit = 0; bit < qubits; ++bit) {
    const long step = 1L << bit;
    for (long r = 0; r < dim; ++r) {
      if (r & step) continue;
      for (long c = 0; c < dim; ++c) {
        if (c & step) continue;
        const std::complex<double> e00 = coeff(r, c);
        const std::complex<double> e01 = coeff(r, c | step);
        const std::complex<double> e10 = coeff(r | step, c);
        const std::complex<double> e11 = coeff(r | step, c | step);
        coeff(r, c) = (e00 + e11) / 2.0;
        coeff(r, c | step) = (e01 + e10) / 2.0;
        coeff(r | step, c) = im * (e01 - e10) / 2.0;
        coeff(r | step, c | step) = (e00 - e11) / 2.0;
      }
    }
  }
  // Correlation block over generators scaled to Tr(l_i l_j) = 2 delta_ij:
  // T_PQ = 2^n * dim * coeff(P, Q) for non-identity side strings P, Q.
  const double t_scale = std::pow(2.0, j.n) * static_cast<double>(dim);
  Eigen::MatrixXd tmat = Eigen::MatrixXd::Zero(dim - 1, dim - 1);
  double max_imag = 0;
  for (long r = 0; r < dim; ++r) {
    for (long c = 0; c < dim; ++c) {
      long alice = 0;
      long bob = 0;
      for (int q = 0; q < qubits; ++q) {
        const int pos = qubits - 1 - q;
        const long code =
            (((r >> pos) & 1) << 1) | ((c >> pos) & 1);
        if (q % 2 == 0) {
          alice |= code << (2 * (q / 2));
        } else {
          bob |= code << (2 * (q / 2));
        }
      }
      if (alice == 0 || bob == 0) continue;
      const std::complex<double> v = coeff(r, c) * t_scale;
      max_imag = std::max(max_imag, std::abs(v.imag()));
      tmat(alice - 1, bob - 1) = v.real();
    }
  }
  if (max_imag > 1e-9) {
    throw std::logic_error("correlation block has a non-real entry");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(tmat);
  return svd.singularValues().sum();
}

double ppt_output_fidelity(std::span<const double> fidelities) {
  if (fidelities.empty()) {
    throw std::invalid_argument("output fidelity needs at least one input");
  }
  bool has_zero = false;
  bool has_one = false;
  double log_odds = 0;  // log of prod (1 - F_i) / F_i
  for (const double f : fidelities) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw std::invalid_argument("fidelities must lie in [0, 1]");
    }
    has_zero = has_zero || f == 0.0;
    has_one = has_one || f == 1.0;
    log_odds += std::log1p(-f) - std::log(f);
  }
  if (has_zero && has_one) {
    throw std::invalid_argument(
        "output fidelity undefined: both fidelity products vanish");
  }
  return 1.0 / (1.0 + std::exp(log_odds));
}

double universality_margin(std::span<const double> fidelities, int j) {
  if (fidelities.empty()) {
    throw std::invalid_argument("margin needs at least one input");
  }
  if (j < 1 || j > static_cast<int>(fidelities.size())) {
    throw std::out_of_range("index j is 1-based and must address an input");
  }
  double prod_f = 1;
  double prod_not_f = 1;
  double rest_f = 1;
  double rest_not_f = 1;
  for (int i = 0; i < static_cast<int>(fidelities.size()); ++i) {
    const double f = fidelities[static_cast<std::size_t>(i)];
    if (!(f >= 0.5 && f <= 1.0)) {
      throw std::invalid_argument(
          "fidelity threshold violated: every input must be at least 1/2");
    }
    prod_f *= f;
    prod_not_f *= 1.0 - f;
    if (i != j - 1) {
      rest_f *= f;
      rest_not_f *= 1.0 - f;
    }
  }
  const double fj = fidelities[static_cast<std::size_t>(j - 1)];
  return (1.0 - fj) * (rest_f - rest_not_f) * fj / (prod_f + prod_not_f);
}

}  // namespace epp
