#include "epp/clifford.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace epp {

namespace {

struct GateSpec {
  const char* name;
  GateKind kind;
  bool two_qubit;
};

constexpr GateSpec kGateTable[] = {
    {"H", GateKind::H, false},  {"S", GateKind::S, false},
    {"CX", GateKind::CX, true}, {"CZ", GateKind::CZ, true},
    {"X", GateKind::X, false},  {"Y", GateKind::Y, false},
    {"Z", GateKind::Z, false},
};

const GateSpec& spec_of(GateKind k) {
  for (const auto& s : kGateTable)
    if (s.kind == k) return s;
  throw std::logic_error("unknown gate kind");
}

}  // namespace

bool gate_is_two_qubit(GateKind k) { return spec_of(k).two_qubit; }

std::vector<Gate> parse_gates(std::string_view text, int n) {
  std::vector<Gate> out;
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ';', '\n');
  std::istringstream lines(normalized);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream tok(line);
    std::string mnemonic;
    if (!(tok >> mnemonic)) continue;
    const GateSpec* spec = nullptr;
    for (const auto& s : kGateTable)
      if (mnemonic == s.name) spec = &s;
    if (!spec)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": unknown gate '" + mnemonic + "'");
    Gate g{spec->kind};
    int want = spec->two_qubit ? 2 : 1;
    int got = 0;
    int q;
    while (tok >> q) {
      if (q < 0 || q >= n)
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": slot index " + std::to_string(q) +
                                    " outside [0," + std::to_string(n) + ")");
      if (got == 0) g.q0 = q;
      else if (got == 1) g.q1 = q;
      ++got;
    }
    if (got != want)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": gate " +
                                  mnemonic + " takes " + std::to_string(want) +
                                  " slot(s), got " + std::to_string(got));
    if (spec->two_qubit && g.q0 == g.q1)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": two-qubit gate needs distinct slots");
    out.push_back(g);
  }
  return out;
}

std::string format_gates(const std::vector<Gate>& gates) {
  std::string out;
  for (const auto& g : gates) {
    out += spec_of(g.kind).name;
    out += ' ';
    out += std::to_string(g.q0);
    if (gate_is_two_qubit(g.kind)) {
      out += ' ';
      out += std::to_string(g.q1);
    }
    out += '\n';
  }
  return out;
}

CliffordTableau::CliffordTableau(int n) : n_(n) {
  if (n < 1 || n > PauliString::kMaxSlots)
    throw std::invalid_argument("qubit count out of range [1,16]");
  rows_.reserve(2 * n);
  for (int i = 0; i < n; ++i)
    rows_.push_back(PauliString(n, 1u << i, 0));
  for (int i = 0; i < n; ++i)
    rows_.push_back(PauliString(n, 0, 1u << i));
}

CliffordTableau CliffordTableau::identity(int n) { return CliffordTableau(n); }

CliffordTableau CliffordTableau::from_gates(int n, const std::vector<Gate>& gates) {
  CliffordTableau t(n);
  for (const auto& g : gates) t.apply_gate(g);
  return t;
}

CliffordTableau CliffordTableau::from_images(int n, std::vector<PauliString> images) {
  if (int(images.size()) != 2 * n)
    throw std::invalid_argument("need 2n generator images");
  for (const auto& img : images)
    if (img.slots() != n)
      throw std::invalid_argument("image slot count mismatch");
  CliffordTableau out(n);
  out.rows_ = std::move(images);
  if (!out.preserves_commutation())
    throw std::invalid_argument("images do not preserve the symplectic form");
  return out;
}

const PauliString& CliffordTableau::image_of_x(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("generator index");
  return rows_[i];
}

const PauliString& CliffordTableau::image_of_z(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("generator index");
  return rows_[n_ + i];
}

PauliString CliffordTableau::conjugate(const PauliString& p) const {
  if (p.slots() != n_)
    throw std::invalid_argument("string/tableau slot count mismatch");
  uint32_t x = 0, z = 0;
  for (int i = 0; i < n_; ++i) {
    if ((p.x_bits() >> i) & 1) {
      x ^= rows_[i].x_bits();
      z ^= rows_[i].z_bits();
    }
    if ((p.z_bits() >> i) & 1) {
      x ^= rows_[n_ + i].x_bits();
      z ^= rows_[n_ + i].z_bits();
    }
  }
  return PauliString(n_, x, z);
}

void CliffordTableau::apply_gate(const Gate& g) {
  if (g.q0 < 0 || g.q0 >= n_ ||
      (gate_is_two_qubit(g.kind) && (g.q1 < 0 || g.q1 >= n_ || g.q1 == g.q0)))
    throw std::invalid_argument("gate slot index out of range");
  for (auto& row : rows_) {
    uint32_t x = row.x_bits(), z = row.z_bits();
    switch (g.kind) {
      case GateKind::H: {
        uint32_t b = 1u << g.q0;
        uint32_t xb = x & b, zb = z & b;
        x = (x & ~b) | (zb ? b : 0);
        z = (z & ~b) | (xb ? b : 0);
        break;
      }
      case GateKind::S:
        z ^= x & (1u << g.q0);
        break;
      case GateKind::CX:
        if (x & (1u << g.q0)) x ^= 1u << g.q1;
        if (z & (1u << g.q1)) z ^= 1u << g.q0;
        break;
      case GateKind::CZ:
        if (x & (1u << g.q0)) z ^= 1u << g.q1;
        if (x & (1u << g.q1)) z ^= 1u << g.q0;
        break;
      case GateKind::X:
      case GateKind::Y:
      case GateKind::Z:
        break;  // Pauli factors only flip phases, which are discarded
    }
    row = PauliString(n_, x, z);
  }
}

bool CliffordTableau::preserves_commutation() const {
  // Generators: X_i commutes with everything except its partner Z_i.
  for (int a = 0; a < 2 * n_; ++a) {
    for (int b = a + 1; b < 2 * n_; ++b) {
      bool generators_commute = (b != a + n_);
      if (commutes(rows_[a], rows_[b]) != generators_commute) return false;
    }
  }
  return true;
}

CliffordTableau CliffordTableau::extended(int extra) const {
  if (extra < 0) throw std::invalid_argument("negative extension");
  if (extra == 0) return *this;
  CliffordTableau out(n_ + extra);
  for (int i = 0; i < n_; ++i) {
    out.rows_[i] = rows_[i].padded(extra);
    out.rows_[n_ + extra + i] = rows_[n_ + i].padded(extra);
  }
  return out;
}

uint64_t CliffordTableau::key() const {
  if (n_ > 4) throw std::invalid_argument("canonical key limited to n <= 4");
  uint64_t k = 0;
  for (int r = 0; r < 2 * n_; ++r) {
    uint64_t row = rows_[r].x_bits() | (uint64_t(rows_[r].z_bits()) << n_);
    k |= row << (r * 2 * n_);
  }
  return k;
}

CliffordTableau CliffordTableau::from_key(int n, uint64_t key) {
  if (n < 1 || n > 4) throw std::invalid_argument("canonical key limited to n <= 4");
  CliffordTableau out(n);
  uint64_t mask = (1ull << n) - 1;
  for (int r = 0; r < 2 * n; ++r) {
    uint64_t row = (key >> (r * 2 * n)) & ((1ull << (2 * n)) - 1);
    out.rows_[r] = PauliString(n, uint32_t(row & mask), uint32_t(row >> n));
  }
  if (!out.preserves_commutation())
    throw std::invalid_argument("key does not encode a symplectic tableau");
  return out;
}

CliffordTableau compose(const CliffordTableau& c1, const CliffordTableau& c2) {
  if (c1.qubits() != c2.qubits())
    throw std::invalid_argument("tableau size mismatch");
  int n = c1.qubits();
  std::vector<PauliString> images;
  images.reserve(2 * n);
  for (int i = 0; i < n; ++i) images.push_back(c1.conjugate(c2.image_of_x(i)));
  for (int i = 0; i < n; ++i) images.push_back(c1.conjugate(c2.image_of_z(i)));
  return CliffordTableau::from_images(n, std::move(images));
}

uint64_t symplectic_order(int n) {
  uint64_t order = 1ull << (uint64_t(n) * n);
  uint64_t p4 = 1;
  for (int i = 1; i <= n; ++i) {
    p4 *= 4;
    order *= p4 - 1;
  }
  return order;
}

namespace {

// Gate action on a packed key, applied to all 2n rows at once. Bit x_q of
// row r sits at r*2n + q, bit z_q at r*2n + n + q.
struct PackedGate {
  // key' = (key & keep) | shifted-in pieces | xor pieces.
  // Encoded as: key' = ((key & m0) shift s0) | ((key & m1) shift s1) | (key & keep)
  // for H, and key' = key ^ xor-folds for S/CX/CZ.
  GateKind kind;
  uint64_t mx0 = 0, mx1 = 0;  // source masks
  int s0 = 0, s1 = 0;         // signed shifts
};

uint64_t column_mask(int n, int bit) {
  uint64_t m = 0;
  for (int r = 0; r < 2 * n; ++r) m |= 1ull << (r * 2 * n + bit);
  return m;
}

uint64_t shift_signed(uint64_t v, int s) { return s >= 0 ? v << s : v >> -s; }

PackedGate pack_gate(int n, const Gate& g) {
  PackedGate p;
  p.kind = g.kind;
  switch (g.kind) {
    case GateKind::H:
      p.mx0 = column_mask(n, g.q0);          // x_q -> z_q
      p.mx1 = column_mask(n, n + g.q0);      // z_q -> x_q
      p.s0 = n;
      p.s1 = -n;
      break;
    case GateKind::S:
      p.mx0 = column_mask(n, g.q0);          // z_q ^= x_q
      p.s0 = n;
      break;
    case GateKind::CX:
      p.mx0 = column_mask(n, g.q0);          // x_t ^= x_c
      p.s0 = g.q1 - g.q0;
      p.mx1 = column_mask(n, n + g.q1);      // z_c ^= z_t
      p.s1 = g.q0 - g.q1;
      break;
    case GateKind::CZ:
      p.mx0 = column_mask(n, g.q0);          // z_b ^= x_a
      p.s0 = n + g.q1 - g.q0;
      p.mx1 = column_mask(n, g.q1);          // z_a ^= x_b
      p.s1 = n + g.q0 - g.q1;
      break;
    default:
      break;  // Pauli gates are no-ops on keys
  }
  return p;
}

uint64_t apply_packed(uint64_t key, const PackedGate& p) {
  switch (p.kind) {
    case GateKind::H:
      return (key & ~(p.mx0 | p.mx1)) | shift_signed(key & p.mx0, p.s0) |
             shift_signed(key & p.mx1, p.s1);
    case GateKind::S:
      return key ^ shift_signed(key & p.mx0, p.s0);
    case GateKind::CX:
    case GateKind::CZ:
      return key ^ shift_signed(key & p.mx0, p.s0) ^
             shift_signed(key & p.mx1, p.s1);
    default:
      return key;
  }
}

}  // namespace

std::vector<uint64_t> enumerate_symplectic(int n) {
  if (n < 1 || n > 3)
    throw std::invalid_argument("exhaustive enumeration limited to n in {1,2,3}");
  std::vector<PackedGate> generators;
  for (int q = 0; q < n; ++q) {
    generators.push_back(pack_gate(n, Gate{GateKind::H, q}));
    generators.push_back(pack_gate(n, Gate{GateKind::S, q}));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) generators.push_back(pack_gate(n, Gate{GateKind::CX, a, b}));

  std::unordered_set<uint64_t> seen;
  seen.reserve(2 * symplectic_order(n));
  std::vector<uint64_t> frontier{CliffordTableau::identity(n).key()};
  seen.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<uint64_t> next;
    for (uint64_t k : frontier)
      for (const PackedGate& g : generators) {
        uint64_t k2 = apply_packed(k, g);
        if (seen.insert(k2).second) next.push_back(k2);
      }
    frontier = std::move(next);
  }
  std::vector<uint64_t> keys(seen.begin(), seen.end());
  std::sort(keys.begin(), keys.end());
  return keys;
}

CliffordTableau random_clifford(int n, uint64_t seed) {
  if (n < 1 || n > 10) throw std::invalid_argument("random sampling needs n <= 10");
  std::mt19937_64 eng(seed);
  uint32_t string_mask = (1u << (2 * n)) - 1;
  uint32_t slot_mask = (1u << n) - 1;
  auto draw = [&]() {
    uint32_t bits = uint32_t(eng()) & string_mask;
    return PauliString(n, bits & slot_mask, bits >> n);
  };

  // Build a symplectic basis pair by pair; rejection keeps the sample exactly
  // uniform over Sp(2n, 2).
  std::vector<PauliString> vs, ws;
  auto commutes_with_chosen = [&](const PauliString& p) {
    for (size_t j = 0; j < vs.size(); ++j)
      if (!commutes(p, vs[j]) || !commutes(p, ws[j])) return false;
    return true;
  };
  for (int i = 0; i < n; ++i) {
    PauliString v;
    do {
      v = draw();
    } while (v.is_identity() || !commutes_with_chosen(v));
    PauliString w;
    do {
      w = draw();
    } while (commutes(w, v) || !commutes_with_chosen(w));
    vs.push_back(v);
    ws.push_back(w);
  }

  std::vector<PauliString> images = vs;
  images.insert(images.end(), ws.begin(), ws.end());
  return CliffordTableau::from_images(n, std::move(images));
}

std::vector<Gate> synthesize_gates(const CliffordTableau& t) {
  int n = t.qubits();
  CliffordTableau work = t;
  std::vector<Gate> applied;
  auto app = [&](GateKind k, int a, int b = -1) {
    Gate g{k, a, b};
    work.apply_gate(g);
    applied.push_back(g);
  };

  // Reduce `work` to the identity by appending generators; every generator is
  // an involution modulo phase, so the reversed gate list rebuilds t.
  for (int i = 0; i < n; ++i) {
    // Slots < i of both images are I: they must commute with the already
    // fixed X_k and Z_k pairs.
    PauliString v = work.image_of_x(i);
    int pivot = -1;
    for (int j = i; j < n && pivot < 0; ++j)
      if (v.slot(j) != Pauli::I) pivot = j;
    if (pivot < 0) throw std::logic_error("singular tableau row");
    if (v.slot(pivot) == Pauli::Z) app(GateKind::H, pivot);
    else if (v.slot(pivot) == Pauli::Y) app(GateKind::S, pivot);
    if (pivot != i) {  // swap slots i and pivot
      app(GateKind::CX, i, pivot);
      app(GateKind::CX, pivot, i);
      app(GateKind::CX, i, pivot);
    }
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      switch (work.image_of_x(i).slot(k)) {
        case Pauli::I: break;
        case Pauli::X: app(GateKind::CX, i, k); break;
        case Pauli::Y: app(GateKind::S, k); app(GateKind::CX, i, k); break;
        case Pauli::Z: app(GateKind::CZ, i, k); break;
      }
    }
    // Image of X_i is now exactly X_i; fix the Z row without disturbing it.
    if (work.image_of_z(i).slot(i) == Pauli::Y) {
      app(GateKind::H, i);
      app(GateKind::S, i);
      app(GateKind::H, i);
    }
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      switch (work.image_of_z(i).slot(k)) {
        case Pauli::I: break;
        case Pauli::X: app(GateKind::H, k); app(GateKind::CX, k, i); break;
        case Pauli::Y:
          app(GateKind::S, k); app(GateKind::H, k); app(GateKind::CX, k, i);
          break;
        case Pauli::Z: app(GateKind::CX, k, i); break;
      }
    }
  }
  if (!(work == CliffordTableau::identity(n)))
    throw std::logic_error("synthesis failed to reach identity");
  std::reverse(applied.begin(), applied.end());
  if (!(CliffordTableau::from_gates(n, applied) == t))
    throw std::logic_error("synthesized circuit does not rebuild the tableau");
  return applied;
}

CliffordTableau controlled_pauli(int n, int control, const PauliString& p) {
  if (control < 0 || control >= n) throw std::invalid_argument("control slot");
  if (p.slots() != n - 1)
    throw std::invalid_argument("controlled string must cover the other n-1 slots");
  // Embed p on the non-control slots in order.
  PauliString emb = PauliString::identity(n);
  for (int q = 0, src = 0; q < n; ++q) {
    if (q == control) continue;
    emb = emb.with_slot(q, p.slot(src++));
  }
  PauliString zc = PauliString::identity(n).with_slot(control, Pauli::Z);
  CliffordTableau id(n);
  std::vector<PauliString> images;
  images.reserve(2 * n);
  for (int i = 0; i < n; ++i) images.push_back(id.image_of_x(i));
  for (int i = 0; i < n; ++i) images.push_back(id.image_of_z(i));
  // X_c picks up the controlled string; Z_c is untouched. A target
  // generator gains Z_c exactly when it anticommutes with its slot of p.
  images[control] = images[control] * emb;
  for (int q = 0; q < n; ++q) {
    if (q == control) continue;
    Pauli s = emb.slot(q);
    if (s == Pauli::Z || s == Pauli::Y) images[q] = images[q] * zc;
    if (s == Pauli::X || s == Pauli::Y) images[n + q] = images[n + q] * zc;
  }
  return CliffordTableau::from_images(n, std::move(images));
}

CliffordTableau parse_tableau(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  std::vector<PauliString> images;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    std::string token = line.substr(begin, end - begin + 1);
    if (n < 0) {
      if (token.rfind("n=", 0) != 0)
        throw std::invalid_argument("tableau file must start with 'n=<k>'");
      n = std::stoi(token.substr(2));
      if (n < 1 || n > PauliString::kMaxSlots)
        throw std::invalid_argument("tableau size out of range");
      continue;
    }
    PauliString img = PauliString::parse(token);
    if (img.slots() != n)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": image has wrong slot count");
    images.push_back(img);
  }
  if (n < 0) throw std::invalid_argument("missing 'n=<k>' header");
  if (int(images.size()) != 2 * n)
    throw std::invalid_argument("expected " + std::to_string(2 * n) +
                                " image lines, got " + std::to_string(images.size()));
  return CliffordTableau::from_images(n, std::move(images));
}

std::string format_tableau(const CliffordTableau& t) {
  std::string out = "n=" + std::to_string(t.qubits()) + "\n";
  for (int i = 0; i < t.qubits(); ++i) out += t.image_of_x(i).str() + "\n";
  for (int i = 0; i < t.qubits(); ++i) out += t.image_of_z(i).str() + "\n";
  return out;
}

}  // namespace epp
