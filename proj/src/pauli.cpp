#include "epp/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace epp {

namespace {

void require_range(int n) {
  if (n < 1 || n > PauliString::kMaxSlots)
    throw std::invalid_argument("slot count out of range [1,16]: " + std::to_string(n));
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  return '?';
}

PauliString::PauliString(int n, uint32_t x, uint32_t z) : n_(n), x_(x), z_(z) {
  require_range(n);
  uint32_t mask = (1u << n) - 1;
  if ((x & ~mask) || (z & ~mask))
    throw std::invalid_argument("bit mask exceeds slot count");
}

PauliString PauliString::identity(int n) { return PauliString(n, 0, 0); }

PauliString PauliString::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty Pauli string");
  if (text.size() > kMaxSlots)
    throw std::invalid_argument("Pauli string longer than 16 slots");
  uint32_t x = 0, z = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I': break;
      case 'X': x |= 1u << i; break;
      case 'Y': x |= 1u << i; z |= 1u << i; break;
      case 'Z': z |= 1u << i; break;
      default:
        throw std::invalid_argument("invalid Pauli character at index " +
                                    std::to_string(i));
    }
  }
  return PauliString(static_cast<int>(text.size()), x, z);
}

Pauli PauliString::slot(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("slot index");
  uint32_t xb = (x_ >> i) & 1, zb = (z_ >> i) & 1;
  if (xb == 0 && zb == 0) return Pauli::I;
  if (xb == 1 && zb == 0) return Pauli::X;
  if (xb == 1 && zb == 1) return Pauli::Y;
  return Pauli::Z;
}

PauliString PauliString::with_slot(int i, Pauli p) const {
  if (i < 0 || i >= n_) throw std::out_of_range("slot index");
  uint32_t b = 1u << i;
  uint32_t x = x_ & ~b, z = z_ & ~b;
  if (p == Pauli::X || p == Pauli::Y) x |= b;
  if (p == Pauli::Z || p == Pauli::Y) z |= b;
  return PauliString(n_, x, z);
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

std::string PauliString::str() const {
  std::string s;
  s.reserve(n_);
  for (int i = 0; i < n_; ++i) s.push_back(pauli_char(slot(i)));
  return s;
}

PauliString PauliString::padded(int extra) const {
  if (extra < 0) throw std::invalid_argument("negative padding");
  if (extra == 0) return *this;
  return PauliString(n_ + extra, x_, z_);
}

PauliString PauliString::from_index(int n, uint32_t idx) {
  require_range(n);
  uint32_t mask = (1u << n) - 1;
  if (idx >> (2 * n)) throw std::out_of_range("string index");
  return PauliString(n, idx & mask, (idx >> n) & mask);
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  if (p.slots() != q.slots())
    throw std::invalid_argument("Pauli string length mismatch");
  return PauliString(p.slots(), p.x_bits() ^ q.x_bits(), p.z_bits() ^ q.z_bits());
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.slots() != q.slots())
    throw std::invalid_argument("Pauli string length mismatch");
  int parity = std::popcount(p.x_bits() & q.z_bits()) ^
               std::popcount(p.z_bits() & q.x_bits());
  return (parity & 1) == 0;
}

StringClass classify(const PauliString& p) {
  int n = p.slots();
  if (n < 2) throw std::invalid_argument("classification needs >= 2 slots");
  uint32_t full = (1u << n) - 1;
  uint32_t measured = full & ~1u;
  StringClass c;
  c.single_noiseless = (p.x_bits() | p.z_bits()) != full;
  c.incorrect = (p.x_bits() & measured) != 0;
  if (!c.incorrect) {
    bool kept_identity = ((p.x_bits() | p.z_bits()) & 1u) == 0;
    c.correct = kept_identity;
    c.undetectable = !kept_identity;
  }
  c.harmless = c.correct || c.incorrect;
  return c;
}

std::vector<PauliString> enumerate_class(int n, StringKind kind) {
  if (n < 2 || n > 10) throw std::invalid_argument("enumeration needs 2 <= n <= 10");
  std::vector<PauliString> out;
  uint32_t total = 1u << (2 * n);
  for (uint32_t idx = 0; idx < total; ++idx) {
    PauliString p = PauliString::from_index(n, idx);
    StringClass c = classify(p);
    bool keep = false;
    switch (kind) {
      case StringKind::SingleNoiseless: keep = c.single_noiseless; break;
      case StringKind::Correct: keep = c.correct; break;
      case StringKind::Incorrect: keep = c.incorrect; break;
      case StringKind::Undetectable: keep = c.undetectable; break;
      case StringKind::Harmless: keep = c.harmless; break;
    }
    if (keep) out.push_back(p);
  }
  return out;
}

uint64_t class_count(int n, StringKind kind) {
  if (n < 2 || n > 16) throw std::invalid_argument("count needs 2 <= n <= 16");
  auto pw = [](uint64_t b, int e) {
    uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
  };
  uint64_t four = pw(4, n), three = pw(3, n), half = pw(2, n - 1);
  switch (kind) {
    case StringKind::SingleNoiseless: return four - three;
    case StringKind::Correct: return half;
    case StringKind::Incorrect: return four - 4 * half;
    case StringKind::Undetectable: return 3 * half;
    case StringKind::Harmless: return four - 3 * half;
  }
  throw std::logic_error("unreachable");
}

}  // namespace epp
