#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace epp {

// Single-slot Pauli label. The numeric values index Bell-diagonal probability
// vectors throughout (I, X, Y, Z) = (phi+, psi+, psi-, phi-).
enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

// Pauli string modulo phase on up to 16 slots, stored as an (x, z) bit pair
// per slot: (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z. Slot 0 is the leftmost slot
// (the kept pair); bits are confined to the low n positions.
class PauliString {
 public:
  static constexpr int kMaxSlots = 16;

  PauliString() = default;
  PauliString(int n, uint32_t x, uint32_t z);

  static PauliString identity(int n);
  // Text form "IXYZ...", leftmost char = slot 0. Throws std::invalid_argument
  // naming the offending index on bad characters.
  static PauliString parse(std::string_view text);

  int slots() const { return n_; }
  uint32_t x_bits() const { return x_; }
  uint32_t z_bits() const { return z_; }

  Pauli slot(int i) const;
  PauliString with_slot(int i, Pauli p) const;

  bool is_identity() const { return (x_ | z_) == 0; }
  int weight() const;  // number of non-identity slots
  std::string str() const;

  // Appends `extra` identity slots on the right.
  PauliString padded(int extra) const;

  // Dense index in [0, 4^n): z-major, used for enumeration order.
  uint32_t index() const { return (z_ << n_) | x_; }
  static PauliString from_index(int n, uint32_t idx);

  bool operator==(const PauliString&) const = default;

 private:
  int n_ = 0;
  uint32_t x_ = 0;
  uint32_t z_ = 0;
};

// Group product modulo phase: componentwise XOR of the bit pairs.
PauliString multiply(const PauliString& p, const PauliString& q);
inline PauliString operator*(const PauliString& p, const PauliString& q) {
  return multiply(p, q);
}

// true iff the GF(2) symplectic form <p.x,q.z> + <p.z,q.x> vanishes.
bool commutes(const PauliString& p, const PauliString& q);

// Error-string taxonomy for one kept slot (slot 0) plus measured slots 1..n-1.
//   correct:      slot 0 = I and slots 1.. all in {I,Z}
//   undetectable: slot 0 in {X,Y,Z} and slots 1.. all in {I,Z}
//   incorrect:    some slot in 1.. is X or Y
//   harmless = correct or incorrect; the three classes partition all strings.
struct StringClass {
  bool single_noiseless = false;  // at least one slot is I
  bool correct = false;
  bool incorrect = false;
  bool undetectable = false;
  bool harmless = false;
};

StringClass classify(const PauliString& p);  // requires p.slots() >= 2

enum class StringKind { SingleNoiseless, Correct, Incorrect, Undetectable, Harmless };

// All strings of the given kind, in index() order. Requires 2 <= n <= 10.
std::vector<PauliString> enumerate_class(int n, StringKind kind);

// Closed-form cardinalities: single_noiseless 4^n-3^n, correct 2^{n-1},
// incorrect 4^n-2^{n+1}, undetectable 3*2^{n-1}, harmless 4^n-3*2^{n-1}.
uint64_t class_count(int n, StringKind kind);

}  // namespace epp
