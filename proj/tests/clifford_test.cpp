#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "epp/clifford.hpp"

using namespace epp;

namespace {

PauliString image(const CliffordTableau& c, const char* p) {
  return c.conjugate(PauliString::parse(p));
}

CliffordTableau circuit(int n, const char* text) {
  return CliffordTableau::from_gates(n, parse_gates(text, n));
}

}  // namespace

TEST_CASE("gate text grammar: newlines, semicolons, comments") {
  const auto gs = parse_gates("H 0\nCX 0 1 # entangle\n; S 1; CZ 1 0", 2);
  REQUIRE(gs.size() == 4);
  CHECK(gs[0] == Gate{GateKind::H, 0});
  CHECK(gs[1] == Gate{GateKind::CX, 0, 1});
  CHECK(gs[2] == Gate{GateKind::S, 1});
  CHECK(gs[3] == Gate{GateKind::CZ, 1, 0});
  CHECK(format_gates(gs) == "H 0\nCX 0 1\nS 1\nCZ 1 0\n");
  CHECK(parse_gates(format_gates(gs), 2) == gs);
  CHECK(parse_gates("", 2).empty());
  CHECK(parse_gates("# nothing\n\n", 2).empty());
}

TEST_CASE("gate text grammar: errors carry the line number") {
  CHECK_THROWS_WITH_AS((void)parse_gates("Q 0", 1),
                       doctest::Contains("line 1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS((void)parse_gates("H 0\nH 3", 2),
                       doctest::Contains("line 2"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_gates("CX 0", 2), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_gates("H 0 1", 2), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_gates("CX 1 1", 2), std::invalid_argument);
}

TEST_CASE("single-slot conjugation rules") {
  const auto h = circuit(1, "H 0");
  CHECK(h.conjugate(PauliString::parse("X")).str() == "Z");
  CHECK(h.conjugate(PauliString::parse("Z")).str() == "X");
  CHECK(h.conjugate(PauliString::parse("Y")).str() == "Y");

  const auto s = circuit(1, "S 0");
  CHECK(s.conjugate(PauliString::parse("X")).str() == "Y");
  CHECK(s.conjugate(PauliString::parse("Y")).str() == "X");
  CHECK(s.conjugate(PauliString::parse("Z")).str() == "Z");

  // Pauli gates act trivially once phases are dropped.
  for (const char* g : {"X 0", "Y 0", "Z 0"})
    CHECK(circuit(1, g) == CliffordTableau::identity(1));
}

TEST_CASE("controlled-NOT image table") {
  const auto cx = circuit(2, "CX 0 1");
  const std::map<std::string, std::string> table{
      {"II", "II"}, {"XI", "XX"}, {"YI", "YX"}, {"ZI", "ZI"},
      {"IX", "IX"}, {"XX", "XI"}, {"YX", "YI"}, {"ZX", "ZX"},
      {"IY", "ZY"}, {"XY", "YZ"}, {"YY", "XZ"}, {"ZY", "IY"},
      {"IZ", "ZZ"}, {"XZ", "YY"}, {"YZ", "XY"}, {"ZZ", "IZ"},
  };
  for (const auto& [src, dst] : table)
    CHECK(cx.conjugate(PauliString::parse(src)).str() == dst);
}

TEST_CASE("controlled-Z images and a swap circuit") {
  const auto cz = circuit(2, "CZ 0 1");
  CHECK(image(cz, "XI").str() == "XZ");
  CHECK(image(cz, "IX").str() == "ZX");
  CHECK(image(cz, "ZI").str() == "ZI");
  CHECK(image(cz, "IZ").str() == "IZ");
  CHECK(cz == circuit(2, "CZ 1 0"));  // symmetric

  const auto swap = circuit(2, "CX 0 1\nCX 1 0\nCX 0 1");
  CHECK(image(swap, "XI").str() == "IX");
  CHECK(image(swap, "ZI").str() == "IZ");
  CHECK(image(swap, "YZ").str() == "ZY");
}

TEST_CASE("composition applies the right operand first") {
  const auto h0 = circuit(2, "H 0");
  const auto cx = circuit(2, "CX 0 1");
  CHECK(compose(cx, h0) == circuit(2, "H 0\nCX 0 1"));
  CHECK(compose(h0, cx) == circuit(2, "CX 0 1\nH 0"));
  CHECK(compose(cx, cx) == CliffordTableau::identity(2));

  const auto c1 = random_clifford(3, 11);
  const auto c2 = random_clifford(3, 22);
  const auto both = compose(c1, c2);
  for (uint32_t idx = 0; idx < 64; ++idx) {
    const auto p = PauliString::from_index(3, idx);
    CHECK(both.conjugate(p) == c1.conjugate(c2.conjugate(p)));
  }
}

TEST_CASE("image rows determine the tableau and reject broken ones") {
  const auto cx = circuit(2, "CX 0 1");
  std::vector<PauliString> rows;
  for (const char* p : {"XI", "IX", "ZI", "IZ"})
    rows.push_back(cx.conjugate(PauliString::parse(p)));
  CHECK(CliffordTableau::from_images(2, rows) == cx);

  rows[1] = rows[0];  // duplicate image: not symplectic
  CHECK_THROWS_AS((void)CliffordTableau::from_images(2, rows),
                  std::invalid_argument);
}

TEST_CASE("keys round-trip and reject corruption") {
  for (int n = 1; n <= 4; ++n)
    for (uint64_t seed = 0; seed < 25; ++seed) {
      const auto t = random_clifford(n, seed);
      CHECK(t.preserves_commutation());
      CHECK(CliffordTableau::from_key(n, t.key()) == t);
    }
  CHECK_THROWS_AS((void)CliffordTableau::from_key(2, 0),
                  std::invalid_argument);
}

TEST_CASE("quotient enumeration and group orders") {
  CHECK(symplectic_order(1) == 6);
  CHECK(symplectic_order(2) == 720);
  CHECK(symplectic_order(3) == 1451520);
  CHECK(symplectic_order(4) == 47377612800ULL);

  for (int n : {1, 2}) {
    auto keys = enumerate_symplectic(n);
    CHECK(keys.size() == symplectic_order(n));
    CHECK(std::is_sorted(keys.begin(), keys.end()));
    CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
    for (uint64_t k : keys)
      CHECK(CliffordTableau::from_key(n, k).preserves_commutation());
    const uint64_t id_key = CliffordTableau::identity(n).key();
    CHECK(std::binary_search(keys.begin(), keys.end(), id_key));
  }
}

TEST_CASE("random tableaux are deterministic, valid, and spread out") {
  for (int n = 1; n <= 6; ++n) {
    const auto t = random_clifford(n, 42);
    CHECK(t == random_clifford(n, 42));
    CHECK(t.preserves_commutation());
    CHECK_FALSE(t == random_clifford(n, 43));
  }
  std::map<uint64_t, int> hits;
  for (uint64_t seed = 0; seed < 600; ++seed)
    ++hits[random_clifford(1, seed).key()];
  CHECK(hits.size() == 6);  // every class of the 6-element quotient appears
  for (const auto& [key, count] : hits) CHECK(count > 50);
}

TEST_CASE("synthesis rebuilds the tableau it factored") {
  for (int n = 1; n <= 4; ++n)
    for (uint64_t seed = 0; seed < 12; ++seed) {
      const auto t = random_clifford(n, seed);
      const auto gates = synthesize_gates(t);
      for (const auto& g : gates)
        CHECK((g.kind == GateKind::H || g.kind == GateKind::S ||
               g.kind == GateKind::CX || g.kind == GateKind::CZ));
      CHECK(CliffordTableau::from_gates(n, gates) == t);
    }
}

TEST_CASE("controlled-Pauli factories match explicit circuits") {
  CHECK(controlled_pauli(2, 0, PauliString::parse("X")) ==
        circuit(2, "CX 0 1"));
  CHECK(controlled_pauli(2, 0, PauliString::parse("Z")) ==
        circuit(2, "CZ 0 1"));
  CHECK(controlled_pauli(2, 1, PauliString::parse("X")) ==
        circuit(2, "CX 1 0"));
  CHECK(controlled_pauli(3, 0, PauliString::parse("XZ")) ==
        circuit(3, "CX 0 1\nCZ 0 2"));
  // Controlled-Y = S_target CX S_target^{-1}; S is an involution mod phase.
  const auto s1 = circuit(2, "S 1");
  const auto cy = compose(s1, compose(circuit(2, "CX 0 1"), s1));
  CHECK(controlled_pauli(2, 0, PauliString::parse("Y")) == cy);
}

TEST_CASE("tableau text form round-trips") {
  const auto cx = circuit(2, "CX 0 1");
  CHECK(parse_tableau("n=2\nXX\nIX\nZI\nZZ\n") == cx);
  for (int n = 1; n <= 3; ++n)
    for (uint64_t seed = 0; seed < 6; ++seed) {
      const auto t = random_clifford(n, seed);
      CHECK(parse_tableau(format_tableau(t)) == t);
    }
  CHECK_THROWS_AS((void)parse_tableau("n=2\nXX\nIX\nZI\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)parse_tableau("n=2\nXX\nXX\nZI\nZZ\n"),
                  std::invalid_argument);
}

TEST_CASE("extension embeds the identity on appended slots") {
  const auto ext = circuit(2, "CX 0 1").extended(1);
  CHECK(ext.qubits() == 3);
  CHECK(ext.conjugate(PauliString::parse("XII")).str() == "XXI");
  CHECK(ext.conjugate(PauliString::parse("IIX")).str() == "IIX");
  CHECK(ext.conjugate(PauliString::parse("ZIZ")).str() == "ZIZ");
}
