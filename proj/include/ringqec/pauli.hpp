#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ringqec/bitvec.hpp"
#include "ringqec/errors.hpp"

namespace ringqec {

/// Single-qubit Pauli letter. Encoding is (x bit, z bit): I=(0,0), X=(1,0),
/// Z=(0,1), Y=(1,1); the numeric value packs them as x | z<<1.
enum class Letter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline bool letter_x_bit(Letter l) { return static_cast<std::uint8_t>(l) & 1u; }
inline bool letter_z_bit(Letter l) { return static_cast<std::uint8_t>(l) & 2u; }

inline char letter_to_char(Letter l) {
  switch (l) {
    case Letter::I: return 'I';
    case Letter::X: return 'X';
    case Letter::Z: return 'Z';
    case Letter::Y: return 'Y';
  }
  return '?';
}

/// Phaseless n-qubit Pauli operator as paired X/Z bit-vectors.
/// Position 0 is the leftmost letter of the printed string.
struct PauliOperator {
  std::size_t n = 0;
  BitVec x;  // bit k set where X or Y acts
  BitVec z;  // bit k set where Z or Y acts

  static PauliOperator identity(std::size_t n) { return {n, BitVec(n), BitVec(n)}; }

  static PauliOperator single(std::size_t n, std::size_t pos, Letter l) {
    PauliOperator p = identity(n);
    p.x.set(pos, letter_x_bit(l));
    p.z.set(pos, letter_z_bit(l));
    return p;
  }

  Letter letter_at(std::size_t pos) const {
    return static_cast<Letter>((x.get(pos) ? 1u : 0u) | (z.get(pos) ? 2u : 0u));
  }

  bool operator==(const PauliOperator&) const = default;
};

inline PauliOperator parse_pauli(std::string_view text) {
  if (text.empty()) throw ParseError("empty Pauli string");
  PauliOperator p = PauliOperator::identity(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I': break;
      case 'X': p.x.set(i); break;
      case 'Z': p.z.set(i); break;
      case 'Y': p.x.set(i); p.z.set(i); break;
      default:
        throw ParseError("invalid Pauli character '" + std::string(1, text[i]) +
                         "' at position " + std::to_string(i));
    }
  }
  return p;
}

inline std::string to_string(const PauliOperator& p) {
  std::string s(p.n, 'I');
  for (std::size_t i = 0; i < p.n; ++i) s[i] = letter_to_char(p.letter_at(i));
  return s;
}

/// Phaseless product: elementwise XOR of the bit-vectors.
inline PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) {
  if (a.n != b.n) throw DimensionError("Pauli multiply: qubit counts differ");
  return {a.n, a.x ^ b.x, a.z ^ b.z};
}

/// True iff the symplectic form vanishes: parity(a.x & b.z) == parity(a.z & b.x).
inline bool commutes(const PauliOperator& a, const PauliOperator& b) {
  if (a.n != b.n) throw DimensionError("Pauli commutes: qubit counts differ");
  return !(BitVec::and_parity(a.x, b.z) ^ BitVec::and_parity(a.z, b.x));
}

/// Number of positions with a non-identity letter.
inline std::size_t weight(const PauliOperator& a) {
  std::size_t c = 0;
  for (std::size_t w = 0; w < a.x.words().size(); ++w)
    c += static_cast<std::size_t>(std::popcount(a.x.words()[w] | a.z.words()[w]));
  return c;
}

/// 1 + (last set position - first set position) of the support; 0 for identity.
inline std::size_t support_span(const PauliOperator& a) {
  long lo = -1, hi = -1;
  for (std::size_t i = 0; i < a.n; ++i) {
    if (a.x.get(i) || a.z.get(i)) {
      if (lo < 0) lo = static_cast<long>(i);
      hi = static_cast<long>(i);
    }
  }
  return lo < 0 ? 0 : static_cast<std::size_t>(hi - lo + 1);
}

/// Cyclic rotation on the ring: position p appears at (p + k) mod n. k may be
/// negative; it is taken mod n.
inline PauliOperator rotate(const PauliOperator& a, long k) {
  return {a.n, a.x.rotated(k), a.z.rotated(k)};
}

/// Rank over GF(2) of the 2n-column symplectic matrix with rows (x_bits || z_bits).
inline std::size_t gf2_rank(std::span<const PauliOperator> rows) {
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].n;
  std::vector<BitVec> sym;
  sym.reserve(rows.size());
  for (const auto& p : rows) {
    if (p.n != n) throw DimensionError("gf2_rank: mixed qubit counts");
    BitVec r(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (p.x.get(i)) r.set(i);
      if (p.z.get(i)) r.set(n + i);
    }
    sym.push_back(std::move(r));
  }
  return gf2_rank_rows(std::move(sym));
}

}  // namespace ringqec
