#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ringqec/errors.hpp"
#include "ringqec/pauli.hpp"

namespace ringqec {

enum class Family : std::uint8_t { linear = 0, cyclic = 1 };

inline const char* family_name(Family f) { return f == Family::linear ? "linear" : "cyclic"; }

inline Family parse_family(std::string_view s) {
  if (s == "linear") return Family::linear;
  if (s == "cyclic") return Family::cyclic;
  throw ParseError("unknown code family '" + std::string(s) + "' (expected linear|cyclic)");
}

/// Logical coset of the encoded qubit: Klein four-group under composition.
/// Encoding packs the anticommutation frame bits so composition is XOR:
/// bit0 = anticommutes with Z_L (X-like action), bit1 = anticommutes with X_L
/// (Z-like action). I=0, X=1, Z=2, Y=3.
enum class LogicalCoset : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline LogicalCoset coset_from_bits(std::uint8_t bits) { return static_cast<LogicalCoset>(bits & 3u); }
inline std::uint8_t coset_bits(LogicalCoset c) { return static_cast<std::uint8_t>(c); }
inline LogicalCoset coset_compose(LogicalCoset a, LogicalCoset b) {
  return coset_from_bits(coset_bits(a) ^ coset_bits(b));
}
inline char coset_to_char(LogicalCoset c) {
  switch (c) {
    case LogicalCoset::I: return 'I';
    case LogicalCoset::X: return 'X';
    case LogicalCoset::Z: return 'Z';
    case LogicalCoset::Y: return 'Y';
  }
  return '?';
}

/// One code instance: base generator, its n cyclic shifts, transversal logicals.
/// Validated at construction; instances are immutable afterwards.
struct StabilizerCode {
  Family family;
  int distance;
  std::size_t n;
  PauliOperator base;                     // g_0
  std::vector<PauliOperator> generators;  // g_i = rotate(g_0, i)
  PauliOperator logical_x, logical_y, logical_z;
};

namespace detail {

inline const std::unordered_map<int, std::string>& linear_bases() {
  static const std::unordered_map<int, std::string> bases = {
      {3, "ZXXZI"},
      {5, "ZIXXIZ" + std::string(7, 'I')},
      {7, "ZIIXXXXIIZ" + std::string(11, 'I')},
      {9, "ZXXIIXIIXIIXXZ" + std::string(15, 'I')},
      {11, "ZXXXIIIXIIXIIIXXXZ" + std::string(19, 'I')},
  };
  return bases;
}

inline StabilizerCode make_code(Family family, int d, const std::string& base_text) {
  StabilizerCode code;
  code.family = family;
  code.distance = d;
  code.base = parse_pauli(base_text);
  code.n = code.base.n;
  code.generators.reserve(code.n);
  for (std::size_t i = 0; i < code.n; ++i) code.generators.push_back(rotate(code.base, static_cast<long>(i)));
  code.logical_x = parse_pauli(std::string(code.n, 'X'));
  code.logical_y = parse_pauli(std::string(code.n, 'Y'));
  code.logical_z = parse_pauli(std::string(code.n, 'Z'));

  // Construction-time invariant checks. A failure here means the base string
  // itself is wrong, so it is reported as an internal consistency error.
  for (std::size_t i = 0; i < code.n; ++i)
    for (std::size_t j = i + 1; j < code.n; ++j)
      if (!commutes(code.generators[i], code.generators[j]))
        throw BuildError("internal consistency error: generators " + std::to_string(i) + "," +
                         std::to_string(j) + " anticommute for " + std::string(family_name(family)) +
                         " d=" + std::to_string(d));
  if (gf2_rank(code.generators) != code.n - 1)
    throw BuildError("internal consistency error: generator rank != n-1 for d=" + std::to_string(d));
  for (const auto& g : code.generators)
    if (!commutes(g, code.logical_x) || !commutes(g, code.logical_z) || !commutes(g, code.logical_y))
      throw BuildError("internal consistency error: logicals do not commute with generators");
  if (commutes(code.logical_x, code.logical_z))
    throw BuildError("internal consistency error: X_L and Z_L must anticommute");
  return code;
}

}  // namespace detail

/// Linear-scalable family, d in {3,5,7,9,11}.
inline StabilizerCode build_linear_code(int d) {
  const auto& bases = detail::linear_bases();
  auto it = bases.find(d);
  if (it == bases.end())
    throw BuildError("unsupported linear code distance " + std::to_string(d) +
                     " (supported: 3,5,7,9,11)");
  return detail::make_code(Family::linear, d, it->second);
}

/// Cyclic XZZX comparison family: n = (d^2+1)/2, base Z I^(t-1) X X I^(t-1) Z I^(n-2t-2).
inline StabilizerCode build_cyclic_code(int d) {
  if (d < 3 || d % 2 == 0)
    throw BuildError("cyclic code distance must be odd and >= 3, got " + std::to_string(d));
  const std::size_t n = (static_cast<std::size_t>(d) * static_cast<std::size_t>(d) + 1) / 2;
  const std::size_t t = static_cast<std::size_t>(d - 1) / 2;
  std::string base = "Z" + std::string(t - 1, 'I') + "XX" + std::string(t - 1, 'I') + "Z" +
                     std::string(n - 2 * t - 2, 'I');
  return detail::make_code(Family::cyclic, d, base);
}

inline StabilizerCode build_code(Family family, int d) {
  return family == Family::linear ? build_linear_code(d) : build_cyclic_code(d);
}

/// Syndrome bit i = 1 iff e anticommutes with generators[i].
inline BitVec syndrome_of(const StabilizerCode& code, const PauliOperator& e) {
  if (e.n != code.n) throw DimensionError("syndrome_of: operator size != code.n");
  BitVec s(code.n);
  for (std::size_t i = 0; i < code.n; ++i)
    if (!commutes(code.generators[i], e)) s.set(i);
  return s;
}

/// Anticommutation frame of an arbitrary Pauli against the logicals, packed as
/// the LogicalCoset bit encoding. Additive under multiplication, defined for
/// any p (not just normalizer elements).
inline std::uint8_t logical_frame_bits(const StabilizerCode& code, const PauliOperator& p) {
  std::uint8_t bits = 0;
  if (!commutes(p, code.logical_z)) bits |= 1u;  // X-like
  if (!commutes(p, code.logical_x)) bits |= 2u;  // Z-like
  return bits;
}

/// Coset of a normalizer element. Precondition: syndrome_of(code, p) is zero.
inline LogicalCoset coset_of(const StabilizerCode& code, const PauliOperator& p) {
  if (syndrome_of(code, p).any())
    throw Error("coset_of: operator has nonzero syndrome (not in the normalizer)");
  return coset_from_bits(logical_frame_bits(code, p));
}

/// Exact number of Pauli errors of weight 0..w_max on n qubits, saturating at
/// cap (so callers can compare against a budget without overflow).
inline std::uint64_t enumeration_count(std::size_t n, int w_max,
                                       std::uint64_t cap = UINT64_MAX) {
  std::uint64_t total = 0;
  for (int w = 0; w <= w_max; ++w) {
    // C(n, w) * 3^w, computed with saturation.
    long double c = 1.0L;
    for (int i = 0; i < w; ++i) c = c * static_cast<long double>(n - i) / static_cast<long double>(i + 1);
    for (int i = 0; i < w; ++i) c *= 3.0L;
    if (c > static_cast<long double>(cap) - static_cast<long double>(total)) return cap;
    total += static_cast<std::uint64_t>(c + 0.5L);
  }
  return total;
}

struct DistanceReport {
  int max_weight = 0;               // enumeration depth actually used
  std::uint64_t enumerated = 0;     // errors visited (including identity)
  std::uint64_t syndrome_classes = 0;
  std::uint64_t degenerate_pairs = 0;   // equal syndrome, coset-I product
  std::uint64_t coset_collisions = 0;   // equal syndrome, combined weight < d, coset != I
  std::optional<std::size_t> min_logical_weight;  // lightest non-identity-coset normalizer element seen
  bool passed = false;              // no coset collisions below distance
};

namespace detail {

/// Visit all weight-w qubit subsets x letter assignments in lexicographic
/// order (qubit indices ascending, letters X<Y<Z per position). f receives
/// (x bits, z bits) of the error via a scratch PauliOperator.
template <typename F>
void enumerate_errors(std::size_t n, int w_max, F&& f) {
  PauliOperator e = PauliOperator::identity(n);
  f(e, 0);
  static constexpr Letter kLetters[3] = {Letter::X, Letter::Y, Letter::Z};
  std::vector<std::size_t> qubits;
  std::vector<int> letters;
  for (int w = 1; w <= w_max; ++w) {
    qubits.assign(static_cast<std::size_t>(w), 0);
    for (int i = 0; i < w; ++i) qubits[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    letters.assign(static_cast<std::size_t>(w), 0);
    while (true) {
      // apply letters
      PauliOperator err = PauliOperator::identity(n);
      for (int i = 0; i < w; ++i) {
        const Letter l = kLetters[letters[static_cast<std::size_t>(i)]];
        err.x.set(qubits[static_cast<std::size_t>(i)], letter_x_bit(l));
        err.z.set(qubits[static_cast<std::size_t>(i)], letter_z_bit(l));
      }
      f(err, w);
      // next letter assignment (odometer, rightmost fastest)
      int pos = w - 1;
      while (pos >= 0 && letters[static_cast<std::size_t>(pos)] == 2) {
        letters[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos >= 0) {
        ++letters[static_cast<std::size_t>(pos)];
        continue;
      }
      // next qubit combination
      int k = w - 1;
      while (k >= 0 && qubits[static_cast<std::size_t>(k)] == n - static_cast<std::size_t>(w - k)) --k;
      if (k < 0) break;
      ++qubits[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < w; ++j)
        qubits[static_cast<std::size_t>(j)] = qubits[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace detail

/// Enumerate all errors of weight <= max_weight, bucket by syndrome, and check
/// that equal-syndrome pairs of combined weight < d differ by a stabilizer.
/// Also reports the lightest non-identity-coset normalizer element reachable
/// as a product of two enumerated errors (or directly, for zero-syndrome hits).
inline DistanceReport verify_distance(const StabilizerCode& code, int max_weight,
                                      std::uint64_t budget = 5'000'000) {
  const std::uint64_t required = enumeration_count(code.n, max_weight);
  if (required > budget)
    throw BudgetError("verify_distance at max_weight=" + std::to_string(max_weight) + " needs " +
                          std::to_string(required) + " enumerations, budget is " + std::to_string(budget),
                      required, max_weight - 1);

  struct Item {
    BitVec x, z;
    std::uint8_t bits;
    int weight;
  };
  std::unordered_map<BitVec, std::vector<Item>, BitVec::Hash> buckets;
  DistanceReport rep;
  rep.max_weight = max_weight;

  detail::enumerate_errors(code.n, max_weight, [&](const PauliOperator& e, int w) {
    ++rep.enumerated;
    BitVec s = syndrome_of(code, e);
    Item it{e.x, e.z, logical_frame_bits(code, e), w};
    if (!s.any() && it.bits != 0) {
      // direct normalizer hit with non-identity coset
      if (!rep.min_logical_weight || static_cast<std::size_t>(w) < *rep.min_logical_weight)
        rep.min_logical_weight = static_cast<std::size_t>(w);
    }
    buckets[std::move(s)].push_back(std::move(it));
  });

  rep.syndrome_classes = buckets.size();
  for (const auto& [syn, items] : buckets) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (std::size_t j = i + 1; j < items.size(); ++j) {
        const auto& a = items[i];
        const auto& b = items[j];
        if (a.bits == b.bits) {
          ++rep.degenerate_pairs;
          continue;
        }
        // product is a normalizer element with non-identity coset
        std::size_t pw = 0;
        for (std::size_t wd = 0; wd < a.x.words().size(); ++wd)
          pw += static_cast<std::size_t>(std::popcount((a.x.words()[wd] ^ b.x.words()[wd]) |
                                                       (a.z.words()[wd] ^ b.z.words()[wd])));
        if (a.weight + b.weight < code.distance) ++rep.coset_collisions;
        if (!rep.min_logical_weight || pw < *rep.min_logical_weight) rep.min_logical_weight = pw;
      }
    }
  }
  rep.passed = rep.coset_collisions == 0;
  return rep;
}

}  // namespace ringqec
