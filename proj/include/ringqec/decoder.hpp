#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ringqec/code.hpp"
#include "ringqec/errors.hpp"
#include "ringqec/syndrome_sim.hpp"

namespace ringqec {

inline constexpr std::uint64_t kDefaultTableBudget = 20'000'000;

/// Lookup-table decoder core: syndrome -> (logical coset, weight) of a
/// minimum-weight error producing that syndrome.
struct DecodeTable {
  Family family = Family::linear;
  int distance = 0;
  std::size_t n = 0;
  int w_max = 0;

  struct Entry {
    std::uint8_t coset;   // LogicalCoset bit encoding of the stored error
    std::uint8_t weight;
  };
  std::unordered_map<std::uint64_t, Entry> entries;

  const Entry* find(std::uint64_t syndrome) const {
    auto it = entries.find(syndrome);
    return it == entries.end() ? nullptr : &it->second;
  }
};

/// Breadth-first by weight w = 0..w_max over all Pauli errors; first writer
/// wins per syndrome. Within a weight, enumeration is lexicographic in qubit
/// indices, then letters X < Y < Z, which pins the tie-break deterministically.
inline DecodeTable build_table(const StabilizerCode& code, int w_max,
                               std::uint64_t budget = kDefaultTableBudget) {
  if (code.n > 64)
    throw BuildError("decode table requires n <= 64, got n=" + std::to_string(code.n));
  if (w_max < 0) throw BuildError("w_max must be >= 0");
  const std::uint64_t required = enumeration_count(code.n, w_max);
  if (required > budget) {
    int suggested = w_max;
    while (suggested > 0 && enumeration_count(code.n, suggested) > budget) --suggested;
    throw BudgetError("build_table for " + std::string(family_name(code.family)) + " d=" +
                          std::to_string(code.distance) + " at w_max=" + std::to_string(w_max) +
                          " needs " + std::to_string(required) + " enumerations (budget " +
                          std::to_string(budget) + "); largest affordable w_max is " +
                          std::to_string(suggested),
                      required, suggested);
  }

  DecodeTable table;
  table.family = code.family;
  table.distance = code.distance;
  table.n = code.n;
  table.w_max = w_max;
  table.entries.reserve(static_cast<std::size_t>(required));

  detail::enumerate_errors(code.n, w_max, [&](const PauliOperator& e, int w) {
    const std::uint64_t s = syndrome_of(code, e).low64();
    table.entries.try_emplace(s, DecodeTable::Entry{logical_frame_bits(code, e),
                                                    static_cast<std::uint8_t>(w)});
  });
  return table;
}

/// Syndrome changes: s^i_1 = 0, s^i_j = m^i_j XOR m^i_{j-1} for j >= 2.
inline SyndromeRecord difference(const SyndromeRecord& record) {
  if (record.m < 1) throw DimensionError("difference: need at least one cycle");
  SyndromeRecord s;
  s.resize(record.m, record.n);
  for (std::size_t j = 1; j < record.m; ++j) s.rows[j] = record.rows[j] ^ record.rows[j - 1];
  return s;
}

/// Single left-to-right pass: whenever rows j and j+1 are both nonzero,
/// translate row j into row j+1 and zero row j. The pass deliberately
/// cascades across runs of nonzero rows, leaving the run's XOR in its last
/// row; this mirrors the decoder's published loop exactly.
inline SyndromeRecord merge_rounds(SyndromeRecord s) {
  for (std::size_t j = 0; j + 1 < s.m; ++j) {
    if (s.rows[j] != 0 && s.rows[j + 1] != 0) {
      s.rows[j + 1] ^= s.rows[j];
      s.rows[j] = 0;
    }
  }
  return s;
}

/// Decoder output for one trial. corrections[j] is the cumulative logical
/// correction after processing merged rounds 0..j; explained[j] is the XOR of
/// the looked-up rows so far (the syndrome the corrections account for).
struct DecodeResult {
  std::vector<LogicalCoset> corrections;
  std::vector<std::uint8_t> correction_frame;  // same as corrections, bit form
  std::vector<std::uint64_t> explained;
  std::uint64_t misses = 0;
};

inline void decode_into(DecodeResult& out, const DecodeTable& table, const SyndromeRecord& record) {
  if (record.n != table.n) throw DimensionError("decode: record width does not match table");
  const SyndromeRecord merged = merge_rounds(difference(record));
  out.corrections.assign(record.m, LogicalCoset::I);
  out.correction_frame.assign(record.m, 0);
  out.explained.assign(record.m, 0);
  out.misses = 0;
  std::uint8_t frame = 0;
  std::uint64_t explained = 0;
  for (std::size_t j = 0; j < merged.m; ++j) {
    const std::uint64_t row = merged.rows[j];
    if (row != 0) {
      if (const auto* e = table.find(row)) {
        frame ^= e->coset;
        explained ^= row;
      } else {
        ++out.misses;  // unknown syndrome: identity correction, counted
      }
    }
    out.correction_frame[j] = frame;
    out.corrections[j] = coset_from_bits(frame);
    out.explained[j] = explained;
  }
}

inline DecodeResult decode(const DecodeTable& table, const SyndromeRecord& record) {
  DecodeResult out;
  decode_into(out, table, record);
  return out;
}

// ---- table file format -----------------------------------------------------
// Little-endian. Header: magic "RQLT", u32 version, u8 family, i32 distance,
// u64 n, i32 w_max, u64 entry count; then per entry (sorted by syndrome):
// u64 syndrome, u8 coset bits, u8 weight.

namespace detail {

template <typename T>
void write_le(std::ostream& os, T v) {
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char*>(buf), sizeof(T));
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace detail

inline void save_table(const DecodeTable& table, std::ostream& os) {
  os.write("RQLT", 4);
  detail::write_le<std::uint32_t>(os, 1);
  detail::write_le<std::uint8_t>(os, static_cast<std::uint8_t>(table.family));
  detail::write_le<std::int32_t>(os, table.distance);
  detail::write_le<std::uint64_t>(os, table.n);
  detail::write_le<std::int32_t>(os, table.w_max);
  detail::write_le<std::uint64_t>(os, table.entries.size());
  std::vector<std::uint64_t> keys;
  keys.reserve(table.entries.size());
  for (const auto& [k, v] : table.entries) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (auto k : keys) {
    const auto& e = table.entries.at(k);
    detail::write_le<std::uint64_t>(os, k);
    detail::write_le<std::uint8_t>(os, e.coset);
    detail::write_le<std::uint8_t>(os, e.weight);
  }
}

inline void save_table(const DecodeTable& table, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open table file for writing: " + path);
  save_table(table, os);
  if (!os) throw Error("write failed: " + path);
}

inline DecodeTable load_table(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "RQLT", 4) != 0) throw ParseError("not a decode table file");
  const auto version = detail::read_le<std::uint32_t>(is);
  if (version != 1) throw ParseError("unsupported table version " + std::to_string(version));
  DecodeTable t;
  t.family = static_cast<Family>(detail::read_le<std::uint8_t>(is));
  t.distance = detail::read_le<std::int32_t>(is);
  t.n = detail::read_le<std::uint64_t>(is);
  t.w_max = detail::read_le<std::int32_t>(is);
  const auto count = detail::read_le<std::uint64_t>(is);
  t.entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto syn = detail::read_le<std::uint64_t>(is);
    const auto coset = detail::read_le<std::uint8_t>(is);
    const auto w = detail::read_le<std::uint8_t>(is);
    t.entries.emplace(syn, DecodeTable::Entry{coset, w});
  }
  if (!is) throw ParseError("truncated decode table file");
  return t;
}

inline DecodeTable load_table(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open table file: " + path);
  return load_table(is);
}

/// Human-readable dump, sorted by syndrome: "syndrome_bits coset weight".
/// Syndrome bit i (ancilla i) is printed at string position i.
inline void dump_table_text(const DecodeTable& table, std::ostream& os) {
  os << "# family=" << family_name(table.family) << " d=" << table.distance << " n=" << table.n
     << " w_max=" << table.w_max << " entries=" << table.entries.size() << "\n";
  std::vector<std::uint64_t> keys;
  keys.reserve(table.entries.size());
  for (const auto& [k, v] : table.entries) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (auto k : keys) {
    const auto& e = table.entries.at(k);
    std::string bits(table.n, '0');
    for (std::size_t i = 0; i < table.n; ++i)
      if ((k >> i) & 1u) bits[i] = '1';
    os << bits << ' ' << coset_to_char(coset_from_bits(e.coset)) << ' ' << int(e.weight) << "\n";
  }
}

}  // namespace ringqec
