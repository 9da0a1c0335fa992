#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ringqec/errors.hpp"

namespace ringqec {

/// Fixed-length bit vector over 64-bit words. Bits beyond size() are kept zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  static BitVec from_u64(std::uint64_t bits, std::size_t nbits) {
    BitVec v(nbits);
    if (!v.words_.empty()) {
      v.words_[0] = bits;
      v.trim();
    }
    return v;
  }

  std::size_t size() const { return nbits_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool v = true) {
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }

  BitVec& operator^=(const BitVec& o) {
    if (o.nbits_ != nbits_) throw DimensionError("BitVec xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Index of the lowest set bit, or -1 if none.
  long lowest_set() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<long>(i * 64 + std::countr_zero(words_[i]));
    return -1;
  }

  /// Index of the highest set bit, or -1 if none.
  long highest_set() const {
    for (std::size_t i = words_.size(); i-- > 0;)
      if (words_[i]) return static_cast<long>(i * 64 + 63 - std::countl_zero(words_[i]));
    return -1;
  }

  /// Cyclic left rotation within the vector: bit p moves to (p + k) mod size.
  BitVec rotated(long k) const {
    if (nbits_ == 0) return *this;
    const long n = static_cast<long>(nbits_);
    k %= n;
    if (k < 0) k += n;
    if (k == 0) return *this;
    BitVec out(nbits_);
    for (std::size_t p = 0; p < nbits_; ++p)
      if (get(p)) out.set((p + static_cast<std::size_t>(k)) % nbits_);
    return out;
  }

  /// First word; convenience for the n <= 64 fast paths.
  std::uint64_t low64() const { return words_.empty() ? 0 : words_[0]; }

  std::span<const std::uint64_t> words() const { return words_; }

  bool operator==(const BitVec&) const = default;

  /// Parity of popcount(a & b). Inputs must have equal length.
  static bool and_parity(const BitVec& a, const BitVec& b) {
    if (a.nbits_ != b.nbits_) throw DimensionError("BitVec and_parity: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) acc ^= a.words_[i] & b.words_[i];
    return std::popcount(acc) & 1u;
  }

  std::string to_string01() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  struct Hash {
    std::size_t operator()(const BitVec& v) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
      for (auto w : v.words()) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 12) + (h >> 4);
        h *= 0xff51afd7ed558ccdull;
      }
      return static_cast<std::size_t>(h);
    }
  };

 private:
  void trim() {
    if (nbits_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (nbits_ % 64)) - 1;
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Rank over GF(2) of a list of equal-length rows. Destructive elimination on a copy.
inline std::size_t gf2_rank_rows(std::vector<BitVec> rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv].get(col)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r].get(col)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

}  // namespace ringqec
