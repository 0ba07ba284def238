#pragma once

// Bit-packed vectors over GF(2) and GF(4). Coordinate i lives in word i / 64,
// bit i % 64. Bits past the logical length are always zero.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcforge/gf.hpp"

namespace qcforge {

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), words_(words_for(n), 0) {}
  BitVec(std::size_t n, std::span<const std::uint64_t> words);
  /// "0110": character i is coordinate i.
  static BitVec from_string(std::string_view s);

  std::size_t size() const { return n_; }
  std::size_t word_count() const { return words_.size(); }
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (v) words_[i / 64] |= mask; else words_[i / 64] &= ~mask;
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  std::size_t weight() const {
    std::size_t w = 0;
    for (std::uint64_t x : words_) w += std::size_t(std::popcount(x));
    return w;
  }
  bool is_zero() const {
    for (std::uint64_t x : words_) if (x) return false;
    return true;
  }
  /// Euclidean inner product over GF(2).
  bool dot(const BitVec& o) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += std::size_t(std::popcount(words_[i] & o.words_[i]));
    return c & 1u;
  }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;
  friend auto operator<=>(const BitVec&, const BitVec&) = default;

  /// Bits [offset, offset + len) as a new vector.
  BitVec slice(std::size_t offset, std::size_t len) const;
  /// Concatenation.
  static BitVec concat(std::span<const BitVec> parts);

  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Vector over GF(4) held as two planes: the 1-coefficient and the w-coefficient.
class Gf4Vec {
 public:
  Gf4Vec() = default;
  explicit Gf4Vec(std::size_t n) : ones_(n), ws_(n) {}
  Gf4Vec(BitVec ones, BitVec ws);
  /// Characters over {0,1,w,W}.
  static Gf4Vec from_string(std::string_view s);

  std::size_t size() const { return ones_.size(); }
  const BitVec& ones() const { return ones_; }
  const BitVec& ws() const { return ws_; }

  Gf4 get(std::size_t i) const { return Gf4(ones_.get(i), ws_.get(i)); }
  void set(std::size_t i, Gf4 v) {
    ones_.set(i, v.one_part());
    ws_.set(i, v.w_part());
  }

  std::size_t weight() const;
  bool is_zero() const { return ones_.is_zero() && ws_.is_zero(); }

  Gf4Vec& operator+=(const Gf4Vec& o) {
    ones_ ^= o.ones_;
    ws_ ^= o.ws_;
    return *this;
  }
  friend Gf4Vec operator+(Gf4Vec a, const Gf4Vec& b) { return a += b; }
  /// Scalar multiple.
  Gf4Vec scaled(Gf4 c) const;
  /// Coordinate-wise conjugation x -> x^2.
  Gf4Vec conj() const;
  /// Hermitian form sum_j x_j conj(y_j).
  Gf4 hermitian(const Gf4Vec& y) const;
  /// Euclidean form sum_j x_j y_j.
  Gf4 euclidean(const Gf4Vec& y) const;

  friend bool operator==(const Gf4Vec&, const Gf4Vec&) = default;
  friend auto operator<=>(const Gf4Vec&, const Gf4Vec&) = default;

  std::string to_string() const;

 private:
  BitVec ones_;
  BitVec ws_;
};

}  // namespace qcforge
