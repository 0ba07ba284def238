#pragma once

// Shared helpers for the test binaries: seeded random objects and slow,
// obviously-correct oracles that the library results are compared against.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "qcforge/bitvec.hpp"
#include "qcforge/lincode.hpp"
#include "qcforge/qc.hpp"

namespace qctest {

using namespace qcforge;
using Rng = std::mt19937_64;

inline BitVec random_bits(std::size_t n, Rng& rng) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1u);
  return v;
}

inline Gf4Vec random_gf4(std::size_t n, Rng& rng) {
  Gf4Vec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, Gf4(std::uint8_t(rng() & 3u)));
  return v;
}

/// Span of `rows` random vectors (the dimension may come out lower).
inline BinaryCode random_binary_code(std::size_t n, std::size_t rows, Rng& rng) {
  std::vector<BitVec> g;
  for (std::size_t i = 0; i < rows; ++i) g.push_back(random_bits(n, rng));
  return BinaryCode::from_rows(n, g);
}

inline QuaternaryCode random_quaternary_code(std::size_t n, std::size_t rows, Rng& rng) {
  std::vector<Gf4Vec> g;
  for (std::size_t i = 0; i < rows; ++i) g.push_back(random_gf4(n, rng));
  return QuaternaryCode::from_rows(n, g);
}

inline std::vector<std::size_t> random_perm(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Codeword for message bits `msg`, summed from scratch.
inline BitVec naive_word(const BinaryCode& c, std::uint64_t msg) {
  BitVec w(c.length());
  for (std::size_t r = 0; r < c.dimension(); ++r)
    if ((msg >> r) & 1u) w ^= c.rows()[r];
  return w;
}

inline std::vector<std::uint64_t> naive_wenum(const BinaryCode& c) {
  std::vector<std::uint64_t> a(c.length() + 1, 0);
  for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << c.dimension()); ++msg) ++a[naive_word(c, msg).weight()];
  return a;
}

inline std::vector<std::uint64_t> naive_wenum(const QuaternaryCode& c) {
  std::vector<std::uint64_t> a(c.length() + 1, 0);
  const std::size_t k = c.dimension();
  for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << (2 * k)); ++msg) {
    Gf4Vec w(c.length());
    for (std::size_t r = 0; r < k; ++r) w += c.rows()[r].scaled(Gf4(std::uint8_t((msg >> (2 * r)) & 3u)));
    ++a[w.weight()];
  }
  return a;
}

/// All codewords as a sorted set, for comparing codes without trusting RREF.
inline std::set<BitVec> codeword_set(const BinaryCode& c) {
  std::set<BitVec> s;
  for (std::uint64_t msg = 0; msg < (std::uint64_t{1} << c.dimension()); ++msg) s.insert(naive_word(c, msg));
  return s;
}

/// Random Euclidean self-dual binary code of even length n: repeatedly add a
/// random even-weight vector of C-perp not in C.
inline BinaryCode random_selfdual_binary(std::size_t n, Rng& rng) {
  BinaryCode c = BinaryCode::zero(n);
  while (c.dimension() < n / 2) {
    const BinaryCode dual = euclidean_dual(c);
    BitVec v(n);
    for (std::size_t r = 0; r < dual.dimension(); ++r)
      if (rng() & 1u) v ^= dual.rows()[r];
    if (v.weight() % 2 == 0 && !c.contains(v)) {
      std::vector<BitVec> rows = c.rows();
      rows.push_back(v);
      c = BinaryCode::from_rows(n, rows);
    }
  }
  return c;
}

inline QuaternaryCode random_selfdual_quaternary(std::size_t n, Rng& rng) {
  QuaternaryCode c = QuaternaryCode::zero(n);
  while (c.dimension() < n / 2) {
    const QuaternaryCode dual = hermitian_dual(c);
    Gf4Vec v(n);
    for (std::size_t r = 0; r < dual.dimension(); ++r) v += dual.rows()[r].scaled(Gf4(std::uint8_t(rng() & 3u)));
    if (v.hermitian(v).is_zero() && !c.contains(v)) {
      std::vector<Gf4Vec> rows = c.rows();
      rows.push_back(v);
      c = QuaternaryCode::from_rows(n, rows);
    }
  }
  return c;
}

// Every 3 x 6 reduced row-echelon matrix over GF(4), kept when its rows are
// pairwise Hermitian orthogonal (rows of a self-dual code of length 6).
inline std::size_t brute_selfdual_gf4_n6(std::size_t* rref_total) {
  const std::size_t n = 6;
  std::size_t count = 0, total = 0;
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    if (std::popcount(mask) != 3) continue;
    std::vector<std::size_t> piv;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) piv.push_back(i);
    // Free positions: in row r, columns right of piv[r] that are not pivots.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = piv[r] + 1; c < n; ++c)
        if (!((mask >> c) & 1u)) free.push_back({r, c});
    const std::uint64_t combos = std::uint64_t{1} << (2 * free.size());
    for (std::uint64_t v = 0; v < combos; ++v) {
      ++total;
      Gf4 m[3][6] = {};
      for (std::size_t r = 0; r < 3; ++r) m[r][piv[r]] = Gf4::one();
      for (std::size_t f = 0; f < free.size(); ++f) m[free[f].first][free[f].second] = Gf4(std::uint8_t((v >> (2 * f)) & 3u));
      bool ok = true;
      for (std::size_t a = 0; a < 3 && ok; ++a)
        for (std::size_t b = a; b < 3 && ok; ++b) {
          Gf4 s = Gf4::zero();
          for (std::size_t c = 0; c < n; ++c) s = s + m[a][c] * m[b][c].conj();
          ok = s.is_zero();
        }
      count += ok;
    }
  }
  *rref_total = total;
  return count;
}

}  // namespace qctest
