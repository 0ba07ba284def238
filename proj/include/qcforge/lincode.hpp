#pragma once

// Linear codes over GF(2) and GF(4): canonical generator matrices, duals,
// self-duality, cyclic codes, and the Gray-code weight/distance kernels.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcforge/bitvec.hpp"
#include "qcforge/gf.hpp"
#include "qcforge/kernels.hpp"

namespace qcforge {

enum class Field { GF2, GF4 };
enum class InnerProduct { Euclidean, Hermitian };
enum class SelfDualType { TypeI, TypeII, NotSelfDual };

const char* to_string(SelfDualType t);

/// Binary linear [n, k] code held by its reduced row-echelon generator matrix.
/// Row i has its leading 1 at pivots()[i] and zeros in every other pivot
/// column, so two codes are equal iff their representations are identical.
class BinaryCode {
 public:
  BinaryCode() = default;
  static BinaryCode zero(std::size_t n);
  static BinaryCode full(std::size_t n);
  /// Row-reduces; dependent rows are dropped. Every row must have length n.
  static BinaryCode from_rows(std::size_t n, std::span<const BitVec> rows);

  std::size_t length() const { return n_; }
  std::size_t dimension() const { return rows_.size(); }
  const std::vector<BitVec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// v reduced against the basis; zero iff v is a codeword.
  BitVec reduce(BitVec v) const;
  bool contains(const BitVec& v) const { return reduce(v).is_zero(); }
  /// Row-major packed words of the generator matrix (words_for(n) per row).
  std::vector<std::uint64_t> packed_rows() const;

  friend bool operator==(const BinaryCode&, const BinaryCode&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<BitVec> rows_;
  std::vector<std::size_t> pivots_;
};

/// Linear code over GF(4), reduced row-echelon with leading entries equal to 1.
class QuaternaryCode {
 public:
  QuaternaryCode() = default;
  static QuaternaryCode zero(std::size_t n);
  static QuaternaryCode full(std::size_t n);
  /// GF(4)-span of the rows.
  static QuaternaryCode from_rows(std::size_t n, std::span<const Gf4Vec> rows);

  std::size_t length() const { return n_; }
  std::size_t dimension() const { return rows_.size(); }
  const std::vector<Gf4Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  Gf4Vec reduce(Gf4Vec v) const;
  bool contains(const Gf4Vec& v) const { return reduce(v).is_zero(); }
  /// The 2k binary generators g_i, w g_i, each packed as [1-plane | w-plane].
  std::vector<std::uint64_t> packed_binary_generators() const;

  friend bool operator==(const QuaternaryCode&, const QuaternaryCode&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Gf4Vec> rows_;
  std::vector<std::size_t> pivots_;
};

BinaryCode euclidean_dual(const BinaryCode& c);
/// Dual under sum_j x_j y_j over GF(4).
QuaternaryCode euclidean_dual(const QuaternaryCode& c);
/// Dual under sum_j x_j conj(y_j); equals the conjugate of the Euclidean dual.
QuaternaryCode hermitian_dual(const QuaternaryCode& c);
/// Coordinate-wise conjugate code.
QuaternaryCode conjugate(const QuaternaryCode& c);

bool is_self_dual(const BinaryCode& c);
bool is_self_dual(const QuaternaryCode& c);
/// Throws PreconditionError for Hermitian on binary or Euclidean on GF(4).
bool is_self_dual(const BinaryCode& c, InnerProduct ip);
bool is_self_dual(const QuaternaryCode& c, InnerProduct ip);

/// Cyclic code of length n generated by g, which must divide Y^n - 1.
BinaryCode cyclic_code(const PolyF2& g, std::size_t n);

/// Coordinate permutation: coordinate i of the input moves to perm[i].
BitVec permute(const BitVec& v, std::span<const std::size_t> perm);
BinaryCode permute(const BinaryCode& c, std::span<const std::size_t> perm);
Gf4Vec permute(const Gf4Vec& v, std::span<const std::size_t> perm);
QuaternaryCode permute(const QuaternaryCode& c, std::span<const std::size_t> perm);

/// Counts A_0..A_n of codewords by Hamming weight. A capped enumerator
/// records only i <= cap; entries above the cap are zero and unknown.
class WeightEnumerator {
 public:
  WeightEnumerator() = default;
  WeightEnumerator(std::size_t n, std::vector<std::uint64_t> coeffs, std::optional<std::size_t> cap = std::nullopt);

  std::size_t length() const { return n_; }
  const std::vector<std::uint64_t>& coefficients() const { return a_; }
  std::uint64_t operator[](std::size_t i) const { return i < a_.size() ? a_[i] : 0; }
  std::optional<std::size_t> cap() const { return cap_; }
  bool complete() const { return !cap_.has_value(); }
  /// Highest weight whose count is known.
  std::size_t known_through() const { return cap_ ? *cap_ : n_; }
  /// Smallest i > 0 with A_i != 0 among known weights.
  std::optional<std::size_t> min_distance() const;
  std::uint64_t total() const;

  /// "i:A_i" pairs, ascending, zeros omitted.
  std::string to_string() const;
  static WeightEnumerator parse(std::string_view text, std::size_t n);

  friend bool operator==(const WeightEnumerator&, const WeightEnumerator&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> a_;
  std::optional<std::size_t> cap_;
};

struct EnumOptions {
  /// Worker threads; 0 = hardware concurrency capped by QCFORGE_THREADS.
  unsigned threads = 0;
  /// Largest number of binary information bits enumerated (2^bits codewords).
  std::size_t max_info_bits = 33;
  /// Kernel variant; defaults to kernels::active_isa().
  std::optional<kernels::Isa> isa;
  /// When set, the basis is shuffled (and recombined) with this seed before
  /// the walk, which changes the visiting order but not the result set.
  std::optional<std::uint64_t> order_seed;
};

/// Number of workers for a request (see EnumOptions::threads).
unsigned resolve_threads(unsigned requested);

struct DistanceResult {
  std::size_t weight = 0;
  /// True when an early stop fired: weight is only an upper bound on d.
  bool bound_only = false;
};

/// Exact minimum distance by Gray-code enumeration. With early_stop, returns
/// as soon as a codeword of weight <= *early_stop is seen (bound_only = true).
DistanceResult min_distance(const BinaryCode& c, std::optional<std::size_t> early_stop = std::nullopt,
                            const EnumOptions& opts = {});
DistanceResult min_distance(const QuaternaryCode& c, std::optional<std::size_t> early_stop = std::nullopt,
                            const EnumOptions& opts = {});

WeightEnumerator weight_enumerator(const BinaryCode& c, std::optional<std::size_t> cap = std::nullopt,
                                   const EnumOptions& opts = {});
WeightEnumerator weight_enumerator(const QuaternaryCode& c, std::optional<std::size_t> cap = std::nullopt,
                                   const EnumOptions& opts = {});

SelfDualType classify_type(const WeightEnumerator& w, bool self_dual);

/// Indices i with m not dividing i and m not dividing A_i (i within the known
/// range of w). m must be prime.
std::vector<std::pair<std::size_t, std::uint64_t>> check_divisibility(const WeightEnumerator& w, unsigned m);

bool is_prime(unsigned m);

}  // namespace qcforge
