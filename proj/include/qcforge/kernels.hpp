#pragma once

// Gray-code codeword enumeration kernels.
//
// A basis of k generator rows spans 2^k codewords. Walking the reflected
// binary Gray code over the k information bits visits every codeword with one
// row XOR per step; the weight of each visited word is taken with a popcount.
//
// Two implementations exist: a portable scalar reference and an AVX2 variant
// that fixes the top two information bits per 64-bit lane and walks the Gray
// code over the remaining k - 2 bits, four codewords per step. Both visit the
// same multiset of codewords, so histograms and exact minima agree bit for bit
// (the equivalence is covered by tests). The variant is chosen at runtime.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

namespace qcforge::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
/// True when the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa);
/// Best available variant, unless QCFORGE_ISA=scalar forces the reference.
Isa active_isa();

/// k rows of `planes * words` 64-bit words each. For planes == 2 a row holds
/// the 1-plane words followed by the w-plane words of a GF(4) vector, and the
/// weight of a word is popcount(plane0 | plane1).
struct GrayBasis {
  std::span<const std::uint64_t> rows;
  std::size_t k = 0;
  std::size_t words = 1;
  std::size_t planes = 1;

  std::size_t stride() const { return words * planes; }
};

/// Number of Gray steps the variant walks; ranges passed to the kernels are
/// sub-ranges of [0, domain_size). Each step covers 2^k / domain_size codewords.
std::uint64_t domain_size(const GrayBasis& basis, Isa isa);

/// Adds the weights of all codewords in the step range [begin, end) into
/// hist (which must have at least words * 64 + 1 entries).
void weight_histogram(const GrayBasis& basis, Isa isa, std::uint64_t begin, std::uint64_t end,
                      std::span<std::uint64_t> hist);

inline constexpr std::uint32_t kNoWeight = std::numeric_limits<std::uint32_t>::max();

struct MinWeight {
  /// Minimum nonzero-codeword weight seen, kNoWeight if none.
  std::uint32_t weight = kNoWeight;
  /// True when the walk stopped early on a word of weight <= stop_at.
  bool stopped = false;
};

/// Minimum weight over nonzero codewords in [begin, end). If stop_at > 0 the
/// walk returns as soon as a word of weight <= stop_at is seen. `cancel`, if
/// given, is polled periodically and aborts the walk when set.
MinWeight min_weight(const GrayBasis& basis, Isa isa, std::uint64_t begin, std::uint64_t end,
                     std::uint32_t stop_at = 0, const std::atomic<bool>* cancel = nullptr);

namespace scalar {
void weight_histogram(const GrayBasis& basis, std::uint64_t begin, std::uint64_t end,
                      std::span<std::uint64_t> hist);
MinWeight min_weight(const GrayBasis& basis, std::uint64_t begin, std::uint64_t end, std::uint32_t stop_at,
                     const std::atomic<bool>* cancel);
}  // namespace scalar

namespace avx2 {
/// False when the row layout is outside what the AVX2 path handles
/// (k < 2 or more than 4 words per plane); callers fall back to scalar.
bool supports(const GrayBasis& basis);
void weight_histogram(const GrayBasis& basis, std::uint64_t begin, std::uint64_t end,
                      std::span<std::uint64_t> hist);
MinWeight min_weight(const GrayBasis& basis, std::uint64_t begin, std::uint64_t end, std::uint32_t stop_at,
                     const std::atomic<bool>* cancel);
}  // namespace avx2

}  // namespace qcforge::kernels
