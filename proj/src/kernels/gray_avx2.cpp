// AVX2 Gray-code walk: four codewords per step, one per 64-bit lane.
//
// Lane L holds (low word) ^ (offset L), where the offsets are the four
// combinations of the top two basis rows and the low word walks the Gray code
// over the first k - 2 rows. Popcounts use the nibble lookup (vpshufb) and a
// byte sum (vpsadbw); AVX2 has no native 64-bit popcount.
//
// Only functions carrying QCF_AVX2 execute AVX2 instructions, and they are
// reached solely through the runtime dispatch in dispatch.cpp.

#include <array>
#include <bit>

#include "qcforge/kernels.hpp"

#if defined(QCFORGE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
#include <immintrin.h>
#define QCF_AVX2 __attribute__((target("avx2,popcnt")))

namespace qcforge::kernels::avx2 {
namespace {

constexpr std::size_t kMaxWords = 4;
constexpr std::uint64_t kCancelPoll = 1u << 14;

inline std::uint64_t gray(std::uint64_t i) { return i ^ (i >> 1); }

QCF_AVX2 inline __m256i popcount_bytes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i nibble = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, nibble);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), nibble);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
}

template <std::size_t W, std::size_t P>
struct Lanes {
  static constexpr std::size_t S = W * P;
  __m256i v[S];

  QCF_AVX2 void seed(const GrayBasis& b, std::uint64_t begin) {
    const std::size_t low_rows = b.k - 2;
    const std::uint64_t* rows = b.rows.data();
    const std::uint64_t* top0 = rows + low_rows * S;
    const std::uint64_t* top1 = rows + (low_rows + 1) * S;
    std::uint64_t low[S] = {};
    for (std::uint64_t g = gray(begin); g; g &= g - 1) {
      const std::uint64_t* row = rows + std::size_t(std::countr_zero(g)) * S;
      for (std::size_t w = 0; w < S; ++w) low[w] ^= row[w];
    }
    for (std::size_t w = 0; w < S; ++w)
      v[w] = _mm256_set_epi64x(std::int64_t(low[w] ^ top0[w] ^ top1[w]), std::int64_t(low[w] ^ top1[w]),
                               std::int64_t(low[w] ^ top0[w]), std::int64_t(low[w]));
  }

  QCF_AVX2 void step(const std::uint64_t* rows, std::uint64_t i) {
    const std::uint64_t* row = rows + std::size_t(std::countr_zero(i)) * S;
    for (std::size_t w = 0; w < S; ++w)
      v[w] = _mm256_xor_si256(v[w], _mm256_set1_epi64x(std::int64_t(row[w])));
  }

  // Per-lane weights in the low 32 bits of each 64-bit lane.
  QCF_AVX2 __m256i weights() const {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t w = 0; w < W; ++w) {
      __m256i x = v[w];
      if constexpr (P == 2) x = _mm256_or_si256(x, v[W + w]);
      acc = _mm256_add_epi8(acc, popcount_bytes(x));
    }
    return _mm256_sad_epu8(acc, _mm256_setzero_si256());
  }
};

template <std::size_t W, std::size_t P>
QCF_AVX2 void histogram_impl(const GrayBasis& b, std::uint64_t begin, std::uint64_t end,
                             std::span<std::uint64_t> hist) {
  if (begin >= end) return;
  constexpr std::size_t kBins = 64 * W + 1;
  // One histogram per lane so consecutive increments do not serialize.
  std::array<std::array<std::uint64_t, kBins>, 4> local{};
  Lanes<W, P> lanes;
  lanes.seed(b, begin);
  const std::uint64_t* rows = b.rows.data();
  alignas(32) std::uint64_t c[4];
  for (std::uint64_t i = begin; i < end; ++i) {
    if (i != begin) lanes.step(rows, i);
    _mm256_store_si256(reinterpret_cast<__m256i*>(c), lanes.weights());
    ++local[0][c[0]];
    ++local[1][c[1]];
    ++local[2][c[2]];
    ++local[3][c[3]];
  }
  for (std::size_t bin = 0; bin < kBins && bin < hist.size(); ++bin)
    hist[bin] += local[0][bin] + local[1][bin] + local[2][bin] + local[3][bin];
}

template <std::size_t W, std::size_t P>
QCF_AVX2 MinWeight min_impl(const GrayBasis& b, std::uint64_t begin, std::uint64_t end, std::uint32_t stop_at,
                            const std::atomic<bool>* cancel) {
  MinWeight res;
  if (begin >= end) return res;
  Lanes<W, P> lanes;
  lanes.seed(b, begin);
  const std::uint64_t* rows = b.rows.data();
  // Signed 32-bit compares: weights never exceed 256, the zero word is masked
  // to INT32_MAX, and the upper halves of every lane are zero on both sides.
  const __m256i threshold = _mm256_set1_epi64x(std::int64_t(stop_at) + 1);
  const __m256i zero_word_mask = _mm256_set_epi64x(0, 0, 0, 0x7fffffff);
  __m256i best = _mm256_set1_epi64x(0x7fffffff);
  bool stopped = false;
  for (std::uint64_t i = begin; i < end; ++i) {
    if (i != begin) lanes.step(rows, i);
    __m256i w = lanes.weights();
    if (i == 0) w = _mm256_or_si256(w, zero_word_mask);
    best = _mm256_min_epu32(best, w);
    if (stop_at && _mm256_movemask_epi8(_mm256_cmpgt_epi32(threshold, w))) {
      stopped = true;
      break;
    }
    if (cancel && (i % kCancelPoll) == 0 && cancel->load(std::memory_order_relaxed)) break;
  }
  alignas(32) std::uint64_t c[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(c), best);
  for (std::uint64_t x : c)
    if (x < 0x7fffffff && x < res.weight) res.weight = std::uint32_t(x);
  res.stopped = stopped;
  return res;
}

template <class Hist, class Min>
struct Table {
  Hist hist;
  Min min;
};

template <std::size_t W, std::size_t P>
constexpr auto entry() {
  return Table<decltype(&histogram_impl<1, 1>), decltype(&min_impl<1, 1>)>{&histogram_impl<W, P>,
                                                                         &min_impl<W, P>};
}

constexpr std::array<std::array<Table<decltype(&histogram_impl<1, 1>), decltype(&min_impl<1, 1>)>, kMaxWords>, 2>
    kTable = {{{entry<1, 1>(), entry<2, 1>(), entry<3, 1>(), entry<4, 1>()},
               {entry<1, 2>(), entry<2, 2>(), entry<3, 2>(), entry<4, 2>()}}};

}  // namespace

bool supports(const GrayBasis& basis) {
  return basis.k >= 2 && basis.words >= 1 && basis.words <= kMaxWords && (basis.planes == 1 || basis.planes == 2);
}

void weight_histogram(const GrayBasis& basis, std::uint64_t begin, std::uint64_t end,
                      std::span<std::uint64_t> hist) {
  kTable[basis.planes - 1][basis.words - 1].hist(basis, begin, end, hist);
}

MinWeight min_weight(const GrayBasis& basis, std::uint64_t begin, std::uint64_t end, std::uint32_t stop_at,
                     const std::atomic<bool>* cancel) {
  return kTable[basis.planes - 1][basis.words - 1].min(basis, begin, end, stop_at, cancel);
}

}  // namespace qcforge::kernels::avx2

#else

namespace qcforge::kernels::avx2 {

bool supports(const GrayBasis&) { return false; }
void weight_histogram(const GrayBasis&, std::uint64_t, std::uint64_t, std::span<std::uint64_t>) {}
MinWeight min_weight(const GrayBasis&, std::uint64_t, std::uint64_t, std::uint32_t, const std::atomic<bool>*) {
  return {};
}

}  // namespace qcforge::kernels::avx2

#endif
