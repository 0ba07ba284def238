#include <algorithm>
#include <array>
#include <bit>
#include <vector>

#include "qcforge/kernels.hpp"

namespace qcforge::kernels::scalar {
namespace {

constexpr std::uint64_t kCancelPoll = 1u << 14;

inline std::uint64_t gray(std::uint64_t i) { return i ^ (i >> 1); }

// Codeword at Gray index i, written to out[0..stride).
void seed_word(const GrayBasis& b, std::uint64_t i, std::uint64_t* out) {
  const std::size_t stride = b.stride();
  std::fill(out, out + stride, 0);
  std::uint64_t g = gray(i);
  while (g) {
    const std::size_t r = std::size_t(std::countr_zero(g));
    g &= g - 1;
    const std::uint64_t* row = b.rows.data() + r * stride;
    for (std::size_t w = 0; w < stride; ++w) out[w] ^= row[w];
  }
}

// W = words per plane, P = planes; W == 0 means runtime width.
template <std::size_t W, std::size_t P>
struct Walker {
  const GrayBasis& b;
  std::size_t words() const { return W ? W : b.words; }

  std::uint32_t weight(const std::uint64_t* cur) const {
    std::uint32_t w = 0;
    const std::size_t n = words();
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t x = cur[i];
      if constexpr (P == 2) x |= cur[n + i];
      w += std::uint32_t(std::popcount(x));
    }
    return w;
  }

  void step(std::uint64_t* cur, std::uint64_t i) const {
    const std::size_t stride = words() * P;
    const std::uint64_t* row = b.rows.data() + std::size_t(std::countr_zero(i)) * stride;
    for (std::size_t w = 0; w < stride; ++w) cur[w] ^= row[w];
  }

  void histogram(std::uint64_t begin, std::uint64_t end, std::span<std::uint64_t> hist) const {
    if (begin >= end) return;
    std::vector<std::uint64_t> cur(b.stride());
    seed_word(b, begin, cur.data());
    ++hist[weight(cur.data())];
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      step(cur.data(), i);
      ++hist[weight(cur.data())];
    }
  }

  MinWeight min(std::uint64_t begin, std::uint64_t end, std::uint32_t stop_at,
                const std::atomic<bool>* cancel) const {
    MinWeight res;
    if (begin >= end) return res;
    std::vector<std::uint64_t> cur(b.stride());
    seed_word(b, begin, cur.data());
    auto visit = [&](std::uint64_t i) {
      if (i == 0) return false;  // the zero codeword
      const std::uint32_t w = weight(cur.data());
      if (w < res.weight) res.weight = w;
      return w <= stop_at;
    };
    if (visit(begin)) {
      res.stopped = true;
      return res;
    }
    for (std::uint64_t i = begin + 1; i < end; ++i) {
      step(cur.data(), i);
      if (visit(i)) {
        res.stopped = true;
        return res;
      }
      if (cancel && (i % kCancelPoll) == 0 && cancel->load(std::memory_order_relaxed)) return res;
    }
    return res;
  }
};

template <class F>
auto with_walker(const GrayBasis& b, F&& f) {
  if (b.planes == 1) {
    switch (b.words) {
      case 1: return f(Walker<1, 1>{b});
      case 2: return f(Walker<2, 1>{b});
      default: return f(Walker<0, 1>{b});
    }
  }
  switch (b.words) {
    case 1: return f(Walker<1, 2>{b});
    case 2: return f(Walker<2, 2>{b});
    default: return f(Walker<0, 2>{b});
  }
}

}  // namespace

void weight_histogram(const GrayBasis& basis, std::uint64_t begin, std::uint64_t end,
                      std::span<std::uint64_t> hist) {
  with_walker(basis, [&](const auto& w) { w.histogram(begin, end, hist); });
}

MinWeight min_weight(const GrayBasis& basis, std::uint64_t begin, std::uint64_t end, std::uint32_t stop_at,
                     const std::atomic<bool>* cancel) {
  return with_walker(basis, [&](const auto& w) { return w.min(begin, end, stop_at, cancel); });
}

}  // namespace qcforge::kernels::scalar
