// Runtime selection between the scalar and AVX2 Gray-code kernels.

#include <cstdlib>
#include <string_view>

#include "qcforge/kernels.hpp"

namespace qcforge::kernels {

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(QCFORGE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  return supported;
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = [] {
    if (const char* env = std::getenv("QCFORGE_ISA"); env && std::string_view(env) == "scalar")
      return Isa::Scalar;
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return isa;
}

namespace {

bool use_avx2(const GrayBasis& b, Isa isa) { return isa == Isa::Avx2 && isa_available(isa) && avx2::supports(b); }

}  // namespace

std::uint64_t domain_size(const GrayBasis& basis, Isa isa) {
  return use_avx2(basis, isa) ? (std::uint64_t{1} << (basis.k - 2)) : (std::uint64_t{1} << basis.k);
}

void weight_histogram(const GrayBasis& basis, Isa isa, std::uint64_t begin, std::uint64_t end,
                      std::span<std::uint64_t> hist) {
  if (use_avx2(basis, isa)) avx2::weight_histogram(basis, begin, end, hist);
  else scalar::weight_histogram(basis, begin, end, hist);
}

MinWeight min_weight(const GrayBasis& basis, Isa isa, std::uint64_t begin, std::uint64_t end, std::uint32_t stop_at,
                     const std::atomic<bool>* cancel) {
  if (use_avx2(basis, isa)) return avx2::min_weight(basis, begin, end, stop_at, cancel);
  return scalar::min_weight(basis, begin, end, stop_at, cancel);
}

}  // namespace qcforge::kernels
