// AVX2 variants of the bitset kernels; this TU is the only one compiled with
// -mavx2, and the dispatcher only calls in after a cpuid check.

#include <cstddef>
#include <cstdint>

#include <immintrin.h>

namespace grzh::kern::avx2 {

std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                         std::size_t nwords) {
  std::size_t c = 0, i = 0;
  alignas(32) std::uint64_t lanes[4];
  for (; i + 4 <= nwords; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), _mm256_and_si256(va, vb));
    c += static_cast<std::size_t>(_mm_popcnt_u64(lanes[0]) + _mm_popcnt_u64(lanes[1]) +
                                  _mm_popcnt_u64(lanes[2]) + _mm_popcnt_u64(lanes[3]));
  }
  for (; i < nwords; ++i) c += static_cast<std::size_t>(_mm_popcnt_u64(a[i] & b[i]));
  return c;
}

void and_into(std::uint64_t* dst, const std::uint64_t* a, const std::uint64_t* b,
              std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(va, vb));
  }
  for (; i < nwords; ++i) dst[i] = a[i] & b[i];
}

bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t nwords) {
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i x = _mm256_and_si256(va, vb);
    if (!_mm256_testz_si256(x, x)) return true;
  }
  for (; i < nwords; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

std::size_t popcount(const std::uint64_t* a, std::size_t nwords) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < nwords; ++i)
    c += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
  return c;
}

}  // namespace grzh::kern::avx2
