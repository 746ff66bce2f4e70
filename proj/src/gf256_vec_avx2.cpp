// ============================================================================
// AVX2 kernels
// ============================================================================
// GF(2^8) multiply-by-constant via the classic PSHUFB split: for a fixed
// coefficient c, c*x = MUL_LO[c][x & 15] ^ MUL_HI[c][x >> 4]. Both 16-entry
// tables live in one XMM register each, broadcast across the two AVX lanes,
// so a 32-byte chunk costs two shuffles and a handful of logic ops. Tails
// fall back to the scalar tables.
//
// This translation unit is only compiled on x86-64 and only with -mavx2; the
// dispatcher never installs these entry points unless the CPU reports AVX2.

#if defined(__x86_64__) || defined(_M_X64)

#include "ovc/gf256.h"
#include "ovc/gf256_vec.h"

#include <immintrin.h>

#include <cstring>

namespace ovc::gf::detail {

void vec_xor_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}

void vec_mul_add_avx2(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  if (c == 1) {
    vec_xor_avx2(dst, src, n);
    return;
  }
  const __m256i tlo = _mm256_broadcastsi128_si256(
      _mm_loadu_si128(reinterpret_cast<const __m128i*>(kTables.mul_lo[c])));
  const __m256i thi = _mm256_broadcastsi128_si256(
      _mm_loadu_si128(reinterpret_cast<const __m128i*>(kTables.mul_hi[c])));
  const __m256i mask = _mm256_set1_epi8(0x0F);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i xl = _mm256_and_si256(x, mask);
    const __m256i xh = _mm256_and_si256(_mm256_srli_epi64(x, 4), mask);
    const __m256i prod =
        _mm256_xor_si256(_mm256_shuffle_epi8(tlo, xl), _mm256_shuffle_epi8(thi, xh));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(d, prod));
  }
  const std::uint8_t* lo = kTables.mul_lo[c];
  const std::uint8_t* hi = kTables.mul_hi[c];
  for (; i < n; ++i) {
    const std::uint8_t x = src[i];
    dst[i] ^= static_cast<std::uint8_t>(lo[x & 0x0F] ^ hi[x >> 4]);
  }
}

void vec_scale_avx2(std::uint8_t* dst, std::uint8_t c, std::size_t n) {
  if (c == 1) return;
  if (c == 0) {
    std::memset(dst, 0, n);
    return;
  }
  const __m256i tlo = _mm256_broadcastsi128_si256(
      _mm_loadu_si128(reinterpret_cast<const __m128i*>(kTables.mul_lo[c])));
  const __m256i thi = _mm256_broadcastsi128_si256(
      _mm_loadu_si128(reinterpret_cast<const __m128i*>(kTables.mul_hi[c])));
  const __m256i mask = _mm256_set1_epi8(0x0F);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i xl = _mm256_and_si256(x, mask);
    const __m256i xh = _mm256_and_si256(_mm256_srli_epi64(x, 4), mask);
    const __m256i prod =
        _mm256_xor_si256(_mm256_shuffle_epi8(tlo, xl), _mm256_shuffle_epi8(thi, xh));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), prod);
  }
  const std::uint8_t* lo = kTables.mul_lo[c];
  const std::uint8_t* hi = kTables.mul_hi[c];
  for (; i < n; ++i) {
    const std::uint8_t x = dst[i];
    dst[i] = static_cast<std::uint8_t>(lo[x & 0x0F] ^ hi[x >> 4]);
  }
}

}  // namespace ovc::gf::detail

#endif  // x86-64
