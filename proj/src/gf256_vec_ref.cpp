// ============================================================================
// Scalar reference kernels
// ============================================================================
// Straightforward table-driven loops. These define the semantics every other
// backend must reproduce byte-for-byte, and they are the permanent fallback
// on targets without SIMD support.

#include "ovc/gf256.h"
#include "ovc/gf256_vec.h"

#include <cstring>

namespace ovc::gf::detail {

void vec_xor_ref(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

void vec_mul_add_ref(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n) {
  if (c == 0) return;
  if (c == 1) {
    vec_xor_ref(dst, src, n);
    return;
  }
  const std::uint8_t* lo = kTables.mul_lo[c];
  const std::uint8_t* hi = kTables.mul_hi[c];
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t x = src[i];
    dst[i] ^= static_cast<std::uint8_t>(lo[x & 0x0F] ^ hi[x >> 4]);
  }
}

void vec_scale_ref(std::uint8_t* dst, std::uint8_t c, std::size_t n) {
  if (c == 1) return;
  if (c == 0) {
    std::memset(dst, 0, n);
    return;
  }
  const std::uint8_t* lo = kTables.mul_lo[c];
  const std::uint8_t* hi = kTables.mul_hi[c];
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t x = dst[i];
    dst[i] = static_cast<std::uint8_t>(lo[x & 0x0F] ^ hi[x >> 4]);
  }
}

}  // namespace ovc::gf::detail
