#pragma once

// Vectorized GF(2^8) row kernels with runtime backend selection.
//
// The three kernels below are the inner loops of every row operation in the
// codec and the matrix routines:
//
//   vec_xor:      dst[i] ^= src[i]                  (row addition)
//   vec_mul_add:  dst[i] ^= c * src[i]              (scaled row accumulate)
//   vec_scale:    dst[i]  = c * dst[i]              (row normalization)
//
// Scalar reference implementations always exist; an AVX2 variant is compiled
// on x86-64 and selected at startup when the CPU supports it. The active
// backend can be forced (tests compare backends byte-for-byte; the
// OVC_FORCE_SCALAR=1 environment variable disables SIMD for a whole run).
//
// Multiplication *counting* is not done here: kernels are pure data movement;
// callers account for the semantic multiplication count of the row operation
// they perform, independent of which backend executes it.

#include <cstddef>
#include <cstdint>

namespace ovc::gf {

enum class Backend { scalar, avx2 };

using VecXorFn = void (*)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
using VecMulAddFn = void (*)(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c,
                             std::size_t n);
using VecScaleFn = void (*)(std::uint8_t* dst, std::uint8_t c, std::size_t n);

extern VecXorFn vec_xor;
extern VecMulAddFn vec_mul_add;
extern VecScaleFn vec_scale;

// Backend management. set_backend throws std::invalid_argument if the
// requested backend is not available on this machine.
Backend active_backend();
bool backend_available(Backend b);
void set_backend(Backend b);
const char* backend_name(Backend b);

namespace detail {
void vec_xor_ref(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
void vec_mul_add_ref(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);
void vec_scale_ref(std::uint8_t* dst, std::uint8_t c, std::size_t n);
#if defined(__x86_64__) || defined(_M_X64)
void vec_xor_avx2(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);
void vec_mul_add_avx2(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, std::size_t n);
void vec_scale_avx2(std::uint8_t* dst, std::uint8_t c, std::size_t n);
#endif
}  // namespace detail

}  // namespace ovc::gf
