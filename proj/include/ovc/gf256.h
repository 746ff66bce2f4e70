#pragma once

// GF(2^8) scalar arithmetic with the reduction polynomial
// x^8 + x^4 + x^3 + x + 1 (0x11B). Addition is bitwise XOR; multiplication
// goes through compile-time log/antilog tables built from the generator
// 0x03. The tables (and the PSHUFB nibble tables used by the vector
// kernels) are verified against the polynomial definition by static_assert,
// so a binary that builds at all carries correct tables; self_check() runs
// the same sweep at runtime for belt-and-braces startup verification.

#include <cstdint>
#include <stdexcept>

namespace ovc::gf {

inline constexpr unsigned kPoly = 0x11B;

// Bit-by-bit carryless multiply + reduction. This is the defining
// computation; everything table-driven is checked against it.
constexpr std::uint8_t poly_mul(std::uint8_t a, std::uint8_t b) {
  std::uint32_t acc = 0;
  for (int i = 0; i < 8; ++i)
    if (b & (1u << i)) acc ^= static_cast<std::uint32_t>(a) << i;
  for (int bit = 14; bit >= 8; --bit)
    if (acc & (1u << bit)) acc ^= kPoly << (bit - 8);
  return static_cast<std::uint8_t>(acc);
}

struct Tables {
  std::uint8_t exp[512]{};         // exp[i] = g^i, duplicated so log sums never wrap
  std::uint8_t log[256]{};         // log[g^i] = i; log[0] unused
  std::uint8_t mul_lo[256][16]{};  // mul_lo[c][x] = c * x        (low nibble)
  std::uint8_t mul_hi[256][16]{};  // mul_hi[c][x] = c * (x << 4) (high nibble)
};

constexpr Tables build_tables() {
  Tables t{};
  std::uint8_t x = 1;
  for (int i = 0; i < 255; ++i) {
    t.exp[i] = x;
    t.log[x] = static_cast<std::uint8_t>(i);
    x = poly_mul(x, 3);
  }
  for (int i = 255; i < 512; ++i) t.exp[i] = t.exp[i - 255];
  for (int c = 0; c < 256; ++c) {
    for (int n = 0; n < 16; ++n) {
      t.mul_lo[c][n] = poly_mul(static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(n));
      t.mul_hi[c][n] = poly_mul(static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(n << 4));
    }
  }
  return t;
}

inline constexpr Tables kTables = build_tables();

inline constexpr std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }
inline constexpr std::uint8_t sub(std::uint8_t a, std::uint8_t b) { return a ^ b; }

inline constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
  if (a == 0 || b == 0) return 0;
  return kTables.exp[kTables.log[a] + kTables.log[b]];
}

inline std::uint8_t inv(std::uint8_t a) {
  if (a == 0) throw std::domain_error("gf256: inverse of zero");
  return kTables.exp[255 - kTables.log[a]];
}

inline std::uint8_t div(std::uint8_t a, std::uint8_t b) {
  if (b == 0) throw std::domain_error("gf256: division by zero");
  if (a == 0) return 0;
  return kTables.exp[kTables.log[a] + 255 - kTables.log[b]];
}

// Full table sweep against the polynomial definition. Returns true iff every
// product and every nibble-table entry matches. Also proven at compile time
// below; exposed so executables can re-run it at startup.
constexpr bool self_check() {
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      const auto ua = static_cast<std::uint8_t>(a);
      const auto ub = static_cast<std::uint8_t>(b);
      if (mul(ua, ub) != poly_mul(ua, ub)) return false;
    }
  }
  for (unsigned c = 0; c < 256; ++c) {
    for (unsigned n = 0; n < 16; ++n) {
      const auto uc = static_cast<std::uint8_t>(c);
      if (kTables.mul_lo[c][n] != poly_mul(uc, static_cast<std::uint8_t>(n))) return false;
      if (kTables.mul_hi[c][n] != poly_mul(uc, static_cast<std::uint8_t>(n << 4))) return false;
    }
  }
  for (unsigned a = 1; a < 256; ++a) {
    const auto ua = static_cast<std::uint8_t>(a);
    if (mul(ua, kTables.exp[255 - kTables.log[ua]]) != 1) return false;
  }
  return true;
}

static_assert(self_check(), "GF(2^8) tables disagree with the polynomial definition");
static_assert(mul(0x02, 0x80) == 0x1B);
static_assert(mul(0x53, 0xCA) == 0x01);
static_assert(add(0x57, 0x83) == 0xD4);

}  // namespace ovc::gf
