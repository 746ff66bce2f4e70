// ============================================================================
// Runtime kernel dispatch
// ============================================================================
// Global function pointers start on the scalar reference implementations and
// are upgraded once, before main(), to the best backend the CPU supports.
// OVC_FORCE_SCALAR=1 in the environment pins the scalar backend for a whole
// process; set_backend() switches explicitly (used by the equivalence tests).

#include "ovc/gf256_vec.h"

#include <cstdlib>
#include <stdexcept>

namespace ovc::gf {

VecXorFn vec_xor = detail::vec_xor_ref;
VecMulAddFn vec_mul_add = detail::vec_mul_add_ref;
VecScaleFn vec_scale = detail::vec_scale_ref;

namespace {

Backend g_active = Backend::scalar;

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void install(Backend b) {
  switch (b) {
    case Backend::scalar:
      vec_xor = detail::vec_xor_ref;
      vec_mul_add = detail::vec_mul_add_ref;
      vec_scale = detail::vec_scale_ref;
      break;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      vec_xor = detail::vec_xor_avx2;
      vec_mul_add = detail::vec_mul_add_avx2;
      vec_scale = detail::vec_scale_avx2;
      break;
#else
      throw std::invalid_argument("gf256: avx2 backend not compiled in");
#endif
  }
  g_active = b;
}

struct AutoSelect {
  AutoSelect() {
    const char* force = std::getenv("OVC_FORCE_SCALAR");
    if (force && force[0] == '1') return;  // already scalar
    if (cpu_has_avx2()) install(Backend::avx2);
  }
};

AutoSelect g_auto_select;

}  // namespace

Backend active_backend() { return g_active; }

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
  }
  return false;
}

void set_backend(Backend b) {
  if (!backend_available(b)) throw std::invalid_argument("gf256: backend unavailable on this CPU");
  install(b);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "?";
}

}  // namespace ovc::gf
