#pragma once

// OpenMP shim. Code outside this header and src/ must not include <omp.h>;
// everything here has a serial fallback when the build has no OpenMP.

#if defined(_OPENMP)
#include <omp.h>
#define GNET_PRAGMA(X) _Pragma(#X)
#define GNET_OMP(ARGS) GNET_PRAGMA(omp ARGS)
#else
#define GNET_OMP(ARGS)
#endif

namespace gnet {

inline bool have_openmp() noexcept {
#if defined(_OPENMP)
  return true;
#else
  return false;
#endif
}

inline int max_threads() noexcept {
#if defined(_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// n <= 0 restores the runtime default.
inline void set_threads(int n) noexcept {
#if defined(_OPENMP)
  static const int initial = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : initial);
#else
  (void)n;
#endif
}

}  // namespace gnet
