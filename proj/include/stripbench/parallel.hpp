#pragma once
#include "core.hpp"
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sb {

// Runtime switch between the OpenMP kernels and the serial reference path.
// Reductions are deterministic in both modes: workers fill an indexed buffer,
// the final sum is always a serial left-to-right pass.
inline bool& parallel_enabled() {
  static bool on = true;
  return on;
}

template <class F>
void parallel_for(long n, F&& body) {
#ifdef _OPENMP
  if (parallel_enabled()) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (long i = 0; i < n; ++i) body(i);
}

template <class F>
cplx map_sum(long n, F&& term) {
  std::vector<cplx> buf(n);
  parallel_for(n, [&](long i) { buf[i] = term(i); });
  cplx s = 0;
  for (long i = 0; i < n; ++i) s += buf[i];
  return s;
}

template <class F>
double map_sum_real(long n, F&& term) {
  std::vector<double> buf(n);
  parallel_for(n, [&](long i) { buf[i] = term(i); });
  double s = 0;
  for (long i = 0; i < n; ++i) s += buf[i];
  return s;
}

}  // namespace sb
