// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Reference kernels. Plain loops, no pragmas: these define the semantics
// the vector variants are tested against.

#include "kernels_detail.hpp"

namespace stylo::kernels::detail {

double scalar_dot(const double* a, const double* b, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double scalar_sqdist(const double* a, const double* b, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double scalar_nrm2sq(const double* a, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

void scalar_axpy(double alpha, const double* x, double* y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scalar_scal(double alpha, double* x, size_t n) {
  for (size_t i = 0; i < n; ++i) x[i] *= alpha;
}

}  // namespace stylo::kernels::detail
