// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#pragma once

#include <cstddef>

namespace stylo::kernels::detail {

double scalar_dot(const double* a, const double* b, size_t n);
double scalar_sqdist(const double* a, const double* b, size_t n);
double scalar_nrm2sq(const double* a, size_t n);
void scalar_axpy(double alpha, const double* x, double* y, size_t n);
void scalar_scal(double alpha, double* x, size_t n);

#if defined(STYLO_HAVE_AVX2_SOURCES)
double avx2_dot(const double* a, const double* b, size_t n);
double avx2_sqdist(const double* a, const double* b, size_t n);
double avx2_nrm2sq(const double* a, size_t n);
void avx2_axpy(double alpha, const double* x, double* y, size_t n);
void avx2_scal(double alpha, double* x, size_t n);
#endif

}  // namespace stylo::kernels::detail
