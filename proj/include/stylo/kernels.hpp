// Copyright 2026 The binstylo authors.  See LICENSE file for terms.
//
// Dense double-precision kernels behind the numeric hot loops (k-means
// distances, row normalization, dense scoring). A scalar reference
// implementation always exists; an AVX2/FMA variant is selected at runtime
// when the CPU supports it. The two are equivalence-tested against each
// other; reductions may differ in the last ulps because of reassociation.

#pragma once

#include <cstddef>
#include <string_view>

namespace stylo::kernels {

enum class Backend { Scalar, Avx2 };

const char* backend_name(Backend b);

// Backend chosen for this process (detected once, overridable).
Backend active_backend();
bool backend_available(Backend b);

// Test hook: pin the backend. Throws std::runtime_error if unavailable.
void force_backend(Backend b);

double dot(const double* a, const double* b, size_t n);
double sqdist(const double* a, const double* b, size_t n);
double nrm2sq(const double* a, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
void scal(double alpha, double* x, size_t n);

}  // namespace stylo::kernels
