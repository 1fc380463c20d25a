// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/kernels.hpp"

#include <stdexcept>

#include "kernels_detail.hpp"

namespace stylo::kernels {

namespace {

struct Table {
  double (*dot)(const double*, const double*, size_t);
  double (*sqdist)(const double*, const double*, size_t);
  double (*nrm2sq)(const double*, size_t);
  void (*axpy)(double, const double*, double*, size_t);
  void (*scal)(double, double*, size_t);
  Backend backend;
};

constexpr Table kScalarTable = {
    detail::scalar_dot, detail::scalar_sqdist, detail::scalar_nrm2sq,
    detail::scalar_axpy, detail::scalar_scal, Backend::Scalar,
};

#if defined(STYLO_HAVE_AVX2_SOURCES)
constexpr Table kAvx2Table = {
    detail::avx2_dot, detail::avx2_sqdist, detail::avx2_nrm2sq,
    detail::avx2_axpy, detail::avx2_scal, Backend::Avx2,
};
#endif

bool cpu_has_avx2() {
#if defined(STYLO_HAVE_AVX2_SOURCES) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* detect() {
#if defined(STYLO_HAVE_AVX2_SOURCES)
  if (cpu_has_avx2()) return &kAvx2Table;
#endif
  return &kScalarTable;
}

const Table*& table_slot() {
  static const Table* t = detect();
  return t;
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

Backend active_backend() { return table_slot()->backend; }

bool backend_available(Backend b) {
  if (b == Backend::Scalar) return true;
  return cpu_has_avx2();
}

void force_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::runtime_error(std::string("kernel backend unavailable: ") + backend_name(b));
  }
  switch (b) {
    case Backend::Scalar:
      table_slot() = &kScalarTable;
      break;
    case Backend::Avx2:
#if defined(STYLO_HAVE_AVX2_SOURCES)
      table_slot() = &kAvx2Table;
#endif
      break;
  }
}

double dot(const double* a, const double* b, size_t n) { return table_slot()->dot(a, b, n); }
double sqdist(const double* a, const double* b, size_t n) { return table_slot()->sqdist(a, b, n); }
double nrm2sq(const double* a, size_t n) { return table_slot()->nrm2sq(a, n); }
void axpy(double alpha, const double* x, double* y, size_t n) { table_slot()->axpy(alpha, x, y, n); }
void scal(double alpha, double* x, size_t n) { table_slot()->scal(alpha, x, n); }

}  // namespace stylo::kernels
