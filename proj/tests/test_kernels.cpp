// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#include "stylo/kernels.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "stylo/rng.hpp"

using namespace stylo;

namespace {

std::vector<double> random_vec(Rng& rng, size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-3.0, 3.0);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels match hand-computed values") {
  kernels::force_backend(kernels::Backend::Scalar);
  double a[] = {1, 2, 3};
  double b[] = {4, -5, 6};
  CHECK(kernels::dot(a, b, 3) == doctest::Approx(12.0));
  CHECK(kernels::sqdist(a, b, 3) == doctest::Approx(9 + 49 + 9));
  CHECK(kernels::nrm2sq(a, 3) == doctest::Approx(14.0));
  double y[] = {1, 1, 1};
  kernels::axpy(2.0, a, y, 3);
  CHECK(y[0] == doctest::Approx(3.0));
  CHECK(y[2] == doctest::Approx(7.0));
  kernels::scal(0.5, y, 3);
  CHECK(y[0] == doctest::Approx(1.5));
}

TEST_CASE("simd backend agrees with scalar reference on random inputs") {
  if (!kernels::backend_available(kernels::Backend::Avx2)) {
    MESSAGE("avx2 unavailable on this host; dispatch stays scalar");
    return;
  }
  Rng rng(20260810);
  // Sizes straddling the vector width to exercise remainder handling.
  for (size_t n : {0ul, 1ul, 3ul, 4ul, 5ul, 7ul, 8ul, 9ul, 31ul, 64ul, 257ul, 1000ul}) {
    auto a = random_vec(rng, n);
    auto b = random_vec(rng, n);

    kernels::force_backend(kernels::Backend::Scalar);
    double dot_s = kernels::dot(a.data(), b.data(), n);
    double sq_s = kernels::sqdist(a.data(), b.data(), n);
    double nrm_s = kernels::nrm2sq(a.data(), n);
    auto y_s = b;
    kernels::axpy(1.7, a.data(), y_s.data(), n);
    kernels::scal(0.9, y_s.data(), n);

    kernels::force_backend(kernels::Backend::Avx2);
    double dot_v = kernels::dot(a.data(), b.data(), n);
    double sq_v = kernels::sqdist(a.data(), b.data(), n);
    double nrm_v = kernels::nrm2sq(a.data(), n);
    auto y_v = b;
    kernels::axpy(1.7, a.data(), y_v.data(), n);
    kernels::scal(0.9, y_v.data(), n);

    CHECK(dot_v == doctest::Approx(dot_s).epsilon(1e-12));
    CHECK(sq_v == doctest::Approx(sq_s).epsilon(1e-12));
    CHECK(nrm_v == doctest::Approx(nrm_s).epsilon(1e-12));
    for (size_t i = 0; i < n; ++i) {
      CHECK(y_v[i] == doctest::Approx(y_s[i]).epsilon(1e-12));
    }
  }
  kernels::force_backend(kernels::active_backend());
}

TEST_CASE("forcing an unavailable backend throws") {
  if (kernels::backend_available(kernels::Backend::Avx2)) return;
  CHECK_THROWS(kernels::force_backend(kernels::Backend::Avx2));
}
