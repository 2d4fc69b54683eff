#include <doctest.h>

#include <cstring>
#include <random>

#include "dynbc/errors.hpp"
#include "dynbc/kernels.hpp"

using namespace dynbc::kernels;

namespace {

ElementBatch random_batch(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  std::uniform_real_distribution<double> coeff(-0.5, 0.5);
  ElementBatch batch;
  batch.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    // Perturbed counter-clockwise triangle.
    batch.coords[0][e] = jitter(rng);
    batch.coords[1][e] = jitter(rng);
    batch.coords[2][e] = 1.0 + jitter(rng);
    batch.coords[3][e] = jitter(rng);
    batch.coords[4][e] = jitter(rng);
    batch.coords[5][e] = 1.0 + jitter(rng);
    for (int g = 0; g < ElementBatch::kQuadPoints; ++g)
      for (int k = 0; k < ElementBatch::kFields; ++k) {
        double v = coeff(rng);
        if (k == 0 || k == 3 || k == 8) v += 1.5;
        batch.coeffs[g * ElementBatch::kFields + k][e] = v;
      }
  }
  return batch;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  CHECK(backend_available(Backend::Scalar));
  CHECK(backend_name(Backend::Scalar) == "scalar");
  CHECK(backend_name(Backend::Avx2) == "avx2");
}

TEST_CASE("reference triangle with Laplace coefficients") {
  ElementBatch batch;
  batch.resize(1);
  batch.coords = {std::vector<double>{0.0}, {0.0}, {1.0}, {0.0}, {0.0}, {1.0}};
  for (int g = 0; g < 3; ++g) {
    batch.coeffs[g * 9 + 0][0] = 1.0;
    batch.coeffs[g * 9 + 3][0] = 1.0;
  }
  ElementMatrices out;
  element_matrices(batch, out, Backend::Scalar);
  const double expected[9] = {1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5};
  for (int k = 0; k < 9; ++k) CHECK(out.entries[k][0] == doctest::Approx(expected[k]).epsilon(1e-15));
  CHECK(out.area[0] == 0.5);
}

TEST_CASE("AVX2 and scalar backends agree bit for bit") {
  if (!backend_available(Backend::Avx2)) {
    MESSAGE("AVX2 backend unavailable; equivalence test skipped");
    ElementMatrices out;
    CHECK_THROWS_AS(element_matrices(random_batch(4, 1), out, Backend::Avx2),
                    dynbc::UnsupportedMethod);
    return;
  }
  // Sizes cover full vectors, remainders and the empty batch.
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 63u, 1000u, 1001u}) {
    CAPTURE(n);
    const ElementBatch batch = random_batch(n, 17 + n);
    ElementMatrices scalar, avx;
    element_matrices(batch, scalar, Backend::Scalar);
    element_matrices(batch, avx, Backend::Avx2);
    for (int k = 0; k < 9; ++k) CHECK(bitwise_equal(scalar.entries[k], avx.entries[k]));
    CHECK(bitwise_equal(scalar.area, avx.area));
  }
}

TEST_CASE("symmetric coefficients give bitwise symmetric element matrices") {
  ElementBatch batch = random_batch(64, 5);
  for (std::size_t e = 0; e < batch.count; ++e)
    for (int g = 0; g < 3; ++g) {
      batch.coeffs[g * 9 + 2][e] = batch.coeffs[g * 9 + 1][e];  // a21 = a12
      batch.coeffs[g * 9 + 6][e] = batch.coeffs[g * 9 + 4][e];  // c = b
      batch.coeffs[g * 9 + 7][e] = batch.coeffs[g * 9 + 5][e];
    }
  for (Backend backend : {Backend::Scalar, Backend::Avx2}) {
    if (!backend_available(backend)) continue;
    ElementMatrices out;
    element_matrices(batch, out, backend);
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q) CHECK(bitwise_equal(out.entries[p * 3 + q], out.entries[q * 3 + p]));
  }
}
