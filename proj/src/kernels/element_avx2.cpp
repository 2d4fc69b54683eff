#include <immintrin.h>

#include "kernels/element_kernel.inl"

namespace dynbc::kernels::detail {

namespace {

struct Avx2Lane {
  __m256d v;
  static Avx2Lane load(const double* p) { return {_mm256_loadu_pd(p)}; }
  static Avx2Lane broadcast(double x) { return {_mm256_set1_pd(x)}; }
  void store(double* p) const { _mm256_storeu_pd(p, v); }
  friend Avx2Lane operator+(Avx2Lane a, Avx2Lane b) { return {_mm256_add_pd(a.v, b.v)}; }
  friend Avx2Lane operator-(Avx2Lane a, Avx2Lane b) { return {_mm256_sub_pd(a.v, b.v)}; }
  friend Avx2Lane operator*(Avx2Lane a, Avx2Lane b) { return {_mm256_mul_pd(a.v, b.v)}; }
  friend Avx2Lane operator/(Avx2Lane a, Avx2Lane b) { return {_mm256_div_pd(a.v, b.v)}; }
};

}  // namespace

void element_matrices_avx2(const ElementBatch& in, ElementMatrices& out) {
  constexpr std::size_t kWidth = 4;
  std::size_t e = 0;
  for (; e + kWidth <= in.count; e += kWidth) element_block<Avx2Lane>(in, out, e);
  element_matrices_scalar(in, out, e);
}

}  // namespace dynbc::kernels::detail
