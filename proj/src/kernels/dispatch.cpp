#include <cstdlib>
#include <string>

#include "dynbc/errors.hpp"
#include "kernels/element_kernel.inl"

namespace dynbc::kernels {

void ElementBatch::resize(std::size_t n) {
  count = n;
  for (auto& c : coords) c.assign(n, 0.0);
  for (auto& c : coeffs) c.assign(n, 0.0);
}

void ElementMatrices::resize(std::size_t n) {
  for (auto& e : entries) e.assign(n, 0.0);
  area.assign(n, 0.0);
}

bool backend_available(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(DYNBC_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Backend default_backend() {
  static const Backend chosen = [] {
    if (const char* env = std::getenv("DYNBC_KERNELS"); env && std::string(env) == "scalar")
      return Backend::Scalar;
    return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
  }();
  return chosen;
}

std::string_view backend_name(Backend backend) {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

void element_matrices(const ElementBatch& batch, ElementMatrices& out, Backend backend) {
  out.resize(batch.count);
  if (!backend_available(backend))
    throw UnsupportedMethod("kernel backend '" + std::string(backend_name(backend)) +
                            "' not available on this CPU");
#if defined(DYNBC_HAVE_AVX2_KERNELS)
  if (backend == Backend::Avx2) {
    detail::element_matrices_avx2(batch, out);
    return;
  }
#endif
  detail::element_matrices_scalar(batch, out, 0);
}

}  // namespace dynbc::kernels
