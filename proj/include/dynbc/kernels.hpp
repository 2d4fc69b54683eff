#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace dynbc::kernels {

enum class Backend { Scalar, Avx2 };

/// Struct-of-arrays input for a batch of P1 triangles.
///
/// coords[0..5] hold x0, y0, x1, y1, x2, y2 per element. Coefficients are
/// sampled at the three edge-midpoint quadrature points; coeffs[g * 9 + f]
/// holds field f at point g, fields ordered a11, a12, a21, a22, b1, b2, c1,
/// c2, d. Quadrature point g sits on the midpoint of local edge (g, g+1).
struct ElementBatch {
  static constexpr int kFields = 9;
  static constexpr int kQuadPoints = 3;

  std::size_t count = 0;
  std::array<std::vector<double>, 6> coords;
  std::array<std::vector<double>, kFields * kQuadPoints> coeffs;

  void resize(std::size_t n);
};

/// Local matrices: entries[p * 3 + q] = a(phi_q, phi_p) on each element.
struct ElementMatrices {
  std::array<std::vector<double>, 9> entries;
  std::vector<double> area;

  void resize(std::size_t n);
};

bool backend_available(Backend backend);

/// AVX2 when the CPU supports it, unless DYNBC_KERNELS=scalar is set.
Backend default_backend();

std::string_view backend_name(Backend backend);

void element_matrices(const ElementBatch& batch, ElementMatrices& out, Backend backend);

inline void element_matrices(const ElementBatch& batch, ElementMatrices& out) {
  element_matrices(batch, out, default_backend());
}

}  // namespace dynbc::kernels
