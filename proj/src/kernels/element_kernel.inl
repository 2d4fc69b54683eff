// Element-matrix kernel shared by every backend. Lane types provide load,
// store, broadcast and + - * /; the operation order below is the single
// source of rounding, so all backends agree bit for bit.
#pragma once

#include <cstddef>

#include "dynbc/kernels.hpp"

namespace dynbc::kernels::detail {

// P1 basis value of local node i at quadrature point g (midpoint of edge g, g+1).
constexpr double basis_at_midpoint(int g, int i) {
  return (i == g || i == (g + 1) % 3) ? 0.5 : 0.0;
}

template <class Lane>
inline void element_block(const ElementBatch& in, ElementMatrices& out, std::size_t e) {
  const Lane x0 = Lane::load(in.coords[0].data() + e);
  const Lane y0 = Lane::load(in.coords[1].data() + e);
  const Lane x1 = Lane::load(in.coords[2].data() + e);
  const Lane y1 = Lane::load(in.coords[3].data() + e);
  const Lane x2 = Lane::load(in.coords[4].data() + e);
  const Lane y2 = Lane::load(in.coords[5].data() + e);

  const Lane area2 = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
  const Lane gx[3] = {(y1 - y2) / area2, (y2 - y0) / area2, (y0 - y1) / area2};
  const Lane gy[3] = {(x2 - x1) / area2, (x0 - x2) / area2, (x1 - x0) / area2};
  const Lane weight = area2 / Lane::broadcast(6.0);

  Lane acc[9];
  for (auto& a : acc) a = Lane::broadcast(0.0);

  for (int g = 0; g < 3; ++g) {
    Lane f[9];
    for (int k = 0; k < 9; ++k) f[k] = Lane::load(in.coeffs[g * 9 + k].data() + e);
    const Lane& a11 = f[0];
    const Lane& a12 = f[1];
    const Lane& a21 = f[2];
    const Lane& a22 = f[3];
    for (int p = 0; p < 3; ++p) {
      const Lane phi_p = Lane::broadcast(basis_at_midpoint(g, p));
      const Lane c_grad_p = f[6] * gx[p] + f[7] * gy[p];
      for (int q = 0; q < 3; ++q) {
        const Lane phi_q = Lane::broadcast(basis_at_midpoint(g, q));
        // Grouping keeps K symmetric bit for bit when a12 == a21 and b == c.
        const Lane cross = a12 * (gx[p] * gy[q]) + a21 * (gy[p] * gx[q]);
        const Lane stiff = (a11 * (gx[p] * gx[q]) + cross) + a22 * (gy[p] * gy[q]);
        const Lane adv = (f[4] * gx[q] + f[5] * gy[q]) * phi_p;
        const Lane rea = c_grad_p * phi_q;
        const Lane mass = f[8] * (phi_q * phi_p);
        acc[p * 3 + q] = acc[p * 3 + q] + ((stiff + (adv + rea)) + mass);
      }
    }
  }
  for (int k = 0; k < 9; ++k) (acc[k] * weight).store(out.entries[k].data() + e);
  (area2 / Lane::broadcast(2.0)).store(out.area.data() + e);
}

struct ScalarLane {
  double v;
  static ScalarLane load(const double* p) { return {*p}; }
  static ScalarLane broadcast(double x) { return {x}; }
  void store(double* p) const { *p = v; }
  friend ScalarLane operator+(ScalarLane a, ScalarLane b) { return {a.v + b.v}; }
  friend ScalarLane operator-(ScalarLane a, ScalarLane b) { return {a.v - b.v}; }
  friend ScalarLane operator*(ScalarLane a, ScalarLane b) { return {a.v * b.v}; }
  friend ScalarLane operator/(ScalarLane a, ScalarLane b) { return {a.v / b.v}; }
};

void element_matrices_scalar(const ElementBatch& in, ElementMatrices& out, std::size_t begin);
void element_matrices_avx2(const ElementBatch& in, ElementMatrices& out);

}  // namespace dynbc::kernels::detail
