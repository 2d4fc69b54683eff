#include "kernels/element_kernel.inl"

namespace dynbc::kernels::detail {

void element_matrices_scalar(const ElementBatch& in, ElementMatrices& out, std::size_t begin) {
  for (std::size_t e = begin; e < in.count; ++e) element_block<ScalarLane>(in, out, e);
}

}  // namespace dynbc::kernels::detail
