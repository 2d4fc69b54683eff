#pragma once

#include <cmath>
#include <memory>
#include <random>

#include "dynbc/mesh.hpp"

namespace testing {

inline std::shared_ptr<const dynbc::TriMesh> disk(double h) {
  return std::make_shared<const dynbc::TriMesh>(dynbc::generate_disk_mesh(1.0, h));
}

inline std::shared_ptr<const dynbc::TriMesh> square(int n, double side = 1.0) {
  return std::make_shared<const dynbc::TriMesh>(dynbc::generate_square_mesh(side, n));
}

inline dynbc::TriMesh reference_triangle() {
  return dynbc::make_mesh({dynbc::Point(0, 0), dynbc::Point(1, 0), dynbc::Point(0, 1)}, {{0, 1, 2}},
                          {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
}

inline double cos_k_theta(const dynbc::Point& p, int k) { return std::cos(k * std::atan2(p.y(), p.x())); }

inline dynbc::Vector random_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  dynbc::Vector v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

inline double max_abs(const dynbc::DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
