#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "dynbc/types.hpp"

namespace dynbc {

using SpatialFunction = std::function<double(const Point&)>;
using TimeFactor = std::function<double(double)>;

/// Named functions of a point: "zero", "const:c", "x", "y", "radius_sq",
/// "cos_theta", "sin_theta", "cos_ktheta:k", and sums joined by '+'.
/// Throws InvalidParameter on unknown names.
SpatialFunction parse_spatial_function(std::string_view spec);

/// Named functions of time: "const" (1), "zero", "decay_exp:gamma" (e^{-gamma t}).
TimeFactor parse_time_factor(std::string_view spec);

/// f(t, x) = limit(x) + factor(t) transient(x); limit is the declared t -> inf value.
struct SpaceTimeForcing {
  SpatialFunction limit;
  SpatialFunction transient;
  TimeFactor factor;

  double operator()(double t, const Point& x) const { return limit(x) + factor(t) * transient(x); }
};

}  // namespace dynbc
