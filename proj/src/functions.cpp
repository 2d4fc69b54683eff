#include "dynbc/functions.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "dynbc/errors.hpp"

namespace dynbc {

namespace {

double parse_arg(std::string_view spec, std::string_view arg) {
  double v = 0.0;
  const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), v);
  if (res.ec != std::errc() || res.ptr != arg.data() + arg.size())
    throw InvalidParameter("bad numeric argument in function '" + std::string(spec) + "'");
  return v;
}

double angle_cos(const Point& p) {
  const double r = p.norm();
  return r > 0.0 ? p.x() / r : 0.0;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t") - first + 1);
}

SpatialFunction parse_term(std::string_view spec) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const bool has_arg = colon != std::string_view::npos;
  const std::string_view arg = has_arg ? spec.substr(colon + 1) : std::string_view{};
  auto no_arg = [&] {
    if (has_arg) throw InvalidParameter("function '" + std::string(name) + "' takes no argument");
  };
  if (name == "zero") return no_arg(), [](const Point&) { return 0.0; };
  if (name == "x") return no_arg(), [](const Point& p) { return p.x(); };
  if (name == "y") return no_arg(), [](const Point& p) { return p.y(); };
  if (name == "radius_sq") return no_arg(), [](const Point& p) { return p.squaredNorm(); };
  if (name == "cos_theta") return no_arg(), SpatialFunction(angle_cos);
  if (name == "sin_theta") {
    no_arg();
    return [](const Point& p) {
      const double r = p.norm();
      return r > 0.0 ? p.y() / r : 0.0;
    };
  }
  if (name == "const") {
    if (!has_arg) throw InvalidParameter("function 'const' needs a value, e.g. const:1");
    const double c = parse_arg(spec, arg);
    return [c](const Point&) { return c; };
  }
  if (name == "cos_ktheta") {
    if (!has_arg) throw InvalidParameter("function 'cos_ktheta' needs a mode, e.g. cos_ktheta:2");
    const double k = parse_arg(spec, arg);
    return [k](const Point& p) { return p.norm() > 0.0 ? std::cos(k * std::atan2(p.y(), p.x())) : 0.0; };
  }
  throw InvalidParameter("unknown function '" + std::string(spec) + "'");
}

}  // namespace

SpatialFunction parse_spatial_function(std::string_view spec) {
  std::vector<SpatialFunction> terms;
  while (true) {
    const auto plus = spec.find('+');
    terms.push_back(parse_term(spec.substr(0, plus)));
    if (plus == std::string_view::npos) break;
    spec.remove_prefix(plus + 1);
  }
  if (terms.size() == 1) return terms.front();
  return [terms](const Point& p) {
    double s = 0.0;
    for (const auto& f : terms) s += f(p);
    return s;
  };
}

TimeFactor parse_time_factor(std::string_view spec) {
  spec = trim(spec);
  if (spec == "const") return [](double) { return 1.0; };
  if (spec == "zero") return [](double) { return 0.0; };
  if (spec.starts_with("decay_exp:")) {
    const double gamma = parse_arg(spec, spec.substr(10));
    if (!(gamma > 0.0)) throw InvalidParameter("decay_exp: rate must be > 0");
    return [gamma](double t) { return std::exp(-gamma * t); };
  }
  throw InvalidParameter("unknown time factor '" + std::string(spec) + "'");
}

}  // namespace dynbc
