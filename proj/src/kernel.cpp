#include "nonlocal/kernel.hpp"

#include <cmath>
#include <utility>

namespace nonlocal {

Kernel::Kernel(Variant v, double delta, double scale,
               std::function<double(double)> profile)
    : variant_(v), delta_(delta), scale_(scale), profile_(std::move(profile)) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("delta: must be positive, got " +
                                std::to_string(delta));
  }
  if (!(scale > 0.0)) {
    throw std::invalid_argument("scale: must be positive, got " +
                                std::to_string(scale));
  }
}

Kernel Kernel::canonical(double delta) {
  return Kernel(Variant::canonical, delta, 1.0, nullptr);
}

Kernel Kernel::scaled_1d(double delta) {
  return Kernel(Variant::scaled_1d, delta, std::pow(delta, -3.0), nullptr);
}

Kernel Kernel::custom_radial(double delta, double scale,
                             std::function<double(double)> profile) {
  if (!profile) {
    throw std::invalid_argument("profile: custom kernel requires a profile");
  }
  return Kernel(Variant::custom_radial, delta, scale, std::move(profile));
}

Kernel Kernel::from_name(const std::string& name, double delta) {
  if (name == "canonical") return canonical(delta);
  if (name == "scaled1d" || name == "scaled_1d") return scaled_1d(delta);
  throw std::invalid_argument("kernel: expected 'canonical' or 'scaled1d', got '" +
                              name + "'");
}

double Kernel::eval_r(double r) const {
  if (r < 0.0 || !within_support(r, delta_)) return 0.0;
  if (variant_ == Variant::custom_radial) {
    const double v = scale_ * profile_(r);
    return v < 0.0 ? 0.0 : v;
  }
  return scale_;
}

double Kernel::eval(const Point& x, const Point& y, int dim, Norm norm) const {
  double acc = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = std::abs(x[k] - y[k]);
    acc = norm == Norm::euclidean ? acc + d * d : std::max(acc, d);
  }
  return eval_r(norm == Norm::euclidean ? std::sqrt(acc) : acc);
}

std::string Kernel::name() const {
  switch (variant_) {
    case Variant::canonical:
      return "canonical";
    case Variant::scaled_1d:
      return "scaled1d";
    default:
      return "custom";
  }
}

}  // namespace nonlocal
