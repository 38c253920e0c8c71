#ifndef NONLOCAL_KERNEL_HPP
#define NONLOCAL_KERNEL_HPP

#include <functional>
#include <string>

#include "nonlocal/common.hpp"

namespace nonlocal {

/// Radial interaction kernel with compact support of radius delta.
///
/// canonical:  indicator of the closed delta-ball (value 1 inside).
/// scaled_1d:  delta^-3 times the indicator.
/// custom:     scale * profile(r) times the indicator; profile must be
///             bounded on [0, delta].
class Kernel {
 public:
  enum class Variant { canonical, scaled_1d, custom_radial };

  static Kernel canonical(double delta);
  static Kernel scaled_1d(double delta);
  static Kernel custom_radial(double delta, double scale,
                              std::function<double(double)> profile);
  static Kernel from_name(const std::string& name, double delta);

  Variant variant() const { return variant_; }
  double delta() const { return delta_; }
  double scale() const { return scale_; }
  /// True when the kernel is constant on its support (indicator-type), which
  /// permits closed-form pair integrals.
  bool is_indicator() const { return variant_ != Variant::custom_radial; }

  /// Kernel value as a function of separation r >= 0.
  double eval_r(double r) const;
  /// Kernel value at a point pair; r is measured in the given norm.
  double eval(const Point& x, const Point& y, int dim,
              Norm norm = Norm::euclidean) const;

  std::string name() const;

 private:
  Kernel(Variant v, double delta, double scale,
         std::function<double(double)> profile);

  Variant variant_;
  double delta_;
  double scale_;
  std::function<double(double)> profile_;
};

}  // namespace nonlocal

#endif
