#include <cmath>
#include <random>

#include "doctest.h"
#include "nonlocal/kernel.hpp"

using nonlocal::Kernel;
using nonlocal::Norm;
using nonlocal::Point;

TEST_CASE("canonical kernel values") {
  const Kernel k = Kernel::canonical(0.3);
  CHECK(k.eval(Point{0.2, 0, 0}, Point{0.4, 0, 0}, 1) == 1.0);
  CHECK(k.eval(Point{0.0, 0, 0}, Point{0.31, 0, 0}, 1) == 0.0);
  // Closed support boundary.
  CHECK(k.eval_r(0.3) == 1.0);
  CHECK(k.eval_r(0.3 * (1.0 + 2e-12)) == 0.0);
}

TEST_CASE("scaled kernel multiplies the indicator by delta^-3") {
  const Kernel k = Kernel::scaled_1d(0.1);
  CHECK(k.eval(Point{0, 0, 0}, Point{0.05, 0, 0}, 1) ==
        doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(k.eval(Point{0, 0, 0}, Point{0.15, 0, 0}, 1) == 0.0);
}

TEST_CASE("support and symmetry on random pairs") {
  const double delta = 0.23;
  const Kernel k = Kernel::canonical(delta);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  int inside = 0, outside = 0;
  for (int t = 0; t < 10000; ++t) {
    const Point x{dist(rng), dist(rng), 0};
    const Point y{dist(rng), dist(rng), 0};
    const double r = std::hypot(x[0] - y[0], x[1] - y[1]);
    const double v = k.eval(x, y, 2);
    CHECK(v == k.eval(y, x, 2));
    if (r > delta * (1 + 1e-9)) {
      CHECK(v == 0.0);
      ++outside;
    } else if (r <= delta) {
      CHECK(v == 1.0);
      ++inside;
    }
  }
  CHECK(inside > 0);
  CHECK(outside > 0);
}

TEST_CASE("custom radial profile") {
  const Kernel k =
      Kernel::custom_radial(0.5, 2.0, [](double r) { return 1.0 - r; });
  CHECK(k.eval_r(0.25) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(k.eval_r(0.6) == 0.0);
  CHECK_THROWS_AS(Kernel::custom_radial(0.5, 2.0, nullptr),
                  std::invalid_argument);
}

TEST_CASE("max-norm evaluation") {
  const Kernel k = Kernel::canonical(0.3);
  // Euclidean distance 0.36 > delta, max distance 0.29 <= delta.
  const Point x{0, 0, 0};
  const Point y{0.29, 0.22, 0};
  CHECK(k.eval(x, y, 2, Norm::euclidean) == 0.0);
  CHECK(k.eval(x, y, 2, Norm::max) == 1.0);
}

TEST_CASE("kernel parameter validation") {
  CHECK_THROWS_AS(Kernel::canonical(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::canonical(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::from_name("triangle", 0.3), std::invalid_argument);
  CHECK(Kernel::from_name("scaled1d", 0.2).scale() ==
        doctest::Approx(125.0).epsilon(1e-12));
}
