#include <cmath>
#include <set>

#include "doctest.h"
#include "nonlocal/grid.hpp"

using nonlocal::Bc;
using nonlocal::ElementId;
using nonlocal::Grid;
using nonlocal::Layout;
using nonlocal::Norm;

TEST_CASE("grid construction basics") {
  const Grid g = Grid::build(1, 20, 0.3, Bc::neumann);
  CHECK(g.h() == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(g.total_elements() == 20);
  CHECK(g.num_unknowns() == 20);
  CHECK(g.ghost_layers() == 0);
  CHECK(std::abs(g.h() * g.n() - 1.0) <= 1e-14);
}

TEST_CASE("dirichlet ghost collar covers the horizon") {
  const Grid g = Grid::build(1, 4, 0.3, Bc::dirichlet);
  CHECK(g.ghost_layers() == 2);
  CHECK(g.total_elements() == 8);
  CHECK(g.num_unknowns() == 4);
  CHECK(g.ghost_layers() * g.h() >= 0.3);
}

TEST_CASE("2d neumann grid") {
  const Grid g = Grid::build(2, 6, 0.333, Bc::neumann);
  CHECK(g.total_elements() == 36);
  CHECK(g.h() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("index encode/decode round trip") {
  for (const Grid& g :
       {Grid::build(1, 7, 0.2, Bc::dirichlet), Grid::build(2, 5, 0.3, Bc::neumann),
        Grid::build(3, 3, 0.3, Bc::neumann),
        Grid::build(2, 4, 0.3, Bc::neumann, Layout::node)}) {
    for (ElementId id = 0; id < g.total_elements(); ++id) {
      CHECK(g.encode(g.decode(id)) == id);
    }
  }
}

TEST_CASE("interior elements occupy the inner index block") {
  const Grid g = Grid::build(1, 4, 0.3, Bc::dirichlet);
  int count = 0;
  for (ElementId id = 0; id < g.total_elements(); ++id) {
    const auto m = g.decode(id);
    const bool expect = m[0] >= g.ghost_layers() && m[0] < g.ghost_layers() + 4;
    CHECK(g.is_interior(id) == expect);
    if (g.is_interior(id)) {
      CHECK(g.unknown_index(id) == count);
      CHECK(g.unknown_id(count) == id);
      ++count;
    } else {
      CHECK(g.unknown_index(id) == -1);
    }
  }
  CHECK(count == 4);
}

TEST_CASE("element centers") {
  const Grid g = Grid::build(1, 20, 0.3, Bc::neumann);
  CHECK(g.element_center(0)[0] == doctest::Approx(0.025).epsilon(1e-14));
  CHECK(g.element_center(19)[0] == doctest::Approx(0.975).epsilon(1e-14));

  const Grid g2 = Grid::build(2, 6, 0.333, Bc::neumann);
  const auto c = g2.element_center(7);  // multi-index (1,1)
  CHECK(c[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(c[1] == doctest::Approx(0.25).epsilon(1e-14));

  // Interior centers lie strictly inside the unit cube.
  const Grid gd = Grid::build(1, 4, 0.3, Bc::dirichlet);
  for (ElementId id = 0; id < gd.total_elements(); ++id) {
    if (!gd.is_interior(id)) continue;
    CHECK(gd.element_center(id)[0] > 0.0);
    CHECK(gd.element_center(id)[0] < 1.0);
  }
}

TEST_CASE("node layout places unknowns on the lattice with clipped cells") {
  const Grid g = Grid::build(1, 4, 0.3, Bc::neumann, Layout::node);
  CHECK(g.num_unknowns() == 5);
  CHECK(g.element_center(0)[0] == 0.0);
  CHECK(g.element_center(4)[0] == 1.0);
  CHECK(g.element_volume(0) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(g.element_volume(2) == doctest::Approx(0.25).epsilon(1e-14));
  nonlocal::Point lo, hi;
  g.element_box(0, lo, hi);
  CHECK(lo[0] == 0.0);
  CHECK(hi[0] == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("neighbor counts in 1d") {
  const Grid g = Grid::build(1, 20, 0.3, Bc::neumann);
  CHECK(g.neighbors_within(10, 0.3).size() == 12);
  CHECK(g.neighbors_within(0, 0.3).size() == 6);
}

TEST_CASE("2d neighbor count matches brute-force offset enumeration") {
  const Grid g = Grid::build(2, 6, 0.333, Bc::neumann);
  const ElementId center = g.encode({3, 3, 0});
  int expected = 0;
  for (int a = -5; a <= 5; ++a) {
    for (int b = -5; b <= 5; ++b) {
      if (a == 0 && b == 0) continue;
      const int ia = 3 + a, ib = 3 + b;
      if (ia < 0 || ia >= 6 || ib < 0 || ib >= 6) continue;
      if (g.h() * std::sqrt(double(a * a + b * b)) <= 0.333 * (1 + 1e-12)) {
        ++expected;
      }
    }
  }
  CHECK(static_cast<int>(g.neighbors_within(center, 0.333).size()) == expected);
}

TEST_CASE("neighborhoods are symmetric and sorted") {
  for (const Grid& g : {Grid::build(1, 20, 0.3, Bc::neumann),
                        Grid::build(2, 6, 0.333, Bc::neumann)}) {
    std::vector<std::set<ElementId>> nbrs(g.total_elements());
    for (ElementId id = 0; id < g.total_elements(); ++id) {
      const auto v = g.neighbors_within(id, g.delta());
      CHECK(std::is_sorted(v.begin(), v.end()));
      nbrs[id] = std::set<ElementId>(v.begin(), v.end());
    }
    for (ElementId i = 0; i < g.total_elements(); ++i) {
      for (ElementId j : nbrs[i]) {
        CHECK(nbrs[j].count(i) == 1);
      }
    }
  }
}

TEST_CASE("translation invariance away from the boundary") {
  const Grid g = Grid::build(2, 8, 0.26, Bc::neumann);
  const ElementId a = g.encode({3, 3, 0});
  const ElementId b = g.encode({4, 4, 0});
  const auto na = g.neighbors_within(a, 0.26);
  const auto nb = g.neighbors_within(b, 0.26);
  REQUIRE(na.size() == nb.size());
  const ElementId shift = b - a;
  for (std::size_t k = 0; k < na.size(); ++k) {
    CHECK(na[k] + shift == nb[k]);
  }
}

TEST_CASE("dirichlet interior neighborhoods are never truncated") {
  const Grid g = Grid::build(1, 6, 0.3, Bc::dirichlet);
  // Interior band count for an untruncated element.
  const int full = static_cast<int>(g.neighbors_within(
      g.unknown_id(g.num_unknowns() / 2), 0.3).size());
  for (ElementId k = 0; k < g.num_unknowns(); ++k) {
    CHECK(static_cast<int>(g.neighbors_within(g.unknown_id(k), 0.3).size()) ==
          full);
  }
}

TEST_CASE("max-norm neighborhoods in 2d") {
  const Grid g = Grid::build(2, 8, 0.26, Bc::neumann);
  const ElementId c = g.encode({4, 4, 0});
  // 0.26 / h = 2.08 -> 2 layers each way in the max norm: 5x5 - 1.
  CHECK(g.neighbors_within(c, 0.26, Norm::max).size() == 24);
}

TEST_CASE("parameter validation names the offending field") {
  CHECK_THROWS_WITH_AS(Grid::build(4, 10, 0.3, Bc::neumann),
                       doctest::Contains("dim"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(Grid::build(1, 1, 0.3, Bc::neumann),
                       doctest::Contains("n:"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(Grid::build(1, 10, -0.1, Bc::neumann),
                       doctest::Contains("delta"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(Grid::build(1, 10, 0.6, Bc::dirichlet),
                       doctest::Contains("delta"), std::invalid_argument);
  CHECK_THROWS_AS(Grid::build(1, 10, 1.5, Bc::neumann), std::invalid_argument);
  const Grid g = Grid::build(1, 10, 0.3, Bc::neumann);
  CHECK_THROWS_AS(g.element_center(10), std::out_of_range);
  CHECK_THROWS_AS(g.element_center(-1), std::out_of_range);
  CHECK_THROWS_AS(g.neighbors_within(0, -1.0), std::invalid_argument);
}
