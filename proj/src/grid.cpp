#include "nonlocal/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nonlocal {

Grid Grid::build(int dim, int n, double delta, Bc bc, Layout layout) {
  if (dim < 1 || dim > 3) {
    throw std::invalid_argument("dim: must be 1, 2, or 3, got " +
                                std::to_string(dim));
  }
  if (n < 2) {
    throw std::invalid_argument("n: must be >= 2, got " + std::to_string(n));
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta: must lie in (0, 1), got " +
                                std::to_string(delta));
  }
  if (bc == Bc::dirichlet && !(delta < 0.5)) {
    throw std::invalid_argument(
        "delta: must lie in (0, 0.5) for dirichlet grids, got " +
        std::to_string(delta));
  }
  if (layout == Layout::node && bc == Bc::dirichlet) {
    throw std::invalid_argument(
        "layout: node layout supports only neumann boundary conditions");
  }

  Grid g;
  g.dim_ = dim;
  g.n_ = n;
  g.h_ = 1.0 / n;
  g.delta_ = delta;
  g.bc_ = bc;
  g.layout_ = layout;
  if (layout == Layout::cell) {
    g.ghost_ = bc == Bc::dirichlet
                   ? static_cast<int>(std::ceil(delta / g.h_ - kSupportTie))
                   : 0;
    g.per_axis_ = n + 2 * g.ghost_;
  } else {
    g.ghost_ = 0;
    g.per_axis_ = n + 1;
  }
  g.total_ = 1;
  g.unknowns_ = 1;
  const ElementId per_axis_unknowns = layout == Layout::cell ? n : n + 1;
  for (int k = 0; k < dim; ++k) {
    g.total_ *= g.per_axis_;
    g.unknowns_ *= per_axis_unknowns;
  }
  return g;
}

void Grid::check_id(ElementId id) const {
  if (id < 0 || id >= total_) {
    throw std::out_of_range("element id " + std::to_string(id) +
                            " outside [0, " + std::to_string(total_) + ")");
  }
}

std::array<int, 3> Grid::decode(ElementId id) const {
  check_id(id);
  std::array<int, 3> m{0, 0, 0};
  for (int k = 0; k < dim_; ++k) {
    m[k] = static_cast<int>(id % per_axis_);
    id /= per_axis_;
  }
  return m;
}

ElementId Grid::encode(const std::array<int, 3>& m) const {
  ElementId id = 0;
  for (int k = dim_ - 1; k >= 0; --k) {
    if (m[k] < 0 || m[k] >= per_axis_) {
      throw std::out_of_range("multi-index component " + std::to_string(m[k]) +
                              " outside [0, " + std::to_string(per_axis_) +
                              ")");
    }
    id = id * per_axis_ + m[k];
  }
  return id;
}

bool Grid::is_interior(ElementId id) const {
  if (layout_ == Layout::node) {
    check_id(id);
    return true;
  }
  const auto m = decode(id);
  for (int k = 0; k < dim_; ++k) {
    if (m[k] < ghost_ || m[k] >= ghost_ + n_) return false;
  }
  return true;
}

ElementId Grid::unknown_index(ElementId id) const {
  if (layout_ == Layout::node) {
    check_id(id);
    return id;
  }
  const auto m = decode(id);
  ElementId k = 0;
  for (int a = dim_ - 1; a >= 0; --a) {
    const int mi = m[a] - ghost_;
    if (mi < 0 || mi >= n_) return -1;
    k = k * n_ + mi;
  }
  return k;
}

ElementId Grid::unknown_id(ElementId k) const {
  if (k < 0 || k >= unknowns_) {
    throw std::out_of_range("unknown index " + std::to_string(k) +
                            " outside [0, " + std::to_string(unknowns_) + ")");
  }
  if (layout_ == Layout::node) return k;
  std::array<int, 3> m{0, 0, 0};
  for (int a = 0; a < dim_; ++a) {
    m[a] = static_cast<int>(k % n_) + ghost_;
    k /= n_;
  }
  return encode(m);
}

Point Grid::element_center(ElementId id) const {
  const auto m = decode(id);
  Point c{0.0, 0.0, 0.0};
  for (int k = 0; k < dim_; ++k) {
    c[k] = layout_ == Layout::cell ? (m[k] + 0.5) * h_ - ghost_ * h_
                                   : m[k] * h_;
  }
  return c;
}

void Grid::element_box(ElementId id, Point& lo, Point& hi) const {
  const auto m = decode(id);
  lo = Point{0.0, 0.0, 0.0};
  hi = Point{0.0, 0.0, 0.0};
  for (int k = 0; k < dim_; ++k) {
    if (layout_ == Layout::cell) {
      lo[k] = m[k] * h_ - ghost_ * h_;
      hi[k] = lo[k] + h_;
    } else {
      lo[k] = std::max(0.0, m[k] * h_ - 0.5 * h_);
      hi[k] = std::min(1.0, m[k] * h_ + 0.5 * h_);
    }
  }
}

double Grid::element_volume(ElementId id) const {
  Point lo, hi;
  element_box(id, lo, hi);
  double v = 1.0;
  for (int k = 0; k < dim_; ++k) v *= hi[k] - lo[k];
  return v;
}

double Grid::distance(const Point& a, const Point& b, Norm norm) const {
  double acc = 0.0;
  for (int k = 0; k < dim_; ++k) {
    const double d = std::abs(a[k] - b[k]);
    if (norm == Norm::euclidean) {
      acc += d * d;
    } else {
      acc = std::max(acc, d);
    }
  }
  return norm == Norm::euclidean ? std::sqrt(acc) : acc;
}

std::vector<ElementId> Grid::neighbors_within(ElementId id, double delta,
                                              Norm norm) const {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("delta: must be positive, got " +
                                std::to_string(delta));
  }
  const auto m = decode(id);
  const Point c = element_center(id);
  const int r = static_cast<int>(std::ceil(delta / h_ + kSupportTie));
  std::vector<ElementId> out;
  std::array<int, 3> off{0, 0, 0};
  std::array<int, 3> mm{m[0], m[1], m[2]};
  const int r1 = dim_ >= 2 ? r : 0;
  const int r2 = dim_ >= 3 ? r : 0;
  for (off[2] = -r2; off[2] <= r2; ++off[2]) {
    for (off[1] = -r1; off[1] <= r1; ++off[1]) {
      for (off[0] = -r; off[0] <= r; ++off[0]) {
        if (off[0] == 0 && off[1] == 0 && off[2] == 0) continue;
        bool in_range = true;
        for (int k = 0; k < dim_; ++k) {
          mm[k] = m[k] + off[k];
          if (mm[k] < 0 || mm[k] >= per_axis_) in_range = false;
        }
        if (!in_range) continue;
        const ElementId j = encode(mm);
        if (within_support(distance(c, element_center(j), norm), delta)) {
          out.push_back(j);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nonlocal
