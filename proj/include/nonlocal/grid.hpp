#ifndef NONLOCAL_GRID_HPP
#define NONLOCAL_GRID_HPP

#include <cstdint>
#include <vector>

#include "nonlocal/common.hpp"

namespace nonlocal {

using ElementId = std::int64_t;

/// Uniform Cartesian mesh of the unit d-cube.
///
/// In cell layout the unknowns are the n^d interior elements; a Dirichlet
/// grid additionally carries a ghost collar of g element layers so that every
/// interior element sees its full delta-ball. In node layout the unknowns are
/// the (n+1)^d lattice nodes i*h with clipped boundary control volumes; node
/// grids are always pure Neumann.
class Grid {
 public:
  static Grid build(int dim, int n, double delta, Bc bc,
                    Layout layout = Layout::cell);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double h() const { return h_; }
  double delta() const { return delta_; }
  Bc bc() const { return bc_; }
  Layout layout() const { return layout_; }
  int ghost_layers() const { return ghost_; }

  /// Elements per axis including ghosts (cell) or nodes per axis (node).
  int per_axis() const { return per_axis_; }
  ElementId total_elements() const { return total_; }
  /// Number of matrix unknowns: n^d (cell) or (n+1)^d (node).
  ElementId num_unknowns() const { return unknowns_; }

  std::array<int, 3> decode(ElementId id) const;
  ElementId encode(const std::array<int, 3>& m) const;

  bool is_interior(ElementId id) const;
  /// Compact row index of an interior element; -1 for ghosts.
  ElementId unknown_index(ElementId id) const;
  /// Inverse of unknown_index.
  ElementId unknown_id(ElementId k) const;

  Point element_center(ElementId id) const;
  /// Axis-aligned control volume [lo, hi] per axis.
  void element_box(ElementId id, Point& lo, Point& hi) const;
  double element_volume(ElementId id) const;

  /// All j != id with ||c_j - c_id|| <= delta (center rule), sorted ascending.
  std::vector<ElementId> neighbors_within(ElementId id, double delta,
                                          Norm norm = Norm::euclidean) const;

  double distance(const Point& a, const Point& b, Norm norm) const;

 private:
  Grid() = default;
  void check_id(ElementId id) const;

  int dim_ = 1;
  int n_ = 0;
  double h_ = 0.0;
  double delta_ = 0.0;
  Bc bc_ = Bc::neumann;
  Layout layout_ = Layout::cell;
  int ghost_ = 0;
  int per_axis_ = 0;
  ElementId total_ = 0;
  ElementId unknowns_ = 0;
};

}  // namespace nonlocal

#endif
