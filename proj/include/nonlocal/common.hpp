#ifndef NONLOCAL_COMMON_HPP
#define NONLOCAL_COMMON_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nonlocal {

// Point with fixed capacity; coordinates beyond the active dimension are zero.
using Point = std::array<double, 3>;

enum class Bc { neumann, dirichlet };

// cell: unknowns are the n^d element midpoints (m + 1/2)h.
// node: unknowns sit on the (n+1)^d lattice i*h with boundary cells clipped
//       to the domain (half-width control volumes at the ends).
enum class Layout { cell, node };

enum class Norm { euclidean, max };

// Relative slack applied when testing r <= delta, so that pairs sitting
// exactly on the horizon are kept under floating-point round-off.
inline constexpr double kSupportTie = 1e-12;

inline bool within_support(double r, double delta) {
  return r <= delta * (1.0 + kSupportTie);
}

std::string to_string(Bc bc);
std::string to_string(Layout layout);
std::string to_string(Norm norm);

Bc parse_bc(const std::string& s);
Layout parse_layout(const std::string& s);
Norm parse_norm(const std::string& s);

}  // namespace nonlocal

#endif
