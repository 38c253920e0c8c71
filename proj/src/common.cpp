#include "nonlocal/common.hpp"

namespace nonlocal {

std::string to_string(Bc bc) {
  return bc == Bc::neumann ? "neumann" : "dirichlet";
}

std::string to_string(Layout layout) {
  return layout == Layout::cell ? "cell" : "node";
}

std::string to_string(Norm norm) {
  return norm == Norm::euclidean ? "euclidean" : "max";
}

Bc parse_bc(const std::string& s) {
  if (s == "neumann") return Bc::neumann;
  if (s == "dirichlet") return Bc::dirichlet;
  throw std::invalid_argument("bc: expected 'neumann' or 'dirichlet', got '" +
                              s + "'");
}

Layout parse_layout(const std::string& s) {
  if (s == "cell") return Layout::cell;
  if (s == "node") return Layout::node;
  throw std::invalid_argument("layout: expected 'cell' or 'node', got '" + s +
                              "'");
}

Norm parse_norm(const std::string& s) {
  if (s == "euclidean") return Norm::euclidean;
  if (s == "max") return Norm::max;
  throw std::invalid_argument("norm: expected 'euclidean' or 'max', got '" + s +
                              "'");
}

}  // namespace nonlocal
