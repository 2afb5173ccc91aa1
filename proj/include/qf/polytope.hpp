#pragma once

#include "qf/laurent.hpp"

namespace qf {

struct Facet {
  IntVec normal;  // primitive; the polytope lies in normal.x <= offset
  long offset = 0;
};

struct Polytope {
  int ambient = 0;
  int dim = 0;  // affine dimension
  std::vector<Exponent> vertices;
  std::vector<Facet> facets;  // only when full-dimensional
  std::vector<Exponent> lattice_points;
  bool is_fano = false;      // origin strictly interior
  bool is_terminal = false;  // Fano, and no lattice points besides vertices and origin
  Int normalized_volume = 0;  // dim! times Euclidean volume; 0 unless full-dimensional
};

Polytope convex_hull(const std::vector<Exponent>& points);
Polytope newton_polytope(const Laurent& f);

// Minkowski sum of two point sets (not reduced to vertices).
std::vector<Exponent> minkowski_sum(const std::vector<Exponent>& a, const std::vector<Exponent>& b);

nlohmann::json polytope_to_json(const Polytope& p);

}  // namespace qf
