#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qf/ladder.hpp"

namespace qf {

struct SymMatrix {
  long rows = 0, cols = 0;
  std::vector<std::vector<std::optional<Variable>>> a;  // nullopt = structural zero
  const std::optional<Variable>& at(long j, long k) const { return a[j - 1][k - 1]; }
};

// A_i for every non-source vertex. Vertex 1 and branch-1 vertices use the
// stacked form [X^(i) ; 0 | A_p] (source columns on the left); branch-2
// vertices use [R_p | 0 ; X^(i)] (source columns on the right).
struct CoordinateMatrices {
  std::map<long, SymMatrix> a;
  std::map<long, int> branch_of;
  // M_1, M_2 are the matrices of the two leaves
  long leaf1 = 1, leaf2 = 1;
  // global column index offset for each vertex (M_2 shifted so A_1 columns agree)
  std::map<long, long> col_shift;
};

CoordinateMatrices build_matrices(const Quiver& q);
CoordinateMatrices build_matrices(const Quiver& q, const YShapeDecomposition& y);

}  // namespace qf
