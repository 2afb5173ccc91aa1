#pragma once

#include <array>

#include "json.hpp"

#include "qf/arith.hpp"

namespace qf {

struct Quiver {
  long vertex_count = 0;
  IntMat adjacency;  // adjacency[i][j] = number of arrows i -> j
  IntVec dims;

  long n(long i, long j) const { return adjacency[i][j]; }
};

struct VertexStats {
  // indexed by vertex; entry 0 is unused (kept for alignment)
  IntVec s, s_prime, s_tilde, dim_contribution;
  long total_dim = 0;
};

struct YShapeDecomposition {
  std::vector<long> branch1, branch2;  // both start with vertex 1
  long leaf1 = 1, leaf2 = 1;
  bool single_branch = true;
};

Quiver validate_quiver(const IntMat& adjacency, const IntVec& dims);
VertexStats vertex_stats(const Quiver& q);
bool is_fano_certificate(const Quiver& q);
// reflected_head = 0 applies the default rule (longer chain unreflected, ties to the
// smaller first vertex); otherwise the chain starting at that vertex is reflected.
YShapeDecomposition y_shape_decompose(const Quiver& q, long reflected_head = 0);

// s_i - s'_i, the coefficient of det(W_i) in the anticanonical class
IntVec anticanonical_coefficients(const Quiver& q);

Quiver quiver_from_json(const nlohmann::json& j);
nlohmann::json quiver_to_json(const Quiver& q);

// Convenience constructors for common families.
Quiver grassmannian(long n, long r);
Quiver quiver_from_arrows(long vertices, const std::vector<std::array<long, 3>>& arrows,
                          const IntVec& dims);

}  // namespace qf
