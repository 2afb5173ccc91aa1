#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qf/coords.hpp"

namespace qf {

// Total order on the coordinate variables; rank 0 is the largest variable.
// Blocks: the branch-1 chain from its leaf down to vertex 2-side, then A_1,
// then the branch-2 chain outward; inside a block, row-major.
struct VariableOrder {
  std::map<Variable, long> rank;
  bool greater(const Variable& a, const Variable& b) const { return rank.at(a) < rank.at(b); }
};
VariableOrder plucker_order(const CoordinateMatrices& cm, const YShapeDecomposition& y);

using Monomial = std::vector<Variable>;  // sorted multiset

Monomial diagonal_term(const SymMatrix& m, const std::vector<long>& sigma);
// Signed permutation expansion of the maximal minor on columns sigma (1-based).
// Exact for up to 8 rows; throws TooLarge beyond.
std::map<Monomial, long> expand_minor(const SymMatrix& m, const std::vector<long>& sigma);
// Leading monomial of the minor under lex order, nullopt if the minor vanishes.
// Above 8 rows vanishing is decided by random evaluation modulo a prime
// (three tries) and the diagonal is returned unverified.
std::optional<Monomial> initial_term(const SymMatrix& m, const std::vector<long>& sigma,
                                     const VariableOrder& ord);
// lex comparison of two monomials of equal degree
bool lex_greater(const Monomial& a, const Monomial& b, const VariableOrder& ord);

struct MinorTerm {
  std::vector<long> sigma;
  Monomial initial;
  bool diagonal = true;  // initial term equals the diagonal monomial
};
std::vector<MinorTerm> nonzero_minors(const SymMatrix& m, const VariableOrder& ord);
std::vector<MinorTerm> nonzero_minors_parallel(const SymMatrix& m, const VariableOrder& ord);

struct VertexBijection {
  long vertex = 0;
  long minors = 0, paths = 0;
  bool diagonal_initial = true;
  bool equal = true;
  std::vector<std::string> mismatches;
};
struct BijectionReport {
  std::vector<VertexBijection> vertices;
  bool pass = true;
};
BijectionReport verify_path_bijection(const Quiver& q);

struct KernelReport {
  long degree = 0;
  long multisets = 0;
  long classes = 0;     // distinct initial monomials
  long relations = 0;   // classes holding more than one multiset of minors
  std::vector<std::string> mismatches;
  bool pass = true;
};
// Multisets of up to d sections across all vertices: equal arrow multisets,
// equal edge-support multisets and equal initial monomials must coincide.
KernelReport verify_binomial_kernels(const Quiver& q, long d);

// Decorations of the rows of M_1 (branch-1 rows above A_1) and of M_2,
// in global column numbering.
struct SkewTableau {
  std::vector<std::vector<long>> upper;  // rows of M_1 outside A_1, top to bottom
  std::vector<std::vector<long>> lower;  // rows of M_2, top to bottom
  auto operator<=>(const SkewTableau&) const = default;
};

struct TableauFrame {
  const SymMatrix* m1 = nullptr;
  const SymMatrix* m2 = nullptr;
  long upper_rows = 0;  // rows of M_1 above the A_1 block
  long shift1 = 0, shift2 = 0;
};
TableauFrame tableau_frame(const CoordinateMatrices& cm, const Quiver& q);

SkewTableau encode_tableau(const Monomial& mono, const TableauFrame& fr);
Monomial decode_tableau(const SkewTableau& t, const TableauFrame& fr);

// The three row/column conditions; upper rows are right-aligned at the
// length of the first lower row, lower rows are left-aligned.
bool tableau_rows_upper(const SkewTableau& t);
bool tableau_boundary(const SkewTableau& t);
bool tableau_rows_lower(const SkewTableau& t);
bool is_semistandard(const SkewTableau& t);

struct SemistandardResult {
  long count = 0;
  std::vector<SkewTableau> tableaux;
  long oracle = 0;  // distinct products of initial terms
  bool equal_sets = true;
};
// multidegree: quiver vertex -> number of minors of A_i
SemistandardResult enumerate_semistandard(const Quiver& q, const std::map<long, long>& multidegree);

nlohmann::json bijection_to_json(const BijectionReport& r);
nlohmann::json kernel_to_json(const KernelReport& r);
nlohmann::json tableau_to_json(const SkewTableau& t);

}  // namespace qf
