#include "qf/coords.hpp"

namespace qf {

namespace {

SymMatrix fresh_block(long vertex, long rows, long cols) {
  SymMatrix m{rows, cols, {}};
  m.a.assign(rows, std::vector<std::optional<Variable>>(cols));
  for (long j = 0; j < rows; ++j)
    for (long k = 0; k < cols; ++k) m.a[j][k] = Variable{vertex, j + 1, k + 1};
  return m;
}

}  // namespace

CoordinateMatrices build_matrices(const Quiver& q) { return build_matrices(q, y_shape_decompose(q)); }

CoordinateMatrices build_matrices(const Quiver& q, const YShapeDecomposition& y) {
  VertexStats st = vertex_stats(q);
  CoordinateMatrices cm;
  cm.leaf1 = y.leaf1;
  cm.leaf2 = y.leaf2;
  cm.a[1] = fresh_block(1, st.s[1] - q.dims[1], st.s_tilde[1]);
  cm.branch_of[1] = 1;

  auto extend = [&](const std::vector<long>& chain, int branch) {
    for (std::size_t idx = 1; idx < chain.size(); ++idx) {
      long i = chain[idx], p = chain[idx - 1];
      const SymMatrix& prev = cm.a.at(p);
      long n0 = q.adjacency[0][i];
      long fresh_rows = st.s[i] - q.dims[i];
      SymMatrix m{fresh_rows + prev.rows, st.s_tilde[i], {}};
      m.a.assign(m.rows, std::vector<std::optional<Variable>>(m.cols));
      SymMatrix x = fresh_block(i, fresh_rows, m.cols);
      if (branch == 1) {
        for (long j = 0; j < fresh_rows; ++j) m.a[j] = x.a[j];
        for (long j = 0; j < prev.rows; ++j)
          for (long k = 0; k < prev.cols; ++k) m.a[fresh_rows + j][n0 + k] = prev.a[j][k];
      } else {
        for (long j = 0; j < prev.rows; ++j)
          for (long k = 0; k < prev.cols; ++k) m.a[j][k] = prev.a[j][k];
        for (long j = 0; j < fresh_rows; ++j) m.a[prev.rows + j] = x.a[j];
      }
      cm.a[i] = m;
      cm.branch_of[i] = branch;
    }
  };
  extend(y.branch1, 1);
  extend(y.branch2, 2);
  long shift2 = st.s_tilde[y.leaf1] - st.s_tilde[1];
  for (auto& [i, b] : cm.branch_of) cm.col_shift[i] = (b == 2) ? shift2 : st.s_tilde[y.leaf1] - st.s_tilde[i];
  cm.col_shift[1] = shift2;
  return cm;
}

}  // namespace qf
