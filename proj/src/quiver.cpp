#include "qf/quiver.hpp"

#include <array>
#include <numeric>

namespace qf {

Quiver validate_quiver(const IntMat& adj, const IntVec& dims) {
  long n = (long)adj.size();
  for (const auto& row : adj)
    if ((long)row.size() != n) throw Error("BadInput", "adjacency matrix is not square");
  if ((long)dims.size() != n) throw Error("BadInput", "dims length does not match adjacency");
  if (n == 0) throw Error("BadInput", "empty quiver");
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      if (adj[i][j] < 0) throw Error("BadInput", "negative arrow multiplicity");
      if (i >= j && adj[i][j] != 0)
        throw Error("NotAcyclic", "arrow " + std::to_string(i) + "->" + std::to_string(j) +
                                      " breaks the topological order");
    }
  if (dims[0] != 1) throw Error("BadDimensionVector", "r_0 must be 1");
  for (long i = 1; i < n; ++i)
    if (dims[i] <= 0) throw Error("BadDimensionVector", "r_" + std::to_string(i) + " <= 0");
  for (long i = 1; i < n; ++i) {
    bool has_in = false;
    for (long j = 0; j < i; ++j) has_in = has_in || adj[j][i] > 0;
    if (!has_in) throw Error("MultipleSources", "vertex " + std::to_string(i) + " has no incoming arrow");
  }
  // every vertex has an in-arrow from a smaller index, so connectivity follows;
  // keep the explicit check anyway for clarity of the contract
  std::vector<bool> seen(n, false);
  std::vector<long> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    long v = stack.back();
    stack.pop_back();
    for (long w = 0; w < n; ++w)
      if (!seen[w] && (adj[v][w] > 0 || adj[w][v] > 0)) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  for (long i = 0; i < n; ++i)
    if (!seen[i]) throw Error("Disconnected", "vertex " + std::to_string(i) + " is unreachable");

  Quiver q{n, adj, dims};
  VertexStats st = vertex_stats(q);
  for (long i = 1; i < n; ++i)
    if (st.s[i] <= dims[i])
      throw Error("DegenerateStep", "s_" + std::to_string(i) + " = " + std::to_string(st.s[i]) +
                                        " <= r_" + std::to_string(i));
  return q;
}

VertexStats vertex_stats(const Quiver& q) {
  long n = q.vertex_count;
  VertexStats st;
  st.s.assign(n, 0);
  st.s_prime.assign(n, 0);
  st.s_tilde.assign(n, 0);
  st.dim_contribution.assign(n, 0);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      st.s[j] += q.adjacency[i][j] * q.dims[i];
      st.s_prime[i] += q.adjacency[i][j] * q.dims[j];
    }
  for (long i = 1; i < n; ++i) {
    st.s_tilde[i] = q.adjacency[0][i];
    for (long j = 1; j < i; ++j) st.s_tilde[i] += q.adjacency[j][i] * st.s_tilde[j];
    st.dim_contribution[i] = q.dims[i] * (st.s[i] - q.dims[i]);
    st.total_dim += st.dim_contribution[i];
  }
  return st;
}

bool is_fano_certificate(const Quiver& q) {
  VertexStats st = vertex_stats(q);
  for (long i = 1; i < q.vertex_count; ++i)
    if (st.s[i] <= st.s_prime[i]) return false;
  return true;
}

IntVec anticanonical_coefficients(const Quiver& q) {
  VertexStats st = vertex_stats(q);
  IntVec c(q.vertex_count, 0);
  for (long i = 1; i < q.vertex_count; ++i) c[i] = st.s[i] - st.s_prime[i];
  return c;
}

YShapeDecomposition y_shape_decompose(const Quiver& q, long reflected_head) {
  long n = q.vertex_count;
  auto fail = [](const std::string& why) -> YShapeDecomposition {
    throw Error("NotYShaped", why);
  };
  YShapeDecomposition y;
  if (n < 2) fail("no non-source vertex");
  for (long j = 2; j < n; ++j) {
    long from_nonsource = 0;
    for (long i = 1; i < j; ++i) {
      if (q.adjacency[i][j] > 1) fail("multiple arrow " + std::to_string(i) + "->" + std::to_string(j));
      from_nonsource += q.adjacency[i][j];
    }
    if (from_nonsource > 1) fail("vertex " + std::to_string(j) + " has two non-source in-arrows");
    if (from_nonsource == 0) fail("vertex " + std::to_string(j) + " is not reachable from 1");
  }
  std::vector<std::vector<long>> succ(n);
  for (long i = 1; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      if (q.adjacency[i][j]) succ[i].push_back(j);
  if (succ[1].size() > 2) fail("vertex 1 has more than two out-arrows");
  for (long i = 2; i < n; ++i)
    if (succ[i].size() > 1) fail("vertex " + std::to_string(i) + " has more than one out-arrow");

  std::vector<std::vector<long>> chains;
  for (long start : succ[1]) {
    std::vector<long> c{1};
    for (long v = start;; v = succ[v][0]) {
      c.push_back(v);
      if (succ[v].empty()) break;
    }
    chains.push_back(c);
  }
  if (chains.empty()) {
    y.branch1 = {1};
    y.branch2 = {1};
  } else if (chains.size() == 1) {
    y.branch1 = chains[0];
    y.branch2 = {1};
  } else {
    // longer chain stays unreflected; ties go to the smaller first vertex
    auto& a = chains[0];
    auto& b = chains[1];
    bool a_first = a.size() > b.size() || (a.size() == b.size() && a[1] < b[1]);
    if (reflected_head == a[1]) a_first = false;
    if (reflected_head == b[1]) a_first = true;
    y.branch1 = a_first ? a : b;
    y.branch2 = a_first ? b : a;
    y.single_branch = false;
  }
  y.leaf1 = y.branch1.back();
  y.leaf2 = y.branch2.back();
  return y;
}

Quiver quiver_from_json(const nlohmann::json& j) {
  IntMat adj = j.at("adjacency").get<IntMat>();
  IntVec dims = j.at("dims").get<IntVec>();
  return validate_quiver(adj, dims);
}

nlohmann::json quiver_to_json(const Quiver& q) {
  return nlohmann::json{{"adjacency", q.adjacency}, {"dims", q.dims}};
}

Quiver grassmannian(long n, long r) {
  return validate_quiver({{0, n}, {0, 0}}, {1, r});
}

Quiver quiver_from_arrows(long vertices, const std::vector<std::array<long, 3>>& arrows,
                          const IntVec& dims) {
  IntMat adj(vertices, IntVec(vertices, 0));
  for (const auto& a : arrows) adj[a[0]][a[1]] += a[2];
  return validate_quiver(adj, dims);
}

}  // namespace qf
