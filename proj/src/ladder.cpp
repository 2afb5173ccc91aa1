#include "qf/ladder.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "qf/coords.hpp"

namespace qf {

std::string role_name(Role r) {
  switch (r) {
    case Role::Source: return "source";
    case Role::Origin1: return "origin1";
    case Role::External: return "external";
    case Role::Interior: return "interior";
    case Role::Intersection: return "intersection";
  }
  return "?";
}

std::string variable_name(const Variable& v) {
  return "x" + std::to_string(v.vertex) + "_" + std::to_string(v.row) + "_" + std::to_string(v.col);
}

long LadderQuiver::index_of(const Point& p) const {
  auto it = std::find(vertices.begin(), vertices.end(), p);
  if (it == vertices.end()) return -1;
  return (long)(it - vertices.begin());
}

namespace {

struct ChainLadder {
  std::set<Point> boxes;
  std::map<Point, std::set<Role>> marked;
  std::map<long, Point> external;
};

// Ladder of a single chain 1 -> i_2 -> ... in the frame with the source at (0,0).
ChainLadder chain_ladder(const Quiver& q, const VertexStats& st, const std::vector<long>& chain) {
  ChainLadder cl;
  std::vector<long> w, r;
  for (long v : chain) {
    w.push_back(st.s_tilde[v] - q.dims[v]);
    r.push_back(q.dims[v]);
  }
  for (std::size_t b = 0; b < chain.size(); ++b) {
    for (long x = 0; x < w[b]; ++x)
      for (long y = 0; y < r[b]; ++y) {
        bool cut = false;
        for (std::size_t p = 0; p < b && !cut; ++p) cut = x < w[p] && y >= r[p];
        if (!cut) cl.boxes.insert({x, y});
      }
  }
  auto has = [&](long x, long y) { return cl.boxes.count({x, y}) > 0; };
  cl.marked[{0, 0}].insert(Role::Source);
  for (std::size_t b = 0; b < chain.size(); ++b) {
    for (long a = 1; a < w[b]; ++a)
      for (long c = 1; c < r[b]; ++c)
        if (has(a - 1, c - 1) && has(a, c - 1) && has(a - 1, c) && has(a, c))
          cl.marked[{a, c}].insert(Role::Interior);
    Point corner{w[b], r[b]};
    cl.marked[corner].insert(Role::External);
    cl.external[chain[b]] = corner;
    if (b > 0) cl.marked[{w[b - 1], std::min(r[b], r[b - 1])}].insert(Role::Intersection);
  }
  return cl;
}

std::set<Edge> box_edges(const std::set<Point>& boxes) {
  std::set<Edge> e;
  for (const Point& b : boxes) {
    e.insert({{b.x, b.y}, false});
    e.insert({{b.x, b.y + 1}, false});
    e.insert({{b.x, b.y}, true});
    e.insert({{b.x + 1, b.y}, true});
  }
  return e;
}

}  // namespace

LadderDiagram build_ladder(const Quiver& q) { return build_ladder(q, y_shape_decompose(q)); }

LadderDiagram build_ladder(const Quiver& q, const YShapeDecomposition& y) {
  LadderDiagram ld;
  ld.quiver = q;
  ld.shape = y;
  ld.stats = vertex_stats(q);
  if (!is_fano_certificate(q)) throw Error("NotFano", "some s_i <= s'_i");
  const auto& st = ld.stats;

  ChainLadder one = chain_ladder(q, st, ld.shape.branch1);
  ld.boxes = one.boxes;
  ld.marked = one.marked;
  ld.external = one.external;
  ld.branch_boxes.push_back(one.boxes);
  for (long v : ld.shape.branch1) ld.branch_of[v] = 1;
  ld.origin1 = ld.external.at(1);
  ld.marked[ld.origin1].insert(Role::Origin1);

  if (!ld.shape.single_branch) {
    ChainLadder two = chain_ladder(q, st, ld.shape.branch2);
    long w1 = st.s_tilde[1] - q.dims[1], r1 = q.dims[1];
    ld.rot_x = w1;
    ld.rot_y = r1;
    auto pt = [&](Point p) { return Point{w1 - p.x, r1 - p.y}; };
    std::set<Point> boxes2;
    for (const Point& b : two.boxes) boxes2.insert({w1 - 1 - b.x, r1 - 1 - b.y});
    ld.branch_boxes.push_back(boxes2);
    ld.boxes.insert(boxes2.begin(), boxes2.end());
    for (const auto& [p, roles] : two.marked) {
      std::set<Role> rr = roles;
      // the branch-2 source image is O_1, its v_1 image is the true source
      rr.erase(Role::Source);
      if (p == two.external.at(1)) rr.erase(Role::External);
      ld.marked[pt(p)].insert(rr.begin(), rr.end());
    }
    for (std::size_t b = 1; b < ld.shape.branch2.size(); ++b) {
      long v = ld.shape.branch2[b];
      ld.external[v] = pt(two.external.at(v));
      ld.branch_of[v] = 2;
    }
  }
  return ld;
}

LadderQuiver build_ladder_quiver(const LadderDiagram& ld, ArrowScope scope) {
  LadderQuiver lq;
  lq.vertices.push_back(ld.source);
  std::vector<Point> rest;
  for (const auto& [p, roles] : ld.marked)
    if (p != ld.source) rest.push_back(p);
  std::sort(rest.begin(), rest.end(), [](const Point& a, const Point& b) {
    if (a.x + a.y != b.x + b.y) return a.x + a.y < b.x + b.y;
    return a.y < b.y;
  });
  lq.vertices.insert(lq.vertices.end(), rest.begin(), rest.end());
  std::map<Point, long> idx;
  for (std::size_t i = 0; i < lq.vertices.size(); ++i) idx[lq.vertices[i]] = (long)i;

  std::vector<std::set<Edge>> regions;
  if (scope == ArrowScope::Union) {
    regions.push_back(box_edges(ld.boxes));
  } else {
    for (const auto& bb : ld.branch_boxes) regions.push_back(box_edges(bb));
  }

  std::set<std::pair<std::pair<long, long>, std::vector<Point>>> found;
  for (const auto& edges : regions) {
    for (const Point& start : lq.vertices) {
      std::vector<Point> path{start};
      std::function<void()> walk = [&]() {
        Point cur = path.back();
        for (bool up : {false, true}) {
          Edge e{cur, up};
          if (!edges.count(e)) continue;
          Point nxt = e.to();
          path.push_back(nxt);
          auto it = idx.find(nxt);
          if (it != idx.end())
            found.insert({{idx.at(start), it->second}, path});
          else
            walk();
          path.pop_back();
        }
      };
      walk();
    }
  }
  for (const auto& [ends, support] : found) lq.arrows.push_back({ends.first, ends.second, support});
  for (const auto& [v, p] : ld.external) lq.external[v] = idx.at(p);
  lq.origin1 = idx.at(ld.origin1);
  for (const auto& [v, p] : ld.external) {
    if (ld.branch_of.at(v) == 1) {
      lq.path_start[v] = 0;
      lq.path_end[v] = idx.at(p);
    } else {
      lq.path_start[v] = idx.at(p);
      lq.path_end[v] = lq.origin1;
    }
  }
  return lq;
}

EdgeLabeling edge_labels(const LadderDiagram& ld) {
  const Quiver& q = ld.quiver;
  CoordinateMatrices cm = build_matrices(q, ld.shape);
  std::set<Edge> edges = box_edges(ld.boxes);
  long w1 = ld.stats.s_tilde[1] - q.dims[1], r1 = q.dims[1];
  EdgeLabeling lab;
  for (const auto& [v, m] : cm.a) {
    int branch = cm.branch_of.at(v);
    long wi = ld.stats.s_tilde[v] - q.dims[v], ri = q.dims[v];
    long c_lo = branch == 1 ? 0 : w1 - wi, c_hi = branch == 1 ? wi : w1;
    long y_lo = branch == 1 ? 0 : r1 - ri, y_hi = branch == 1 ? ri : r1;
    for (long c = c_lo; c < c_hi; ++c)
      for (long y = y_lo; y <= y_hi; ++y) {
        Edge e{{c, y}, false};
        if (!edges.count(e)) continue;
        long j = branch == 1 ? wi - c : w1 - c;
        long k = branch == 1 ? j + ri - y : j + r1 - y;
        if (j < 1 || j > m.rows || k < 1 || k > m.cols) continue;
        const auto& cell = m.at(j, k);
        if (!cell) continue;
        auto [it, fresh] = lab.emplace(e, *cell);
        if (!fresh && !(it->second == *cell))
          throw Error("LabelConflict", "edge at (" + std::to_string(c) + "," + std::to_string(y) +
                                           ") gets " + variable_name(it->second) + " and " +
                                           variable_name(*cell));
      }
  }
  return lab;
}

std::vector<LadderPath> paths_between(const LadderQuiver& lq, long a, long b) {
  std::vector<std::vector<long>> out(lq.vertices.size());
  for (std::size_t i = 0; i < lq.arrows.size(); ++i) out[lq.arrows[i].src].push_back((long)i);
  std::vector<LadderPath> res;
  LadderPath cur;
  std::function<void(long)> go = [&](long v) {
    if (v == b) {
      res.push_back(cur);
      return;
    }
    for (long ai : out[v]) {
      cur.push_back(ai);
      go(lq.arrows[ai].tgt);
      cur.pop_back();
    }
  };
  go(a);
  return res;
}

std::vector<Edge> support_edges(const std::vector<Point>& s) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) e.push_back({s[i], s[i + 1].x == s[i].x});
  return e;
}

std::vector<Edge> path_edges(const LadderQuiver& lq, const LadderPath& p) {
  std::vector<Edge> e;
  for (long ai : p) {
    auto s = support_edges(lq.arrows[ai].support);
    e.insert(e.end(), s.begin(), s.end());
  }
  return e;
}

std::vector<Variable> label_product(const EdgeLabeling& lab, const LadderQuiver& lq,
                                    const LadderPath& p) {
  std::vector<Variable> m;
  for (const Edge& e : path_edges(lq, p)) {
    if (e.up) continue;
    auto it = lab.find(e);
    if (it == lab.end())
      throw Error("Unlabeled", "horizontal edge at (" + std::to_string(e.from.x) + "," +
                                   std::to_string(e.from.y) + ") has no label");
    m.push_back(it->second);
  }
  std::sort(m.begin(), m.end());
  return m;
}

nlohmann::json ladder_to_json(const LadderDiagram& ld, const LadderQuiver& lq) {
  using nlohmann::json;
  json boxes = json::array();
  for (const Point& b : ld.boxes) boxes.push_back({b.x, b.y});
  json marked = json::array();
  for (std::size_t i = 0; i < lq.vertices.size(); ++i) {
    const Point& p = lq.vertices[i];
    json roles = json::array();
    for (Role r : ld.marked.at(p)) roles.push_back(role_name(r));
    json mv{{"index", i}, {"point", {p.x, p.y}}, {"roles", roles}};
    for (const auto& [v, pv] : ld.external)
      if (pv == p) mv["quiver_vertex"] = v;
    marked.push_back(mv);
  }
  json arrows = json::array();
  for (const Arrow& a : lq.arrows) {
    json s = json::array();
    for (const Point& p : a.support) s.push_back({p.x, p.y});
    arrows.push_back({{"source", a.src}, {"target", a.tgt}, {"support", s}});
  }
  return json{{"schema", 1}, {"boxes", boxes}, {"marked_vertices", marked}, {"arrows", arrows}};
}

std::string render_ascii(const LadderDiagram& ld) {
  long xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const Point& b : ld.boxes) {
    xmin = std::min(xmin, b.x);
    xmax = std::max(xmax, b.x + 1);
    ymin = std::min(ymin, b.y);
    ymax = std::max(ymax, b.y + 1);
  }
  std::ostringstream os;
  // each lattice point takes one char, each unit edge two chars
  for (long y = ymax; y >= ymin; --y) {
    std::string line, below;
    for (long x = xmin; x <= xmax; ++x) {
      auto it = ld.marked.find({x, y});
      bool corner = ld.boxes.count({x, y}) || ld.boxes.count({x - 1, y}) ||
                    ld.boxes.count({x, y - 1}) || ld.boxes.count({x - 1, y - 1});
      line += it != ld.marked.end() ? (x == 0 && y == 0 ? 'O' : '*') : (corner ? '+' : ' ');
      if (x < xmax) {
        bool h = ld.boxes.count({x, y}) || ld.boxes.count({x, y - 1});
        line += h ? "--" : "  ";
      }
      if (y > ymin) {
        bool v = ld.boxes.count({x, y - 1}) || ld.boxes.count({x - 1, y - 1});
        below += v ? '|' : ' ';
        if (x < xmax) below += "  ";
      }
    }
    os << line << "\n";
    if (y > ymin) os << below << "\n";
  }
  return os.str();
}

}  // namespace qf
