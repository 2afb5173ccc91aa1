#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qf/quiver.hpp"

namespace qf {

struct Point {
  long x = 0, y = 0;
  auto operator<=>(const Point&) const = default;
};

// Unit grid edge starting at `from`, going right or up.
struct Edge {
  Point from;
  bool up = false;
  Point to() const { return up ? Point{from.x, from.y + 1} : Point{from.x + 1, from.y}; }
  auto operator<=>(const Edge&) const = default;
};

enum class Role { Source, Origin1, External, Interior, Intersection };
std::string role_name(Role r);

struct LadderDiagram {
  Quiver quiver;
  YShapeDecomposition shape;
  VertexStats stats;
  std::set<Point> boxes;                      // lower-left corners
  std::map<Point, std::set<Role>> marked;
  std::map<long, Point> external;             // quiver vertex -> v_i
  Point source{0, 0};
  Point origin1;                              // = v_1
  std::vector<std::set<Point>> branch_boxes;  // one set per branch
  std::map<long, int> branch_of;              // quiver vertex -> 1 or 2 (vertex 1 -> 1)
  // branch 2 is built in its own frame and then sent through
  // (x, y) -> (w_1 - x, r_1 - y); recorded for reporting
  long rot_x = 0, rot_y = 0;
};

struct Arrow {
  long src = 0, tgt = 0;       // ladder vertex indices
  std::vector<Point> support;  // lattice points from src to tgt
};

struct LadderQuiver {
  std::vector<Point> vertices;  // vertices[0] is the source
  std::vector<Arrow> arrows;
  std::map<long, long> external;  // quiver vertex -> ladder vertex index
  long origin1 = 0;
  // sections of L_i are paths from path_start[i] to path_end[i]
  std::map<long, long> path_start, path_end;
  long index_of(const Point& p) const;
};

struct Variable {
  long vertex = 0, row = 0, col = 0;  // x^{(vertex)}_{row col}, 1-based row/col
  auto operator<=>(const Variable&) const = default;
};
std::string variable_name(const Variable& v);

using EdgeLabeling = std::map<Edge, Variable>;

enum class ArrowScope { Union, PerBranch };

LadderDiagram build_ladder(const Quiver& q);
LadderDiagram build_ladder(const Quiver& q, const YShapeDecomposition& y);
LadderQuiver build_ladder_quiver(const LadderDiagram& ld, ArrowScope scope = ArrowScope::PerBranch);
EdgeLabeling edge_labels(const LadderDiagram& ld);

using LadderPath = std::vector<long>;  // arrow indices
std::vector<LadderPath> paths_between(const LadderQuiver& lq, long a, long b);

// All unit edges traversed by a path, in order.
std::vector<Edge> path_edges(const LadderQuiver& lq, const LadderPath& p);
std::vector<Edge> support_edges(const std::vector<Point>& support);

// Monomial attached to a path: sorted multiset of edge labels.
std::vector<Variable> label_product(const EdgeLabeling& lab, const LadderQuiver& lq,
                                    const LadderPath& p);

nlohmann::json ladder_to_json(const LadderDiagram& ld, const LadderQuiver& lq);
std::string render_ascii(const LadderDiagram& ld);

}  // namespace qf
