#pragma once

#include "kochtrace/rational.hpp"
#include "kochtrace/tree.hpp"
#include "kochtrace/tree_function.hpp"

#include <string>
#include <vector>

namespace koch {

// Planar points in lattice coordinates: p = u*e1 + v*e2 with e1 = (1,0),
// e2 = rot60(e1).  Both coordinates of every construction point are
// rational in this basis.  Euclidean quantities: |p|^2 = u^2 + u*v + v^2
// (exact), areas carry a factor sqrt(3)/2 per lattice-area unit.
struct SPoint {
  Rat u;
  Rat v;
  bool operator==(const SPoint& o) const { return u == o.u && v == o.v; }
  bool operator!=(const SPoint& o) const { return !(*this == o); }
};

SPoint sp_add(const SPoint& a, const SPoint& b);
SPoint sp_sub(const SPoint& a, const SPoint& b);
SPoint sp_scale(const SPoint& a, const Rat& s);
SPoint rot60(const SPoint& p, int k); // rotation by k*60 degrees, any int k
Rat sp_norm2(const SPoint& p);        // Euclidean squared length
Rat sp_dot(const SPoint& a, const SPoint& b);   // Euclidean dot product
Rat sp_cross(const SPoint& a, const SPoint& b); // lattice cross; Euclidean = *sqrt(3)/2

// Closed counterclockwise curve approximant K_n starting at the corner
// (0,0); bumps point outward, 3*4^n segments of length 3^-n each.
struct KochPolyline {
  int generation = 0;
  std::vector<SPoint> vertices;
};

KochPolyline generate_koch(int n, int max_depth = 10);

// Counterclockwise simple polygon of the covering.
struct WhitneyPolygon {
  VertexId id;
  Kind kind = Kind::Star;
  int generation = 0;
  std::vector<SPoint> vertices;
};

// Root star plus all pieces of generations 1..n, preorder.
std::vector<WhitneyPolygon> build_whitney_polygons(int n);

// Lattice area (shoelace/2); multiply by sqrt(3)/2 for the Euclidean one.
Rat polygon_area(const WhitneyPolygon& p);

// Point of the snowflake boundary at the given torus position (exact
// digit-grid positions only).
SPoint boundary_point_euclid(const Rat& pos);

struct WhitneyEdge {
  VertexId a; // a < b
  VertexId b;
  Rat shared_length;    // Euclidean, positive
  bool same_generation; // false = parent/child
};

struct WhitneyGraph {
  std::vector<VertexId> vertices;
  std::vector<WhitneyEdge> edges; // sorted by (a, b)
};

// Edges between polygons whose boundaries share positive length.
WhitneyGraph adjacency_graph(const std::vector<WhitneyPolygon>& polys);

// Graph total-variation seminorm: |f_A - f_B| * 3^-max(gen) summed over
// the adjacency edges, truncated at `depth`, plus the exact tail of the
// wall columns (one same-generation edge per level below every deepest
// same-generation edge).  Requires depth >= support depth of f and a graph
// built from polygons of that depth.
Rat graph_bv_norm(const TreeFunction& f, const WhitneyGraph& g, int depth);

struct ValidationReport {
  int depth = 0;
  long long polygon_count = 0;

  bool simple_ok = false;       // simple, counterclockwise, correct vertex counts
  bool similarity_ok = false;   // edge pattern and area scale as 3^-gen copies
  bool disjoint_ok = false;     // pairwise disjoint interiors
  bool area_identity_ok = false; // covered area + analytic tail = snowflake area
  bool coverage_ok = false;     // lattice sample of the depth-2 interior strip
  bool volume_distance_ok = false; // vol ~ dist(.,boundary)^2 with per-kind constants
  bool constants_stable = false;   // per-kind constants equal from generation 2 on
  bool degrees_ok = false;      // root 6, pants 8, palace 6 on interior generations
  bool tree_edges_ok = false;   // parent/child edges reproduce the combinatorial tree
  bool kernel_ok = false;       // star-shaped: kernel ball comparable to diameter

  int max_degree = 0;
  Rat star_vol_dist_ratio;   // lattice area / Euclidean dist^2, vs K_{gen+2}
  Rat pants_vol_dist_ratio;
  Rat palace_vol_dist_ratio;
  Rat min_kernel_ratio;      // min over kinds of inradius^2/diam^2 of the kernel ball
  std::vector<std::string> failures; // offending ids with reasons

  bool ok() const {
    return simple_ok && similarity_ok && disjoint_ok && area_identity_ok &&
           coverage_ok && volume_distance_ok && constants_stable && degrees_ok &&
           tree_edges_ok && kernel_ok;
  }
};

// Exact validation of the covering built to the given depth.
ValidationReport validate_whitney(const std::vector<WhitneyPolygon>& polys);

struct SvgOptions {
  double width = 800.0;
  double margin = 20.0;
};

void export_svg(const std::vector<WhitneyPolygon>& polys, const std::string& path,
                const SvgOptions& opts = {});
void export_svg(const KochPolyline& curve, const std::string& path,
                const SvgOptions& opts = {});

} // namespace koch
