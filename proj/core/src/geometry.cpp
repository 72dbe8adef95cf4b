#include "kochtrace/geometry.hpp"

#include "kochtrace/error.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace koch {

SPoint sp_add(const SPoint& a, const SPoint& b) { return {a.u + b.u, a.v + b.v}; }
SPoint sp_sub(const SPoint& a, const SPoint& b) { return {a.u - b.u, a.v - b.v}; }
SPoint sp_scale(const SPoint& a, const Rat& s) { return {a.u * s, a.v * s}; }

SPoint rot60(const SPoint& p, int k) {
  int r = k % 6;
  if (r < 0) r += 6;
  switch (r) {
    case 0: return p;
    case 1: return {-p.v, p.u + p.v};
    case 2: return {-p.u - p.v, p.u};
    case 3: return {-p.u, -p.v};
    case 4: return {p.v, -p.u - p.v};
    default: return {p.u + p.v, -p.u};
  }
}

Rat sp_norm2(const SPoint& p) { return p.u * p.u + p.u * p.v + p.v * p.v; }

Rat sp_dot(const SPoint& a, const SPoint& b) {
  return a.u * b.u + (a.u * b.v + a.v * b.u) / 2 + a.v * b.v;
}

Rat sp_cross(const SPoint& a, const SPoint& b) { return a.u * b.v - a.v * b.u; }

namespace {

SPoint sp(long long un, long long ud, long long vn, long long vd) {
  return {make_rat(un, ud), make_rat(vn, vd)};
}

// Reference polygons in the local frame of their own generation-1 copy,
// counterclockwise.  The walls (the two edges of lattice length 4/9) lie on
// the valley lines of the piece; the ceiling faces the parent.
const std::vector<SPoint>& star_reference() {
  static const std::vector<SPoint> v = {
      sp(2, 9, 2, 9), sp(1, 3, 2, 9), sp(4, 9, 1, 9), sp(4, 9, 2, 9),
      sp(5, 9, 2, 9), sp(4, 9, 1, 3), sp(4, 9, 4, 9), sp(1, 3, 4, 9),
      sp(2, 9, 5, 9), sp(2, 9, 4, 9), sp(1, 9, 4, 9), sp(2, 9, 1, 3)};
  return v;
}

const std::vector<SPoint>& pants_reference() {
  static const std::vector<SPoint> v = {
      sp(-1, 1, 11, 9), sp(-4, 9, 2, 3), sp(-4, 9, 5, 9), sp(-1, 3, 5, 9),
      sp(-2, 9, 4, 9),  sp(-2, 9, 5, 9), sp(-1, 9, 5, 9), sp(-2, 9, 2, 3),
      sp(-2, 9, 11, 9), sp(-2, 3, 5, 3), sp(-2, 3, 4, 3), sp(-1, 1, 5, 3)};
  return v;
}

const std::vector<SPoint>& palace_reference() {
  static const std::vector<SPoint> v = {
      sp(-2, 9, 2, 9), sp(1, 3, 2, 9), sp(4, 9, 1, 9), sp(4, 9, 2, 9),
      sp(1, 1, 2, 9),  sp(1, 1, 2, 3), sp(-2, 3, 2, 3)};
  return v;
}

const std::vector<SPoint>& reference_polygon(Kind k) {
  switch (k) {
    case Kind::Star: return star_reference();
    case Kind::Pants: return pants_reference();
    default: return palace_reference();
  }
}

Rat shoelace2(const std::vector<SPoint>& poly) {
  Rat s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const SPoint& a = poly[i];
    const SPoint& b = poly[(i + 1) % poly.size()];
    s += sp_cross(a, b);
  }
  return s;
}

Rat reference_area(Kind k) { return shoelace2(reference_polygon(k)) / 2; }

// Similarity p -> t + 3^-gen * rot60(p, rot).
struct Sim {
  SPoint t{Rat(0), Rat(0)};
  int rot = 0;
  int gen = 0;

  SPoint apply(const SPoint& p) const {
    return sp_add(t, sp_scale(rot60(p, rot), pow3_neg(gen)));
  }
};

struct ChildMap {
  int rot;
  SPoint t;
};

const std::vector<ChildMap>& child_maps(Kind k) {
  static const std::vector<ChildMap> pants = {{5, sp(-1, 1, 1, 1)},
                                              {5, sp(-2, 3, 1, 3)},
                                              {0, sp(0, 1, 0, 1)},
                                              {1, sp(1, 3, 1, 3)},
                                              {1, sp(0, 1, 2, 3)}};
  static const std::vector<ChildMap> palace = {
      {0, sp(0, 1, 0, 1)}, {0, sp(2, 3, -1, 3)}, {0, sp(2, 3, 0, 1)}};
  if (k == Kind::Star) fail(ErrorCode::ContractViolation, "star child maps are rotations");
  return k == Kind::Pants ? pants : palace;
}

Sim compose_child(const Sim& parent, const ChildMap& c) {
  Sim out;
  out.t = sp_add(parent.t, sp_scale(rot60(c.t, parent.rot), pow3_neg(parent.gen)));
  out.rot = (parent.rot + c.rot) % 6;
  out.gen = parent.gen + 1;
  return out;
}

Sim root_child_sim(int i) {
  static const SPoint m = sp(1, 3, 1, 3);
  static const SPoint d = sp(1, 3, -2, 3);
  Sim s;
  s.t = sp_add(m, rot60(d, i));
  s.rot = i;
  s.gen = 1;
  return s;
}

constexpr int kMaxBuildDepth = 7;
constexpr int kMaxCurveDepth = 12;

// ---- exact planar predicates ----------------------------------------------

int sgn_rat(const Rat& r) { return sgn(r); }

bool on_segment(const SPoint& p, const SPoint& a, const SPoint& b) {
  if (sp_cross(sp_sub(b, a), sp_sub(p, a)) != 0) return false;
  const Rat ulo = std::min(a.u, b.u), uhi = std::max(a.u, b.u);
  const Rat vlo = std::min(a.v, b.v), vhi = std::max(a.v, b.v);
  return ulo <= p.u && p.u <= uhi && vlo <= p.v && p.v <= vhi;
}

bool properly_cross(const SPoint& a, const SPoint& b, const SPoint& c, const SPoint& d) {
  const SPoint ab = sp_sub(b, a);
  const SPoint cd = sp_sub(d, c);
  const int o1 = sgn_rat(sp_cross(ab, sp_sub(c, a)));
  const int o2 = sgn_rat(sp_cross(ab, sp_sub(d, a)));
  const int o3 = sgn_rat(sp_cross(cd, sp_sub(a, c)));
  const int o4 = sgn_rat(sp_cross(cd, sp_sub(b, c)));
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segments_meet(const SPoint& a, const SPoint& b, const SPoint& c, const SPoint& d) {
  return properly_cross(a, b, c, d) || on_segment(c, a, b) || on_segment(d, a, b) ||
         on_segment(a, c, d) || on_segment(b, c, d);
}

enum class Where { Outside, Boundary, Inside };

// Closed counterclockwise region given by its vertex cycle.
Where locate_point(const SPoint& p, const std::vector<SPoint>& poly) {
  bool in = false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const SPoint& a = poly[i];
    const SPoint& b = poly[(i + 1) % poly.size()];
    if (on_segment(p, a, b)) return Where::Boundary;
    if ((a.v > p.v) != (b.v > p.v)) {
      const Rat uint_ = a.u + (p.v - a.v) * (b.u - a.u) / (b.v - a.v);
      if (uint_ > p.u) in = !in;
    }
  }
  return in ? Where::Inside : Where::Outside;
}

// Euclidean squared distance from a point to a segment.
Rat point_seg_dist2(const SPoint& p, const SPoint& a, const SPoint& b) {
  const SPoint ab = sp_sub(b, a);
  const SPoint ap = sp_sub(p, a);
  const Rat den = sp_norm2(ab);
  if (den == 0) return sp_norm2(ap);
  const Rat num = sp_dot(ap, ab);
  if (num <= 0) return sp_norm2(ap);
  if (num >= den) return sp_norm2(sp_sub(p, b));
  return sp_norm2(ap) - num * num / den;
}

// Axis box in (x, v) with x = u + v/2; squared Euclidean distance between
// two boxes is dx^2 + (3/4) dv^2 exactly.
struct XvBox {
  Rat xlo, xhi, vlo, vhi;
  bool empty = true;

  void add(const SPoint& p) {
    const Rat x = p.u + p.v / 2;
    if (empty) {
      xlo = xhi = x;
      vlo = vhi = p.v;
      empty = false;
      return;
    }
    if (x < xlo) xlo = x;
    if (x > xhi) xhi = x;
    if (p.v < vlo) vlo = p.v;
    if (p.v > vhi) vhi = p.v;
  }
};

Rat box_gap_dist2(const XvBox& a, const XvBox& b) {
  Rat dx = 0, dv = 0;
  if (b.xlo > a.xhi) dx = b.xlo - a.xhi;
  else if (a.xlo > b.xhi) dx = a.xlo - b.xhi;
  if (b.vlo > a.vhi) dv = b.vlo - a.vhi;
  else if (a.vlo > b.vhi) dv = a.vlo - b.vhi;
  return dx * dx + dv * dv * make_rat(3, 4);
}

double sp_x_double(const SPoint& p) {
  return p.u.get_d() + 0.5 * p.v.get_d();
}
double sp_y_double(const SPoint& p) { return 0.8660254037844386 * p.v.get_d(); }

// Exact squared distance between a polygon boundary and a disjoint closed
// polyline cycle.  Attained at a vertex of one side against an edge of the
// other, box pruned.
Rat polygon_boundary_dist2(const WhitneyPolygon& poly, const KochPolyline& curve) {
  const std::size_t n = curve.vertices.size();
  XvBox pbox;
  for (const SPoint& p : poly.vertices) pbox.add(p);

  double cx = 0, cy = 0;
  for (const SPoint& p : poly.vertices) {
    cx += sp_x_double(p);
    cy += sp_y_double(p);
  }
  cx /= static_cast<double>(poly.vertices.size());
  cy /= static_cast<double>(poly.vertices.size());
  std::size_t seed = 0;
  double bestd = 1e300;
  const std::size_t stride = std::max<std::size_t>(1, n / 256);
  for (std::size_t i = 0; i < n; i += stride) {
    const double dx = sp_x_double(curve.vertices[i]) - cx;
    const double dy = sp_y_double(curve.vertices[i]) - cy;
    const double d = dx * dx + dy * dy;
    if (d < bestd) {
      bestd = d;
      seed = i;
    }
  }

  Rat best;
  bool have = false;
  auto consider_segment = [&](std::size_t i) {
    const SPoint& a = curve.vertices[i];
    const SPoint& b = curve.vertices[(i + 1) % n];
    if (have) {
      XvBox sbox;
      sbox.add(a);
      sbox.add(b);
      if (box_gap_dist2(pbox, sbox) >= best) return;
    }
    for (const SPoint& p : poly.vertices) {
      const Rat d = point_seg_dist2(p, a, b);
      if (!have || d < best) {
        best = d;
        have = true;
      }
    }
  };

  consider_segment(seed);
  consider_segment((seed + n - 1) % n);
  for (std::size_t i = 0; i < n; ++i) consider_segment(i);

  for (std::size_t i = 0; i < n; ++i) {
    const SPoint& c = curve.vertices[i];
    XvBox cb;
    cb.add(c);
    if (box_gap_dist2(pbox, cb) >= best) continue;
    for (std::size_t j = 0; j < poly.vertices.size(); ++j) {
      const SPoint& a = poly.vertices[j];
      const SPoint& b = poly.vertices[(j + 1) % poly.vertices.size()];
      const Rat d = point_seg_dist2(c, a, b);
      if (d < best) best = d;
    }
  }
  return best;
}

// Kernel of a simple counterclockwise polygon: intersection of the left
// half planes of its edges, clipped starting from the bounding parallelogram.
std::vector<SPoint> kernel_polygon(const std::vector<SPoint>& poly) {
  Rat ulo = poly[0].u, uhi = poly[0].u, vlo = poly[0].v, vhi = poly[0].v;
  for (const SPoint& p : poly) {
    ulo = std::min(ulo, p.u);
    uhi = std::max(uhi, p.u);
    vlo = std::min(vlo, p.v);
    vhi = std::max(vhi, p.v);
  }
  std::vector<SPoint> subj = {{ulo, vlo}, {uhi, vlo}, {uhi, vhi}, {ulo, vhi}};
  for (std::size_t i = 0; i < poly.size() && !subj.empty(); ++i) {
    const SPoint& a = poly[i];
    const SPoint& b = poly[(i + 1) % poly.size()];
    const SPoint dir = sp_sub(b, a);
    std::vector<SPoint> out;
    for (std::size_t j = 0; j < subj.size(); ++j) {
      const SPoint& s = subj[j];
      const SPoint& e = subj[(j + 1) % subj.size()];
      const Rat ss = sp_cross(dir, sp_sub(s, a));
      const Rat se = sp_cross(dir, sp_sub(e, a));
      const bool ins = ss >= 0;
      const bool ine = se >= 0;
      if (ins) out.push_back(s);
      if (ins != ine) {
        const Rat t = ss / (ss - se);
        out.push_back(sp_add(s, sp_scale(sp_sub(e, s), t)));
      }
    }
    subj = std::move(out);
  }
  return subj;
}

struct KernelBall {
  bool ok = false;
  SPoint center{Rat(0), Rat(0)};
  Rat radius2;  // Euclidean
  Rat ratio;    // radius2 / diam2 of the polygon
};

KernelBall kernel_ball(const std::vector<SPoint>& poly) {
  KernelBall kb;
  const std::vector<SPoint> kern = kernel_polygon(poly);
  if (kern.size() < 3 || shoelace2(kern) == 0) return kb;
  SPoint c{Rat(0), Rat(0)};
  for (const SPoint& p : kern) c = sp_add(c, p);
  c = sp_scale(c, make_rat(1, static_cast<long long>(kern.size())));
  Rat r2;
  bool have = false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const SPoint& a = poly[i];
    const SPoint& b = poly[(i + 1) % poly.size()];
    const SPoint ab = sp_sub(b, a);
    const Rat cr = sp_cross(ab, sp_sub(c, a));
    const Rat d2 = cr * cr * make_rat(3, 4) / sp_norm2(ab);
    if (!have || d2 < r2) {
      r2 = d2;
      have = true;
    }
  }
  Rat diam2 = 0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j)
      diam2 = std::max(diam2, sp_norm2(sp_sub(poly[i], poly[j])));
  if (!have || r2 == 0 || diam2 == 0) return kb;
  kb.ok = true;
  kb.center = c;
  kb.radius2 = r2;
  kb.ratio = r2 / diam2;
  return kb;
}

// Recovers the orientation preserving similarity with scale 3^-gen mapping
// the reference polygon of the kind onto `poly`, allowing a cyclic vertex
// shift.  Returns false if none exists.
bool recover_similarity(const WhitneyPolygon& poly, Sim& out) {
  const std::vector<SPoint>& ref = reference_polygon(poly.kind);
  if (poly.vertices.size() != ref.size()) return false;
  const Rat scale = pow3_neg(poly.generation);
  const std::size_t n = ref.size();
  for (std::size_t shift = 0; shift < n; ++shift) {
    const SPoint d = sp_sub(poly.vertices[(shift + 1) % n], poly.vertices[shift]);
    const SPoint rd = sp_scale(sp_sub(ref[1], ref[0]), scale);
    for (int k = 0; k < 6; ++k) {
      if (rot60(rd, k) != d) continue;
      Sim s;
      s.rot = k;
      s.gen = poly.generation;
      s.t = sp_sub(poly.vertices[shift], sp_scale(rot60(ref[0], k), scale));
      bool all = true;
      for (std::size_t i = 0; i < n && all; ++i)
        all = s.apply(ref[i]) == poly.vertices[(shift + i) % n];
      if (all) {
        out = s;
        return true;
      }
    }
  }
  return false;
}

bool polygon_is_simple(const std::vector<SPoint>& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (poly[i] == poly[(i + 1) % n]) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const SPoint& a = poly[i];
    const SPoint& b = poly[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const SPoint& c = poly[j];
      const SPoint& d = poly[(j + 1) % n];
      const bool adj = (j == i + 1) || (i == 0 && j == n - 1);
      if (adj) {
        // consecutive edges may share exactly their common endpoint
        if (j == i + 1) {
          if (on_segment(d, a, b) && d != b) return false;
          if (on_segment(a, c, d) && a != c) return false;
        } else {
          if (on_segment(c, a, b) && c != a) return false;
          if (on_segment(b, c, d) && b != d) return false;
        }
        continue;
      }
      if (segments_meet(a, b, c, d)) return false;
    }
  }
  return true;
}

// Area of the covering that lies below the deepest built generation,
// derived from the one step type recursion (p,q) -> (3p+q, 2p+2q): the sums
// T_p = sum_k p_k 9^-k and T_q over the subtree below a level with counts
// (p,q) come out linear, T_p = (23p+9q)/40 and T_q = (9p+7q)/20.
Rat analytic_tail_area(int depth, long long pants_count, long long palace_count) {
  const Rat ap = reference_area(Kind::Pants);
  const Rat al = reference_area(Kind::Palace);
  if (depth == 0) {
    // six pants at generation 1: closed forms of the full sums
    return make_rat(21, 20) * ap + make_rat(3, 10) * al;
  }
  const Rat p(static_cast<long>(pants_count));
  const Rat q(static_cast<long>(palace_count));
  const Rat tp = (23 * p + 9 * q) / 40;
  const Rat tq = (9 * p + 7 * q) / 20;
  Rat scale = 1;
  for (int i = 0; i < depth; ++i) scale /= 9;
  return scale * (tp * ap + tq * al);
}

std::string id_str(const VertexId& v) { return v.str(); }

} // namespace

// ---- curve -----------------------------------------------------------------

KochPolyline generate_koch(int n, int max_depth) {
  if (n < 0) fail(ErrorCode::InvalidInput, "curve generation must be nonnegative");
  if (max_depth < 0 || max_depth > kMaxCurveDepth)
    fail(ErrorCode::ResourceLimit, "curve depth limit outside the supported range");
  if (n > max_depth) fail(ErrorCode::ResourceLimit, "curve generation above the depth limit");
  KochPolyline out;
  out.generation = n;
  out.vertices = {sp(0, 1, 0, 1), sp(1, 1, 0, 1), sp(0, 1, 1, 1)};
  for (int g = 1; g <= n; ++g) {
    std::vector<SPoint> next;
    next.reserve(out.vertices.size() * 4);
    const std::size_t m = out.vertices.size();
    for (std::size_t i = 0; i < m; ++i) {
      const SPoint& a = out.vertices[i];
      const SPoint& b = out.vertices[(i + 1) % m];
      const SPoint third = sp_scale(sp_sub(b, a), make_rat(1, 3));
      const SPoint p1 = sp_add(a, third);
      const SPoint p2 = sp_add(p1, third);
      const SPoint apex = sp_add(p1, rot60(third, 5));
      next.push_back(a);
      next.push_back(p1);
      next.push_back(apex);
      next.push_back(p2);
    }
    out.vertices = std::move(next);
  }
  return out;
}

// ---- covering --------------------------------------------------------------

std::vector<WhitneyPolygon> build_whitney_polygons(int n) {
  if (n < 0) fail(ErrorCode::InvalidInput, "covering depth must be nonnegative");
  if (n > kMaxBuildDepth) fail(ErrorCode::ResourceLimit, "covering depth above the build limit");

  std::vector<WhitneyPolygon> out;
  out.push_back({VertexId{}, Kind::Star, 0, star_reference()});

  struct Node {
    VertexId id;
    Kind kind;
    Sim sim;
  };
  std::vector<Node> frontier;
  if (n >= 1) {
    for (int i = 0; i < 6; ++i)
      frontier.push_back({VertexId{}.child(static_cast<uint8_t>(i)), Kind::Pants,
                          root_child_sim(i)});
  }
  for (int g = 1; g <= n; ++g) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      if (node.kind != kind_of(node.id))
        fail(ErrorCode::ContractViolation, "similarity tables disagree with the tree");
      WhitneyPolygon poly;
      poly.id = node.id;
      poly.kind = node.kind;
      poly.generation = g;
      const std::vector<SPoint>& ref = reference_polygon(node.kind);
      poly.vertices.reserve(ref.size());
      for (const SPoint& p : ref) poly.vertices.push_back(node.sim.apply(p));
      out.push_back(std::move(poly));
      if (g < n) {
        const std::vector<ChildMap>& maps = child_maps(node.kind);
        const std::vector<Kind>& kinds = child_kinds(node.kind);
        for (std::size_t i = 0; i < maps.size(); ++i)
          next.push_back({node.id.child(static_cast<uint8_t>(i)), kinds[i],
                          compose_child(node.sim, maps[i])});
      }
    }
    frontier = std::move(next);
  }
  return out;
}

Rat polygon_area(const WhitneyPolygon& p) { return shoelace2(p.vertices) / 2; }

SPoint boundary_point_euclid(const Rat& pos) {
  if (pos < 0 || pos >= 1) fail(ErrorCode::InvalidInput, "boundary position outside [0,1)");
  static const SPoint corners[3] = {sp(0, 1, 0, 1), sp(1, 1, 0, 1), sp(0, 1, 1, 1)};
  Rat q = pos + make_rat(1, 12);
  if (q >= 1) q -= 1;
  Rat scaled = 3 * q;
  const Rat side_floor = rat_floor(scaled);
  const long side = side_floor.get_num().get_si();
  Rat r = scaled - side_floor;
  SPoint a = corners[side];
  SPoint b = corners[(side + 1) % 3];
  for (int iter = 0; iter < 64; ++iter) {
    if (r == 0) return a;
    r *= 4;
    const Rat dfl = rat_floor(r);
    const long d = dfl.get_num().get_si();
    r -= dfl;
    const SPoint third = sp_scale(sp_sub(b, a), make_rat(1, 3));
    const SPoint p1 = sp_add(a, third);
    const SPoint p2 = sp_add(p1, third);
    const SPoint apex = sp_add(p1, rot60(third, 5));
    switch (d) {
      case 0: b = p1; break;
      case 1: a = p1; b = apex; break;
      case 2: a = apex; b = p2; break;
      default: a = p2; break;
    }
  }
  fail(ErrorCode::InvalidInput, "boundary position is not on the digit grid");
}

// ---- adjacency -------------------------------------------------------------

WhitneyGraph adjacency_graph(const std::vector<WhitneyPolygon>& polys) {
  struct Span {
    std::size_t poly;
    Rat lo, hi;
  };
  // key: lattice line (axis, offset); axis 0: v = c, 1: u = c, 2: u + v = c
  std::map<std::pair<int, Rat>, std::vector<Span>> buckets;
  for (std::size_t pi = 0; pi < polys.size(); ++pi) {
    const std::vector<SPoint>& vs = polys[pi].vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const SPoint& a = vs[i];
      const SPoint& b = vs[(i + 1) % vs.size()];
      const Rat du = b.u - a.u;
      const Rat dv = b.v - a.v;
      int axis;
      Rat c, lo, hi;
      if (dv == 0 && du != 0) {
        axis = 0;
        c = a.v;
        lo = std::min(a.u, b.u);
        hi = std::max(a.u, b.u);
      } else if (du == 0 && dv != 0) {
        axis = 1;
        c = a.u;
        lo = std::min(a.v, b.v);
        hi = std::max(a.v, b.v);
      } else if (du + dv == 0 && du != 0) {
        axis = 2;
        c = a.u + a.v;
        lo = std::min(a.u, b.u);
        hi = std::max(a.u, b.u);
      } else {
        fail(ErrorCode::InvalidInput,
             "polygon " + id_str(polys[pi].id) + " has an edge off the lattice directions");
      }
      buckets[{axis, c}].push_back({pi, std::move(lo), std::move(hi)});
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, Rat> shared;
  for (auto& [key, spans] : buckets) {
    (void)key;
    std::sort(spans.begin(), spans.end(),
              [](const Span& x, const Span& y) { return x.lo < y.lo; });
    for (std::size_t i = 0; i < spans.size(); ++i) {
      for (std::size_t j = i + 1; j < spans.size() && spans[j].lo < spans[i].hi; ++j) {
        if (spans[i].poly == spans[j].poly) continue;
        const Rat ov = std::min(spans[i].hi, spans[j].hi) - spans[j].lo;
        if (ov <= 0) continue;
        std::size_t x = spans[i].poly, y = spans[j].poly;
        if (polys[y].id < polys[x].id) std::swap(x, y);
        if (polys[x].id == polys[y].id) continue;
        shared[{x, y}] += ov;
      }
    }
  }

  WhitneyGraph g;
  g.vertices.reserve(polys.size());
  for (const WhitneyPolygon& p : polys) g.vertices.push_back(p.id);
  g.edges.reserve(shared.size());
  for (const auto& [pair_, len] : shared) {
    WhitneyEdge e;
    e.a = polys[pair_.first].id;
    e.b = polys[pair_.second].id;
    e.shared_length = len;
    e.same_generation = polys[pair_.first].generation == polys[pair_.second].generation;
    g.edges.push_back(std::move(e));
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const WhitneyEdge& x, const WhitneyEdge& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  return g;
}

Rat graph_bv_norm(const TreeFunction& f, const WhitneyGraph& g, int depth) {
  int graph_depth = 0;
  for (const VertexId& v : g.vertices) graph_depth = std::max(graph_depth, v.generation());
  if (depth != graph_depth)
    fail(ErrorCode::InvalidInput, "stated depth does not match the graph");
  if (f.support_depth() > depth)
    fail(ErrorCode::InvalidInput, "graph too shallow for the function support");

  std::map<VertexId, Rat> values;
  for (const VertexId& v : g.vertices) values.emplace(v, value_at(f, v));

  Rat total = 0;
  Rat deepest_cut = 0;
  for (const WhitneyEdge& e : g.edges) {
    const auto ia = values.find(e.a);
    const auto ib = values.find(e.b);
    if (ia == values.end() || ib == values.end())
      fail(ErrorCode::InvalidInput, "edge endpoint missing from the graph vertices");
    const Rat diff = rat_abs(ia->second - ib->second);
    if (diff == 0) continue;
    const int gen = std::max(e.a.generation(), e.b.generation());
    total += pow3_neg(gen) * diff;
    if (e.same_generation && gen == depth) deepest_cut += diff;
  }
  // below the last built generation every wall keeps exactly one edge per
  // level, so the remaining sum is a plain geometric series
  total += pow3_neg(depth) * deepest_cut / 2;
  return total;
}

// ---- validation ------------------------------------------------------------

namespace {

struct FailureLog {
  std::vector<std::string>& out;
  std::size_t limit = 40;
  std::size_t dropped = 0;

  void add(const std::string& s) {
    if (out.size() < limit) out.push_back(s);
    else ++dropped;
  }
  void flush() {
    if (dropped > 0)
      out.push_back("... and " + std::to_string(dropped) + " more failures");
  }
};

} // namespace

ValidationReport validate_whitney(const std::vector<WhitneyPolygon>& polys) {
  ValidationReport rep;
  FailureLog log{rep.failures};
  rep.polygon_count = static_cast<long long>(polys.size());
  if (polys.empty()) {
    log.add("empty polygon set");
    log.flush();
    return rep;
  }

  int depth = 0;
  for (const WhitneyPolygon& p : polys) depth = std::max(depth, p.id.generation());
  rep.depth = depth;

  // structure: exactly the tree vertices through `depth`, kinds matching
  std::map<VertexId, std::size_t> index;
  bool structure_ok = true;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const WhitneyPolygon& p = polys[i];
    if (!index.emplace(p.id, i).second) {
      log.add(id_str(p.id) + ": duplicate id");
      structure_ok = false;
      continue;
    }
    if (p.generation != p.id.generation()) {
      log.add(id_str(p.id) + ": stored generation disagrees with the id");
      structure_ok = false;
    }
    if (p.kind != kind_of(p.id)) {
      log.add(id_str(p.id) + ": stored kind disagrees with the tree");
      structure_ok = false;
    }
  }
  for (const VertexId& v : all_vertices(depth)) {
    if (!index.count(v)) {
      log.add(id_str(v) + ": missing from the polygon set");
      structure_ok = false;
    }
  }

  // per polygon shape: simple, counterclockwise, a similar copy of its
  // reference at scale exactly 3^-generation
  rep.simple_ok = true;
  rep.similarity_ok = true;
  std::vector<bool> shape_ok(polys.size(), false);
  std::vector<SPoint> interior(polys.size(), SPoint{Rat(0), Rat(0)});
  std::map<Kind, KernelBall> ref_balls;
  for (Kind k : {Kind::Star, Kind::Pants, Kind::Palace})
    ref_balls[k] = kernel_ball(reference_polygon(k));
  Rat total_area = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const WhitneyPolygon& p = polys[i];
    const std::size_t expected = reference_polygon(p.kind).size();
    if (p.vertices.size() != expected) {
      log.add(id_str(p.id) + ": wrong vertex count");
      rep.simple_ok = false;
      continue;
    }
    if (!polygon_is_simple(p.vertices)) {
      log.add(id_str(p.id) + ": not a simple polygon");
      rep.simple_ok = false;
      continue;
    }
    const Rat area = shoelace2(p.vertices) / 2;
    if (area <= 0) {
      log.add(id_str(p.id) + ": not counterclockwise");
      rep.simple_ok = false;
      continue;
    }
    Sim sim;
    if (!recover_similarity(p, sim)) {
      log.add(id_str(p.id) + ": not a 3^-gen similar copy of the " +
              std::string(kind_name(p.kind)) + " reference");
      rep.similarity_ok = false;
      continue;
    }
    shape_ok[i] = true;
    interior[i] = sim.apply(ref_balls[p.kind].center);
    total_area += area;
  }
  if (!structure_ok) {
    rep.similarity_ok = false;
    log.flush();
    return rep;
  }
  if (!rep.simple_ok || !rep.similarity_ok) {
    log.flush();
    return rep;
  }

  // pairwise disjoint interiors, box swept
  {
    rep.disjoint_ok = true;
    struct Box {
      Rat ulo, uhi, vlo, vhi;
      std::size_t idx;
    };
    std::vector<Box> boxes;
    boxes.reserve(polys.size());
    for (std::size_t i = 0; i < polys.size(); ++i) {
      Box b{polys[i].vertices[0].u, polys[i].vertices[0].u, polys[i].vertices[0].v,
            polys[i].vertices[0].v, i};
      for (const SPoint& p : polys[i].vertices) {
        b.ulo = std::min(b.ulo, p.u);
        b.uhi = std::max(b.uhi, p.u);
        b.vlo = std::min(b.vlo, p.v);
        b.vhi = std::max(b.vhi, p.v);
      }
      boxes.push_back(std::move(b));
    }
    std::vector<std::size_t> order(boxes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return boxes[x].ulo < boxes[y].ulo;
    });
    auto interiors_overlap = [&](std::size_t x, std::size_t y) {
      const std::vector<SPoint>& a = polys[x].vertices;
      const std::vector<SPoint>& b = polys[y].vertices;
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
          if (properly_cross(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()]))
            return true;
      for (const SPoint& p : a)
        if (locate_point(p, b) == Where::Inside) return true;
      for (const SPoint& p : b)
        if (locate_point(p, a) == Where::Inside) return true;
      if (locate_point(interior[x], b) == Where::Inside) return true;
      if (locate_point(interior[y], a) == Where::Inside) return true;
      return false;
    };
    for (std::size_t oi = 0; oi < order.size() && rep.disjoint_ok; ++oi) {
      const Box& bi = boxes[order[oi]];
      for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
        const Box& bj = boxes[order[oj]];
        if (bj.ulo >= bi.uhi) break;
        if (bj.vlo >= bi.vhi || bi.vlo >= bj.vhi) continue;
        if (interiors_overlap(bi.idx, bj.idx)) {
          log.add(id_str(polys[bi.idx].id) + " and " + id_str(polys[bj.idx].id) +
                  ": interiors overlap");
          rep.disjoint_ok = false;
          break;
        }
      }
    }
  }

  // exact area identity: built area plus the analytic tail of the deeper
  // generations equals the snowflake area 4/5
  {
    long long pc = 0, qc = 0;
    for (const WhitneyPolygon& p : polys) {
      if (p.generation == depth && p.kind == Kind::Pants) ++pc;
      if (p.generation == depth && p.kind == Kind::Palace) ++qc;
    }
    const Rat full = total_area + analytic_tail_area(depth, pc, qc);
    if (full == make_rat(4, 5)) {
      rep.area_identity_ok = true;
    } else {
      log.add("area identity: covered " + rat_str(full) + ", expected 4/5");
    }
  }

  std::map<int, KochPolyline> curves;
  auto curve = [&](int m) -> const KochPolyline& {
    auto it = curves.find(m);
    if (it == curves.end()) it = curves.emplace(m, generate_koch(m, kMaxCurveDepth)).first;
    return it->second;
  };

  // interior lattice sample at generation 2: every sample of the curve
  // region at squared distance >= 1/81 from the approximant boundary must
  // land in a built polygon of generation <= 2; polygons of generation g
  // must sit strictly inside approximant g+2
  if (depth < 2) {
    rep.coverage_ok = true;
  } else {
    rep.coverage_ok = true;
    const KochPolyline& k4 = curve(4);
    const Rat cut = make_rat(1, 81);
    std::vector<std::size_t> shallow;
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (polys[i].generation <= 2) shallow.push_back(i);

    for (std::size_t i = 0; i < polys.size() && rep.coverage_ok; ++i) {
      const WhitneyPolygon& p = polys[i];
      if (p.generation > 2) continue;
      const KochPolyline& km = curve(p.generation + 2);
      for (const SPoint& v : p.vertices) {
        if (locate_point(v, km.vertices) != Where::Inside) {
          log.add(id_str(p.id) + ": vertex outside curve approximant " +
                  std::to_string(p.generation + 2));
          rep.coverage_ok = false;
          break;
        }
      }
      const std::size_t nc = km.vertices.size();
      for (std::size_t e = 0; e < p.vertices.size() && rep.coverage_ok; ++e) {
        const SPoint& a = p.vertices[e];
        const SPoint& b = p.vertices[(e + 1) % p.vertices.size()];
        const Rat elo_u = std::min(a.u, b.u), ehi_u = std::max(a.u, b.u);
        const Rat elo_v = std::min(a.v, b.v), ehi_v = std::max(a.v, b.v);
        for (std::size_t s = 0; s < nc; ++s) {
          const SPoint& c = km.vertices[s];
          const SPoint& d = km.vertices[(s + 1) % nc];
          if (std::max(c.u, d.u) < elo_u || std::min(c.u, d.u) > ehi_u ||
              std::max(c.v, d.v) < elo_v || std::min(c.v, d.v) > ehi_v)
            continue;
          if (segments_meet(a, b, c, d)) {
            log.add(id_str(p.id) + ": edge meets curve approximant " +
                    std::to_string(p.generation + 2));
            rep.coverage_ok = false;
            break;
          }
        }
      }
    }

    if (rep.coverage_ok) {
      Rat ulo = k4.vertices[0].u, uhi = ulo, vlo = k4.vertices[0].v, vhi = vlo;
      for (const SPoint& p : k4.vertices) {
        ulo = std::min(ulo, p.u);
        uhi = std::max(uhi, p.u);
        vlo = std::min(vlo, p.v);
        vhi = std::max(vhi, p.v);
      }
      const Rat pitch = make_rat(1, 27);
      const std::size_t nc = k4.vertices.size();
      for (Rat v = rat_floor(vlo / pitch) * pitch; v <= vhi && rep.coverage_ok; v += pitch) {
        // row intersections with the boundary give the inside intervals
        std::vector<Rat> hits;
        for (std::size_t s = 0; s < nc; ++s) {
          const SPoint& a = k4.vertices[s];
          const SPoint& b = k4.vertices[(s + 1) % nc];
          if ((a.v > v) != (b.v > v))
            hits.push_back(a.u + (v - a.v) * (b.u - a.u) / (b.v - a.v));
        }
        std::sort(hits.begin(), hits.end());
        for (std::size_t h = 0; h + 1 < hits.size() && rep.coverage_ok; h += 2) {
          for (Rat u = (rat_floor(hits[h] / pitch) + 1) * pitch; u < hits[h + 1];
               u += pitch) {
            if (u <= hits[h]) continue;
            const SPoint pt{u, v};
            // discard samples within distance 1/9 of the boundary
            bool far = true;
            XvBox pb;
            pb.add(pt);
            for (std::size_t s = 0; s < nc && far; ++s) {
              const SPoint& a = k4.vertices[s];
              const SPoint& b = k4.vertices[(s + 1) % nc];
              XvBox sb;
              sb.add(a);
              sb.add(b);
              if (box_gap_dist2(pb, sb) >= cut) continue;
              if (point_seg_dist2(pt, a, b) < cut) far = false;
            }
            if (!far) continue;
            bool covered = false;
            for (std::size_t si : shallow) {
              if (locate_point(pt, polys[si].vertices) != Where::Outside) {
                covered = true;
                break;
              }
            }
            if (!covered) {
              log.add("uncovered interior sample at (" + rat_str(u) + ", " + rat_str(v) +
                      ")");
              rep.coverage_ok = false;
            }
          }
        }
      }
    }
  }

  // squared distance to the boundary approximant two levels down is a fixed
  // per kind multiple of the area
  {
    rep.volume_distance_ok = true;
    rep.constants_stable = true;
    std::map<std::pair<int, int>, Rat> kind_gen_ratio; // (kind, gen) -> ratio
    auto ratio_of = [&](const WhitneyPolygon& p, int m) {
      const Rat d2 = polygon_boundary_dist2(p, curve(m));
      if (d2 == 0) fail(ErrorCode::ContractViolation, "polygon touches the approximant");
      return polygon_area(p) / d2;
    };
    const int exhaustive = std::min(depth, 3);
    for (std::size_t i = 0; i < polys.size(); ++i) {
      const WhitneyPolygon& p = polys[i];
      if (p.generation > exhaustive || p.generation < 1) continue;
      const Rat r = ratio_of(p, p.generation + 2);
      const std::pair<int, int> key{static_cast<int>(p.kind), p.generation};
      auto it = kind_gen_ratio.find(key);
      if (it == kind_gen_ratio.end()) {
        kind_gen_ratio.emplace(key, r);
      } else if (it->second != r) {
        log.add(id_str(p.id) + ": volume/distance ratio differs within its kind");
        rep.volume_distance_ok = false;
      }
    }
    rep.star_vol_dist_ratio = ratio_of(polys[index.at(VertexId{})], 2);
    // chains of shape preserving children extend the representatives deeper
    for (int g = exhaustive + 1; g <= depth; ++g) {
      VertexId pants_rep = VertexId{}.child(0);
      for (int s = 1; s < g; ++s) pants_rep = pants_rep.child(2);
      VertexId palace_rep = VertexId{}.child(0);
      for (int s = 1; s < g; ++s) palace_rep = palace_rep.child(0);
      kind_gen_ratio.emplace(
          std::pair<int, int>{static_cast<int>(Kind::Pants), g},
          ratio_of(polys[index.at(pants_rep)], g + 2));
      kind_gen_ratio.emplace(
          std::pair<int, int>{static_cast<int>(Kind::Palace), g},
          ratio_of(polys[index.at(palace_rep)], g + 2));
    }
    for (Kind k : {Kind::Pants, Kind::Palace}) {
      Rat base;
      bool have = false;
      for (int g = 2; g <= depth; ++g) {
        auto it = kind_gen_ratio.find({static_cast<int>(k), g});
        if (it == kind_gen_ratio.end()) continue;
        if (!have) {
          base = it->second;
          have = true;
        } else if (it->second != base) {
          log.add(std::string(kind_name(k)) + " generation " + std::to_string(g) +
                  ": volume/distance ratio drifts across generations");
          rep.constants_stable = false;
        }
      }
      if (have) {
        if (k == Kind::Pants) rep.pants_vol_dist_ratio = base;
        else rep.palace_vol_dist_ratio = base;
      }
    }
    // one level of margin in the approximant depth, checked on the chains
    if (depth >= 3) {
      const WhitneyPolygon& p2 = polys[index.at(VertexId{}.child(0).child(2))];
      const WhitneyPolygon& p3 = polys[index.at(VertexId{}.child(0).child(2).child(2))];
      if (ratio_of(p2, 5) != ratio_of(p3, 6)) {
        log.add("pants volume/distance ratio unstable one approximant deeper");
        rep.constants_stable = false;
      }
      const WhitneyPolygon& l2 = polys[index.at(VertexId{}.child(0).child(0))];
      const WhitneyPolygon& l3 = polys[index.at(VertexId{}.child(0).child(0).child(0))];
      if (ratio_of(l2, 5) != ratio_of(l3, 6)) {
        log.add("palace volume/distance ratio unstable one approximant deeper");
        rep.constants_stable = false;
      }
    }
  }

  // adjacency: degrees, exact contact lengths, tree restriction
  {
    const WhitneyGraph graph = adjacency_graph(polys);
    std::map<VertexId, int> degree;
    std::map<VertexId, int> same_gen_count;
    std::map<VertexId, int> parent_edges;
    rep.degrees_ok = true;
    rep.tree_edges_ok = true;
    for (const WhitneyEdge& e : graph.edges) {
      ++degree[e.a];
      ++degree[e.b];
      const int ga = e.a.generation();
      const int gb = e.b.generation();
      if (e.same_generation) {
        ++same_gen_count[e.a];
        ++same_gen_count[e.b];
        if (e.shared_length != make_rat(4, 9) * pow3_neg(ga)) {
          log.add(id_str(e.a) + " - " + id_str(e.b) + ": wall contact length " +
                  rat_str(e.shared_length));
          rep.degrees_ok = false;
        }
        const TorusInterval ia = cylinder_interval(e.a);
        const TorusInterval ib = cylinder_interval(e.b);
        Rat ea = ia.end();
        if (ea == 1) ea = 0;
        Rat eb = ib.end();
        if (eb == 1) eb = 0;
        if (ea != ib.start && eb != ia.start) {
          log.add(id_str(e.a) + " - " + id_str(e.b) + ": wall between non-consecutive arcs");
          rep.degrees_ok = false;
        }
      } else {
        const VertexId& child = ga > gb ? e.a : e.b;
        const VertexId& par = ga > gb ? e.b : e.a;
        if (std::abs(ga - gb) != 1 || child.parent() != par) {
          log.add(id_str(e.a) + " - " + id_str(e.b) + ": contact skips a generation");
          rep.tree_edges_ok = false;
          continue;
        }
        ++parent_edges[child];
        const Rat want = (kind_of(child) == Kind::Pants ? make_rat(2, 3) : make_rat(5, 3)) *
                         pow3_neg(child.generation());
        if (e.shared_length != want) {
          log.add(id_str(child) + ": ceiling contact length " + rat_str(e.shared_length) +
                  ", expected " + rat_str(want));
          rep.tree_edges_ok = false;
        }
      }
    }
    for (const WhitneyPolygon& p : polys) {
      rep.max_degree = std::max(rep.max_degree, degree[p.id]);
      if (!p.id.is_root() && parent_edges[p.id] != 1) {
        log.add(id_str(p.id) + ": missing ceiling contact with its parent");
        rep.tree_edges_ok = false;
      }
      if (!p.id.is_root() && same_gen_count[p.id] != 2) {
        log.add(id_str(p.id) + ": expected exactly two wall neighbours");
        rep.degrees_ok = false;
      }
      int want;
      if (p.id.is_root()) want = 6;
      else if (p.generation == depth) want = 3;
      else want = p.kind == Kind::Pants ? 8 : 6;
      if (degree[p.id] != want) {
        log.add(id_str(p.id) + ": degree " + std::to_string(degree[p.id]) + ", expected " +
                std::to_string(want));
        rep.degrees_ok = false;
      }
    }
  }

  // star-shapedness: the kernel ball of the reference transports to every
  // copy, so the per kind ratio is checked on representatives
  {
    rep.kernel_ok = true;
    bool have_min = false;
    auto check_kind = [&](const WhitneyPolygon& p) {
      const KernelBall kb = kernel_ball(p.vertices);
      if (!kb.ok) {
        log.add(id_str(p.id) + ": empty star-shape kernel");
        rep.kernel_ok = false;
        return;
      }
      if (!have_min || kb.ratio < rep.min_kernel_ratio) {
        rep.min_kernel_ratio = kb.ratio;
        have_min = true;
      }
    };
    check_kind(polys[index.at(VertexId{})]);
    std::map<std::pair<int, int>, Rat> kind_gen_ratio;
    bool ratios_stable = true;
    for (int g = 1; g <= std::min(depth, 3); ++g) {
      VertexId pants_rep = VertexId{}.child(0);
      for (int s = 1; s < g; ++s) pants_rep = pants_rep.child(2);
      const KernelBall kp = kernel_ball(polys[index.at(pants_rep)].vertices);
      if (!kp.ok) {
        rep.kernel_ok = false;
      } else {
        if (!have_min || kp.ratio < rep.min_kernel_ratio) rep.min_kernel_ratio = kp.ratio;
        auto it = kind_gen_ratio.emplace(std::pair<int, int>{0, 0}, kp.ratio);
        if (!it.second && it.first->second != kp.ratio) ratios_stable = false;
      }
      if (g >= 2) {
        VertexId palace_rep = VertexId{}.child(0);
        for (int s = 1; s < g; ++s) palace_rep = palace_rep.child(0);
        const KernelBall kl = kernel_ball(polys[index.at(palace_rep)].vertices);
        if (!kl.ok) {
          rep.kernel_ok = false;
        } else {
          if (kl.ratio < rep.min_kernel_ratio) rep.min_kernel_ratio = kl.ratio;
          auto it = kind_gen_ratio.emplace(std::pair<int, int>{1, 0}, kl.ratio);
          if (!it.second && it.first->second != kl.ratio) ratios_stable = false;
        }
      }
    }
    if (!ratios_stable) {
      log.add("kernel ball ratio drifts across generations");
      rep.kernel_ok = false;
    }
  }

  log.flush();
  return rep;
}

// ---- svg -------------------------------------------------------------------

namespace {

struct SvgFrame {
  double xmin = 0, ymin = 0, scale = 1, height = 600, margin = 20;

  double tx(double x) const { return (x - xmin) * scale + margin; }
  double ty(double y) const { return height - margin - (y - ymin) * scale; }
};

SvgFrame svg_frame(const std::vector<const std::vector<SPoint>*>& groups,
                   const SvgOptions& opts) {
  SvgFrame f;
  f.margin = opts.margin;
  bool any = false;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto* g : groups) {
    for (const SPoint& p : *g) {
      const double x = sp_x_double(p);
      const double y = sp_y_double(p);
      if (!any) {
        xmin = xmax = x;
        ymin = ymax = y;
        any = true;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  if (!any) {
    f.scale = 1;
    f.height = opts.width * 0.75;
    return f;
  }
  const double spanx = std::max(xmax - xmin, 1e-9);
  const double spany = std::max(ymax - ymin, 1e-9);
  f.xmin = xmin;
  f.ymin = ymin;
  f.scale = (opts.width - 2 * opts.margin) / spanx;
  f.height = spany * f.scale + 2 * opts.margin;
  return f;
}

const char* kind_fill(Kind k) {
  switch (k) {
    case Kind::Star: return "#e0a800";
    case Kind::Pants: return "#5b9bd5";
    default: return "#a9d18e";
  }
}

void write_svg_file(const std::string& path, const SvgOptions& opts, const SvgFrame& f,
                    const std::string& body) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  os << std::fixed << std::setprecision(9);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opts.width
     << "\" height=\"" << f.height << "\" viewBox=\"0 0 " << opts.width << " " << f.height
     << "\">\n"
     << body << "</svg>\n";
  if (!os.good()) fail(ErrorCode::IoError, "failed writing " + path);
}

std::string points_attr(const std::vector<SPoint>& pts, const SvgFrame& f, bool close) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(9);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) ss << " ";
    ss << f.tx(sp_x_double(pts[i])) << "," << f.ty(sp_y_double(pts[i]));
  }
  if (close && !pts.empty())
    ss << " " << f.tx(sp_x_double(pts[0])) << "," << f.ty(sp_y_double(pts[0]));
  return ss.str();
}

} // namespace

void export_svg(const std::vector<WhitneyPolygon>& polys, const std::string& path,
                const SvgOptions& opts) {
  std::vector<const std::vector<SPoint>*> groups;
  groups.reserve(polys.size());
  for (const WhitneyPolygon& p : polys) groups.push_back(&p.vertices);
  const SvgFrame f = svg_frame(groups, opts);
  std::ostringstream body;
  body << std::fixed << std::setprecision(9);
  for (const WhitneyPolygon& p : polys) {
    body << "  <polygon id=\"" << p.id.str() << "\" fill=\"" << kind_fill(p.kind)
         << "\" fill-opacity=\"0.85\" stroke=\"#333333\" stroke-width=\"0.5\" points=\""
         << points_attr(p.vertices, f, false) << "\"/>\n";
  }
  write_svg_file(path, opts, f, body.str());
}

void export_svg(const KochPolyline& curve, const std::string& path, const SvgOptions& opts) {
  const SvgFrame f = svg_frame({&curve.vertices}, opts);
  std::ostringstream body;
  body << std::fixed << std::setprecision(9);
  body << "  <polyline fill=\"none\" stroke=\"#222222\" stroke-width=\"1\" points=\""
       << points_attr(curve.vertices, f, true) << "\"/>\n";
  write_svg_file(path, opts, f, body.str());
}

} // namespace koch
