#include "kochtrace/tree.hpp"

#include <array>
#include <sstream>

#include "kochtrace/error.hpp"

namespace koch {

namespace {

// child layout in units of level_length(gen+1)
struct Layout {
  std::vector<int> offsets;
  std::vector<int> lengths;
};

const Layout& layout(Kind k) {
  static const Layout star{{0, 2, 4, 6, 8, 10}, {2, 2, 2, 2, 2, 2}};
  static const Layout pants{{0, 1, 3, 5, 7}, {1, 2, 2, 2, 1}};
  static const Layout palace{{0, 1, 3}, {1, 2, 1}};
  switch (k) {
    case Kind::Star: return star;
    case Kind::Pants: return pants;
    case Kind::Palace: return palace;
  }
  fail(ErrorCode::InvalidInput, "unknown kind");
}

// incremental walk state: vertex interval plus kind
struct Cursor {
  TorusInterval interval{Rat(0), Rat(1)};
  Kind kind = Kind::Star;
  int gen = 0;

  void descend(uint8_t idx) {
    const auto& kinds = child_kinds(kind);
    if (idx >= kinds.size())
      fail(ErrorCode::InvalidInput, "child index out of range");
    const Layout& lay = layout(kind);
    Rat unit = level_length(static_cast<unsigned>(gen) + 1);
    interval.start += lay.offsets[idx] * unit;
    interval.length = lay.lengths[idx] * unit;
    kind = kinds[idx];
    ++gen;
  }
};

} // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Star: return "star";
    case Kind::Pants: return "pants";
    case Kind::Palace: return "palace";
  }
  return "?";
}

VertexId VertexId::parent() const {
  if (path.empty()) fail(ErrorCode::InvalidInput, "root has no parent");
  VertexId p{path};
  p.path.pop_back();
  return p;
}

VertexId VertexId::child(uint8_t i) const {
  VertexId c{path};
  c.path.push_back(i);
  return c;
}

bool VertexId::is_ancestor_of(const VertexId& other) const {
  if (path.size() > other.path.size()) return false;
  return std::equal(path.begin(), path.end(), other.path.begin());
}

std::string VertexId::str() const {
  if (path.empty()) return "/";
  std::ostringstream os;
  for (uint8_t i : path) os << '/' << static_cast<int>(i);
  return os.str();
}

VertexId VertexId::parse(const std::string& s) {
  if (s.empty() || s[0] != '/')
    fail(ErrorCode::InvalidInput, "vertex id must start with '/': " + s);
  VertexId v;
  if (s == "/") return v;
  std::size_t i = 1;
  while (i < s.size()) {
    std::size_t j = s.find('/', i);
    if (j == std::string::npos) j = s.size();
    if (j == i) fail(ErrorCode::InvalidInput, "empty component in id: " + s);
    int val = 0;
    for (std::size_t k = i; k < j; ++k) {
      if (s[k] < '0' || s[k] > '9')
        fail(ErrorCode::InvalidInput, "bad vertex id: " + s);
      val = val * 10 + (s[k] - '0');
      if (val > 9) fail(ErrorCode::InvalidInput, "bad child index in id: " + s);
    }
    v.path.push_back(static_cast<uint8_t>(val));
    i = j + 1;
  }
  // validate against branching rules
  kind_of(v);
  return v;
}

Kind kind_of(const VertexId& v) {
  Kind k = Kind::Star;
  for (uint8_t idx : v.path) {
    const auto& kinds = child_kinds(k);
    if (idx >= kinds.size())
      fail(ErrorCode::InvalidInput,
           "child index out of range in " + v.str());
    k = kinds[idx];
  }
  return k;
}

const std::vector<Kind>& child_kinds(Kind k) {
  static const std::vector<Kind> star(6, Kind::Pants);
  static const std::vector<Kind> pants{Kind::Palace, Kind::Pants, Kind::Pants,
                                       Kind::Pants, Kind::Palace};
  static const std::vector<Kind> palace{Kind::Palace, Kind::Pants,
                                        Kind::Palace};
  switch (k) {
    case Kind::Star: return star;
    case Kind::Pants: return pants;
    case Kind::Palace: return palace;
  }
  fail(ErrorCode::InvalidInput, "unknown kind");
}

std::size_t child_count(Kind k) { return child_kinds(k).size(); }

std::vector<VertexId> children(const VertexId& v) {
  std::size_t n = child_count(kind_of(v));
  std::vector<VertexId> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(v.child(static_cast<uint8_t>(i)));
  return out;
}

namespace {
void collect(const VertexId& v, Kind k, int depth, std::vector<VertexId>& out) {
  out.push_back(v);
  if (v.generation() == depth) return;
  const auto& kinds = child_kinds(k);
  for (std::size_t i = 0; i < kinds.size(); ++i)
    collect(v.child(static_cast<uint8_t>(i)), kinds[i], depth, out);
}
} // namespace

std::vector<VertexId> all_vertices(int depth) {
  if (depth < 0) fail(ErrorCode::InvalidInput, "negative depth");
  std::vector<VertexId> out;
  collect(VertexId{}, Kind::Star, depth, out);
  return out;
}

std::vector<GenCount> generation_counts(int depth) {
  std::vector<GenCount> out;
  long long p = 6, q = 0;
  for (int n = 1; n <= depth; ++n) {
    out.push_back(GenCount{n, p, q});
    long long np = 3 * p + q;
    long long nq = 2 * p + 2 * q;
    p = np;
    q = nq;
  }
  return out;
}

TorusInterval cylinder_interval(const VertexId& v) {
  if (v.is_root())
    fail(ErrorCode::InvalidInput, "the root has no cylinder interval");
  Cursor c;
  for (uint8_t idx : v.path) c.descend(idx);
  return c.interval;
}

BoundaryPoint BoundaryPoint::from_digits(std::vector<uint8_t> digits,
                                         Side side) {
  if (digits.empty())
    fail(ErrorCode::InvalidInput, "digit string must be nonempty");
  if (digits[0] > 2)
    fail(ErrorCode::InvalidInput, "first digit must be 0, 1 or 2");
  for (std::size_t j = 1; j < digits.size(); ++j)
    if (digits[j] > 3)
      fail(ErrorCode::InvalidInput, "digits beyond the first must be 0..3");
  return BoundaryPoint{std::move(digits), side};
}

Rat torus_position_digits(const std::vector<uint8_t>& digits) {
  if (digits.empty())
    fail(ErrorCode::InvalidInput, "digit string must be nonempty");
  if (digits[0] > 2)
    fail(ErrorCode::InvalidInput, "first digit must be 0, 1 or 2");
  Rat pos = make_rat(digits[0], 3);
  for (std::size_t j = 1; j < digits.size(); ++j) {
    if (digits[j] > 3)
      fail(ErrorCode::InvalidInput, "digits beyond the first must be 0..3");
    pos += digits[j] * level_length(static_cast<unsigned>(j));
  }
  return pos;
}

Rat torus_position(const BoundaryPoint& p) {
  return torus_position_digits(p.digits);
}

Rat index_position(const BoundaryPoint& p) {
  const auto& d = p.digits;
  if (d.empty()) fail(ErrorCode::InvalidInput, "digit string must be nonempty");
  if (d[0] > 2) fail(ErrorCode::InvalidInput, "first digit must be 0, 1 or 2");
  Rat pos = make_rat(d[0], 3);
  Int den = 4;
  for (std::size_t j = 1; j < d.size(); ++j) {
    den *= 4;
    if (d[j] > 3)
      fail(ErrorCode::InvalidInput, "digits beyond the first must be 0..3");
    pos += make_rat(d[j], den);
  }
  return pos;
}

int native_depth(const Rat& pos) {
  if (pos < 0 || pos >= 1)
    fail(ErrorCode::InvalidInput, "position must lie in [0,1)");
  Int den = pos.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), 3)) den /= 3;
  if (mpz_divisible_ui_p(den.get_mpz_t(), 3))
    fail(ErrorCode::UnsupportedInput,
         "position " + rat_str(pos) + " is not on the digit grid");
  // den must now be a power of two
  if (mpz_popcount(den.get_mpz_t()) != 1)
    fail(ErrorCode::UnsupportedInput,
         "position " + rat_str(pos) + " is not on the digit grid");
  std::size_t b = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
  return static_cast<int>((b + 1) / 2);
}

BoundaryPoint point_at(const Rat& pos, Side side) {
  native_depth(pos); // validates
  std::vector<uint8_t> digits;
  Rat r = 3 * pos;
  Int d1 = rat_floor(r);
  digits.push_back(static_cast<uint8_t>(d1.get_ui()));
  r -= Rat(d1);
  while (r != 0) {
    r *= 4;
    Int d = rat_floor(r);
    digits.push_back(static_cast<uint8_t>(d.get_ui()));
    r -= Rat(d);
  }
  return BoundaryPoint::from_digits(std::move(digits), side);
}

bool is_cylinder_endpoint(const Rat& pos) {
  if (pos == 0) return true;
  int nd = native_depth(pos);
  Cursor c;
  for (int g = 1; g <= nd + 1; ++g) {
    const Layout& lay = layout(c.kind);
    Rat unit = level_length(static_cast<unsigned>(c.gen) + 1);
    bool descended = false;
    for (std::size_t i = 0; i < lay.offsets.size(); ++i) {
      Rat s = c.interval.start + lay.offsets[i] * unit;
      Rat e = s + lay.lengths[i] * unit;
      if (s == pos) return true;
      if (s < pos && pos < e) {
        c.descend(static_cast<uint8_t>(i));
        descended = true;
        break;
      }
    }
    if (!descended) return true; // pos was a boundary of the last cursor
  }
  return false;
}

namespace {

void cover(Cursor c, const VertexId& v, const Rat& a, const Rat& b,
           std::vector<VertexId>& out) {
  const auto& kinds = child_kinds(c.kind);
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    Cursor cc = c;
    cc.descend(static_cast<uint8_t>(i));
    const Rat& s = cc.interval.start;
    Rat e = cc.interval.end();
    if (e <= a || b <= s) continue;
    VertexId vc = v.child(static_cast<uint8_t>(i));
    if (a <= s && e <= b) {
      out.push_back(vc);
    } else {
      cover(cc, vc, a, b, out);
    }
  }
}

} // namespace

std::vector<VertexId> decompose_arc(const Rat& x, const Rat& y) {
  if (!is_cylinder_endpoint(x) || !is_cylinder_endpoint(y))
    fail(ErrorCode::UnsupportedInput,
         "arc endpoints must be cylinder endpoints");
  std::vector<VertexId> out;
  if (x == y) return out;
  Cursor root;
  if (x < y) {
    cover(root, VertexId{}, x, y, out);
  } else {
    cover(root, VertexId{}, x, Rat(1), out);
    cover(root, VertexId{}, Rat(0), y, out);
  }
  return out;
}

std::vector<VertexId> maximal_cylinder_decomposition(const Arc& a) {
  return decompose_arc(torus_position(a.start), torus_position(a.end));
}

Rat arc_weight(const Rat& x, const Rat& y) {
  Rat w = 0;
  for (const VertexId& v : decompose_arc(x, y))
    w += pow3_neg(static_cast<unsigned>(v.generation()));
  return w;
}

Rat metric_d_pos(const Rat& x, const Rat& y) {
  if (x < 0 || x >= 1 || y < 0 || y >= 1)
    fail(ErrorCode::InvalidInput, "positions must lie in [0,1)");
  Rat d = rat_abs(x - y);
  Rat other = 1 - d;
  return d < other ? d : other;
}

Rat metric_d(const BoundaryPoint& x, const BoundaryPoint& y) {
  return metric_d_pos(torus_position(x), torus_position(y));
}

Rat metric_dK_pos(const Rat& x, const Rat& y) {
  if (x == y) return Rat(0);
  Rat a = arc_weight(x, y);
  Rat b = arc_weight(y, x);
  return a < b ? a : b;
}

Rat metric_dK(const BoundaryPoint& x, const BoundaryPoint& y) {
  return metric_dK_pos(torus_position(x), torus_position(y));
}

VertexId child_towards(const VertexId& v, const Rat& pos, Side side) {
  Cursor c;
  for (uint8_t idx : v.path) c.descend(idx);
  Rat eff = pos;
  if (side == Side::Before && pos == 0) eff = 1;
  const auto& kinds = child_kinds(c.kind);
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    Cursor cc = c;
    cc.descend(static_cast<uint8_t>(i));
    const Rat& s = cc.interval.start;
    Rat e = cc.interval.end();
    bool hit = side == Side::After ? (s <= eff && eff < e)
                                   : (s < eff && eff <= e);
    if (hit) return v.child(static_cast<uint8_t>(i));
  }
  fail(ErrorCode::InvalidInput,
       "position " + rat_str(pos) + " is not inside " + v.str());
}

std::vector<VertexId> branch(const BoundaryPoint& p, int depth) {
  Rat pos = torus_position(p);
  Rat eff = pos;
  if (p.side == Side::Before && pos == 0) eff = 1;
  std::vector<VertexId> out;
  Cursor c;
  VertexId v;
  for (int g = 1; g <= depth; ++g) {
    const auto& kinds = child_kinds(c.kind);
    bool found = false;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      Cursor cc = c;
      cc.descend(static_cast<uint8_t>(i));
      const Rat& s = cc.interval.start;
      Rat e = cc.interval.end();
      bool hit = p.side == Side::After ? (s <= eff && eff < e)
                                       : (s < eff && eff <= e);
      if (hit) {
        c = cc;
        v = v.child(static_cast<uint8_t>(i));
        out.push_back(v);
        found = true;
        break;
      }
    }
    if (!found)
      fail(ErrorCode::InvalidInput, "branch walk left the circle");
  }
  return out;
}

} // namespace koch
