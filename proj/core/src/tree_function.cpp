#include "kochtrace/tree_function.hpp"

#include <algorithm>
#include <set>

#include "kochtrace/error.hpp"

namespace koch {

void TreeFunction::set_coeff(const VertexId& v, const Rat& c) {
  if (v.is_root())
    fail(ErrorCode::InvalidInput, "the root carries the baseline, not a coefficient");
  if (c == 0)
    coeffs.erase(v);
  else
    coeffs[v] = c;
}

Rat TreeFunction::coeff(const VertexId& v) const {
  auto it = coeffs.find(v);
  return it == coeffs.end() ? Rat(0) : it->second;
}

int TreeFunction::support_depth() const {
  int d = 0;
  for (const auto& [v, c] : coeffs) d = std::max(d, v.generation());
  return d;
}

TreeFunction subtree_indicator(const VertexId& v) {
  TreeFunction f;
  if (v.is_root()) {
    f.baseline = 1;
  } else {
    f.coeffs[v] = 1;
  }
  return f;
}

TreeFunction tf_add(const TreeFunction& a, const TreeFunction& b) {
  TreeFunction out = a;
  out.baseline += b.baseline;
  for (const auto& [v, c] : b.coeffs) {
    auto it = out.coeffs.find(v);
    if (it == out.coeffs.end()) {
      out.coeffs.emplace(v, c);
    } else {
      it->second += c;
      if (it->second == 0) out.coeffs.erase(it);
    }
  }
  return out;
}

TreeFunction tf_scale(const TreeFunction& a, const Rat& s) {
  TreeFunction out;
  if (s == 0) return out;
  out.baseline = a.baseline * s;
  for (const auto& [v, c] : a.coeffs) out.coeffs.emplace(v, c * s);
  return out;
}

Rat bv_norm(const TreeFunction& f) {
  Rat norm = 0;
  for (const auto& [v, c] : f.coeffs)
    norm += rat_abs(c) * pow3_neg(static_cast<unsigned>(v.generation()));
  return norm;
}

Rat value_at(const TreeFunction& f, const VertexId& v) {
  Rat val = f.baseline;
  VertexId node;
  for (uint8_t idx : v.path) {
    node = node.child(idx);
    val += f.coeff(node);
  }
  return val;
}

Rat trace_limit(const TreeFunction& f, const BoundaryPoint& p) {
  int depth = f.support_depth();
  Rat val = f.baseline;
  for (const auto& v : branch(p, depth)) val += f.coeff(v);
  return val;
}

namespace {

void emit_pieces(const TreeFunction& f, const std::set<VertexId>& relevant,
                 const VertexId& v, const Rat& val,
                 std::vector<TracePiece>& out) {
  for (const auto& c : children(v)) {
    Rat cv = val + f.coeff(c);
    if (relevant.count(c)) {
      emit_pieces(f, relevant, c, cv, out);
    } else {
      auto iv = cylinder_interval(c);
      out.push_back(TracePiece{iv.start, iv.end(), cv});
    }
  }
}

} // namespace

std::vector<TracePiece> trace_pieces(const TreeFunction& f) {
  std::set<VertexId> relevant;
  for (const auto& [v, c] : f.coeffs) {
    VertexId a;
    relevant.insert(a);
    for (uint8_t idx : v.path) {
      a = a.child(idx);
      relevant.insert(a);
    }
  }
  std::vector<TracePiece> raw;
  if (relevant.empty()) {
    raw.push_back(TracePiece{Rat(0), Rat(1), f.baseline});
  } else {
    // the support's deepest vertices are not expanded further: below them f
    // is constant, so their whole cylinder is one piece
    std::set<VertexId> expand;
    for (const auto& v : relevant)
      if (!v.is_root()) expand.insert(v.parent());
    emit_pieces(f, expand, VertexId{}, f.baseline, raw);
  }
  std::vector<TracePiece> merged;
  for (auto& p : raw) {
    if (!merged.empty() && merged.back().end == p.start &&
        merged.back().value == p.value) {
      merged.back().end = p.end;
    } else {
      merged.push_back(std::move(p));
    }
  }
  return merged;
}

namespace {

std::vector<TracePiece> full_cover(const BoundaryData& g) {
  std::vector<TracePiece> out;
  Rat cursor = 0;
  for (const auto& p : g.pieces()) {
    if (cursor < p.start)
      out.push_back(TracePiece{cursor, p.start, Rat(0)});
    out.push_back(TracePiece{p.start, p.end, p.coeff});
    cursor = p.end;
  }
  if (cursor < 1) out.push_back(TracePiece{cursor, Rat(1), Rat(0)});
  std::vector<TracePiece> merged;
  for (auto& p : out) {
    if (!merged.empty() && merged.back().end == p.start &&
        merged.back().value == p.value) {
      merged.back().end = p.end;
    } else {
      merged.push_back(std::move(p));
    }
  }
  return merged;
}

} // namespace

bool trace_equals(const TreeFunction& f, const BoundaryData& g) {
  auto a = trace_pieces(f);
  auto b = full_cover(g);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].start != b[i].start || a[i].end != b[i].end ||
        a[i].value != b[i].value)
      return false;
  return true;
}

namespace {

void clamp_rec(const TreeFunction& f, const BoundaryData& g, const VertexId& v,
               const Rat& val, TreeFunction& out) {
  for (const auto& c : children(v)) {
    auto iv = cylinder_interval(c);
    if (g.straddles(iv.start, iv.end())) {
      Rat cv = val + f.coeff(c);
      out.set_coeff(c, cv - val);
      clamp_rec(f, g, c, cv, out);
    } else {
      Rat w = g.value_at(iv.start, Side::After);
      out.set_coeff(c, w - val);
    }
  }
}

} // namespace

TreeFunction clamp_W(const TreeFunction& f, const BoundaryData& g) {
  if (!trace_equals(f, g))
    fail(ErrorCode::ContractViolation,
         "clamp requires the trace of f to equal the boundary data");
  TreeFunction out;
  if (!g.straddles(Rat(0), Rat(1))) {
    out.baseline = g.value_at(Rat(0), Side::After);
    return out;
  }
  out.baseline = f.baseline;
  clamp_rec(f, g, VertexId{}, f.baseline, out);
  return out;
}

} // namespace koch
