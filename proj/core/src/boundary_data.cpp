#include "kochtrace/boundary_data.hpp"

#include <algorithm>

#include "kochtrace/error.hpp"

namespace koch {

BoundaryData BoundaryData::from_pieces(std::vector<BoundaryPiece> pieces) {
  std::vector<BoundaryPiece> kept;
  kept.reserve(pieces.size());
  for (auto& p : pieces) {
    if (p.coeff == 0) continue;
    if (!(0 <= p.start && p.start < p.end && p.end <= 1))
      fail(ErrorCode::InvalidInput,
           "piece must satisfy 0 <= start < end <= 1");
    kept.push_back(std::move(p));
  }
  std::sort(kept.begin(), kept.end(),
            [](const BoundaryPiece& a, const BoundaryPiece& b) {
              return a.start < b.start;
            });
  for (std::size_t i = 1; i < kept.size(); ++i)
    if (kept[i - 1].end > kept[i].start)
      fail(ErrorCode::InvalidInput, "pieces overlap");

  // merge adjacent pieces with equal coefficients
  std::vector<BoundaryPiece> merged;
  for (auto& p : kept) {
    if (!merged.empty() && merged.back().end == p.start &&
        merged.back().coeff == p.coeff) {
      merged.back().end = p.end;
    } else {
      merged.push_back(std::move(p));
    }
  }

  BoundaryData out;
  out.pieces_ = std::move(merged);
  for (const auto& p : out.pieces_) {
    out.boundaries_.push_back(p.start);
    out.boundaries_.push_back(p.end == 1 ? Rat(0) : p.end);
  }
  std::sort(out.boundaries_.begin(), out.boundaries_.end());
  out.boundaries_.erase(
      std::unique(out.boundaries_.begin(), out.boundaries_.end()),
      out.boundaries_.end());
  for (const Rat& b : out.boundaries_)
    if (!is_cylinder_endpoint(b))
      fail(ErrorCode::UnsupportedInput,
           "arc endpoint " + rat_str(b) + " is not a cylinder endpoint");
  return out;
}

BoundaryData BoundaryData::from_position_arcs(
    const std::vector<std::array<Rat, 3>>& arcs) {
  std::vector<BoundaryPiece> pieces;
  for (const auto& a : arcs) {
    const Rat& x = a[0];
    const Rat& y = a[1];
    const Rat& c = a[2];
    if (x < 0 || x >= 1 || y < 0 || y >= 1)
      fail(ErrorCode::InvalidInput, "arc endpoints must lie in [0,1)");
    if (x == y) continue; // empty arc
    if (x < y) {
      pieces.push_back(BoundaryPiece{x, y, c});
    } else {
      pieces.push_back(BoundaryPiece{x, Rat(1), c});
      if (y > 0) pieces.push_back(BoundaryPiece{Rat(0), y, c});
    }
  }
  return from_pieces(std::move(pieces));
}

BoundaryData BoundaryData::from_arcs(
    const std::vector<std::pair<Arc, Rat>>& arcs) {
  std::vector<std::array<Rat, 3>> pos;
  pos.reserve(arcs.size());
  for (const auto& [arc, coeff] : arcs)
    pos.push_back({torus_position(arc.start), torus_position(arc.end), coeff});
  return from_position_arcs(pos);
}

BoundaryData BoundaryData::indicator(const Rat& x, const Rat& y) {
  return from_position_arcs({{x, y, Rat(1)}});
}

bool BoundaryData::straddles(const Rat& s, const Rat& e) const {
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), s);
  return it != boundaries_.end() && *it < e;
}

Rat BoundaryData::value_at(const Rat& pos, Side side) const {
  Rat eff = pos;
  if (side == Side::Before && pos == 0) eff = 1;
  for (const auto& p : pieces_) {
    bool hit = side == Side::After ? (p.start <= eff && eff < p.end)
                                   : (p.start < eff && eff <= p.end);
    if (hit) return p.coeff;
  }
  return Rat(0);
}

int BoundaryData::reduction_depth() const {
  int depth = 0;
  for (const auto& p : pieces_) {
    for (const auto& v : decompose_arc(p.start, p.end == 1 ? Rat(0) : p.end))
      depth = std::max(depth, v.generation());
  }
  return depth;
}

bool BoundaryData::pieces_raw_eq(const BoundaryData& o) const {
  if (pieces_.size() != o.pieces_.size()) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].start != o.pieces_[i].start ||
        pieces_[i].end != o.pieces_[i].end ||
        pieces_[i].coeff != o.pieces_[i].coeff)
      return false;
  }
  return true;
}

} // namespace koch
