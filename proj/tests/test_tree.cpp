#include <doctest.h>

#include <kochtrace/error.hpp>
#include <kochtrace/tree.hpp>

#include <map>
#include <set>

using namespace koch;

namespace {

Rat pos_of(const char* id) { return cylinder_interval(VertexId::parse(id)).start; }

BoundaryPoint bp(std::initializer_list<uint8_t> digits, Side side = Side::After) {
  return BoundaryPoint::from_digits(std::vector<uint8_t>(digits), side);
}

} // namespace

TEST_CASE("vertex ids parse and print") {
  CHECK(VertexId{}.str() == "/");
  CHECK(VertexId::parse("/") == VertexId{});
  CHECK(VertexId::parse("/0/3/1").str() == "/0/3/1");
  CHECK(VertexId::parse("/5").generation() == 1);
  CHECK(VertexId::parse("/0/3/1").parent().str() == "/0/3");
  CHECK(VertexId::parse("/0").is_ancestor_of(VertexId::parse("/0/4/2")));
  CHECK(!VertexId::parse("/1").is_ancestor_of(VertexId::parse("/0/4")));
  CHECK_THROWS_AS(VertexId::parse(""), Error);
  CHECK_THROWS_AS(VertexId::parse("0/1"), Error);
  CHECK_THROWS_AS(VertexId::parse("/6"), Error);   // the root has children 0..5
  CHECK_THROWS_AS(VertexId::parse("/0/5"), Error); // pants have children 0..4
  CHECK_THROWS_AS(VertexId::parse("/0/0/3"), Error); // palaces 0..2
}

TEST_CASE("branching kinds") {
  CHECK(kind_of(VertexId{}) == Kind::Star);
  CHECK(kind_of(VertexId::parse("/3")) == Kind::Pants);
  CHECK(kind_of(VertexId::parse("/0/0")) == Kind::Palace);
  CHECK(kind_of(VertexId::parse("/0/4")) == Kind::Palace);
  CHECK(kind_of(VertexId::parse("/0/2")) == Kind::Pants);
  CHECK(kind_of(VertexId::parse("/0/0/1")) == Kind::Pants);
  CHECK(kind_of(VertexId::parse("/0/0/2")) == Kind::Palace);
  CHECK(children(VertexId{}).size() == 6);
  CHECK(children(VertexId::parse("/1")).size() == 5);
  CHECK(children(VertexId::parse("/1/0")).size() == 3);
}

TEST_CASE("generation counts follow the pair recursion") {
  auto counts = generation_counts(8);
  REQUIRE(counts.size() == 8);
  long long expected[] = {6, 30, 126, 510, 2046, 8190, 32766, 131070};
  long long sum6 = 0;
  for (int i = 0; i < 8; ++i) {
    CHECK(counts[i].total() == expected[i]);
    if (i < 6) sum6 += counts[i].total();
  }
  CHECK(sum6 == 10908);
  // growth ratio decreases monotonically toward 4
  for (int i = 1; i < 8; ++i) {
    Rat r = make_rat(counts[i].total(), counts[i - 1].total());
    CHECK(r > 4);
    if (i >= 2) {
      Rat prev = make_rat(counts[i - 1].total(), counts[i - 2].total());
      CHECK(r < prev);
    }
  }
  CHECK(make_rat(counts[1].total(), counts[0].total()) == 5);
}

TEST_CASE("all_vertices matches the counts") {
  auto vs = all_vertices(4);
  CHECK(vs.size() == 1 + 6 + 30 + 126 + 510);
  std::map<int, long long> per_gen;
  for (const auto& v : vs) per_gen[v.generation()]++;
  CHECK(per_gen[0] == 1);
  CHECK(per_gen[3] == 126);
  // preorder lists cylinders in increasing boundary order within each generation
  std::map<int, Rat> last_start;
  for (const auto& v : vs) {
    if (v.is_root()) continue;
    Rat s = cylinder_interval(v).start;
    auto it = last_start.find(v.generation());
    if (it != last_start.end()) CHECK(it->second < s);
    last_start[v.generation()] = s;
  }
}

TEST_CASE("cylinder intervals: frozen examples") {
  CHECK(cylinder_interval(VertexId::parse("/0")).start == 0);
  CHECK(cylinder_interval(VertexId::parse("/0")).length == make_rat(1, 6));
  CHECK(cylinder_interval(VertexId::parse("/1")).start == make_rat(1, 6));
  CHECK(cylinder_interval(VertexId::parse("/5")).end() == 1);
  auto c01 = cylinder_interval(VertexId::parse("/0/1"));
  CHECK(c01.start == make_rat(1, 48));
  CHECK(c01.end() == make_rat(1, 16));
  // palace children have the (1,2,1) length pattern
  auto p = cylinder_interval(VertexId::parse("/0/0"));
  auto k0 = cylinder_interval(VertexId::parse("/0/0/0"));
  auto k1 = cylinder_interval(VertexId::parse("/0/0/1"));
  auto k2 = cylinder_interval(VertexId::parse("/0/0/2"));
  CHECK(k0.length * 2 == k1.length);
  CHECK(k0.length == k2.length);
  CHECK(k0.length + k1.length + k2.length == p.length);
  CHECK_THROWS_AS(cylinder_interval(VertexId{}), Error);
}

TEST_CASE("children partition the parent interval") {
  for (const auto& v : all_vertices(4)) {
    TorusInterval iv =
        v.is_root() ? TorusInterval{Rat(0), Rat(1)} : cylinder_interval(v);
    Rat cursor = iv.start;
    Rat total = 0;
    for (const auto& c : children(v)) {
      auto ci = cylinder_interval(c);
      CHECK(ci.start == cursor);
      cursor = ci.end();
      total += ci.length;
    }
    CHECK(cursor == iv.end());
    CHECK(total == iv.length);
  }
}

TEST_CASE("torus positions of digit strings") {
  CHECK(torus_position(bp({0})) == 0);
  CHECK(torus_position(bp({1})) == make_rat(1, 3));
  CHECK(torus_position(bp({2})) == make_rat(2, 3));
  CHECK(torus_position(bp({0, 0, 1})) == make_rat(1, 48));
  CHECK(torus_position(bp({0, 1})) == make_rat(1, 12));
  // trailing zeros do not move the point
  CHECK(torus_position(bp({1, 0, 0, 0})) == make_rat(1, 3));
  CHECK(torus_position(bp({2, 3, 3, 3})) == make_rat(191, 192));
  CHECK_THROWS_AS(torus_position_digits({3}), Error);
  CHECK_THROWS_AS(torus_position_digits({0, 4}), Error);
  CHECK_THROWS_AS(BoundaryPoint::from_digits({}), Error);
}

TEST_CASE("index positions use the raw quarter map") {
  CHECK(index_position(bp({2, 3, 3, 3})) == make_rat(11, 12) - make_rat(1, 256));
  CHECK(index_position(bp({1})) == make_rat(1, 3));
  // truncations increase toward the limit
  Rat a = index_position(bp({2, 3}));
  Rat b = index_position(bp({2, 3, 3}));
  Rat c = index_position(bp({2, 3, 3, 3}));
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c < make_rat(11, 12));
}

TEST_CASE("point_at inverts torus_position on the grid") {
  for (const char* id : {"/0", "/1", "/5", "/0/1", "/0/4", "/3/2", "/0/0/1",
                         "/2/4/2", "/5/1/3/1"}) {
    Rat s = pos_of(id);
    BoundaryPoint p = point_at(s);
    CHECK(torus_position(p) == s);
  }
  CHECK_THROWS_AS(point_at(make_rat(1, 5)), Error);
  CHECK_THROWS_AS(point_at(make_rat(1, 9)), Error);
}

TEST_CASE("native depth is the smallest resolving generation") {
  CHECK(native_depth(Rat(0)) == 0);
  CHECK(native_depth(make_rat(1, 3)) == 0);
  CHECK(native_depth(make_rat(1, 12)) == 1);
  CHECK(native_depth(make_rat(1, 4)) == 1);
  CHECK(native_depth(make_rat(1, 6)) == 1);
  CHECK(native_depth(make_rat(1, 48)) == 2);
  CHECK(native_depth(make_rat(1, 16)) == 2);
  CHECK(native_depth(make_rat(7, 48)) == 2);
  CHECK(native_depth(make_rat(1, 192)) == 3);
  CHECK_THROWS_AS(native_depth(make_rat(1, 5)), Error);
  CHECK_THROWS_AS(native_depth(make_rat(1, 9)), Error);
  CHECK_THROWS_AS(native_depth(Rat(2)), Error);
}

TEST_CASE("cylinder endpoints vs bump apexes") {
  // valleys: cylinder boundaries at their native generation
  for (const Rat& v : {Rat(0), make_rat(1, 6), make_rat(1, 3), make_rat(1, 2),
                       make_rat(2, 3), make_rat(5, 6), make_rat(1, 48),
                       make_rat(1, 16), make_rat(5, 48), make_rat(7, 48),
                       make_rat(1, 192)})
    CHECK(is_cylinder_endpoint(v));
  // apexes and triangle corners: single branch, never an endpoint
  for (const Rat& pk : {make_rat(1, 12), make_rat(5, 12), make_rat(3, 4),
                        make_rat(1, 4), make_rat(7, 12), make_rat(11, 12)})
    CHECK(!is_cylinder_endpoint(pk));
  // deeper apexes inside /0/2
  CHECK(!is_cylinder_endpoint(make_rat(4, 48)));
}

TEST_CASE("maximal cylinder decompositions: frozen examples") {
  auto one = decompose_arc(Rat(0), make_rat(1, 6));
  REQUIRE(one.size() == 1);
  CHECK(one[0].str() == "/0");

  auto two = decompose_arc(Rat(0), make_rat(1, 3));
  REQUIRE(two.size() == 2);
  CHECK(two[0].str() == "/0");
  CHECK(two[1].str() == "/1");

  auto single = decompose_arc(make_rat(1, 48), make_rat(1, 16));
  REQUIRE(single.size() == 1);
  CHECK(single[0].str() == "/0/1");

  auto suffix = decompose_arc(make_rat(1, 48), make_rat(1, 6));
  REQUIRE(suffix.size() == 4);
  CHECK(suffix[0].str() == "/0/1");
  CHECK(suffix[3].str() == "/0/4");

  auto wrap = decompose_arc(make_rat(5, 6), make_rat(1, 6));
  REQUIRE(wrap.size() == 2);
  CHECK(wrap[0].str() == "/5");
  CHECK(wrap[1].str() == "/0");

  CHECK(decompose_arc(Rat(0), Rat(0)).empty());
  CHECK_THROWS_AS(decompose_arc(Rat(0), make_rat(1, 12)), Error);
  CHECK_THROWS_AS(decompose_arc(make_rat(1, 4), make_rat(1, 2)), Error);
}

TEST_CASE("decompositions are maximal, disjoint and exact") {
  // every consecutive pair of generation <=3 grid valleys
  std::vector<Rat> valleys;
  for (const auto& v : all_vertices(3))
    if (!v.is_root()) valleys.push_back(cylinder_interval(v).start);
  std::set<Rat> uniq(valleys.begin(), valleys.end());
  std::vector<Rat> grid(uniq.begin(), uniq.end());
  for (std::size_t i = 0; i + 1 < grid.size(); i += 7) {
    for (std::size_t j = i + 1; j < grid.size(); j += 11) {
      auto dec = decompose_arc(grid[i], grid[j]);
      Rat cursor = grid[i];
      Rat len = 0;
      for (const auto& v : dec) {
        auto iv = cylinder_interval(v);
        CHECK(iv.start == cursor);
        cursor = iv.end();
        len += iv.length;
        // maximality: the parent cylinder pokes out of the arc
        if (!v.parent().is_root()) {
          auto pv = cylinder_interval(v.parent());
          CHECK((pv.start < grid[i] || pv.end() > grid[j]));
        }
      }
      CHECK(cursor == grid[j]);
      CHECK(len == grid[j] - grid[i]);
    }
  }
}

TEST_CASE("arc weights and the snowflake metric") {
  CHECK(arc_weight(Rat(0), make_rat(1, 6)) == make_rat(1, 3));
  CHECK(arc_weight(make_rat(1, 48), make_rat(1, 6)) == make_rat(4, 9));
  CHECK(arc_weight(make_rat(1, 48), make_rat(1, 16)) == make_rat(1, 9));

  // cylinder endpoints: dK equals 3^-generation
  CHECK(metric_dK_pos(Rat(0), make_rat(1, 6)) == make_rat(1, 3));
  CHECK(metric_dK_pos(Rat(0), make_rat(1, 48)) == make_rat(1, 9));
  CHECK(metric_dK_pos(make_rat(1, 48), make_rat(1, 16)) == make_rat(1, 9));
  CHECK(metric_dK_pos(Rat(0), Rat(0)) == 0);

  // the short side wins
  CHECK(metric_dK_pos(make_rat(5, 6), make_rat(1, 6)) == make_rat(2, 3));

  // symmetry and the triangle inequality on a small grid
  std::vector<Rat> pts;
  for (const auto& v : all_vertices(2))
    if (!v.is_root()) pts.push_back(cylinder_interval(v).start);
  std::set<Rat> uniq(pts.begin(), pts.end());
  std::vector<Rat> grid(uniq.begin(), uniq.end());
  for (std::size_t i = 0; i < grid.size(); i += 3)
    for (std::size_t j = i; j < grid.size(); j += 5) {
      Rat dij = metric_dK_pos(grid[i], grid[j]);
      CHECK(dij == metric_dK_pos(grid[j], grid[i]));
      if (i != j) CHECK(dij > 0);
      for (std::size_t k = j; k < grid.size(); k += 7) {
        CHECK(metric_dK_pos(grid[i], grid[k]) <=
              dij + metric_dK_pos(grid[j], grid[k]));
      }
    }
}

TEST_CASE("circle metric") {
  CHECK(metric_d_pos(Rat(0), make_rat(1, 6)) == make_rat(1, 6));
  CHECK(metric_d_pos(Rat(0), make_rat(5, 6)) == make_rat(1, 6));
  CHECK(metric_d_pos(make_rat(1, 4), make_rat(3, 4)) == make_rat(1, 2));
  CHECK_THROWS_AS(metric_d_pos(Rat(0), Rat(1)), Error);
}

TEST_CASE("branches through a valley diverge at its native generation") {
  auto after = branch(bp({0, 0, 1}, Side::After), 4);
  auto before = branch(bp({0, 0, 1}, Side::Before), 4);
  REQUIRE(after.size() == 4);
  REQUIRE(before.size() == 4);
  CHECK(after[0].str() == "/0");
  CHECK(before[0].str() == "/0");
  CHECK(after[1].str() == "/0/1");
  CHECK(before[1].str() == "/0/0");
  CHECK(after[1] != before[1]);
  // both stay on their side from there on
  CHECK(after[2].str() == "/0/1/0");
  CHECK(before[2].str() == "/0/0/2");

  // at position 0 the before-branch wraps to the last cylinders
  auto wrap = branch(bp({0}, Side::Before), 2);
  CHECK(wrap[0].str() == "/5");
  CHECK(wrap[1].str() == "/5/4");
  auto fwd = branch(bp({0}, Side::After), 2);
  CHECK(fwd[0].str() == "/0");
  CHECK(fwd[1].str() == "/0/0");
}

TEST_CASE("branches through an apex never diverge") {
  for (int depth = 1; depth <= 5; ++depth) {
    auto a = branch(bp({0, 1}, Side::After), depth);
    auto b = branch(bp({0, 1}, Side::Before), depth);
    REQUIRE(a.size() == static_cast<std::size_t>(depth));
    for (int i = 0; i < depth; ++i) CHECK(a[i] == b[i]);
  }
  // the apex sits strictly inside nested pants forever
  auto chain = branch(bp({0, 1}), 5);
  for (const auto& v : chain) CHECK(kind_of(v) == Kind::Pants);
}

TEST_CASE("child_towards matches branch") {
  VertexId v;
  Rat pos = make_rat(1, 48);
  auto chain = branch(bp({0, 0, 1}, Side::Before), 3);
  for (const auto& expect : chain) {
    v = child_towards(v, pos, Side::Before);
    CHECK(v == expect);
  }
  CHECK_THROWS_AS(child_towards(VertexId::parse("/1"), Rat(0), Side::After),
                  Error);
}

TEST_CASE("cylinder lengths shrink with the digit depth") {
  // a generation-n pants spans two curve segments of its depth
  auto v = VertexId::parse("/2/2/2");
  auto iv = cylinder_interval(v);
  CHECK(iv.length == 2 * level_length(3));
  auto w = VertexId::parse("/2/2/2/2");
  CHECK(cylinder_interval(w).length == 2 * level_length(4));
  CHECK(cylinder_interval(w).length * 4 == iv.length);
}
