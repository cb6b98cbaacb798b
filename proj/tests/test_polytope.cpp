#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polyhom/error.hpp"
#include "polyhom/polytope.hpp"
#include "test_util.hpp"

using namespace polyhom;
using testutil::q;
using testutil::rv;
using testutil::sorted;

namespace {

// Pentagon with vertices (0,2),(0,3),(2,0),(2,4),(4,0), built from a point
// matrix that also contains interior and edge points.
std::vector<RatVec> pentagon_inputs() {
  return {rv({0, 2}), rv({0, 3}), {q(3, 2), q(3, 2)}, rv({2, 0}),
          rv({2, 3}), rv({2, 4}), rv({3, 2}),         rv({4, 0})};
}

std::vector<RatVec> pentagon_vertices() {
  return {rv({0, 2}), rv({0, 3}), rv({2, 0}), rv({2, 4}), rv({4, 0})};
}

}  // namespace

TEST_CASE("hull strips interior and edge points") {
  auto P = convex_hull(pentagon_inputs());
  CHECK(P.ambient_dim() == 2);
  CHECK(P.dim() == 2);
  CHECK(sorted(P.vertices()) == pentagon_vertices());
  CHECK(P.volume() == q(9));

  // Rebuilding from the vertex set changes nothing.
  auto P2 = convex_hull(P.vertices());
  CHECK(sorted(P2.vertices()) == pentagon_vertices());
  CHECK(P2.volume() == q(9));
}

TEST_CASE("hull input validation") {
  CHECK_THROWS_AS(convex_hull({}), Error);
  CHECK_THROWS_AS(convex_hull({rv({1, 2}), rv({1, 2, 3})}), Error);
}

TEST_CASE("support function and exposed faces") {
  auto P = convex_hull(pentagon_inputs());

  auto [h1, f1] = support_data(P, rv({-1, 1}));
  CHECK(h1 == q(3));
  CHECK(f1.vertices == std::vector<RatVec>{rv({0, 3})});

  auto [h2, f2] = support_data(P, rv({2, 1}));
  CHECK(h2 == q(8));
  CHECK(sorted(f2.vertices) == std::vector<RatVec>{rv({2, 4}), rv({4, 0})});

  auto [h3, f3] = support_data(P, rv({-1, -2}));
  CHECK(h3 == q(-2));
  CHECK(f3.vertices == std::vector<RatVec>{rv({2, 0})});

  auto [h4, f4] = support_data(P, rv({0, 0}));
  CHECK(h4 == q(0));
  CHECK(f4.vertices.size() == 5);

  CHECK_THROWS_AS(support_data(P, rv({1, 2, 3})), Error);
}

TEST_CASE("volumes of standard bodies") {
  std::vector<RatVec> cube;
  for (int i = 0; i < 8; ++i) cube.push_back(rv({i & 1, (i >> 1) & 1, (i >> 2) & 1}));
  CHECK(convex_hull(cube).volume() == q(1));

  auto simplex3 = convex_hull({rv({0, 0, 0}), rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
  CHECK(simplex3.volume() == q(1, 6));

  auto big_square = convex_hull({rv({0, 0}), rv({2, 0}), rv({0, 2}), rv({2, 2})});
  CHECK(big_square.volume() == q(4));

  // Lower-dimensional sets have volume zero but remember their dimension.
  auto segment = convex_hull({rv({0, 0}), rv({2, 2}), rv({1, 1})});
  CHECK(segment.dim() == 1);
  CHECK(segment.volume() == q(0));
  CHECK(sorted(segment.vertices()) == std::vector<RatVec>{rv({0, 0}), rv({2, 2})});

  auto flat_triangle = convex_hull({rv({0, 0, 1}), rv({1, 0, 1}), rv({0, 1, 1})});
  CHECK(flat_triangle.dim() == 2);
  CHECK(flat_triangle.volume() == q(0));

  auto point = convex_hull({rv({3, 4})});
  CHECK(point.dim() == 0);
  CHECK(point.volume() == q(0));
}

TEST_CASE("2D hull volume agrees with the shoelace formula") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(-5, 5);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<RatVec> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(rv({coord(rng), coord(rng)}));
    auto P = convex_hull(pts);
    if (P.dim() < 2) continue;
    // Order vertices around the centroid, then apply the shoelace formula.
    auto vs = P.vertices();
    double cx = 0, cy = 0;
    for (const auto& v : vs) {
      cx += to_double(v[0]);
      cy += to_double(v[1]);
    }
    cx /= vs.size();
    cy /= vs.size();
    std::sort(vs.begin(), vs.end(), [&](const RatVec& a, const RatVec& b) {
      return std::atan2(to_double(a[1]) - cy, to_double(a[0]) - cx) <
             std::atan2(to_double(b[1]) - cy, to_double(b[0]) - cx);
    });
    CHECK(P.volume() == oracle::shoelace_area(vs));
  }
}

TEST_CASE("membership agrees with the LP oracle") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(0, 64);
  auto rand_point = [&] {
    RatVec p{q(num(rng), 64), q(num(rng), 64), q(num(rng), 64)};
    return p;
  };
  std::vector<RatVec> gens;
  for (int i = 0; i < 12; ++i) gens.push_back(rand_point());
  auto P = convex_hull(gens);
  REQUIRE(P.dim() == 3);
  for (int i = 0; i < 100; ++i) {
    auto p = rand_point();
    CHECK(contains(P, p) == oracle::in_hull(gens, p));
  }
  // Vertices and centroid are members.
  for (const auto& v : P.vertices()) CHECK(contains(P, v));
  CHECK_THROWS_AS(contains(P, rv({0, 0})), Error);
}

TEST_CASE("H-representation") {
  auto square = convex_hull({rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
  const auto& h = square.hrep();
  CHECK(h.eq_normals.empty());
  REQUIRE(h.facets.size() == 4);
  for (const auto& f : h.facets) {
    CHECK(f.vertex_ids.size() == 2);  // each edge is spanned by two vertices
    for (int id : f.vertex_ids)
      CHECK(rat_dot(f.normal, square.vertices()[id]) == f.offset);
    for (const auto& v : square.vertices()) CHECK(rat_dot(f.normal, v) <= f.offset);
  }

  // A triangle floating at height 1 in R^3 has one affine-hull equation.
  auto flat = convex_hull({rv({0, 0, 1}), rv({1, 0, 1}), rv({0, 1, 1})});
  const auto& hf = flat.hrep();
  REQUIRE(hf.eq_normals.size() == 1);
  for (const auto& v : flat.vertices())
    CHECK(rat_dot(hf.eq_normals[0], v) == hf.eq_offsets[0]);
  CHECK(contains(flat, {q(1, 4), q(1, 4), q(1)}));
  CHECK_FALSE(contains(flat, {q(1, 4), q(1, 4), q(2)}));

  // A single point is cut out by coordinate equations alone.
  auto pt = convex_hull({rv({3, 4})});
  CHECK(pt.hrep().facets.empty());
  CHECK(pt.hrep().eq_normals.size() == 2);
  CHECK(contains(pt, rv({3, 4})));
  CHECK_FALSE(contains(pt, rv({3, 5})));
}

TEST_CASE("Minkowski sums") {
  auto square = convex_hull({rv({0, 0}), rv({1, 0}), rv({0, 1}), rv({1, 1})});
  auto tri = convex_hull({rv({0, 0}), rv({1, 0}), rv({0, 1})});
  auto S = minkowski_sum(square, tri);
  CHECK(S.volume() == q(7, 2));
  CHECK(S.vertices().size() == 5);
  auto S2 = minkowski_sum(tri, square);
  CHECK(sorted(S.vertices()) == sorted(S2.vertices()));

  auto seg = convex_hull({rv({0}), rv({2})});
  CHECK_THROWS_AS(minkowski_sum(square, seg), Error);
}

TEST_CASE("lattice point enumeration") {
  auto twice_simplex = convex_hull({rv({0, 0}), rv({2, 0}), rv({0, 2})});
  auto pts = lattice_points(twice_simplex);
  std::vector<IntVec> expected = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
  CHECK(pts == expected);

  std::vector<RatVec> cube;
  for (int i = 0; i < 8; ++i) cube.push_back(rv({i & 1, (i >> 1) & 1, (i >> 2) & 1}));
  CHECK(lattice_points(convex_hull(cube)).size() == 8);

  // Fractional vertices: conv{(1/2,1/2),(5/2,1/2),(1/2,5/2)} holds 3 points.
  auto frac = convex_hull({{q(1, 2), q(1, 2)}, {q(5, 2), q(1, 2)}, {q(1, 2), q(5, 2)}});
  CHECK(lattice_points(frac).size() == 3);

  // A diagonal segment picks up exactly its integer points.
  auto seg = convex_hull({rv({0, 0}), rv({3, 3})});
  CHECK(lattice_points(seg).size() == 4);

  // Cross-check the pentagon against the independent scan.
  auto P = convex_hull(pentagon_inputs());
  CHECK(static_cast<long long>(lattice_points(P).size()) ==
        oracle::lattice_count_by_scan(pentagon_inputs()));
}

TEST_CASE("random hulls agree with the LP oracle on vertex choice") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> coord(0, 6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RatVec> pts;
    for (int i = 0; i < 9; ++i) pts.push_back(rv({coord(rng), coord(rng)}));
    auto P = convex_hull(pts);
    // Every claimed vertex is NOT in the hull of the other input points;
    // every discarded point IS in the hull of the full set.
    for (const auto& v : P.vertices()) {
      std::vector<RatVec> others;
      for (const auto& p : pts)
        if (p != v) others.push_back(p);
      CHECK_FALSE(oracle::in_hull(others, v));
    }
    for (const auto& p : pts) CHECK(oracle::in_hull(pts, p));
  }
}

TEST_CASE("Newton polytopes") {
  auto f = SparsePoly::make(
      2, {{{0, 0}, Cx(3)}, {{1, 0}, Cx(4)}, {{0, 1}, Cx(-2)}, {{1, 1}, Cx(1)}});
  auto P = newton_polytope(f);
  CHECK(sorted(P.vertices()) ==
        std::vector<RatVec>{rv({0, 0}), rv({0, 1}), rv({1, 0}), rv({1, 1})});

  CHECK_THROWS_AS(newton_polytope(SparsePoly::make(2, {})), Error);

  // Homogenization appends the degree-complement coordinate.
  auto g = SparsePoly::make(2, {{{0, 0}, Cx(6)}, {{1, 2}, Cx(-2)}, {{2, 1}, Cx(1)}});
  auto Q = newton_polytope(g, true);
  CHECK(Q.ambient_dim() == 3);
  CHECK(Q.dim() == 2);
  CHECK(sorted(Q.vertices()) ==
        std::vector<RatVec>{rv({0, 0, 3}), rv({1, 2, 0}), rv({2, 1, 0})});
}

TEST_CASE("Newton polytope of a product is the Minkowski sum") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> e(0, 3), nterms(2, 5);
  std::uniform_real_distribution<double> c(0.5, 2.0);  // positive: no cancellation
  for (int trial = 0; trial < 10; ++trial) {
    auto rand_poly = [&] {
      std::vector<Term> ts;
      int k = nterms(rng);
      for (int i = 0; i < k; ++i) ts.push_back({{e(rng), e(rng)}, Cx(c(rng))});
      return SparsePoly::make(2, ts);
    };
    auto f = rand_poly(), g = rand_poly();
    auto lhs = newton_polytope(poly_mul(f, g));
    auto rhs = minkowski_sum(newton_polytope(f), newton_polytope(g));
    CHECK(sorted(lhs.vertices()) == sorted(rhs.vertices()));
  }
}

TEST_CASE("uniform-degree support constraints") {
  // Three variables, degree 4, target value 54: right-hand side (72,72,72,54).
  IntMat A = {{4, 0, 1, 2}, {0, 4, 1, 1}, {0, 0, 2, 1}};
  auto [M, rhs] = invariant_constraint(A, 4, 54);
  REQUIRE(M.size() == 4);
  CHECK(rhs == RatVec{q(72), q(72), q(72), q(54)});
  CHECK(M[3] == RatVec{q(1), q(1), q(1), q(1)});
  CHECK(M[0] == RatVec{q(4), q(0), q(1), q(2)});

  // A column of the wrong degree is rejected.
  IntMat bad = {{4, 0, 1}, {0, 4, 1}, {0, 0, 3}};
  CHECK_THROWS_AS(invariant_constraint(bad, 4, 54), Error);

  // One variable: the two rows coincide up to scale.
  IntMat one = {{2, 2}};
  auto [M1, r1] = invariant_constraint(one, 2, 10);
  CHECK(r1 == RatVec{q(20), q(10)});
}
