#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "polyhom/error.hpp"
#include "polyhom/exactlin.hpp"
#include "polyhom/oracle.hpp"
#include "polyhom/polytope.hpp"
#include "polyhom/rational.hpp"
#include "polyhom/witness.hpp"
#include "test_util.hpp"

using namespace polyhom;
using testutil::thrown_code;

namespace {

// Sextic plane curve with Newton polygon vertices (1,0), (4,0), (2,4), and
// (0,4), (0,2): x + 20x^2 - 4x^3 + x^4 - 4xy + 10x^2 y + y^2 + 8x y^2
// + 4x^2 y^2 + x^3 y^2 - 4y^3 - 6x y^3 + 4x^2 y^3 + 4y^4 - 4x y^4 + x^2 y^4.
SparsePoly sextic_curve() {
  return SparsePoly::make(2, {{{1, 0}, Cx(1)},
                              {{2, 0}, Cx(20)},
                              {{3, 0}, Cx(-4)},
                              {{4, 0}, Cx(1)},
                              {{1, 1}, Cx(-4)},
                              {{2, 1}, Cx(10)},
                              {{0, 2}, Cx(1)},
                              {{1, 2}, Cx(8)},
                              {{2, 2}, Cx(4)},
                              {{3, 2}, Cx(1)},
                              {{0, 3}, Cx(-4)},
                              {{1, 3}, Cx(-6)},
                              {{2, 3}, Cx(4)},
                              {{0, 4}, Cx(4)},
                              {{1, 4}, Cx(-4)},
                              {{2, 4}, Cx(1)}});
}

// Space curve cut out by x y z - (x - y - z)^2 + 3x + z and x + y^2 + z^2.
// Forgetting z projects it 1:1 onto the sextic above.
SparseSystem sextic_preimage() {
  SparsePoly g1 = SparsePoly::make(3, {{{1, 1, 1}, Cx(1)},
                                       {{2, 0, 0}, Cx(-1)},
                                       {{0, 2, 0}, Cx(-1)},
                                       {{0, 0, 2}, Cx(-1)},
                                       {{1, 1, 0}, Cx(2)},
                                       {{1, 0, 1}, Cx(2)},
                                       {{0, 1, 1}, Cx(-2)},
                                       {{1, 0, 0}, Cx(3)},
                                       {{0, 0, 1}, Cx(1)}});
  SparsePoly g2 =
      SparsePoly::make(3, {{{1, 0, 0}, Cx(1)}, {{0, 2, 0}, Cx(1)}, {{0, 0, 2}, Cx(1)}});
  return SparseSystem{{g1, g2}};
}

// Plane cubic whose Newton polygon is the full triangle of degree 3.
SparsePoly full_cubic() {
  return SparsePoly::make(2, {{{0, 0}, Cx(2)},
                              {{1, 0}, Cx(-4)},
                              {{3, 0}, Cx(1)},
                              {{0, 1}, Cx(-2)},
                              {{1, 1}, Cx(-2)},
                              {{0, 2}, Cx(3)},
                              {{1, 2}, Cx(-1)},
                              {{0, 3}, Cx(1)}});
}

ExpVec beta_of(const OracleAnswer& a) { return ExpVec(a.beta.begin(), a.beta.end()); }

std::int64_t beta_sum(const OracleAnswer& a) {
  std::int64_t s = 0;
  for (const std::int64_t b : a.beta) s += b;
  return s;
}

std::vector<RatVec> sorted_vertices(const Polytope& P) { return testutil::sorted(P.vertices()); }

std::vector<RatVec> as_ratvecs(const std::vector<ExpVec>& pts) {
  std::vector<RatVec> out;
  out.reserve(pts.size());
  for (const ExpVec& p : pts) out.push_back(to_ratvec(p));
  return testutil::sorted(out);
}

// First system of the membership battery: two quadrics cutting out a curve.
SparseSystem battery_one() {
  SparsePoly p1 = SparsePoly::make(3, {{{1, 0, 1}, Cx(1)},
                                       {{0, 1, 1}, Cx(4)},
                                       {{0, 0, 2}, Cx(-1)},
                                       {{1, 0, 0}, Cx(3)},
                                       {{0, 1, 0}, Cx(-12)},
                                       {{0, 0, 1}, Cx(5)}});
  SparsePoly p2 = SparsePoly::make(3, {{{1, 1, 0}, Cx(1)},
                                       {{0, 2, 0}, Cx(-4)},
                                       {{0, 1, 1}, Cx(1)},
                                       {{1, 0, 0}, Cx(1)},
                                       {{0, 1, 0}, Cx(2)},
                                       {{0, 0, 1}, Cx(-1)}});
  return SparseSystem{{p1, p2}};
}

// Second system of the membership battery.
SparseSystem battery_two() {
  SparsePoly p1 = SparsePoly::make(
      3,
      {{{1, 1, 0}, Cx(1)}, {{1, 0, 1}, Cx(-3)}, {{0, 1, 1}, Cx(3)}, {{0, 0, 0}, Cx(-1)}});
  SparsePoly p2 = SparsePoly::make(3, {{{1, 0, 2}, Cx(3)},
                                       {{0, 1, 2}, Cx(-12)},
                                       {{1, 0, 1}, Cx(1)},
                                       {{0, 1, 1}, Cx(4)},
                                       {{0, 0, 1}, Cx(5)},
                                       {{0, 0, 0}, Cx(-1)}});
  return SparseSystem{{p1, p2}};
}

const std::vector<std::vector<double>>& cube_directions() {
  static const std::vector<std::vector<double>> dirs = {
      {1, 1, 1},  {1, 1, -1},  {1, -1, 1},  {1, -1, -1},
      {-1, 1, 1}, {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1}};
  return dirs;
}

}  // namespace

TEST_CASE("line oracle answers vertex, face, and whole-polytope queries") {
  const SparsePoly f = sextic_curve();
  const HypersurfaceOracle O(f, 7);
  CHECK(O.dimension() == 2);
  CHECK(O.degree() == 6);

  const CxVec rho = O.targets();
  REQUIRE(rho.size() == 2);
  CHECK(std::abs(rho[0]) == doctest::Approx(1.0));
  CHECK(std::abs(rho[1]) == doctest::Approx(1.0));
  CHECK(std::abs(rho[0] - rho[1]) == doctest::Approx(2.0));

  const OracleAnswer v = O.query({3.0, 2.0});
  CHECK(v.kind == OracleAnswer::Kind::Vertex);
  CHECK(beta_of(v) == ExpVec{2, 4, 0});
  CHECK(v.elsewhere == 0);
  CHECK(beta_sum(v) == O.degree());

  // Scaling the direction by a positive factor changes nothing.
  CHECK(beta_of(O.query({6.0, 4.0})) == ExpVec{2, 4, 0});
  CHECK(beta_of(O.query({1.5, 1.0})) == ExpVec{2, 4, 0});

  // A vertex whose homogenization has positive last coordinate: two of the
  // six intersection points diverge.
  const OracleAnswer w = O.query({1.0, 0.0});
  CHECK(w.kind == OracleAnswer::Kind::Vertex);
  CHECK(beta_of(w) == ExpVec{4, 0, 2});

  // The face exposed by (0, 1) is the whole top edge, so two points settle
  // away from every target.
  const OracleAnswer e = O.query({0.0, 1.0});
  CHECK(e.kind == OracleAnswer::Kind::Face);
  CHECK(beta_of(e) == ExpVec{0, 4, 0});
  CHECK(e.elsewhere == 2);
  CHECK(beta_sum(e) < O.degree());

  // The zero direction moves nothing and therefore exposes everything.
  const OracleAnswer z = O.query({0.0, 0.0});
  CHECK(z.kind == OracleAnswer::Kind::EntirePolytope);
  CHECK(z.beta.empty());

  CHECK(beta_of(oracle_query(O, {3.0, 2.0})) == ExpVec{2, 4, 0});

  // The answer does not depend on the random line.
  const HypersurfaceOracle O2(f, 20260825);
  CHECK(beta_of(O2.query({3.0, 2.0})) == ExpVec{2, 4, 0});

  CHECK(thrown_code([&] { O.query({1.0}); }) == Errc::DimensionMismatch);
}

TEST_CASE("line oracle construction rejects degenerate input") {
  CHECK(thrown_code([] { HypersurfaceOracle(SparsePoly::make(2, {}), 1); }) ==
        Errc::ZeroPolynomial);
  CHECK(thrown_code([] { HypersurfaceOracle(SparsePoly::make(2, {{{0, 0}, Cx(5)}}), 1); }) ==
        Errc::EmptySupport);
  CHECK(thrown_code([] { HypersurfaceOracle(SparsePoly::make(1, {{{-1}, Cx(1)}, {{1}, Cx(1)}}),
                                            1); }) == Errc::NonIntegral);
}

TEST_CASE("line oracle reports undecided paths instead of guessing") {
  OracleConfig cfg;
  cfg.max_steps = 50;
  const HypersurfaceOracle O(sextic_curve(), 7, cfg);
  // A nearly flat direction separates the support so slowly that no path can
  // settle within the probe budget.
  CHECK(thrown_code([&] { O.query({1e-4, 0.0}); }) == Errc::MaxTracksReached);
}

TEST_CASE("no intersection point of a homogeneous hypersurface diverges") {
  const SparsePoly f = SparsePoly::make(3, {{{3, 0, 0}, Cx(1)},
                                            {{0, 3, 0}, Cx(1)},
                                            {{0, 0, 3}, Cx(1)},
                                            {{1, 1, 1}, Cx(-2)}});
  const HypersurfaceOracle O(f, 11);
  CHECK(O.degree() == 3);

  CHECK(beta_of(O.query({1.0, 0.0, 0.0})) == ExpVec{3, 0, 0, 0});
  CHECK(beta_of(O.query({0.0, 1.0, 0.0})) == ExpVec{0, 3, 0, 0});
  CHECK(beta_of(O.query({0.0, 0.0, 1.0})) == ExpVec{0, 0, 3, 0});

  // Uniform directions expose the whole support of a homogeneous polynomial.
  CHECK(O.query({1.0, 1.0, 1.0}).kind == OracleAnswer::Kind::EntirePolytope);

  const OracleAnswer face = O.query({-1.0, 0.0, 0.0});
  CHECK(face.kind == OracleAnswer::Kind::Face);
  CHECK(face.elsewhere == 3);
  CHECK(face.beta.back() == 0);

  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> di(-2, 2);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<double> omega(3);
    bool zero = true, uniform = true;
    for (int i = 0; i < 3; ++i) {
      omega[i] = di(rng);
      zero = zero && omega[i] == 0;
      uniform = uniform && omega[i] == omega[0];
    }
    if (zero || uniform) continue;
    const OracleAnswer a = O.query(omega);
    REQUIRE(a.beta.size() == 4);
    CHECK(a.beta.back() == 0);  // the support sits on the simplex
    CHECK(beta_sum(a) + a.elsewhere == 3);
  }
}

TEST_CASE("witness-set and pseudo-witness presentations agree with the equation") {
  const SparsePoly f = sextic_curve();

  // Witness-set route: the curve cut by a random affine line.
  const WitnessData W = witness_construct(SparseSystem{{f}}, 1, {}, 3);
  REQUIRE(W.points.size() == 6);
  const HypersurfaceOracle OW(W, 7);
  CHECK(OW.degree() == 6);
  CHECK(beta_of(OW.query({3.0, 2.0})) == ExpVec{2, 4, 0});

  // Projection route: the same sextic reached as the image of a space curve
  // under forgetting the last coordinate.
  const SparseSystem E = sextic_preimage();
  const WitnessData WE = witness_construct(E, 1, {}, 3);
  REQUIRE(WE.points.size() == 6);
  const PseudoWitnessData P = pseudo_witness(WE, {0, 1}, {}, 5);
  CHECK(P.image_degree == 6);

  const HypersurfaceOracle OP(P, 17);
  CHECK(OP.dimension() == 2);
  CHECK(OP.degree() == 6);

  const OracleAnswer v = OP.query({3.0, 2.0});
  CHECK(v.kind == OracleAnswer::Kind::Vertex);
  CHECK(beta_of(v) == ExpVec{2, 4, 0});

  const OracleAnswer e = OP.query({0.0, 1.0});
  CHECK(e.kind == OracleAnswer::Kind::Face);
  CHECK(beta_of(e) == ExpVec{0, 4, 0});
  CHECK(e.elsewhere == 2);

  CHECK(OP.query({0.0, 0.0}).kind == OracleAnswer::Kind::EntirePolytope);

  // Degenerate pseudo-witness data is rejected before any tracking.
  PseudoWitnessData bad = P;
  bad.image_degree = 0;
  CHECK(thrown_code([&] { HypersurfaceOracle(bad, 1); }) == Errc::EmptyInput);
  PseudoWitnessData empty = P;
  empty.points.clear();
  CHECK(thrown_code([&] { HypersurfaceOracle(empty, 1); }) == Errc::EmptyInput);

  SparseSystem two = sextic_preimage();
  const WitnessData W2{two, SparseSystem{}, {}};
  CHECK(thrown_code([&] { HypersurfaceOracle(W2, 1); }) == Errc::DimensionMismatch);
}

TEST_CASE("a-priori convergence bound matches the observed decay") {
  const SparsePoly f = sextic_curve();
  const HypersurfaceOracle O(f, 7);
  const CxVec rho = O.targets();

  const ConvergenceBound B2 =
      convergence_bound(f, {3.0, 2.0}, O.anchor_a(), O.anchor_b(), rho[1]);
  CHECK(!B2.exposes_everything);
  CHECK(B2.rate == doctest::Approx(1.0));
  CHECK(B2.multiplicity == doctest::Approx(4.0));
  CHECK(B2.other_limits.empty());
  CHECK(B2.constant > 0.0);
  CHECK(B2.at(10.0) == doctest::Approx(B2.constant / 10.0));

  const ConvergenceBound B1 =
      convergence_bound(f, {3.0, 2.0}, O.anchor_a(), O.anchor_b(), rho[0]);
  CHECK(B1.multiplicity == doctest::Approx(2.0));

  const ConvergenceBound B0 =
      convergence_bound(f, {0.0, 0.0}, O.anchor_a(), O.anchor_b(), rho[0]);
  CHECK(B0.exposes_everything);
  CHECK(B0.at(100.0) == 0.0);

  CHECK(thrown_code([&] {
          convergence_bound(f, {1.0}, O.anchor_a(), O.anchor_b(), rho[0]);
        }) == Errc::DimensionMismatch);

  // Empirical check: along recorded paths, once inside the guarantee ball,
  // |s(t) - z|^multiplicity never exceeds the bound.
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> di(-3, 3);
  OracleConfig cfg;
  cfg.record_paths = true;
  int inside_samples = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> omega(2);
    do {
      omega[0] = di(rng);
      omega[1] = di(rng);
    } while (omega[0] == 0 && omega[1] == 0);
    const HypersurfaceOracle Q(f, 900 + trial, cfg);
    const OracleAnswer ans = Q.query(omega);
    CxVec limits = Q.targets();
    const ConvergenceBound Bany =
        convergence_bound(f, omega, Q.anchor_a(), Q.anchor_b(), limits[0]);
    for (const Cx& z : Bany.other_limits) limits.push_back(z);
    for (const auto& trace : ans.traces) {
      REQUIRE(!trace.empty());
      const Cx send = trace.back().second;
      Cx zstar = limits[0];
      for (const Cx& z : limits)
        if (std::abs(send - z) < std::abs(send - zstar)) zstar = z;
      if (std::abs(send - zstar) > 1e-3) continue;  // diverging path
      const ConvergenceBound B =
          convergence_bound(f, omega, Q.anchor_a(), Q.anchor_b(), zstar);
      for (const auto& [t, s] : trace) {
        const double r = std::abs(s - zstar);
        if (r > B.gamma_ball) continue;
        CHECK(std::pow(r, B.multiplicity) <= B.at(t) * (1.0 + 1e-9));
        ++inside_samples;
      }
    }
  }
  CHECK(inside_samples > 200);
}

TEST_CASE("exact vertex oracle over a point set") {
  const std::vector<ExpVec> pentagon = {{0, 2}, {0, 3}, {2, 0}, {2, 4}, {4, 0}};
  std::vector<ExpVec> pts = pentagon;
  pts.push_back({1, 2});
  pts.push_back({2, 2});
  const VertexOracle vo = vertex_oracle_from_points(pts);

  CHECK(*vo({1.0, 0.1}) == ExpVec{4, 0});
  CHECK(*vo({0.0, 1.0}) == ExpVec{2, 4});
  CHECK(*vo({-1.0, -1.0}) == ExpVec{0, 2});
  // (2,1) is the outer normal of the edge joining (2,4) and (4,0): a tie.
  CHECK(!vo({2.0, 1.0}));

  CHECK(thrown_code([&] { vo({1.0, 2.0, 3.0}); }) == Errc::DimensionMismatch);
  CHECK(thrown_code([] { vertex_oracle_from_points({}); }) == Errc::EmptyInput);
}

TEST_CASE("polytope reconstruction from exact vertex answers") {
  const std::vector<ExpVec> pentagon = {{0, 2}, {0, 3}, {2, 0}, {2, 4}, {4, 0}};

  SUBCASE("pentagon") {
    std::vector<ExpVec> pts = pentagon;
    pts.push_back({1, 2});
    pts.push_back({2, 2});
    const Polytope Q = reconstruct_polytope(vertex_oracle_from_points(pts), 2, 6, {});
    CHECK(sorted_vertices(Q) == as_ratvecs(pentagon));
  }

  SUBCASE("single point") {
    const Polytope Q = reconstruct_polytope(vertex_oracle_from_points({{3, 2}}), 2, 6, {});
    CHECK(Q.dim() == 0);
    CHECK(sorted_vertices(Q) == as_ratvecs({{3, 2}}));
  }

  SUBCASE("segment confined to a known hyperplane") {
    const VertexOracle vo = vertex_oracle_from_points({{0, 3}, {3, 0}, {1, 2}});
    const std::pair<RatMat, RatVec> constraints{{testutil::rv({1, 1})}, testutil::rv({3})};
    ReconstructOptions opt;
    opt.constraints = &constraints;
    const Polytope Q = reconstruct_polytope(vo, 2, 3, opt);
    CHECK(sorted_vertices(Q) == as_ratvecs({{0, 3}, {3, 0}}));
  }

  SUBCASE("random point sets") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<std::int64_t> coord(0, 6);
    std::uniform_int_distribution<int> count(3, 8);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = count(rng);
      std::vector<ExpVec> pts;
      std::vector<IntVec> ipts;
      for (int k = 0; k < n; ++k) {
        const std::int64_t x = coord(rng), y = coord(rng);
        pts.push_back({x, y});
        ipts.push_back({Int(x), Int(y)});
      }
      ReconstructOptions opt;
      opt.seed = 1000 + trial;
      const Polytope R = reconstruct_polytope(vertex_oracle_from_points(pts), 2, 6, opt);
      const Polytope expected = convex_hull_int(ipts);
      CHECK(sorted_vertices(R) == sorted_vertices(expected));
    }
  }

  SUBCASE("guard rails") {
    const VertexOracle vo = vertex_oracle_from_points({{0, 0}});
    CHECK(thrown_code([&] { reconstruct_polytope(vo, 0, 3, {}); }) == Errc::EmptyInput);
    CHECK(thrown_code([&] { reconstruct_polytope(vo, 2, 2000, {}); }) ==
          Errc::DimensionMismatch);
    CHECK(thrown_code([&] { reconstruct_polytope(vo, 30, 0, {}); }) == Errc::DimensionMismatch);
  }
}

TEST_CASE("numerical reconstruction of a curve's homogenized support") {
  const SparsePoly f = full_cubic();
  const std::vector<ExpVec> triangle = {{0, 0, 3}, {3, 0, 0}, {0, 3, 0}};

  ReconstructOptions opt;
  opt.seed = 29;
  const Polytope Q = reconstruct_polytope(vertex_oracle(HypersurfaceOracle(f, 23)), 3, 3, opt);
  CHECK(sorted_vertices(Q) == as_ratvecs(triangle));

  // Knowing the total degree confines the support to a hyperplane and cuts
  // the candidate grid from 64 points to 10.
  const std::pair<RatMat, RatVec> constraints{{testutil::rv({1, 1, 1})}, testutil::rv({3})};
  ReconstructOptions copt;
  copt.seed = 31;
  copt.constraints = &constraints;
  const Polytope QC =
      reconstruct_polytope(vertex_oracle(HypersurfaceOracle(f, 37)), 3, 3, copt);
  CHECK(sorted_vertices(QC) == as_ratvecs(triangle));
}

TEST_CASE("tropical membership for a single polynomial") {
  const SparsePoly f = sextic_curve();

  const TropicalReport in = tropical_membership(f, {2.0, 1.0});
  CHECK(in.member);
  REQUIRE(in.projections.size() == 1);
  CHECK(in.projections[0].image_degree == 6);
  CHECK(in.projections[0].answer.kind == OracleAnswer::Kind::Face);

  CHECK(!tropical_membership(f, {1.0, 1.0}).member);
  CHECK(!tropical_membership(f, {3.0, 2.0}).member);
  CHECK(tropical_membership(f, {0.0, 0.0}).member);

  CHECK(thrown_code([&] { tropical_membership(f, {1.0}); }) == Errc::DimensionMismatch);
}

TEST_CASE("coordinate changes expose false positives of the membership test") {
  const SparseSystem I1 = battery_one();
  const SparseSystem I2 = battery_two();
  const auto& dirs = cube_directions();

  // On the raw coordinates every sign pattern looks like a member.
  TropicalOptions raw1;
  raw1.seed = 101;
  const TropicalMembershipTester T1(I1, 1, raw1);
  TropicalOptions raw2;
  raw2.seed = 103;
  const TropicalMembershipTester T2(I2, 1, raw2);
  for (const auto& d : dirs) {
    CHECK(T1.query(d).member);
    CHECK(T2.query(d).member);
  }

  // After substituting x -> x y z the spurious verdicts disappear: the
  // remaining "true" answers are exactly the tropical directions.
  const std::vector<ExpVec> change = {{1, 1, 1}, {0, 1, 0}, {0, 0, 1}};
  const std::vector<bool> expect1 = {false, true, true, false, true, false, false, true};
  const std::vector<bool> expect2 = {true, false, false, true, false, true, true, false};

  TropicalOptions c1;
  c1.seed = 107;
  c1.change = change;
  const TropicalMembershipTester T1c(I1, 1, c1);
  CHECK(T1c.change() == change);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    CHECK(T1c.query(dirs[i]).member == expect1[i]);

  TropicalOptions c2;
  c2.seed = 109;
  c2.change = change;
  const TropicalMembershipTester T2c(I2, 1, c2);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    CHECK(T2c.query(dirs[i]).member == expect2[i]);

  // A randomly drawn unimodular change never flips a genuine member.
  TropicalOptions rnd;
  rnd.seed = 113;
  rnd.random_change = true;
  const TropicalMembershipTester TR(I2, 1, rnd);
  IntMat M(3, IntVec(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M[i][j] = Int(TR.change()[i][j]);
  const Int det = int_det(M);
  CHECK((det == 1 || det == -1));
  CHECK(TR.query(dirs[0]).member);
}

TEST_CASE("membership tester validates its input") {
  const SparseSystem I1 = battery_one();
  CHECK(thrown_code([&] { TropicalMembershipTester(I1, 0, {}); }) == Errc::DimensionMismatch);
  CHECK(thrown_code([&] { TropicalMembershipTester(I1, 3, {}); }) == Errc::DimensionMismatch);
  CHECK(thrown_code([&] { TropicalMembershipTester(I1, 2, {}); }) == Errc::NonSquare);
  TropicalOptions bad;
  bad.change = std::vector<ExpVec>{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(thrown_code([&] { TropicalMembershipTester(I1, 1, bad); }) == Errc::NonInvertible);
  TropicalOptions shape;
  shape.change = std::vector<ExpVec>{{1, 0}, {0, 1}};
  CHECK(thrown_code([&] { TropicalMembershipTester(I1, 1, shape); }) ==
        Errc::DimensionMismatch);
}

TEST_CASE("graded monomial order and variable-permutation action") {
  const std::vector<ExpVec> mons = graded_monomials(3, 4);
  REQUIRE(mons.size() == 15);
  const std::vector<ExpVec> expected = {
      {4, 0, 0}, {3, 1, 0}, {3, 0, 1}, {2, 2, 0}, {2, 1, 1}, {2, 0, 2}, {1, 3, 0}, {1, 2, 1},
      {1, 1, 2}, {1, 0, 3}, {0, 4, 0}, {0, 3, 1}, {0, 2, 2}, {0, 1, 3}, {0, 0, 4}};
  CHECK(mons == expected);
  CHECK(graded_monomials(1, 0) == std::vector<ExpVec>{{0}});
  CHECK(graded_monomials(2, 1) == std::vector<ExpVec>{{1, 0}, {0, 1}});
  CHECK(thrown_code([] { graded_monomials(0, 2); }) == Errc::EmptyInput);

  // Swapping x and y: cycles (0 10)(1 6)(2 11)(4 7)(5 12)(9 13).
  const std::vector<int> pxy = monomial_permutation(3, 4, {1, 0, 2});
  CHECK(pxy[0] == 10);
  CHECK(pxy[1] == 6);
  CHECK(pxy[2] == 11);
  CHECK(pxy[3] == 3);
  CHECK(pxy[4] == 7);
  CHECK(pxy[5] == 12);
  CHECK(pxy[9] == 13);
  CHECK(pxy[10] == 0);
  CHECK(pxy[14] == 14);

  // Swapping y and z, and swapping x and z.
  const std::vector<int> pyz = monomial_permutation(3, 4, {0, 2, 1});
  CHECK(pyz[1] == 2);
  CHECK(pyz[3] == 5);
  CHECK(pyz[6] == 9);
  CHECK(pyz[7] == 8);
  CHECK(pyz[10] == 14);
  CHECK(pyz[11] == 13);
  CHECK(pyz[0] == 0);
  CHECK(pyz[4] == 4);
  const std::vector<int> pxz = monomial_permutation(3, 4, {2, 1, 0});
  CHECK(pxz[0] == 14);
  CHECK(pxz[1] == 13);
  CHECK(pxz[2] == 9);
  CHECK(pxz[3] == 12);
  CHECK(pxz[4] == 8);
  CHECK(pxz[6] == 11);

  // Permutations compose: applying the x-y swap twice is the identity.
  for (std::size_t k = 0; k < mons.size(); ++k)
    CHECK(pxy[static_cast<std::size_t>(pxy[k])] == static_cast<int>(k));

  CHECK(thrown_code([] { monomial_permutation(3, 4, {0, 1}); }) == Errc::DimensionMismatch);
  CHECK(thrown_code([] { monomial_permutation(3, 4, {0, 0, 2}); }) == Errc::NonInvertible);
}

TEST_CASE("symmetric invariant support: constraints and orbit equivariance") {
  const std::vector<ExpVec> mons = graded_monomials(3, 4);
  const int M = static_cast<int>(mons.size());

  // Row i of A counts the total power of variable i; invariant surfaces of
  // degree 54 in the quartic coefficients satisfy A q = (72, 72, 72) and
  // sum to 54.
  IntMat A(3, IntVec(M));
  for (int k = 0; k < M; ++k)
    for (int i = 0; i < 3; ++i) A[i][k] = Int(mons[k][i]);
  const auto [C, rhs] = invariant_constraint(A, Int(4), Int(54));
  REQUIRE(C.size() == 4);
  REQUIRE(rhs.size() == 4);
  CHECK(rhs[0] == Rat(72));
  CHECK(rhs[1] == Rat(72));
  CHECK(rhs[2] == Rat(72));
  CHECK(rhs[3] == Rat(54));

  // A six-element orbit of a known support vertex under permuting x, y, z.
  const auto orbit_point = [&](std::initializer_list<std::pair<int, std::int64_t>> entries) {
    ExpVec v(M, 0);
    for (const auto& [idx, val] : entries) v[idx] = val;
    return v;
  };
  const std::vector<ExpVec> orbit = {
      orbit_point({{0, 6}, {2, 6}, {7, 30}, {13, 12}}),
      orbit_point({{10, 6}, {11, 6}, {4, 30}, {9, 12}}),
      orbit_point({{14, 6}, {9, 6}, {7, 30}, {1, 12}}),
      orbit_point({{0, 6}, {1, 6}, {8, 30}, {11, 12}}),
      orbit_point({{10, 6}, {6, 6}, {8, 30}, {2, 12}}),
      orbit_point({{14, 6}, {13, 6}, {4, 30}, {6, 12}}),
  };

  // Every orbit point satisfies the invariant constraints exactly.
  for (const ExpVec& v : orbit) {
    const RatVec vr = to_ratvec(v);
    for (std::size_t r = 0; r < C.size(); ++r) CHECK(rat_dot(C[r], vr) == rhs[r]);
  }

  // The orbit is closed under the permutation action on coordinates.
  const std::vector<std::vector<int>> gens = {monomial_permutation(3, 4, {1, 0, 2}),
                                              monomial_permutation(3, 4, {0, 2, 1}),
                                              monomial_permutation(3, 4, {2, 1, 0})};
  for (const ExpVec& v : orbit)
    for (const auto& p : gens) {
      ExpVec image(M, 0);
      for (int k = 0; k < M; ++k) image[p[k]] = v[k];
      CHECK(std::find(orbit.begin(), orbit.end(), image) != orbit.end());
    }

  // The vertex oracle over the orbit answers equivariantly: permuting the
  // query direction permutes the answer.
  const VertexOracle vo = vertex_oracle_from_points(orbit);
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  int answered = 0;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> w(M);
    for (double& x : w) x = ud(rng);
    const std::optional<ExpVec> v = vo(w);
    if (!v) continue;
    ++answered;
    for (const auto& p : gens) {
      std::vector<double> wp(M);
      ExpVec vp(M, 0);
      for (int k = 0; k < M; ++k) {
        wp[p[k]] = w[k];
        vp[p[k]] = (*v)[k];
      }
      const std::optional<ExpVec> got = vo(wp);
      REQUIRE(got.has_value());
      CHECK(*got == vp);
    }
  }
  CHECK(answered >= 6);
}
