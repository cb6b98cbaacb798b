// Sanity checks for the reference oracles used throughout the suite.  These
// exercise the oracles on textbook inputs so that a failure in a module test
// can be attributed to the module, not to the yardstick.

#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace testutil;

TEST_CASE("LP feasibility on tiny systems") {
  // x1 + x2 = 1, x >= 0: feasible.
  CHECK(oracle::lp_feasible({{q(1), q(1)}}, {q(1)}));
  // x1 + x2 = -1, x >= 0: infeasible.
  CHECK_FALSE(oracle::lp_feasible({{q(1), q(1)}}, {q(-1)}));
  // x1 - x2 = 3 with x1 + x2 = 1: needs x1 = 2, x2 = -1, infeasible.
  CHECK_FALSE(oracle::lp_feasible({{q(1), q(-1)}, {q(1), q(1)}}, {q(3), q(1)}));
  // Same but x1 - x2 = 1: x = (1, 0) works.
  CHECK(oracle::lp_feasible({{q(1), q(-1)}, {q(1), q(1)}}, {q(1), q(1)}));
}

TEST_CASE("hull membership via LP") {
  std::vector<polyhom::RatVec> tri = {rv({0, 0}), rv({2, 0}), rv({0, 2})};
  CHECK(oracle::in_hull(tri, rv({1, 1})));       // on the diagonal edge
  CHECK(oracle::in_hull(tri, {q(1, 2), q(1, 2)}));
  CHECK_FALSE(oracle::in_hull(tri, rv({2, 2})));
  CHECK_FALSE(oracle::in_hull(tri, {q(-1, 100), q(0)}));
}

TEST_CASE("lattice point scan") {
  // conv{(0,0),(2,0),(0,2)} has 6 lattice points.
  CHECK(oracle::lattice_count_by_scan({rv({0, 0}), rv({2, 0}), rv({0, 2})}) == 6);
  // The unit cube has its 8 corners.
  std::vector<polyhom::RatVec> cube;
  for (int i = 0; i < 8; ++i) cube.push_back(rv({i & 1, (i >> 1) & 1, (i >> 2) & 1}));
  CHECK(oracle::lattice_count_by_scan(cube) == 8);
}

TEST_CASE("shoelace area") {
  CHECK(oracle::shoelace_area({rv({0, 0}), rv({1, 0}), rv({1, 1}), rv({0, 1})}) == q(1));
  CHECK(oracle::shoelace_area({rv({0, 2}), rv({0, 3}), rv({2, 4}), rv({4, 0}), rv({2, 0})}) ==
        q(9));
}

TEST_CASE("univariate root finder") {
  using Cx = std::complex<double>;
  // (x - 1)(x - 2) = 2 - 3x + x^2
  auto roots = oracle::univariate_roots({Cx(2), Cx(-3), Cx(1)});
  std::vector<std::vector<Cx>> found, expected{{Cx(1)}, {Cx(2)}};
  for (auto r : roots) found.push_back({r});
  CHECK(oracle::set_distance(found, expected) < 1e-10);
  // x^3 - x has roots -1, 0, 1 (origin deflation path).
  roots = oracle::univariate_roots({Cx(0), Cx(-1), Cx(0), Cx(1)});
  found.clear();
  for (auto r : roots) found.push_back({r});
  expected = {{Cx(-1)}, {Cx(0)}, {Cx(1)}};
  CHECK(oracle::set_distance(found, expected) < 1e-10);
}

TEST_CASE("finite differences recover a linear map") {
  using Cx = std::complex<double>;
  auto f = [](const std::vector<Cx>& x) {
    return std::vector<Cx>{2.0 * x[0] + 3.0 * x[1], x[0] - x[1]};
  };
  auto J = oracle::fd_jacobian(f, {Cx(0.3, 0.1), Cx(-0.2, 0.4)});
  CHECK(std::abs(J[0][0] - Cx(2)) < 1e-8);
  CHECK(std::abs(J[0][1] - Cx(3)) < 1e-8);
  CHECK(std::abs(J[1][0] - Cx(1)) < 1e-8);
  CHECK(std::abs(J[1][1] - Cx(-1)) < 1e-8);
}
