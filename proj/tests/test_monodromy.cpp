#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "doctest.h"
#include "polyhom/monodromy.hpp"
#include "polyhom/poly.hpp"
#include "polyhom/tracker.hpp"
#include "polyhom/witness.hpp"
#include "test_util.hpp"

using namespace polyhom;
using testutil::thrown_code;

namespace {

// beta + alpha x^k as a one-variable family with parameters (beta, alpha).
ParamSystem power_family(std::int64_t k) {
  ParamSystem PS;
  PS.nvars = 1;
  PS.supports = {{ExpVec{0}, ExpVec{k}}};
  return PS;
}

// Treat every coefficient of S as a parameter; returns the family together
// with the parameter vector that reproduces S.
std::pair<ParamSystem, CxVec> family_of(const SparseSystem& S) {
  ParamSystem PS;
  PS.nvars = S.nvars();
  CxVec coeffs;
  for (const SparsePoly& p : S.polys) {
    std::vector<ExpVec> sup;
    for (const Term& t : p.terms) {
      sup.push_back(t.exponent);
      coeffs.push_back(t.coeff);
    }
    PS.supports.push_back(std::move(sup));
  }
  return {PS, coeffs};
}

SparsePoly cubic_curve() {
  return SparsePoly::make(2, {{{0, 0}, Cx(2)},
                              {{1, 0}, Cx(-4)},
                              {{3, 0}, Cx(1)},
                              {{0, 1}, Cx(-2)},
                              {{1, 1}, Cx(-2)},
                              {{0, 2}, Cx(3)},
                              {{1, 2}, Cx(-1)},
                              {{0, 3}, Cx(1)}});
}

double fiber_residual(const SparseSystem& F, const CxVec& x) {
  double m = 0;
  for (const Cx& v : eval_system(F, x)) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("a loop retraced with the conjugate accessory constant is the identity") {
  const ParamSystem PS = power_family(2);
  const CxVec s1 = {Cx(-1), Cx(1)};  // x^2 - 1
  const std::vector<CxVec> fiber = {{Cx(1)}, {Cx(-1)}};

  LoopSpec spec;
  spec.s2 = {Cx(0.6, 0.8), Cx(0.8, -0.6)};
  spec.c1 = Cx(0.28, 0.96);
  spec.c2 = std::conj(spec.c1);  // the return leg retraces the outbound one

  const LoopResult lr = monodromy_loop(PS, s1, fiber, spec);
  CHECK(lr.to == std::vector<int>{0, 1});
  CHECK(lr.new_points.empty());
}

TEST_CASE("a loop around the branch point swaps the two square roots") {
  const ParamSystem PS = power_family(2);
  const CxVec s1 = {Cx(-1), Cx(1)};
  const std::vector<CxVec> fiber = {{Cx(1)}, {Cx(-1)}};

  // With both accessory constants i, the root locus -beta/alpha runs
  // 1 -> -i -> -1 on the way out and -1 -> i -> 1 on the way back: one
  // full turn around the branch point 0, so the square roots swap.
  LoopSpec spec;
  spec.s2 = {Cx(1), Cx(1)};  // x^2 + 1 at the far end
  const LoopResult lr = monodromy_loop(PS, s1, fiber, spec);
  CHECK(lr.to == std::vector<int>{1, 0});
  CHECK(lr.new_points.empty());
}

TEST_CASE("colliding loop endpoints raise the matching ambiguity") {
  const ParamSystem PS = power_family(2);
  const CxVec s1 = {Cx(-1), Cx(1)};
  LoopSpec spec;
  spec.s2 = {Cx(0.6, 0.8), Cx(0.8, -0.6)};
  spec.c2 = std::conj(spec.c1);
  const std::vector<CxVec> doubled = {{Cx(1)}, {Cx(1.0, 1e-9)}};
  CHECK(thrown_code([&] { monodromy_loop(PS, s1, doubled, spec); }) == Errc::MatchAmbiguity);
}

TEST_CASE("a leg whose root escapes to infinity reports path failure") {
  const ParamSystem PS = power_family(1);
  const CxVec s1 = {Cx(1), Cx(1)};  // 1 + x, root -1
  LoopSpec spec;
  spec.s2 = {Cx(1), Cx(0)};  // the far end degenerates to a constant
  CHECK(thrown_code([&] { monodromy_loop(PS, s1, {{Cx(-1)}}, spec); }) == Errc::PathFailure);
}

TEST_CASE("monodromy input validation rejects malformed requests") {
  const ParamSystem PS = power_family(2);
  const CxVec s1 = {Cx(-1), Cx(1)};
  LoopSpec spec;
  spec.s2 = {Cx(1), Cx(1)};
  CHECK(thrown_code([&] { monodromy_loop(PS, s1, {}, spec); }) == Errc::EmptyInput);
  CHECK(thrown_code([&] { monodromy_loop(PS, {Cx(1)}, {{Cx(1)}}, spec); }) ==
        Errc::DimensionMismatch);

  CHECK(thrown_code([&] { monodromy_solve(PS, s1, {}); }) == Errc::EmptyInput);
  MonodromyOptions bad_move;
  bad_move.moving_params = {7};
  CHECK(thrown_code([&] { monodromy_solve(PS, s1, {{Cx(1)}}, bad_move); }) ==
        Errc::DimensionMismatch);
  MonodromyOptions bad_trace;
  bad_trace.trace_stop = true;  // needs slice_polys in [1, #polys)
  CHECK(thrown_code([&] { monodromy_solve(PS, s1, {{Cx(1)}}, bad_trace); }) ==
        Errc::DimensionMismatch);
}

TEST_CASE("monodromy solve completes the fiber of a quadratic from one root") {
  const ParamSystem PS = power_family(2);
  const CxVec s1 = {Cx(-1), Cx(1)};
  MonodromyOptions opts;
  opts.target_count = 2;
  const MonodromyResult res = monodromy_solve(PS, s1, {{Cx(1)}}, opts, 2024);
  CHECK(res.complete);
  REQUIRE(res.fiber.size() == 2);
  CHECK(std::abs(res.fiber[0][0] - Cx(1)) < 1e-9);
  CHECK(std::abs(res.fiber[1][0] + Cx(1)) < 1e-9);
  CHECK(res.loops >= 1);
  for (const std::vector<int>& perm : res.permutations)
    for (int v : perm) CHECK(v >= -1);
}

TEST_CASE("monodromy solve walks the cyclic cover of the quintic roots of unity") {
  const ParamSystem PS = power_family(5);
  const CxVec s1 = {Cx(-1), Cx(1)};  // x^5 = 1
  MonodromyOptions opts;
  opts.target_count = 5;
  const MonodromyResult res = monodromy_solve(PS, s1, {{Cx(1)}}, opts, 7);
  CHECK(res.complete);
  REQUIRE(res.fiber.size() == 5);
  const SparseSystem F = PS.instantiate(s1);
  for (const CxVec& p : res.fiber) {
    CHECK(fiber_residual(F, p) < 1e-9);
    CHECK(std::abs(std::abs(p[0]) - 1.0) < 1e-9);
  }
}

TEST_CASE("an unreachable target exhausts the loop budget and reports incomplete") {
  const ParamSystem PS = power_family(2);
  const CxVec s1 = {Cx(-1), Cx(1)};
  MonodromyOptions opts;
  opts.target_count = 3;  // the fiber only has two points
  opts.budget_per_degree = 4;
  const MonodromyResult res = monodromy_solve(PS, s1, {{Cx(1)}}, opts, 2024);
  CHECK(!res.complete);
  CHECK(res.fiber.size() <= 2);
  CHECK(res.loops >= 1);
}

TEST_CASE("conjugation closure completes real fibers without tracking") {
  const ParamSystem PS = power_family(2);
  const CxVec s1 = {Cx(1), Cx(1)};  // x^2 + 1, fiber {i, -i}
  MonodromyOptions opts;
  opts.target_count = 2;
  opts.conjugation = true;
  const MonodromyResult res = monodromy_solve(PS, s1, {{Cx(0, 1)}}, opts, 1);
  CHECK(res.complete);
  CHECK(res.loops == 0);  // the conjugate of the seed already fills the fiber
  REQUIRE(res.fiber.size() == 2);
  CHECK(std::abs(res.fiber[1][0] - Cx(0, -1)) < 1e-12);
}

TEST_CASE("the trace test stops the witness cover of the plane cubic at three points") {
  const WitnessData W = witness_construct(SparseSystem{{cubic_curve()}}, 1, {}, 31);
  REQUIRE(W.points.size() == 3);

  auto [PS, s1] = family_of(SparseSystem{{cubic_curve(), W.slice.polys[0]}});
  REQUIRE(PS.param_count() == 11);

  MonodromyOptions opts;
  opts.trace_stop = true;
  opts.slice_polys = 1;
  opts.moving_params = {8, 9, 10};  // only the slice coefficients move
  const MonodromyResult res = monodromy_solve(PS, s1, {W.points[0]}, opts, 4242);
  CHECK(res.complete);
  REQUIRE(res.fiber.size() == 3);
  const SparseSystem F = PS.instantiate(s1);
  for (const CxVec& p : res.fiber) CHECK(fiber_residual(F, p) < 1e-8);
}

TEST_CASE("transitivity probabilities match the exact recursion values") {
  using CM = ConjugationModel;
  CHECK(transitivity_probability(1, CM::Symmetric) == Rat(1));
  CHECK(transitivity_probability(2, CM::Symmetric) == Rat(3) / Rat(4));
  CHECK(transitivity_probability(3, CM::Symmetric) == Rat(13) / Rat(18));
  CHECK(transitivity_probability(2, CM::Involutions) == Rat(3) / Rat(4));
  CHECK(transitivity_probability(3, CM::Involutions) == Rat(7) / Rat(12));
  CHECK(transitivity_probability(2, CM::FixedPointFree) == Rat(1));
  CHECK(transitivity_probability(4, CM::FixedPointFree) == Rat(5) / Rat(6));
}

TEST_CASE("transitivity probabilities reproduce the tabulated decimals") {
  using CM = ConjugationModel;
  const auto p = [](int d, CM m) { return to_double(transitivity_probability(d, m)); };

  CHECK(std::abs(p(2, CM::Symmetric) - 0.750) < 1e-3);
  CHECK(std::abs(p(3, CM::Symmetric) - 0.722) < 1e-3);
  CHECK(std::abs(p(4, CM::Symmetric) - 0.739) < 1e-3);
  CHECK(std::abs(p(5, CM::Symmetric) - 0.768) < 1e-3);
  CHECK(std::abs(p(10, CM::Symmetric) - 0.881) < 1e-3);
  CHECK(std::abs(p(20, CM::Symmetric) - 0.946) < 1e-3);
  CHECK(std::abs(p(30, CM::Symmetric) - 0.965) < 1e-3);

  CHECK(std::abs(p(2, CM::Involutions) - 0.750) < 1e-3);
  CHECK(std::abs(p(3, CM::Involutions) - 0.583) < 1e-3);
  CHECK(std::abs(p(4, CM::Involutions) - 0.575) < 1e-3);
  CHECK(std::abs(p(5, CM::Involutions) - 0.546) < 1e-3);
  CHECK(std::abs(p(10, CM::Involutions) - 0.607) < 1e-3);

  CHECK(std::abs(p(2, CM::FixedPointFree) - 1.000) < 1e-3);
  CHECK(std::abs(p(4, CM::FixedPointFree) - 0.833) < 1e-3);
  CHECK(std::abs(p(10, CM::FixedPointFree) - 0.863) < 1e-3);
  CHECK(std::abs(p(20, CM::FixedPointFree) - 0.937) < 1e-3);
  CHECK(std::abs(p(30, CM::FixedPointFree) - 0.962) < 1e-3);

  // Bounds and the monotone climb of the fixed-point-free model.
  for (int d = 1; d <= 40; ++d) {
    const double s = p(d, CM::Symmetric);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
  double prev = p(20, CM::FixedPointFree);
  for (int d = 22; d <= 40; d += 2) {
    const double cur = p(d, CM::FixedPointFree);
    CHECK(cur > prev);
    prev = cur;
  }

  CHECK(thrown_code([] { transitivity_probability(0, CM::Symmetric); }) == Errc::EmptyInput);
  CHECK(thrown_code([] { transitivity_probability(5, CM::FixedPointFree); }) ==
        Errc::OddDForFPF);
}
