#pragma once

// Numerical continuation: Euler/Newton predictor-corrector tracking with
// adaptive steps, a Cauchy-loop endgame for singular endpoints, and
// alpha-theory certificates for Newton refinement.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "polyhom/poly.hpp"

namespace polyhom {

// A homotopy H(t, x) with x in C^n.  The parameter is complex so the same
// object can be evaluated on endgame circles around t = 0.
struct Homotopy {
  int nvars = 0;
  std::function<CxVec(Cx, const CxVec&)> eval;
  std::function<CxMat(Cx, const CxVec&)> jac_x;
  std::function<CxVec(Cx, const CxVec&)> jac_t;
};

// Wrap a polynomial system in n+1 variables, the parameter being the last
// variable, as a homotopy in the first n.
Homotopy homotopy_from_system(const SparseSystem& F);

// H(t, x) = (1 - t) g0 F + t g1 G, so paths start on G (t = 1) and end on
// F (t = 0).  The random overload draws unit-modulus accessory constants.
Homotopy gamma_homotopy(const SparseSystem& F, const SparseSystem& G, Cx g0, Cx g1);
Homotopy gamma_homotopy(const SparseSystem& F, const SparseSystem& G, std::uint64_t seed);

// Tangent dx/dt = -(D_x H)^{-1} D_t H of the solution curve.
CxVec davidenko_direction(const Homotopy& H, Cx t, const CxVec& x);

// One Euler prediction x + h * dx/dt; h is signed, so tracking toward
// smaller t uses a negative h.
CxVec euler_predict(const Homotopy& H, Cx t, const CxVec& x, Cx h);

// Newton iterations on x |-> H(t, x) at fixed t.
CxVec newton_correct(const Homotopy& H, Cx t, CxVec x, int iters, double tol);

// The classroom predictor-corrector on a uniform grid from t0 down to t1:
// one Euler step per node and, when `correct` is set, a single Newton
// correction after each.  Returns every visited (t, x) including the start.
std::vector<std::pair<double, CxVec>> fixed_step_track(const Homotopy& H, CxVec x, double t0,
                                                       double t1, double h, bool correct);

struct TrackConfig {
  double initial_step = 0.05;
  double min_step = 1e-10;
  double max_step = 0.1;
  int max_newton_iter = 3;
  double newton_tol = 1e-10;
  int max_steps = 20000;
  double eps_endgame = 0.01;      // radius at which the Cauchy endgame starts
  double divergence_bound = 1e8;  // two consecutive crossings mean divergence
  int endgame_samples = 32;       // points per endgame loop
  int max_winding = 8;
  double endgame_closure_tol = 1e-8;
  double path_jump_factor = 10.0;  // reject steps moving further than this
};

enum class PathStatus { Converged, Diverged, EndgameConverged };

struct PathResult {
  PathStatus status = PathStatus::Converged;
  CxVec x;
  int winding = 1;
  double residual = 0;
  // Smallest estimated least singular value of D_x H seen along the path:
  // a cheap surrogate for how close the path came to being singular.
  double min_condition = 0;
  int steps = 0;
};

// Track the solution path of H from H(1, x_start) = 0 toward t = 0.  The
// final approach runs the Cauchy endgame on circles of radius eps_endgame;
// regular endpoints are Newton-polished at t = 0 and report Converged,
// singular ones report EndgameConverged with their winding number.
PathResult track_path(const Homotopy& H, const CxVec& x_start, const TrackConfig& cfg = {});

// Adaptive tracking between two regular parameter values (either direction)
// with no endgame; the endpoint is Newton-polished at t_to.
PathResult track_segment(const Homotopy& H, const CxVec& x_start, double t_from, double t_to,
                         const TrackConfig& cfg = {});

// A parameter curve s |-> t(s) with its derivative, for tracking along bent
// or circular arcs in the complex parameter plane.
struct TrackCurve {
  std::function<Cx(double)> t;
  std::function<Cx(double)> dtds;
};

// Adaptive tracking along an arbitrary curve from s_from to s_to, endgame-
// free; the endpoint is Newton-polished at t(s_to).
PathResult track_curve(const Homotopy& H, const CxVec& x_start, const TrackCurve& curve,
                       double s_from, double s_to, const TrackConfig& cfg = {});

// --- alpha theory -----------------------------------------------------------

// alpha(F, x) < (13 - 3 sqrt 17)/4 certifies that Newton iteration from x
// converges quadratically to a nearby root.
double alpha_threshold();

struct AlphaReport {
  double alpha = 0, beta = 0, gamma = 0;
  bool certified = false;
  CxVec x;                        // final iterate
  std::vector<CxVec> iterates;    // x0, x1, ..., xm
};

// Run `iters` Newton steps on the square system F and certify the final
// iterate.  beta is the Newton step norm there; gamma is bounded through
// Frobenius norms of the scaled derivative tensors of every order.
AlphaReport newton_refine(const SparseSystem& F, const CxVec& x0, int iters);

// --- start systems and parameter continuation -------------------------------

// Total-degree start: G = {x_i^{d_i} - 1} with all tuples of roots of unity
// as start solutions.  Tracks every path of a unit-gamma convex combination
// with random accessory constants.
struct SolveReport {
  std::vector<PathResult> paths;
  std::vector<CxVec> solutions;  // endpoints of non-divergent paths
};

SolveReport bezout_solve(const SparseSystem& F, const TrackConfig& cfg = {},
                         std::uint64_t seed = 0);

// A family of systems with fixed supports whose coefficients are the
// parameters, flattened in (polynomial, term) order.
struct ParamSystem {
  int nvars = 0;
  std::vector<std::vector<ExpVec>> supports;

  int param_count() const;
  SparseSystem instantiate(const CxVec& params) const;
};

// Homotopy moving the coefficients from `start` to `target` along the arc
// s(t) = (t g start + (1-t) target) / (t g + (1-t)) with unit-modulus g.
Homotopy parameter_homotopy(const ParamSystem& PS, const CxVec& start, const CxVec& target,
                            Cx gamma);

// Continue every start solution of the system at `start` to the system at
// `target` along a random gamma arc.
std::vector<PathResult> parameter_continue(const ParamSystem& PS, const CxVec& start,
                                           const std::vector<CxVec>& start_solutions,
                                           const CxVec& target, const TrackConfig& cfg = {},
                                           std::uint64_t seed = 0);

}  // namespace polyhom
