#include "polyhom/tracker.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <random>

namespace polyhom {

namespace {

using EMat = Eigen::MatrixXcd;
using EVec = Eigen::VectorXcd;

EMat to_eigen(const CxMat& A) {
  const int m = static_cast<int>(A.size());
  const int n = m == 0 ? 0 : static_cast<int>(A[0].size());
  EMat M(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) M(i, j) = A[i][j];
  return M;
}

EVec to_eigen(const CxVec& v) {
  EVec w(static_cast<int>(v.size()));
  for (int i = 0; i < static_cast<int>(v.size()); ++i) w(i) = v[i];
  return w;
}

CxVec from_eigen(const EVec& v) {
  CxVec w(v.size());
  for (int i = 0; i < v.size(); ++i) w[i] = v(i);
  return w;
}

double inf_norm(const CxVec& v) {
  double m = 0;
  for (const Cx& c : v) m = std::max(m, std::abs(c));
  return m;
}

double two_norm(const CxVec& v) {
  double s = 0;
  for (const Cx& c : v) s += std::norm(c);
  return std::sqrt(s);
}

bool all_finite(const CxVec& v) {
  for (const Cx& c : v)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

CxVec vadd(const CxVec& a, const CxVec& b) {
  CxVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

CxVec vsub(const CxVec& a, const CxVec& b) {
  CxVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

CxVec vscale(const CxVec& a, Cx c) {
  CxVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

// LU factorization of a square complex matrix with singularity detection.
struct LinSolver {
  Eigen::FullPivLU<EMat> lu;
  bool ok;

  explicit LinSolver(const CxMat& A) : lu(to_eigen(A)), ok(lu.isInvertible()) {}

  CxVec solve(const CxVec& b) const { return from_eigen(lu.solve(to_eigen(b))); }

  // Surrogate for the least singular value: two steps of inverse power
  // iteration from the all-ones direction.
  double sigma_min_estimate() const {
    const int n = static_cast<int>(lu.rows());
    if (n == 0) return 0;
    EVec u = EVec::Constant(n, Cx(1.0 / std::sqrt(static_cast<double>(n)), 0));
    for (int pass = 0; pass < 2; ++pass) {
      EVec w = lu.solve(u);
      const double nw = w.norm();
      if (!(nw > 0) || !std::isfinite(nw)) return 0;
      u = w / nw;
      if (pass == 1) return 1.0 / nw;
    }
    return 0;
  }
};

// Polynomial system together with its cached first partials.
struct SysEval {
  SparseSystem F;
  std::vector<std::vector<SparsePoly>> d;  // d[i][j] = df_i/dx_j
};

std::shared_ptr<const SysEval> make_syseval(SparseSystem F) {
  auto se = std::make_shared<SysEval>();
  const int nv = F.nvars();
  se->d.resize(F.polys.size());
  for (std::size_t i = 0; i < F.polys.size(); ++i) {
    se->d[i].reserve(nv);
    for (int j = 0; j < nv; ++j) se->d[i].push_back(dpoly(F.polys[i], j));
  }
  se->F = std::move(F);
  return se;
}

CxMat eval_jac(const SysEval& se, const CxVec& x) {
  CxMat J(se.d.size(), CxVec(se.d.empty() ? 0 : se.d[0].size()));
  for (std::size_t i = 0; i < se.d.size(); ++i)
    for (std::size_t j = 0; j < se.d[i].size(); ++j) J[i][j] = eval_poly(se.d[i][j], x);
  return J;
}

// One Newton step at fixed t; throws when the Jacobian is singular.
CxVec single_newton_step(const Homotopy& H, Cx t, const CxVec& x) {
  LinSolver J(H.jac_x(t, x));
  if (!J.ok) fail(Errc::SingularJacobian, "Newton correction hit a singular Jacobian");
  return vsub(x, J.solve(H.eval(t, x)));
}

// Newton iteration at fixed t; returns false on singular Jacobians,
// non-finite values, or failure to meet the tolerance.
bool try_newton(const Homotopy& H, Cx t, CxVec& x, int iters, double tol) {
  for (int it = 0; it < iters; ++it) {
    LinSolver J(H.jac_x(t, x));
    if (!J.ok) return false;
    const CxVec dx = J.solve(H.eval(t, x));
    if (!all_finite(dx)) return false;
    x = vsub(x, dx);
    if (two_norm(dx) <= tol * (1.0 + two_norm(x))) return true;
  }
  return false;
}

struct TrackState {
  int steps = 0;
  int high_norm_streak = 0;
  bool diverged = false;
  double min_cond = std::numeric_limits<double>::infinity();
};

// Adaptive Euler/Newton tracking of x(s) along the given parameter curve
// from s0 to s1 (either direction).  On divergence the state flag is set and
// tracking stops; hard failures (step underflow, suspected path jumps,
// budget exhaustion) throw.
void track_core(const Homotopy& H, const TrackCurve& path, double s0, double s1, CxVec& x,
                const TrackConfig& cfg, TrackState& st) {
  const double dir = (s1 >= s0) ? 1.0 : -1.0;
  const double span_tol = 1e-14 * std::max(1.0, std::abs(s1 - s0));
  double h = std::min(cfg.initial_step, cfg.max_step);
  double s = s0;
  int streak = 0;
  while (dir * (s1 - s) > span_tol) {
    if (st.steps >= cfg.max_steps)
      fail(Errc::MaxStepsExceeded, "step budget exhausted while tracking");
    const double h_eff = std::min(h, std::abs(s1 - s));
    double s_next = s + dir * h_eff;
    if (dir * (s1 - s_next) < 0) s_next = s1;

    const Cx t_cur = path.t(s);
    bool ok = false;
    bool jump = false;
    CxVec x_new;
    double speed = 0;
    LinSolver J(H.jac_x(t_cur, x));
    if (J.ok) {
      st.min_cond = std::min(st.min_cond, J.sigma_min_estimate());
      const CxVec xdot = vscale(J.solve(vscale(H.jac_t(t_cur, x), Cx(-1))), path.dtds(s));
      speed = two_norm(xdot);
      x_new = vadd(x, vscale(xdot, Cx(dir * h_eff)));
      ok = all_finite(x_new) && try_newton(H, path.t(s_next), x_new, cfg.max_newton_iter,
                                           cfg.newton_tol);
      if (ok && two_norm(vsub(x_new, x)) > cfg.path_jump_factor * h_eff * (speed + 1.0)) {
        ok = false;
        jump = true;
      }
    }

    if (ok) {
      x = x_new;
      s = s_next;
      ++st.steps;
      if (inf_norm(x) > cfg.divergence_bound) {
        if (++st.high_norm_streak >= 2) {
          st.diverged = true;
          return;
        }
      } else {
        st.high_norm_streak = 0;
      }
      if (++streak >= 5) {
        h = std::min(2 * h, cfg.max_step);
        streak = 0;
      }
    } else {
      streak = 0;
      h = h_eff / 2;
      if (h < cfg.min_step) {
        if (jump)
          fail(Errc::PathJumpSuspected,
               "corrected step kept moving much further than the tangent predicts");
        fail(Errc::MaxStepsExceeded, "step size underflow: corrector keeps failing");
      }
    }
  }
}

double guarded_residual(const Homotopy& H, Cx t, const CxVec& x) {
  if (!all_finite(x)) return std::numeric_limits<double>::infinity();
  try {
    return inf_norm(H.eval(t, x));
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

Homotopy homotopy_from_system(const SparseSystem& F) {
  if (F.polys.empty()) fail(Errc::EmptyInput, "homotopy needs at least one polynomial");
  const int total = F.nvars();
  const int n = total - 1;
  if (static_cast<int>(F.polys.size()) != n)
    fail(Errc::NonSquare, "expected n polynomials in n+1 variables (parameter last)");
  auto se = make_syseval(F);
  Homotopy H;
  H.nvars = n;
  auto joined = [n](Cx t, const CxVec& x) {
    CxVec y(x);
    y.resize(n + 1);
    y[n] = t;
    return y;
  };
  H.eval = [se, joined](Cx t, const CxVec& x) { return eval_system(se->F, joined(t, x)); };
  H.jac_x = [se, joined, n](Cx t, const CxVec& x) {
    const CxVec y = joined(t, x);
    CxMat J(n, CxVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) J[i][j] = eval_poly(se->d[i][j], y);
    return J;
  };
  H.jac_t = [se, joined, n](Cx t, const CxVec& x) {
    const CxVec y = joined(t, x);
    CxVec v(n);
    for (int i = 0; i < n; ++i) v[i] = eval_poly(se->d[i][n], y);
    return v;
  };
  return H;
}

Homotopy gamma_homotopy(const SparseSystem& F, const SparseSystem& G, Cx g0, Cx g1) {
  if (!F.square() || !G.square()) fail(Errc::NonSquare, "homotopy endpoints must be square");
  if (F.nvars() != G.nvars())
    fail(Errc::DimensionMismatch, "homotopy endpoints disagree on the variable count");
  auto sf = make_syseval(F);
  auto sg = make_syseval(G);
  const int n = F.nvars();
  Homotopy H;
  H.nvars = n;
  H.eval = [sf, sg, g0, g1](Cx t, const CxVec& x) {
    const CxVec f = eval_system(sf->F, x);
    const CxVec g = eval_system(sg->F, x);
    return vadd(vscale(f, (Cx(1) - t) * g0), vscale(g, t * g1));
  };
  H.jac_x = [sf, sg, g0, g1, n](Cx t, const CxVec& x) {
    const CxMat Jf = eval_jac(*sf, x);
    const CxMat Jg = eval_jac(*sg, x);
    CxMat J(n, CxVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) J[i][j] = (Cx(1) - t) * g0 * Jf[i][j] + t * g1 * Jg[i][j];
    return J;
  };
  H.jac_t = [sf, sg, g0, g1](Cx /*t*/, const CxVec& x) {
    return vsub(vscale(eval_system(sg->F, x), g1), vscale(eval_system(sf->F, x), g0));
  };
  return H;
}

Homotopy gamma_homotopy(const SparseSystem& F, const SparseSystem& G, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  return gamma_homotopy(F, G, std::polar(1.0, ang(rng)), std::polar(1.0, ang(rng)));
}

CxVec davidenko_direction(const Homotopy& H, Cx t, const CxVec& x) {
  LinSolver J(H.jac_x(t, x));
  if (!J.ok) fail(Errc::SingularJacobian, "tangent undefined: singular Jacobian");
  return J.solve(vscale(H.jac_t(t, x), Cx(-1)));
}

CxVec euler_predict(const Homotopy& H, Cx t, const CxVec& x, Cx h) {
  return vadd(x, vscale(davidenko_direction(H, t, x), h));
}

CxVec newton_correct(const Homotopy& H, Cx t, CxVec x, int iters, double tol) {
  for (int it = 0; it < iters; ++it) {
    LinSolver J(H.jac_x(t, x));
    if (!J.ok) fail(Errc::SingularJacobian, "Newton correction hit a singular Jacobian");
    const CxVec dx = J.solve(H.eval(t, x));
    x = vsub(x, dx);
    if (two_norm(dx) <= tol * (1.0 + two_norm(x))) break;
  }
  return x;
}

std::vector<std::pair<double, CxVec>> fixed_step_track(const Homotopy& H, CxVec x, double t0,
                                                       double t1, double h, bool correct) {
  if (!(h > 0) || t0 <= t1) fail(Errc::EmptyInput, "need h > 0 and t0 > t1");
  std::vector<std::pair<double, CxVec>> rows;
  rows.emplace_back(t0, x);
  // Whole steps of size h while they stay strictly above t1, then one final
  // step (possibly tiny) landing exactly on t1.
  int full = 0;
  while (t0 - (full + 1) * h > t1 + 1e-12) ++full;
  double t = t0;
  for (int i = 1; i <= full; ++i) {
    x = euler_predict(H, t, x, Cx(-h));
    t = t0 - i * h;
    if (correct) x = single_newton_step(H, t, x);
    rows.emplace_back(t, x);
  }
  x = euler_predict(H, t, x, Cx(t1 - t));
  t = t1;
  if (correct) x = single_newton_step(H, t, x);
  rows.emplace_back(t, x);
  return rows;
}

PathResult track_path(const Homotopy& H, const CxVec& x_start, const TrackConfig& cfg) {
  if (static_cast<int>(x_start.size()) != H.nvars)
    fail(Errc::DimensionMismatch, "start point has the wrong length");
  CxVec x = x_start;
  try_newton(H, Cx(1), x, cfg.max_newton_iter + 2, cfg.newton_tol);

  PathResult res;
  TrackState st;
  const double eps = cfg.eps_endgame;
  TrackCurve real_line{[](double s) { return Cx(s); }, [](double) { return Cx(1); }};
  track_core(H, real_line, 1.0, eps, x, cfg, st);
  if (st.diverged) {
    res.status = PathStatus::Diverged;
    res.x = x;
    res.residual = guarded_residual(H, Cx(0), x);
    res.steps = st.steps;
    res.min_condition = st.min_cond;
    return res;
  }

  // Cauchy endgame: march around circles |t| = eps until the path closes
  // up; the winding number is the number of loops and the limit at t = 0 is
  // the mean of the samples.
  const int m = cfg.endgame_samples;
  const double dtheta = 2.0 * std::numbers::pi / m;
  TrackCurve circle{[eps](double th) { return std::polar(eps, th); },
                    [eps](double th) { return Cx(0, 1) * std::polar(eps, th); }};
  std::vector<CxVec> samples;
  const CxVec loop_start = x;
  int winding = 0;
  for (int r = 1; r <= cfg.max_winding && winding == 0; ++r) {
    for (int k = 0; k < m; ++k) {
      samples.push_back(x);
      const double a = ((r - 1) * m + k) * dtheta;
      track_core(H, circle, a, a + dtheta, x, cfg, st);
      if (st.diverged) {
        res.status = PathStatus::Diverged;
        res.x = x;
        res.residual = guarded_residual(H, Cx(0), x);
        res.steps = st.steps;
        res.min_condition = st.min_cond;
        return res;
      }
    }
    if (two_norm(vsub(x, loop_start)) < cfg.endgame_closure_tol) winding = r;
  }
  if (winding == 0)
    fail(Errc::EndgameNoClosure, "path failed to close after the maximal winding number");

  CxVec estimate(H.nvars, Cx(0));
  for (const CxVec& s : samples) estimate = vadd(estimate, s);
  estimate = vscale(estimate, Cx(1.0 / static_cast<double>(samples.size())));

  res.winding = winding;
  res.steps = st.steps;
  res.min_condition = st.min_cond;

  // A path with a finite limit must have that limit solve H(0, .) = 0; a
  // closed loop whose mean fails this badly is the signature of a pole
  // (the Cauchy mean only recovers the regular part).
  const double est_resid = guarded_residual(H, Cx(0), estimate);
  if (!(est_resid <= 1e-4 * (1.0 + inf_norm(estimate)))) {
    res.status = PathStatus::Diverged;
    res.x = estimate;
    res.residual = est_resid;
    return res;
  }

  if (winding == 1) {
    CxVec polished = estimate;
    if (try_newton(H, Cx(0), polished, 12, cfg.newton_tol) &&
        two_norm(vsub(polished, estimate)) <= 1e-2 * (1.0 + two_norm(estimate))) {
      res.status = PathStatus::Converged;
      res.x = polished;
      res.residual = guarded_residual(H, Cx(0), polished);
      return res;
    }
  }
  res.status = PathStatus::EndgameConverged;
  res.x = estimate;
  res.residual = est_resid;
  return res;
}

PathResult track_segment(const Homotopy& H, const CxVec& x_start, double t_from, double t_to,
                         const TrackConfig& cfg) {
  TrackCurve real_line{[](double s) { return Cx(s); }, [](double) { return Cx(1); }};
  return track_curve(H, x_start, real_line, t_from, t_to, cfg);
}

PathResult track_curve(const Homotopy& H, const CxVec& x_start, const TrackCurve& curve,
                       double s_from, double s_to, const TrackConfig& cfg) {
  if (static_cast<int>(x_start.size()) != H.nvars)
    fail(Errc::DimensionMismatch, "start point has the wrong length");
  const Cx t_end = curve.t(s_to);
  CxVec x = x_start;
  try_newton(H, curve.t(s_from), x, cfg.max_newton_iter + 2, cfg.newton_tol);
  PathResult res;
  TrackState st;
  track_core(H, curve, s_from, s_to, x, cfg, st);
  res.steps = st.steps;
  res.min_condition = st.min_cond;
  if (st.diverged) {
    res.status = PathStatus::Diverged;
    res.x = x;
    res.residual = guarded_residual(H, t_end, x);
    return res;
  }
  try_newton(H, t_end, x, cfg.max_newton_iter + 4, cfg.newton_tol);
  res.status = PathStatus::Converged;
  res.x = x;
  res.residual = guarded_residual(H, t_end, x);
  return res;
}

// --- alpha theory -----------------------------------------------------------

double alpha_threshold() { return (13.0 - 3.0 * std::sqrt(17.0)) / 4.0; }

namespace {

// Visit every exponent vector of length n with coordinate sum k.
template <class Fn>
void for_each_composition(int n, int k, ExpVec& cur, int pos, Fn&& fn) {
  if (pos == n - 1) {
    cur[pos] = k;
    fn(cur);
    return;
  }
  for (int v = k; v >= 0; --v) {
    cur[pos] = v;
    for_each_composition(n, k - v, cur, pos + 1, fn);
  }
}

SparsePoly multi_derivative(const SparsePoly& f, const ExpVec& beta) {
  SparsePoly g = f;
  for (std::size_t j = 0; j < beta.size() && !g.is_zero(); ++j)
    for (std::int64_t r = 0; r < beta[j] && !g.is_zero(); ++r)
      g = dpoly(g, static_cast<int>(j));
  return g;
}

}  // namespace

AlphaReport newton_refine(const SparseSystem& F, const CxVec& x0, int iters) {
  if (!F.square()) fail(Errc::NonSquare, "alpha theory needs a square system");
  const int n = F.nvars();
  if (static_cast<int>(x0.size()) != n)
    fail(Errc::DimensionMismatch, "point has the wrong length");
  auto se = make_syseval(F);

  AlphaReport rep;
  rep.iterates.push_back(x0);
  CxVec x = x0;
  for (int it = 0; it < iters; ++it) {
    LinSolver J(eval_jac(*se, x));
    if (!J.ok) fail(Errc::SingularJacobian, "Newton refinement hit a singular Jacobian");
    x = vsub(x, J.solve(eval_system(F, x)));
    if (!all_finite(x)) fail(Errc::SingularJacobian, "Newton refinement produced overflow");
    rep.iterates.push_back(x);
  }
  rep.x = x;

  LinSolver J(eval_jac(*se, x));
  if (!J.ok) fail(Errc::SingularJacobian, "alpha certificate needs an invertible Jacobian");
  rep.beta = two_norm(J.solve(eval_system(F, x)));

  std::int64_t top = 0;
  for (const SparsePoly& f : F.polys) top = std::max(top, total_degree(f));

  // gamma bound: for each order k, the Frobenius norm of the symmetric
  // tensor DF^{-1} D^k F / k! over ordered index tuples, i.e. each partial
  // weighted by its multinomial multiplicity.
  rep.gamma = 0;
  double kfact = 1;
  for (std::int64_t k = 2; k <= top; ++k) {
    kfact *= static_cast<double>(k);
    double acc = 0;
    ExpVec beta(n, 0);
    for_each_composition(n, static_cast<int>(k), beta, 0, [&](const ExpVec& b) {
      CxVec w(n);
      bool any = false;
      for (int i = 0; i < n; ++i) {
        const SparsePoly g = multi_derivative(F.polys[i], b);
        w[i] = g.is_zero() ? Cx(0) : eval_poly(g, x);
        any = any || !g.is_zero();
      }
      if (!any) return;
      double mult = kfact;
      for (std::int64_t bj : b)
        for (std::int64_t r = 2; r <= bj; ++r) mult /= static_cast<double>(r);
      const CxVec u = J.solve(w);
      acc += mult * two_norm(u) * two_norm(u);
    });
    if (acc > 0) {
      const double frob = std::sqrt(acc) / kfact;
      rep.gamma = std::max(rep.gamma, std::pow(frob, 1.0 / static_cast<double>(k - 1)));
    }
  }
  rep.alpha = rep.beta * rep.gamma;
  rep.certified = rep.alpha < alpha_threshold();
  return rep;
}

// --- start systems and parameter continuation -------------------------------

SolveReport bezout_solve(const SparseSystem& F, const TrackConfig& cfg, std::uint64_t seed) {
  if (!F.square()) fail(Errc::NonSquare, "total-degree start needs a square system");
  const int n = F.nvars();
  std::vector<std::int64_t> deg(n);
  for (int i = 0; i < n; ++i) {
    if (F.polys[i].is_zero()) fail(Errc::ZeroPolynomial, "zero polynomial in system");
    deg[i] = total_degree(F.polys[i]);
    if (deg[i] < 1) fail(Errc::ZeroPolynomial, "start degrees must be positive");
  }

  std::vector<SparsePoly> gpolys;
  for (int i = 0; i < n; ++i) {
    ExpVec e(n, 0);
    e[i] = deg[i];
    gpolys.push_back(SparsePoly::make(n, {{e, Cx(1)}, {ExpVec(n, 0), Cx(-1)}}));
  }
  const Homotopy H = gamma_homotopy(F, SparseSystem{gpolys}, seed);

  SolveReport rep;
  std::vector<std::int64_t> idx(n, 0);
  while (true) {
    CxVec start(n);
    for (int i = 0; i < n; ++i)
      start[i] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(idx[i]) /
                                     static_cast<double>(deg[i]));
    PathResult pr = track_path(H, start, cfg);
    if (pr.status != PathStatus::Diverged) rep.solutions.push_back(pr.x);
    rep.paths.push_back(std::move(pr));

    int pos = n - 1;
    while (pos >= 0 && ++idx[pos] == deg[pos]) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return rep;
}

int ParamSystem::param_count() const {
  int c = 0;
  for (const auto& s : supports) c += static_cast<int>(s.size());
  return c;
}

SparseSystem ParamSystem::instantiate(const CxVec& params) const {
  if (static_cast<int>(params.size()) != param_count())
    fail(Errc::DimensionMismatch, "parameter vector length does not match the supports");
  SparseSystem S;
  int k = 0;
  for (const auto& sup : supports) {
    if (sup.empty()) fail(Errc::EmptySupport, "empty support in parametric family");
    std::vector<Term> ts;
    for (const ExpVec& a : sup) ts.push_back({a, params[k++]});
    S.polys.push_back(SparsePoly::make(nvars, std::move(ts)));
  }
  return S;
}

Homotopy parameter_homotopy(const ParamSystem& PS, const CxVec& start, const CxVec& target,
                            Cx gamma) {
  const int np = PS.param_count();
  if (static_cast<int>(start.size()) != np || static_cast<int>(target.size()) != np)
    fail(Errc::DimensionMismatch, "parameter vectors do not match the supports");
  const int n = PS.nvars;

  // Flattened view of the family, plus cached per-variable term derivatives.
  struct Flat {
    int poly;
    ExpVec exp;
    std::vector<Cx> dcoef;   // factor in d(x^a)/dx_j
    std::vector<ExpVec> dexp;
  };
  auto flats = std::make_shared<std::vector<Flat>>();
  for (std::size_t i = 0; i < PS.supports.size(); ++i) {
    for (const ExpVec& a : PS.supports[i]) {
      Flat fl;
      fl.poly = static_cast<int>(i);
      fl.exp = a;
      for (int j = 0; j < n; ++j) {
        fl.dcoef.push_back(Cx(static_cast<double>(a[j])));
        ExpVec e = a;
        if (a[j] != 0) e[j] -= 1;
        fl.dexp.push_back(std::move(e));
      }
      flats->push_back(std::move(fl));
    }
  }

  auto sa = std::make_shared<CxVec>(start);
  auto sb = std::make_shared<CxVec>(target);
  const int m = static_cast<int>(PS.supports.size());

  // s(t) = (t g a + (1-t) b) / (t g + (1-t)): start coefficients at t = 1,
  // target coefficients at t = 0, pushed off the real segment by g.
  auto coeff_at = [sa, sb, gamma](Cx t, CxVec& c, CxVec* dc) {
    const Cx mu = t * gamma;
    const Cx nu = Cx(1) - t;
    const Cx den = mu + nu;
    for (std::size_t k = 0; k < sa->size(); ++k) {
      const Cx num = mu * (*sa)[k] + nu * (*sb)[k];
      c[k] = num / den;
      if (dc)
        (*dc)[k] = ((gamma * (*sa)[k] - (*sb)[k]) * den - num * (gamma - Cx(1))) / (den * den);
    }
  };

  auto mono = [](const ExpVec& a, const CxVec& x) {
    Cx v(1);
    for (std::size_t j = 0; j < a.size(); ++j) v *= cx_pow(x[j], a[j]);
    return v;
  };

  Homotopy H;
  H.nvars = n;
  H.eval = [flats, coeff_at, mono, m, np](Cx t, const CxVec& x) {
    CxVec c(np);
    coeff_at(t, c, nullptr);
    CxVec out(m, Cx(0));
    for (std::size_t k = 0; k < flats->size(); ++k)
      out[(*flats)[k].poly] += c[k] * mono((*flats)[k].exp, x);
    return out;
  };
  H.jac_x = [flats, coeff_at, mono, m, n, np](Cx t, const CxVec& x) {
    CxVec c(np);
    coeff_at(t, c, nullptr);
    CxMat J(m, CxVec(n, Cx(0)));
    for (std::size_t k = 0; k < flats->size(); ++k) {
      const Flat& fl = (*flats)[k];
      for (int j = 0; j < n; ++j)
        if (fl.dcoef[j] != Cx(0)) J[fl.poly][j] += c[k] * fl.dcoef[j] * mono(fl.dexp[j], x);
    }
    return J;
  };
  H.jac_t = [flats, coeff_at, mono, m, np](Cx t, const CxVec& x) {
    CxVec c(np), dc(np);
    coeff_at(t, c, &dc);
    CxVec out(m, Cx(0));
    for (std::size_t k = 0; k < flats->size(); ++k)
      out[(*flats)[k].poly] += dc[k] * mono((*flats)[k].exp, x);
    return out;
  };
  return H;
}

std::vector<PathResult> parameter_continue(const ParamSystem& PS, const CxVec& start,
                                           const std::vector<CxVec>& start_solutions,
                                           const CxVec& target, const TrackConfig& cfg,
                                           std::uint64_t seed) {
  if (static_cast<int>(PS.supports.size()) != PS.nvars)
    fail(Errc::NonSquare, "parameter continuation needs a square family");
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  const Homotopy H = parameter_homotopy(PS, start, target, std::polar(1.0, ang(rng)));
  std::vector<PathResult> out;
  out.reserve(start_solutions.size());
  for (const CxVec& x0 : start_solutions) out.push_back(track_path(H, x0, cfg));
  return out;
}

}  // namespace polyhom
