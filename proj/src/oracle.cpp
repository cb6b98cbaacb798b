#include "polyhom/oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "polyhom/error.hpp"
#include "polyhom/exactlin.hpp"
#include "polyhom/rational.hpp"

namespace polyhom {
namespace {

// t^e for real exponents; t = 0 never occurs on the probed segments.
Cx tpow(Cx t, double e) {
  if (e == 0.0) return Cx(1.0);
  return std::pow(t, e);
}

// --- dense univariate helpers, coefficients stored low to high ---------------

CxVec uni_mul(const CxVec& f, const CxVec& g) {
  CxVec r(f.size() + g.size() - 1, Cx(0));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  return r;
}

// Roots via the companion matrix after trimming a numerically zero lead.
CxVec uni_roots(CxVec c) {
  double mx = 0;
  for (const Cx& v : c) mx = std::max(mx, std::abs(v));
  if (!(mx > 0)) fail(Errc::ZeroPolynomial, "root finding on the zero polynomial");
  while (c.size() > 1 && std::abs(c.back()) <= 1e-12 * mx) c.pop_back();
  const int d = static_cast<int>(c.size()) - 1;
  CxVec roots;
  if (d < 1) return roots;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) M(i + 1, i) = Cx(1);
  for (int i = 0; i < d; ++i) M(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
  roots.reserve(d);
  for (int i = 0; i < d; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

// Value and s-derivative of prod_i (a_i s - b_i)^{e_i}, kept in factored form
// so the error stays proportional to the local value near clustered roots.
std::pair<Cx, Cx> line_monomial(const CxVec& a, const CxVec& b, const ExpVec& e, Cx s) {
  Cx val(1), der(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (e[i] == 0) continue;
    const Cx lin = a[i] * s - b[i];
    Cx plow(1);  // lin^{e_i - 1}
    for (std::int64_t k = 0; k + 1 < e[i]; ++k) plow *= lin;
    const Cx pfull = plow * lin;
    der = der * pfull + val * static_cast<double>(e[i]) * a[i] * plow;
    val *= pfull;
  }
  return {val, der};
}

double system_residual(const SparseSystem& F, const CxVec& x) {
  double r = 0;
  for (const Cx& v : eval_system(F, x)) r = std::max(r, std::abs(v));
  return r;
}

CxVec newton_polish(const SparseSystem& F, const CxVec& x) {
  try {
    return newton_refine(F, x, 3).x;
  } catch (const Error&) {
    return x;
  }
}

// Transport points of V(eqs) from one slice to another; lost paths counted.
struct Moved {
  std::vector<CxVec> finite;
  int lost = 0;
};

Moved move_points(const SparseSystem& eqs, const SparseSystem& from, const SparseSystem& to,
                  const std::vector<CxVec>& pts, const TrackConfig& cfg, std::uint64_t seed) {
  SparseSystem target, start;
  target.polys = eqs.polys;
  for (const SparsePoly& p : to.polys) target.polys.push_back(p);
  start.polys = eqs.polys;
  for (const SparsePoly& p : from.polys) start.polys.push_back(p);
  const Homotopy H = gamma_homotopy(target, start, seed);
  Moved out;
  for (const CxVec& p : pts) {
    try {
      const PathResult pr = track_segment(H, p, 1.0, 0.0, cfg);
      if (pr.status != PathStatus::Diverged) {
        const CxVec q = newton_polish(target, pr.x);
        if (system_residual(target, q) <= 1e-7) {
          out.finite.push_back(q);
          continue;
        }
      }
    } catch (const Error&) {
    }
    ++out.lost;
  }
  return out;
}

// Value and gradient of sum_l c_l z^{alpha_l}; exponents address a prefix of
// z, so a longer unknown vector leaves the trailing entries' gradient zero.
Cx eval_terms(const std::vector<Term>& terms, const CxVec& z, CxVec* grad) {
  Cx value(0);
  for (const Term& t : terms) {
    Cx v = t.coeff;
    int zero_at = -1;
    int zeros = 0;
    for (std::size_t j = 0; j < t.exponent.size(); ++j) {
      const std::int64_t e = t.exponent[j];
      if (e == 0) continue;
      if (z[j] == Cx(0)) {
        ++zeros;
        zero_at = static_cast<int>(j);
        continue;
      }
      v *= cx_pow(z[j], e);
    }
    if (zeros == 0) {
      value += v;
      if (grad)
        for (std::size_t j = 0; j < t.exponent.size(); ++j)
          if (t.exponent[j] != 0)
            (*grad)[j] += v * static_cast<double>(t.exponent[j]) / z[j];
    } else if (zeros == 1 && grad && t.exponent[zero_at] == 1) {
      (*grad)[zero_at] += v;  // v already excludes the vanishing factor
    }
  }
  return value;
}

std::vector<ExpVec> identity_change(int n) {
  std::vector<ExpVec> rows(n, ExpVec(n, 0));
  for (int i = 0; i < n; ++i) rows[i][i] = 1;
  return rows;
}

bool is_identity(const std::vector<ExpVec>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      if (rows[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

// Substitute x_i -> x^{rows[i]} into f, then clear negative exponents by a
// monomial shift (torus-equivalent).
SparsePoly substitute_monomial(const SparsePoly& f, const std::vector<ExpVec>& rows) {
  const int n = f.nvars;
  std::vector<Term> ts;
  ts.reserve(f.terms.size());
  for (const Term& t : f.terms) {
    ExpVec e(n, 0);
    for (int i = 0; i < n; ++i)
      if (t.exponent[i] != 0)
        for (int j = 0; j < n; ++j) e[j] += t.exponent[i] * rows[i][j];
    ts.push_back(Term{std::move(e), t.coeff});
  }
  SparsePoly g = SparsePoly::make(n, std::move(ts));
  if (g.is_zero()) fail(Errc::ZeroPolynomial, "substitution collapsed the polynomial");
  ExpVec mn(n, 0);
  for (const Term& t : g.terms)
    for (int j = 0; j < n; ++j) mn[j] = std::min(mn[j], t.exponent[j]);
  bool shift = false;
  for (int j = 0; j < n; ++j) shift = shift || (mn[j] < 0);
  if (shift) {
    std::vector<Term> us;
    us.reserve(g.terms.size());
    for (const Term& t : g.terms) {
      ExpVec e = t.exponent;
      for (int j = 0; j < n; ++j) e[j] -= mn[j];
      us.push_back(Term{std::move(e), t.coeff});
    }
    g = SparsePoly::make(n, std::move(us));
  }
  return g;
}

std::vector<ExpVec> random_unimodular(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(-3, 3);
  for (int tries = 0; tries < 20000; ++tries) {
    std::vector<ExpVec> rows(n, ExpVec(n));
    IntMat M(n, IntVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int e = entry(rng);
        rows[i][j] = e;
        M[i][j] = Int(e);
      }
    const Int d = int_det(M);
    if (d == 1 || d == -1) return rows;
  }
  fail(Errc::CountShortfall, "could not draw a unimodular change of coordinates");
}

// Change of coordinates requested by the options, with its exact inverse.
std::pair<std::vector<ExpVec>, RatMat> resolve_change(int n, const TropicalOptions& opt,
                                                      std::mt19937_64& rng) {
  std::vector<ExpVec> rows;
  if (opt.change) {
    rows = *opt.change;
    if (static_cast<int>(rows.size()) != n)
      fail(Errc::DimensionMismatch, "the change of coordinates must be square");
  } else if (opt.random_change) {
    rows = random_unimodular(n, rng);
  } else {
    return {identity_change(n), rat_identity(n)};
  }
  IntMat M(n, IntVec(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      fail(Errc::DimensionMismatch, "the change of coordinates must be square");
    for (int j = 0; j < n; ++j) M[i][j] = Int(rows[i][j]);
  }
  const Int d = int_det(M);
  if (d != 1 && d != -1)
    fail(Errc::NonInvertible, "the change of coordinates must be unimodular");
  return {rows, to_rat(unimodular_inverse(M))};
}

}  // namespace

// --- HypersurfaceOracle -------------------------------------------------------

HypersurfaceOracle::HypersurfaceOracle(const SparsePoly& f, std::uint64_t seed,
                                       const OracleConfig& cfg)
    : cfg_(cfg) {
  init_line(f.nvars, seed);
  setup_explicit(f);
}

HypersurfaceOracle::HypersurfaceOracle(const WitnessData& W, std::uint64_t seed,
                                       const OracleConfig& cfg)
    : cfg_(cfg) {
  if (W.equations.polys.size() != 1)
    fail(Errc::DimensionMismatch, "a hypersurface witness set carries exactly one equation");
  if (W.dim() != W.nvars() - 1)
    fail(Errc::DimensionMismatch, "witness set does not describe a hypersurface");
  init_line(W.nvars(), seed);
  setup_explicit(W.equations.polys[0]);
  if (static_cast<int>(W.points.size()) != degree_)
    fail(Errc::CardinalityDrop, "witness cardinality disagrees with the hypersurface degree");
}

HypersurfaceOracle::HypersurfaceOracle(const PseudoWitnessData& P, std::uint64_t seed,
                                       const OracleConfig& cfg)
    : cfg_(cfg) {
  init_line(static_cast<int>(P.coords.size()), seed);
  setup_projection(P.equations, P.slice, P.coords, P.points, P.image_degree, seed);
}

void HypersurfaceOracle::init_line(int n, std::uint64_t seed) {
  if (n < 1) fail(Errc::EmptyInput, "the ambient dimension must be positive");
  n_ = n;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  const double phase = ang(rng);
  a_.resize(n);
  b_.resize(n);
  for (int i = 0; i < n; ++i) {
    a_[i] = std::polar(1.0, ang(rng));
    const Cx rho = std::polar(1.0, phase + 2.0 * std::numbers::pi * i / n);
    b_[i] = rho * a_[i];
  }
}

void HypersurfaceOracle::setup_explicit(const SparsePoly& f) {
  explicit_mode_ = true;
  if (f.nvars != n_) fail(Errc::DimensionMismatch, "polynomial arity disagrees with the line");
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "the zero polynomial has no Newton polytope");
  for (const Term& t : f.terms)
    for (const std::int64_t e : t.exponent)
      if (e < 0) fail(Errc::NonIntegral, "negative exponents are not supported here");
  const std::int64_t d = total_degree(f);
  if (d < 1) fail(Errc::EmptySupport, "a nonzero constant meets no line");
  degree_ = static_cast<int>(d);

  support_.clear();
  coeffs_.clear();
  for (const Term& t : f.terms) {
    support_.push_back(t.exponent);
    coeffs_.push_back(t.coeff);
  }

  // restriction to the line at t = 1, expanded once for the start roots
  CxVec p1(degree_ + 1, Cx(0));
  for (std::size_t k = 0; k < support_.size(); ++k) {
    CxVec u{Cx(1)};
    for (int i = 0; i < n_; ++i)
      for (std::int64_t e = 0; e < support_[k][i]; ++e) u = uni_mul(u, CxVec{-b_[i], a_[i]});
    for (std::size_t j = 0; j < u.size(); ++j) p1[j] += coeffs_[k] * u[j];
  }
  double mx = 0;
  for (const Cx& v : p1) mx = std::max(mx, std::abs(v));
  if (!(std::abs(p1[degree_]) > 1e-10 * mx))
    fail(Errc::CountShortfall, "the line met the hypersurface in fewer points than its degree");
  start_s_ = uni_roots(p1);
  // factored-form Newton polish of the eigenvalue roots
  for (Cx& s : start_s_) {
    for (int it = 0; it < 3; ++it) {
      Cx v(0), dv(0);
      for (std::size_t k = 0; k < support_.size(); ++k) {
        const auto [val, der] = line_monomial(a_, b_, support_[k], s);
        v += coeffs_[k] * val;
        dv += coeffs_[k] * der;
      }
      if (!(std::abs(dv) > 1e-300)) break;
      s -= v / dv;
    }
  }
}

void HypersurfaceOracle::setup_projection(const SparseSystem& eqs, const SparseSystem& slice,
                                          const std::vector<int>& coords,
                                          const std::vector<CxVec>& points, int image_degree,
                                          std::uint64_t seed) {
  explicit_mode_ = false;
  upstream_ = eqs.nvars();
  coords_ = coords;
  if (static_cast<int>(coords_.size()) != n_)
    fail(Errc::DimensionMismatch, "kept-coordinate count disagrees with the line");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] < 0 || coords_[i] >= upstream_)
      fail(Errc::DimensionMismatch, "kept coordinate out of range");
    if (i > 0 && coords_[i] <= coords_[i - 1])
      fail(Errc::DimensionMismatch, "kept coordinates must be strictly increasing");
  }
  if (static_cast<int>(eqs.polys.size()) + (n_ - 1) != upstream_)
    fail(Errc::NonSquare, "expected a complete intersection of dimension one below the kept count");
  for (const SparsePoly& g : eqs.polys)
    for (const Term& t : g.terms)
      for (const std::int64_t e : t.exponent)
        if (e < 0) fail(Errc::NonIntegral, "negative exponents are not supported here");
  if (image_degree < 1) fail(Errc::EmptyInput, "the projected image carries no degree");
  if (points.empty()) fail(Errc::EmptyInput, "the pseudo-witness carries no points");
  degree_ = image_degree;
  eqs_ = eqs.polys;

  // The line at t = 1 expressed as a slice on the kept coordinates:
  // eliminating s from x_{J_i} = a_i s - b_i gives
  // a_j x_{J_0} - a_0 x_{J_j} + (a_j b_0 - a_0 b_j) = 0.
  SparseSystem line;
  for (int j = 1; j < n_; ++j) {
    std::vector<Term> ts;
    ExpVec e0(upstream_, 0), ej(upstream_, 0);
    e0[coords_[0]] = 1;
    ej[coords_[j]] = 1;
    ts.push_back(Term{e0, a_[j]});
    ts.push_back(Term{ej, -a_[0]});
    ts.push_back(Term{ExpVec(upstream_, 0), a_[j] * b_[0] - a_[0] * b_[j]});
    line.polys.push_back(SparsePoly::make(upstream_, std::move(ts)));
  }

  const Moved mv =
      move_points(eqs, slice, line, points, cfg_.track, seed ^ 0x853c49e6748fea9bull);
  if (mv.finite.empty()) fail(Errc::AllPathsDiverged, "no sample point reached the query line");

  // One representative per distinct line parameter: fibers collapse so the
  // path count equals the image degree.
  start_s_.clear();
  start_up_.clear();
  for (const CxVec& p : mv.finite) {
    const Cx s = (p[coords_[0]] + b_[0]) / a_[0];
    bool seen = false;
    for (const Cx& q : start_s_)
      if (std::abs(s - q) < 1e-6) {
        seen = true;
        break;
      }
    if (!seen) {
      start_s_.push_back(s);
      start_up_.push_back(p);
    }
  }
  if (static_cast<int>(start_s_.size()) < degree_)
    fail(Errc::CountShortfall, "the line met the projected image in fewer points than its degree");
  if (static_cast<int>(start_s_.size()) > degree_)
    fail(Errc::OracleInconsistent, "more distinct line parameters than the image degree");
}

Homotopy HypersurfaceOracle::line_homotopy(const std::vector<double>& omega) const {
  std::vector<double> ex(support_.size());
  double h = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < support_.size(); ++k) {
    double v = 0;
    for (int i = 0; i < n_; ++i) v += omega[i] * static_cast<double>(support_[k][i]);
    ex[k] = v;
    h = std::max(h, v);
  }
  for (double& v : ex) v -= h;

  Homotopy H;
  H.nvars = 1;
  H.eval = [this, ex](Cx t, const CxVec& x) {
    Cx v(0);
    for (std::size_t k = 0; k < support_.size(); ++k)
      v += coeffs_[k] * tpow(t, ex[k]) * line_monomial(a_, b_, support_[k], x[0]).first;
    return CxVec{v};
  };
  H.jac_x = [this, ex](Cx t, const CxVec& x) {
    Cx v(0);
    for (std::size_t k = 0; k < support_.size(); ++k)
      v += coeffs_[k] * tpow(t, ex[k]) * line_monomial(a_, b_, support_[k], x[0]).second;
    return CxMat{CxVec{v}};
  };
  H.jac_t = [this, ex](Cx t, const CxVec& x) {
    Cx v(0);
    for (std::size_t k = 0; k < support_.size(); ++k)
      if (ex[k] != 0.0)
        v += coeffs_[k] * ex[k] * tpow(t, ex[k] - 1.0) *
             line_monomial(a_, b_, support_[k], x[0]).first;
    return CxVec{v};
  };
  return H;
}

// A probe transports (x, s) from t_start to t_start * tau, tau in [1, ratio].
// Unknowns are z = (xt_1..xt_N, s) with x_j = lam_j * xt_j, every row is
// normalized by its largest coefficient, and scale products are assembled in
// log space so extreme toric growth never overflows.
Homotopy HypersurfaceOracle::upstream_homotopy(const std::vector<double>& omega,
                                               const std::vector<double>& lam, double s_scale,
                                               double t_start) const {
  const int N = upstream_;
  const int n = n_;
  const int E = static_cast<int>(eqs_.size());

  std::vector<double> lnlam(N);
  for (int j = 0; j < N; ++j) lnlam[j] = std::log(lam[j]);

  std::vector<std::vector<Term>> rows(E);
  for (int k = 0; k < E; ++k) {
    const std::vector<Term>& ts = eqs_[k].terms;
    std::vector<double> w(ts.size());
    double wmax = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < ts.size(); ++l) {
      double v = std::log(std::abs(ts[l].coeff));
      for (int j = 0; j < N; ++j)
        if (ts[l].exponent[j] != 0) v += static_cast<double>(ts[l].exponent[j]) * lnlam[j];
      w[l] = v;
      wmax = std::max(wmax, v);
    }
    rows[k].reserve(ts.size());
    for (std::size_t l = 0; l < ts.size(); ++l) {
      const Cx phase = ts[l].coeff / std::abs(ts[l].coeff);
      rows[k].push_back(Term{ts[l].exponent, phase * std::exp(w[l] - wmax)});
    }
  }

  const double lt = std::log(t_start);
  std::vector<double> pe(n), qe(n), dcoef(n), gcoef(n);
  for (int i = 0; i < n; ++i) {
    pe[i] = -std::max(omega[i], 0.0);
    qe[i] = std::min(omega[i], 0.0);
    const double lnA = pe[i] * lt + lnlam[coords_[i]];
    const double sb = std::abs(a_[i]) * std::max(1.0, s_scale) + std::abs(b_[i]);
    const double lnB = qe[i] * lt;
    const double lnR = std::max(lnA, lnB + std::log(sb));
    dcoef[i] = std::exp(lnA - lnR);
    gcoef[i] = std::exp(lnB - lnR);
  }

  Homotopy H;
  H.nvars = N + 1;
  H.eval = [this, rows, pe, qe, dcoef, gcoef, N, n, E](Cx t, const CxVec& z) {
    CxVec r(N + 1);
    for (int k = 0; k < E; ++k) r[k] = eval_terms(rows[k], z, nullptr);
    for (int i = 0; i < n; ++i)
      r[E + i] = dcoef[i] * tpow(t, pe[i]) * z[coords_[i]] -
                 gcoef[i] * tpow(t, qe[i]) * (a_[i] * z[N] - b_[i]);
    return r;
  };
  H.jac_x = [this, rows, pe, qe, dcoef, gcoef, N, n, E](Cx t, const CxVec& z) {
    CxMat J(N + 1, CxVec(N + 1, Cx(0)));
    for (int k = 0; k < E; ++k) eval_terms(rows[k], z, &J[k]);
    for (int i = 0; i < n; ++i) {
      J[E + i][coords_[i]] = dcoef[i] * tpow(t, pe[i]);
      J[E + i][N] = -gcoef[i] * tpow(t, qe[i]) * a_[i];
    }
    return J;
  };
  H.jac_t = [this, pe, qe, dcoef, gcoef, N, n, E](Cx t, const CxVec& z) {
    CxVec r(N + 1, Cx(0));
    for (int i = 0; i < n; ++i) {
      Cx v(0);
      if (pe[i] != 0.0) v += dcoef[i] * pe[i] * tpow(t, pe[i] - 1.0) * z[coords_[i]];
      if (qe[i] != 0.0) v -= gcoef[i] * qe[i] * tpow(t, qe[i] - 1.0) * (a_[i] * z[N] - b_[i]);
      r[E + i] = v;
    }
    return r;
  };
  return H;
}

CxVec HypersurfaceOracle::targets() const {
  CxVec r(n_);
  for (int i = 0; i < n_; ++i) r[i] = b_[i] / a_[i];
  return r;
}

OracleAnswer HypersurfaceOracle::query(const std::vector<double>& omega) const {
  if (static_cast<int>(omega.size()) != n_)
    fail(Errc::DimensionMismatch, "direction dimension disagrees with the hypersurface");
  for (const double w : omega)
    if (!std::isfinite(w)) fail(Errc::DimensionMismatch, "direction entries must be finite");

  const double settle_tol = std::pow(10.0, -cfg_.certainty);
  const double escape_tol = std::pow(10.0, cfg_.certainty);
  const double eep_tol = std::pow(10.0, -(cfg_.certainty + 2));
  const CxVec rho = targets();
  const int N = upstream_;

  enum Verdict : int { kUndecided = -4, kTracking = -3, kElsewhere = -2, kDiverged = -1 };
  struct PathState {
    Cx s;
    CxVec x;  // projection mode: upstream point in true coordinates
    int verdict = kTracking;
    int settle_streak = 0;
    int escape_streak = 0;
    std::vector<std::pair<double, Cx>> trace;
  };
  const int d = static_cast<int>(start_s_.size());
  std::vector<PathState> paths(d);
  for (int i = 0; i < d; ++i) {
    paths[i].s = start_s_[i];
    if (!explicit_mode_) paths[i].x = start_up_[i];
    if (cfg_.record_paths) paths[i].trace.push_back({1.0, paths[i].s});
  }

  std::optional<Homotopy> lineH;
  if (explicit_mode_) lineH = line_homotopy(omega);

  // One probe moves a path from t1 to t2, parameterized by tau = t / t1 in
  // [1, t2/t1] so the tracker's absolute step caps match the short segment.
  auto advance = [&](PathState& P, double t1, double t2) -> bool {
    try {
      if (explicit_mode_) {
        const TrackCurve seg{[t1](double u) { return Cx(t1 * u); },
                             [t1](double) { return Cx(t1); }};
        const PathResult pr = track_curve(*lineH, CxVec{P.s}, seg, 1.0, t2 / t1, cfg_.track);
        P.s = pr.x[0];
        return pr.status != PathStatus::Diverged;
      }
      std::vector<double> lam(N);
      for (int j = 0; j < N; ++j) {
        const double m = std::abs(P.x[j]);
        lam[j] = (m > 0.0) ? m : 1.0;
      }
      CxVec z(N + 1);
      for (int j = 0; j < N; ++j) z[j] = P.x[j] / lam[j];
      z[N] = P.s;
      const Homotopy H = upstream_homotopy(omega, lam, std::abs(P.s), t1);
      const TrackCurve seg{[](double u) { return Cx(u); }, [](double) { return Cx(1.0); }};
      const PathResult pr = track_curve(H, z, seg, 1.0, t2 / t1, cfg_.track);
      for (int j = 0; j < N; ++j) P.x[j] = lam[j] * pr.x[j];
      P.s = pr.x[N];
      return pr.status != PathStatus::Diverged;
    } catch (const Error& err) {
      if (std::getenv("ORACLE_DEBUG"))
        std::fprintf(stderr, "[oracle] probe t1=%.6g t2=%.6g |s|=%.6g s=(%.9g,%.9g): %s\n", t1,
                     t2, std::abs(P.s), P.s.real(), P.s.imag(), err.what());
      return false;
    }
  };

  // First probe doubles t; if every path advances and no intersection
  // parameter moves, the direction exposes the entire polytope.
  double t = 1.0;
  {
    bool all_ok = true;
    double moved = 0.0;
    for (PathState& P : paths) {
      const Cx before = P.s;
      if (advance(P, 1.0, 2.0)) {
        moved = std::max(moved, std::abs(P.s - before));
        if (cfg_.record_paths) P.trace.push_back({2.0, P.s});
      } else {
        all_ok = false;
        P.verdict = (std::abs(P.s) > cfg_.escape_size) ? kDiverged : kUndecided;
      }
    }
    if (all_ok && moved < eep_tol) {
      OracleAnswer ans;
      ans.kind = OracleAnswer::Kind::EntirePolytope;
      if (cfg_.record_paths)
        for (PathState& P : paths) ans.traces.push_back(std::move(P.trace));
      return ans;
    }
    t = 2.0;
  }

  int probes = 1;
  while (probes < cfg_.max_steps) {
    bool any = false;
    for (const PathState& P : paths) any = any || (P.verdict == kTracking);
    if (!any) break;
    const double t2 = t * cfg_.step_factor;
    ++probes;
    for (PathState& P : paths) {
      if (P.verdict != kTracking) continue;
      const Cx before = P.s;
      if (!advance(P, t, t2)) {
        P.verdict = (std::abs(P.s) > cfg_.escape_size) ? kDiverged : kUndecided;
        continue;
      }
      if (cfg_.record_paths) P.trace.push_back({t2, P.s});
      const double delta = std::abs(P.s - before);
      if (std::getenv("ORACLE_DEBUG"))
        std::fprintf(stderr, "  [p%02d t2=%.4g] path %ld s=(%.9g,%.9g) d=%.3g v=%d\n", probes,
                     t2, (long)(&P - paths.data()), P.s.real(), P.s.imag(), delta, P.verdict);
      if (probes < cfg_.min_steps) continue;
      if (std::abs(P.s) <= cfg_.escape_size && delta < settle_tol) {
        if (++P.settle_streak >= 2) {
          int hit = -1;
          for (int i = 0; i < n_; ++i)
            if (std::abs(P.s - rho[i]) <= cfg_.epsilon) {
              hit = i;
              break;
            }
          P.verdict = (hit >= 0) ? hit : kElsewhere;
          continue;
        }
      } else {
        P.settle_streak = 0;
      }
      if (std::abs(P.s) > cfg_.escape_size && delta > escape_tol) {
        if (++P.escape_streak >= 2) {
          P.verdict = kDiverged;
          continue;
        }
      } else {
        P.escape_streak = 0;
      }
    }
    t = t2;
  }

  int undecided = 0;
  for (const PathState& P : paths)
    if (P.verdict == kTracking || P.verdict == kUndecided) ++undecided;
  if (undecided > 0)
    fail(Errc::MaxTracksReached, std::to_string(undecided) + " of " + std::to_string(d) +
                                     " paths undecided after " + std::to_string(probes) +
                                     " probes");

  OracleAnswer ans;
  ans.beta.assign(n_ + 1, 0);
  for (PathState& P : paths) {
    if (P.verdict >= 0)
      ++ans.beta[P.verdict];
    else if (P.verdict == kDiverged)
      ++ans.beta[n_];
    else
      ++ans.elsewhere;
  }
  ans.kind = (ans.elsewhere == 0) ? OracleAnswer::Kind::Vertex : OracleAnswer::Kind::Face;
  if (cfg_.record_paths)
    for (PathState& P : paths) ans.traces.push_back(std::move(P.trace));
  return ans;
}

OracleAnswer oracle_query(const HypersurfaceOracle& oracle, const std::vector<double>& omega) {
  return oracle.query(omega);
}

// --- convergence bound ---------------------------------------------------------

double ConvergenceBound::at(double t) const {
  if (exposes_everything) return 0.0;
  return constant * std::pow(t, -rate);
}

ConvergenceBound convergence_bound(const SparsePoly& f, const std::vector<double>& omega,
                                   const CxVec& a, const CxVec& b, Cx z) {
  const int n = f.nvars;
  if (static_cast<int>(omega.size()) != n || static_cast<int>(a.size()) != n ||
      static_cast<int>(b.size()) != n)
    fail(Errc::DimensionMismatch, "direction/anchor dimension mismatch");
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "no bound for the zero polynomial");

  std::vector<double> val(f.terms.size());
  double h = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < f.terms.size(); ++k) {
    double v = 0;
    for (int i = 0; i < n; ++i) v += omega[i] * static_cast<double>(f.terms[k].exponent[i]);
    val[k] = v;
    h = std::max(h, v);
  }
  const double tol = 1e-9 * (1.0 + std::abs(h));
  std::vector<std::size_t> exposed, hidden;
  for (std::size_t k = 0; k < f.terms.size(); ++k)
    (val[k] >= h - tol ? exposed : hidden).push_back(k);

  ConvergenceBound B;
  if (hidden.empty()) {
    B.exposes_everything = true;
    return B;
  }

  double second = -std::numeric_limits<double>::infinity();
  for (const std::size_t k : hidden) second = std::max(second, val[k]);
  B.rate = h - second;

  // exposed part with its common line factors removed
  ExpVec m(n, std::numeric_limits<std::int64_t>::max());
  for (const std::size_t k : exposed)
    for (int i = 0; i < n; ++i) m[i] = std::min(m[i], f.terms[k].exponent[i]);
  CxVec G{Cx(0)};
  for (const std::size_t k : exposed) {
    CxVec u{Cx(1)};
    for (int i = 0; i < n; ++i)
      for (std::int64_t e = 0; e < f.terms[k].exponent[i] - m[i]; ++e)
        u = uni_mul(u, CxVec{-b[i], a[i]});
    if (u.size() > G.size()) G.resize(u.size(), Cx(0));
    for (std::size_t j = 0; j < u.size(); ++j) G[j] += f.terms[k].coeff * u[j];
  }
  double gmax = 0;
  for (const Cx& v : G) gmax = std::max(gmax, std::abs(v));
  while (G.size() > 1 && std::abs(G.back()) <= 1e-12 * gmax) G.pop_back();
  const Cx K = G.back();
  B.other_limits = (G.size() > 1) ? uni_roots(G) : CxVec{};

  double cmax = 0;
  for (const Term& t : f.terms) cmax = std::max(cmax, std::abs(t.coeff));
  const double C = cmax / std::abs(K);

  double amin = 1.0, amax = 1.0;
  for (int i = 0; i < n; ++i) {
    amin = std::min(amin, std::abs(a[i]));
    amax = std::max(amax, std::abs(a[i]));
  }

  CxVec rho(n);
  for (int i = 0; i < n; ++i) rho[i] = b[i] / a[i];
  double gamma = amin;
  for (const Cx& zh : rho)
    if (std::abs(zh - z) > 1e-8) gamma = std::min(gamma, std::abs(zh - z) / 2.0);
  for (const Cx& zh : B.other_limits)
    if (std::abs(zh - z) > 1e-8) gamma = std::min(gamma, std::abs(zh - z) / 2.0);
  double Gamma = 2.0 / amax;
  for (int i = 0; i < n; ++i) Gamma = std::max(Gamma, std::abs(z - rho[i]));

  double mult = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(z - rho[i]) <= 1e-6) mult += static_cast<double>(m[i]);
  for (const Cx& zh : B.other_limits)
    if (std::abs(zh - z) <= 1e-6) mult += 1.0;
  B.multiplicity = mult;

  B.constant = C * static_cast<double>(hidden.size()) *
               std::pow((amax / amin) * (1.0 + Gamma / gamma),
                        static_cast<double>(total_degree(f)));
  B.gamma_ball = gamma;
  return B;
}

// --- vertex oracles and reconstruction ------------------------------------------

VertexOracle vertex_oracle_from_points(std::vector<ExpVec> points) {
  if (points.empty()) fail(Errc::EmptyInput, "need at least one point");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t dim = points[0].size();
  for (const ExpVec& p : points)
    if (p.size() != dim) fail(Errc::DimensionMismatch, "point dimension mismatch");
  return [pts = std::move(points)](const std::vector<double>& w) -> std::optional<ExpVec> {
    if (w.size() != pts[0].size())
      fail(Errc::DimensionMismatch, "direction dimension disagrees with the points");
    double best = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    std::vector<double> vals(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      double v = 0;
      for (std::size_t j = 0; j < w.size(); ++j) v += w[j] * static_cast<double>(pts[k][j]);
      vals[k] = v;
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    const double tol = 1e-9 * (1.0 + std::abs(best));
    int ties = 0;
    for (const double v : vals)
      if (v >= best - tol) ++ties;
    if (ties != 1) return std::nullopt;
    return pts[arg];
  };
}

VertexOracle vertex_oracle(HypersurfaceOracle oracle) {
  return [O = std::move(oracle)](const std::vector<double>& w) -> std::optional<ExpVec> {
    if (static_cast<int>(w.size()) != O.dimension() + 1)
      fail(Errc::DimensionMismatch, "expected a direction for the homogenized polytope");
    std::vector<double> omega(O.dimension());
    for (int i = 0; i < O.dimension(); ++i) omega[i] = w[i] - w.back();
    const OracleAnswer ans = O.query(omega);
    if (ans.kind == OracleAnswer::Kind::Vertex)
      return ExpVec(ans.beta.begin(), ans.beta.end());
    return std::nullopt;
  };
}

Polytope reconstruct_polytope(const VertexOracle& oracle, int dim, std::int64_t box,
                              const ReconstructOptions& opt) {
  if (dim < 1) fail(Errc::EmptyInput, "dimension must be positive");
  if (box < 0) fail(Errc::EmptyInput, "the box bound must be nonnegative");
  if (dim > 21 || std::pow(static_cast<double>(box) + 1.0, dim) > 2e6)
    fail(Errc::DimensionMismatch, "candidate grid (box+1)^dim is too large to enumerate");

  const RatMat* A = nullptr;
  const RatVec* rhs = nullptr;
  if (opt.constraints) {
    A = &opt.constraints->first;
    rhs = &opt.constraints->second;
    if (A->size() != rhs->size())
      fail(Errc::DimensionMismatch, "constraint matrix and right-hand side disagree");
    for (const RatVec& row : *A)
      if (static_cast<int>(row.size()) != dim)
        fail(Errc::DimensionMismatch, "constraint row arity disagrees with the dimension");
  }

  // Kernel projector for query directions; all bookkeeping stays exact.
  Eigen::MatrixXd proj;
  if (A && !A->empty()) {
    Eigen::MatrixXd Ad(A->size(), dim);
    for (std::size_t i = 0; i < A->size(); ++i)
      for (int j = 0; j < dim; ++j) Ad(static_cast<int>(i), j) = to_double((*A)[i][j]);
    proj = Eigen::MatrixXd::Identity(dim, dim) -
           Ad.transpose() *
               (Ad * Ad.transpose()).completeOrthogonalDecomposition().pseudoInverse() * Ad;
  }
  // No normalization: scaling a direction up widens the exponent gaps and
  // makes the oracle settle in fewer probes, so directions are passed at
  // their natural magnitude.
  const auto project_dir = [&](std::vector<double> w) {
    if (proj.size() > 0) {
      Eigen::VectorXd v(dim);
      for (int i = 0; i < dim; ++i) v(i) = w[i];
      const Eigen::VectorXd u = proj * v;
      if (u.norm() > 1e-9 * (1.0 + v.norm()))
        for (int i = 0; i < dim; ++i) w[i] = u(i);
    }
    return w;
  };

  std::vector<ExpVec> cand;
  ExpVec cur(dim, 0);
  std::function<void(int)> enumerate = [&](int pos) {
    if (pos == dim) {
      if (A) {
        const RatVec xr = to_ratvec(cur);
        for (std::size_t i = 0; i < A->size(); ++i)
          if (rat_dot((*A)[i], xr) != (*rhs)[i]) return;
      }
      cand.push_back(cur);
      return;
    }
    for (std::int64_t v = 0; v <= box; ++v) {
      cur[pos] = v;
      enumerate(pos + 1);
    }
  };
  enumerate(0);
  if (cand.empty()) fail(Errc::EmptyInput, "no lattice point in the box satisfies the constraints");

  std::vector<std::pair<RatVec, Rat>> halfspaces;
  std::vector<ExpVec> confirmed;
  const auto is_confirmed = [&](const ExpVec& p) {
    return std::find(confirmed.begin(), confirmed.end(), p) != confirmed.end();
  };

  // One oracle call: record the answering halfspace exactly, check it against
  // everything established so far, and filter the candidates.
  const auto ask = [&](const std::vector<double>& w,
                       const RatVec& wexact) -> std::optional<ExpVec> {
    const std::optional<ExpVec> v = oracle(project_dir(w));
    if (!v) return std::nullopt;
    if (static_cast<int>(v->size()) != dim)
      fail(Errc::OracleInconsistent, "vertex answer has the wrong dimension");
    for (const std::int64_t c : *v)
      if (c < 0 || c > box) fail(Errc::OracleInconsistent, "vertex answer escapes the box");
    const RatVec vr = to_ratvec(*v);
    if (A)
      for (std::size_t i = 0; i < A->size(); ++i)
        if (rat_dot((*A)[i], vr) != (*rhs)[i])
          fail(Errc::OracleInconsistent, "vertex answer violates the affine constraints");
    for (const auto& [nu, off] : halfspaces)
      if (rat_dot(nu, vr) > off)
        fail(Errc::OracleInconsistent, "vertex answer violates an established halfspace");
    const Rat off = rat_dot(wexact, vr);
    for (const ExpVec& u : confirmed)
      if (rat_dot(wexact, to_ratvec(u)) > off)
        fail(Errc::OracleInconsistent, "vertex answer cuts off a confirmed vertex");
    halfspaces.emplace_back(wexact, off);
    std::vector<ExpVec> keep;
    keep.reserve(cand.size());
    for (ExpVec& x : cand)
      if (rat_dot(wexact, to_ratvec(x)) <= off) keep.push_back(std::move(x));
    cand = std::move(keep);
    if (std::find(cand.begin(), cand.end(), *v) == cand.end())
      fail(Errc::OracleInconsistent, "vertex answer is not among the remaining candidates");
    if (!is_confirmed(*v)) confirmed.push_back(*v);
    return v;
  };

  // Orthant phase: hunt for one vertex per sign pattern.  A query that
  // exhausts its probe budget (possible when a random direction has a tiny
  // exponent gap) just counts as a miss here.
  std::mt19937_64 rng(opt.seed ^ 0xa0761d6478bd642full);
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  for (std::uint64_t sbits = 0; sbits < (1ull << dim); ++sbits) {
    for (int attempt = 0; attempt < std::max(1, opt.orthant_attempts); ++attempt) {
      std::vector<double> w(dim);
      RatVec wexact(dim);
      for (int i = 0; i < dim; ++i) {
        const double x = mag(rng) * (((sbits >> i) & 1u) ? -1.0 : 1.0);
        w[i] = x;
        wexact[i] = rat_from_double(x);
      }
      try {
        if (ask(w, wexact)) break;
      } catch (const Error& e) {
        if (e.code() != Errc::MaxTracksReached) throw;
      }
    }
  }
  if (confirmed.empty()) fail(Errc::CountShortfall, "no orthant probe exposed a vertex");

  // Resolution phase: every unconfirmed vertex of the outer hull is exposed
  // by the sum of its tight facet normals and then confirmed, cut off, or
  // (on a face answer) deleted.  Each pass makes strict progress.
  const std::size_t budget = 2 * cand.size() + 16;
  for (std::size_t iter = 0; iter < budget; ++iter) {
    std::vector<IntVec> ipts;
    ipts.reserve(cand.size());
    for (const ExpVec& x : cand) {
      IntVec q(dim);
      for (int i = 0; i < dim; ++i) q[i] = Int(x[i]);
      ipts.push_back(std::move(q));
    }
    Polytope hull = convex_hull_int(ipts);
    const std::vector<RatVec>& hv = hull.vertices();
    int pid = -1;
    ExpVec p;
    for (std::size_t i = 0; i < hv.size(); ++i) {
      ExpVec q(dim);
      for (int j = 0; j < dim; ++j) {
        if (!is_integral(hv[i][j]))
          fail(Errc::OracleInconsistent, "outer hull vertex is not integral");
        q[j] = numer(hv[i][j]).convert_to<std::int64_t>();
      }
      if (!is_confirmed(q)) {
        pid = static_cast<int>(i);
        p = std::move(q);
        break;
      }
    }
    if (pid < 0) return hull;  // inner and outer hulls agree

    RatVec wexact(dim, Rat(0));
    if (hull.dim() == 0) {
      for (int i = 0; i < dim; ++i) wexact[i] = 1;
    } else {
      for (const FacetIneq& facet : hull.hrep().facets)
        if (std::find(facet.vertex_ids.begin(), facet.vertex_ids.end(), pid) !=
            facet.vertex_ids.end())
          for (int i = 0; i < dim; ++i) wexact[i] += facet.normal[i];
    }
    const Rat pval = rat_dot(wexact, to_ratvec(p));
    for (const ExpVec& x : cand)
      if (x != p && rat_dot(wexact, to_ratvec(x)) >= pval)
        fail(Errc::OracleInconsistent, "failed to expose an outer hull vertex");

    // An undecided query is retried with small exact perturbations of the
    // exposure direction; each perturbed direction is re-verified to expose
    // p uniquely among the candidates, so the halfspace bookkeeping stays
    // sound no matter which of them finally answers.
    std::optional<ExpVec> v;
    bool answered = false;
    std::mt19937_64 prng(opt.seed ^ (0x94d049bb133111ebull + 0x9e3779b9ull * iter));
    std::uniform_int_distribution<int> jig(-64, 64);
    for (int attempt = 0; attempt < 12 && !answered; ++attempt) {
      RatVec wtry = wexact;
      if (attempt > 0) {
        const Rat scale(1, 64LL << std::min(attempt, 8));
        for (int i = 0; i < dim; ++i) wtry[i] += scale * jig(prng);
        const Rat pv = rat_dot(wtry, to_ratvec(p));
        bool unique = true;
        for (const ExpVec& x : cand)
          if (x != p && rat_dot(wtry, to_ratvec(x)) >= pv) {
            unique = false;
            break;
          }
        if (!unique) continue;
      }
      std::vector<double> w(dim);
      for (int i = 0; i < dim; ++i) w[i] = to_double(wtry[i]);
      try {
        v = ask(w, wtry);
        answered = true;
      } catch (const Error& e) {
        if (e.code() != Errc::MaxTracksReached) throw;
      }
    }
    if (!answered)
      fail(Errc::MaxTracksReached, "the oracle stayed undecided on an exposure direction");
    if (!v) {
      // p was uniquely exposed among the candidates, so a face answer proves
      // p is not in the polytope at all.
      cand.erase(std::find(cand.begin(), cand.end(), p));
    } else if (*v != p) {
      if (std::find(cand.begin(), cand.end(), p) != cand.end())
        fail(Errc::OracleInconsistent, "vertex answer failed to cut off the exposed point");
    }
  }
  fail(Errc::CountShortfall, "reconstruction did not converge within its query budget");
}

// --- tropical membership --------------------------------------------------------

TropicalMembershipTester::TropicalMembershipTester(const SparseSystem& E, int m,
                                                   const TropicalOptions& opt)
    : n_(E.nvars()), m_(m) {
  if (E.polys.empty()) fail(Errc::EmptyInput, "no equations supplied");
  if (m_ < 1 || m_ >= n_) fail(Errc::DimensionMismatch, "variety dimension out of range");
  if (static_cast<int>(E.polys.size()) != n_ - m_)
    fail(Errc::NonSquare, "expected one equation per codimension");

  std::mt19937_64 rng(opt.seed ^ 0xe7037ed1a0b428dbull);
  auto resolved = resolve_change(n_, opt, rng);
  change_ = std::move(resolved.first);
  change_inverse_ = std::move(resolved.second);

  SparseSystem work;
  const bool ident = is_identity(change_);
  for (const SparsePoly& g : E.polys)
    work.polys.push_back(ident ? g : substitute_monomial(g, change_));

  const WitnessData W =
      witness_construct(work, m_, opt.oracle.track, opt.seed ^ 0x589965cc75374cc3ull);

  std::vector<int> idx(m_ + 1);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Projection pr;
    pr.coords = idx;
    std::uint64_t mix = opt.seed * 0x9e3779b97f4a7c15ull + 0x100000001b3ull;
    for (const int c : idx) mix = (mix ^ static_cast<std::uint64_t>(c + 1)) * 0x100000001b3ull;
    try {
      const PseudoWitnessData P = pseudo_witness(W, idx, opt.oracle.track, mix);
      pr.image_degree = P.image_degree;
      pr.oracle.emplace(P, mix ^ 0x2545f4914f6cdd1dull, opt.oracle);
    } catch (const Error&) {
      pr.image_degree = 0;  // projection unusable: reported but non-certifying
      pr.oracle.reset();
    }
    projections_.push_back(std::move(pr));

    int i = m_;
    while (i >= 0 && idx[i] == n_ - (m_ + 1) + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j <= m_; ++j) idx[j] = idx[j - 1] + 1;
  }

  bool usable = false;
  for (const Projection& pr : projections_) usable = usable || pr.oracle.has_value();
  if (!usable)
    fail(Errc::CountShortfall, "no coordinate projection produced a usable hypersurface");
}

TropicalReport TropicalMembershipTester::query(const std::vector<double>& omega) const {
  if (static_cast<int>(omega.size()) != n_)
    fail(Errc::DimensionMismatch, "direction dimension disagrees with the equations");
  // Pull the direction back through the change of coordinates.
  std::vector<double> w(n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) w[i] += to_double(change_inverse_[i][j]) * omega[j];
  TropicalReport rep;
  for (const Projection& pr : projections_) {
    ProjectionReport r;
    r.coords = pr.coords;
    r.image_degree = pr.image_degree;
    if (pr.oracle) {
      std::vector<double> sub(pr.coords.size());
      for (std::size_t k = 0; k < pr.coords.size(); ++k) sub[k] = w[pr.coords[k]];
      r.answer = pr.oracle->query(sub);
      if (r.answer.kind == OracleAnswer::Kind::Vertex) rep.member = false;
    }
    rep.projections.push_back(std::move(r));
  }
  return rep;
}

TropicalReport tropical_membership(const SparsePoly& f, const std::vector<double>& omega,
                                   const TropicalOptions& opt) {
  if (static_cast<int>(omega.size()) != f.nvars)
    fail(Errc::DimensionMismatch, "direction dimension disagrees with the polynomial");
  std::mt19937_64 rng(opt.seed ^ 0xe7037ed1a0b428dbull);
  const auto resolved = resolve_change(f.nvars, opt, rng);
  const bool ident = is_identity(resolved.first);
  const SparsePoly g = ident ? f : substitute_monomial(f, resolved.first);
  std::vector<double> w(f.nvars, 0.0);
  for (int i = 0; i < f.nvars; ++i)
    for (int j = 0; j < f.nvars; ++j) w[i] += to_double(resolved.second[i][j]) * omega[j];

  const HypersurfaceOracle O(g, opt.seed ^ 0x60642e2a34326f45ull, opt.oracle);
  TropicalReport rep;
  ProjectionReport r;
  r.coords.resize(f.nvars);
  std::iota(r.coords.begin(), r.coords.end(), 0);
  r.image_degree = O.degree();
  r.answer = O.query(w);
  rep.member = (r.answer.kind != OracleAnswer::Kind::Vertex);
  rep.projections.push_back(std::move(r));
  return rep;
}

TropicalReport tropical_membership(const SparseSystem& E, int m, const std::vector<double>& omega,
                                   const TropicalOptions& opt) {
  return TropicalMembershipTester(E, m, opt).query(omega);
}

// --- graded monomial bookkeeping -------------------------------------------------

std::vector<ExpVec> graded_monomials(int nvars, std::int64_t degree) {
  if (nvars < 1) fail(Errc::EmptyInput, "need at least one variable");
  if (degree < 0) fail(Errc::EmptyInput, "degree must be nonnegative");
  std::vector<ExpVec> out;
  ExpVec cur(nvars, 0);
  std::function<void(int, std::int64_t)> rec = [&](int pos, std::int64_t rem) {
    if (pos == nvars - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (std::int64_t v = rem; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, rem - v);
    }
  };
  rec(0, degree);
  return out;
}

std::vector<int> monomial_permutation(int nvars, std::int64_t degree,
                                      const std::vector<int>& sigma) {
  if (static_cast<int>(sigma.size()) != nvars)
    fail(Errc::DimensionMismatch, "permutation arity disagrees with the variable count");
  std::vector<bool> seen(nvars, false);
  for (const int s : sigma) {
    if (s < 0 || s >= nvars || seen[s])
      fail(Errc::NonInvertible, "not a permutation of the variables");
    seen[s] = true;
  }
  const std::vector<ExpVec> mons = graded_monomials(nvars, degree);
  std::vector<int> out(mons.size());
  for (std::size_t k = 0; k < mons.size(); ++k) {
    ExpVec img(nvars, 0);
    for (int i = 0; i < nvars; ++i) img[sigma[i]] = mons[k][i];
    const auto it = std::find(mons.begin(), mons.end(), img);
    out[k] = static_cast<int>(it - mons.begin());
  }
  return out;
}

}  // namespace polyhom
