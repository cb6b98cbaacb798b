#include "polyhom/polyhedral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "polyhom/intlin.hpp"

namespace polyhom {

namespace {

Cx coeff_of(const SparsePoly& f, const ExpVec& a) {
  for (const Term& t : f.terms)
    if (t.exponent == a) return t.coeff;
  return Cx(0);
}

Rat rat_dot_exp(const RatVec& v, const ExpVec& a) {
  Rat s = 0;
  for (std::size_t j = 0; j < v.size(); ++j) s += v[j] * Rat(Int(a[j]));
  return s;
}

double inf_norm(const CxVec& v) {
  double m = 0;
  for (const Cx& c : v) m = std::max(m, std::abs(c));
  return m;
}

double max_dist(const CxVec& a, const CxVec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// The lifted family F_l(t; x) = sum c x^a t^{K l(a)} as a system in n+1
// variables with the deformation parameter last.  K clears rational lifts;
// it rescales t, so a handoff at t = eps happens at eps^{1/K} here.
SparseSystem lifted_family(const SparseSystem& F, const Subdivision& S, const Int& K) {
  const int n = F.nvars();
  std::vector<SparsePoly> polys;
  for (int i = 0; i < n; ++i) {
    std::vector<Term> ts;
    for (std::size_t a = 0; a < S.supports[i].size(); ++a) {
      const Cx c = coeff_of(F.polys[i], S.supports[i][a]);
      if (c == Cx(0)) continue;
      ExpVec e = S.supports[i][a];
      e.push_back(numer(S.lifts[i][a] * Rat(K)).convert_to<std::int64_t>());
      ts.push_back({std::move(e), c});
    }
    polys.push_back(SparsePoly::make(n + 1, std::move(ts)));
  }
  return SparseSystem{std::move(polys)};
}

// The cell's rescaled start family H(s; z) = sum c z^a s^{M q(a)} with
// q(a) = <nu, a> + l(a) - m_i >= 0 and M clearing the denominators of q, so
// s = t^{1/M} and the system is polynomial in s.  At s = 0 it degenerates
// to the cell binomials.
SparseSystem cell_start_family(const SparseSystem& F, const Subdivision& S,
                               const CellStart& cs, Int& M_out) {
  const int n = F.nvars();
  std::vector<std::vector<Rat>> q(n);
  Int M = 1;
  for (int i = 0; i < n; ++i) {
    Rat m;
    bool first = true;
    for (std::size_t a = 0; a < S.supports[i].size(); ++a) {
      const Rat v = rat_dot_exp(cs.nu, S.supports[i][a]) + S.lifts[i][a];
      if (first || v < m) m = v;
      first = false;
    }
    for (std::size_t a = 0; a < S.supports[i].size(); ++a) {
      q[i].push_back(rat_dot_exp(cs.nu, S.supports[i][a]) + S.lifts[i][a] - m);
      M = int_lcm(M, denom(q[i].back()));
    }
  }
  std::vector<SparsePoly> polys;
  for (int i = 0; i < n; ++i) {
    std::vector<Term> ts;
    for (std::size_t a = 0; a < S.supports[i].size(); ++a) {
      const Cx c = coeff_of(F.polys[i], S.supports[i][a]);
      if (c == Cx(0)) continue;
      ExpVec e = S.supports[i][a];
      e.push_back(numer(q[i][a] * Rat(M)).convert_to<std::int64_t>());
      ts.push_back({std::move(e), c});
    }
    polys.push_back(SparsePoly::make(n + 1, std::move(ts)));
  }
  M_out = M;
  return SparseSystem{std::move(polys)};
}

}  // namespace

std::vector<CellStart> build_cell_starts(const SparseSystem& F, const Subdivision& S) {
  if (!F.square()) fail(Errc::NonSquare, "cell starts need a square system");
  const int n = F.nvars();
  if (S.n != n || static_cast<int>(S.supports.size()) != n)
    fail(Errc::DimensionMismatch, "subdivision does not match the system");
  if (!S.fine) fail(Errc::NonFineCell, "subdivision is not fine; retry with fresh lifts");

  std::vector<CellStart> out;
  for (const SubdivisionCell& cell : mixed_cells(S, std::vector<int>(n, 1))) {
    CellStart cs;
    cs.cell = cell;
    cs.nu.resize(n);
    for (int j = 0; j < n; ++j) cs.nu[j] = -cell.omega[j];

    IntMat A(n, IntVec(n));
    CxVec rhs(n);
    std::vector<SparsePoly> binoms;
    bool degenerate = false;
    for (int i = 0; i < n && !degenerate; ++i) {
      const auto& part = cell.parts[i];
      if (part.size() != 2) {
        degenerate = true;
        break;
      }
      const ExpVec& a = S.supports[i][part[0]];
      const ExpVec& b = S.supports[i][part[1]];
      const Cx ca = coeff_of(F.polys[i], a);
      const Cx cb = coeff_of(F.polys[i], b);
      if (ca == Cx(0) || cb == Cx(0)) {
        degenerate = true;  // the restriction is a monomial: no torus roots
        break;
      }
      for (int r = 0; r < n; ++r) A[r][i] = Int(b[r]) - Int(a[r]);
      rhs[i] = -ca / cb;
      binoms.push_back(SparsePoly::make(n, {{a, ca}, {b, cb}}));
    }
    if (degenerate) continue;

    cs.binomial = SparseSystem{std::move(binoms)};
    cs.roots = solve_binomial(A, rhs);
    if (Rat(static_cast<long long>(cs.roots.size())) != cell.volume)
      throw std::logic_error("polyhedral: binomial root count disagrees with cell volume");
    out.push_back(std::move(cs));
  }
  return out;
}

PolyhedralReport polyhedral_solve_report(const SparseSystem& F, const PolyhedralConfig& cfg) {
  if (!F.square()) fail(Errc::NonSquare, "polyhedral solve needs a square system");
  const int n = F.nvars();
  std::vector<std::vector<ExpVec>> supports;
  for (const SparsePoly& f : F.polys) {
    if (f.is_zero()) fail(Errc::ZeroPolynomial, "zero polynomial in system");
    supports.push_back(support_of(f));
  }

  PolyhedralReport rep;

  // Small integer lifts keep the t-exponents of the deformation modest, so
  // no boundary layer forms near t = 1.
  Subdivision S;
  bool have = false;
  std::mt19937_64 rng(cfg.seed ^ 0xa0761d6478bd642full);
  std::uniform_int_distribution<int> height(0, cfg.lift_range - 1);
  for (int attempt = 0; attempt < cfg.lift_retries && !have; ++attempt) {
    std::vector<RatVec> lifts;
    for (const auto& s : supports) {
      RatVec l(s.size());
      for (auto& v : l) v = Rat(height(rng));
      lifts.push_back(std::move(l));
    }
    try {
      Subdivision cand = regular_subdivision(supports, lifts);
      if (cand.fine) {
        S = std::move(cand);
        have = true;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::SpanDeficient) throw;
      return rep;  // mixed volume zero: no isolated torus solutions
    }
  }
  if (!have) fail(Errc::NonFineCell, "random lifts failed to produce a fine subdivision");

  rep.starts = build_cell_starts(F, S);
  for (const CellStart& cs : rep.starts)
    rep.mixed_volume += Int(static_cast<long long>(cs.roots.size()));

  const Int K = [&] {
    Int k = 1;
    for (const RatVec& l : S.lifts)
      for (const Rat& v : l) k = int_lcm(k, denom(v));
    return k;
  }();
  const Homotopy HX = homotopy_from_system(lifted_family(F, S, K));

  // The handoff rescales by eps^{nu_j}; steep cells would overflow at the
  // default eps, so move the handoff toward t = 1 until every coordinate
  // scale stays within 1e2.  One shared handoff value keeps all paths on a
  // common deformation curve, so their endpoints form the complete fiber.
  double eps_glob = cfg.epsilon;
  for (const CellStart& cs : rep.starts) {
    double numax = 0;
    for (const Rat& v : cs.nu) numax = std::max(numax, std::abs(to_double(v)));
    if (numax > 0) eps_glob = std::max(eps_glob, std::pow(1e-2, 1.0 / numax));
  }

  // For real coefficient data the discriminant meets the real t-axis, where
  // colliding real paths can never reach complex endpoints.  Bow the
  // deformation curve into the complex plane by a random phase
  // t = |t| e^{i theta v(1-v)}; the bow is pure phase, vanishes at both
  // ends, and misses the discriminant for almost every angle.
  std::uniform_real_distribution<double> bow(0.35, 0.85);
  const double theta_z = (rng() & 1 ? 1.0 : -1.0) * bow(rng);
  const double theta_x = (rng() & 1 ? 1.0 : -1.0) * bow(rng);

  // x-phase chart tau = t^{1/K}: the curve t(v) = r(v) e^{i theta v(1-v)}
  // with r(v) = eps + (1-eps) v, traced from v = 0 to v = 1.
  const double Kd = to_double(K);
  const auto make_x_arc = [eps_glob, Kd](double theta) {
    return TrackCurve{
        [eps_glob, Kd, theta](double v) {
          const double r = eps_glob + (1.0 - eps_glob) * v;
          return std::polar(std::pow(r, 1.0 / Kd), theta * v * (1.0 - v) / Kd);
        },
        [eps_glob, Kd, theta](double v) {
          const double r = eps_glob + (1.0 - eps_glob) * v;
          const Cx tau = std::polar(std::pow(r, 1.0 / Kd), theta * v * (1.0 - v) / Kd);
          return tau * Cx((1.0 - eps_glob) / (Kd * r), theta * (1.0 - 2.0 * v) / Kd);
        }};
  };

  // z-phase chart s = t^{1/M}: the same t-curve t = eps v e^{i theta v(1-v)}
  // traced via v = w^M, so s(w) = s_eps w e^{i g(w)} with
  // g(w) = theta (w^M - w^{2M}) / M.
  const auto make_z_arc = [](double s_eps, double Md, double theta) {
    return TrackCurve{
        [s_eps, Md, theta](double w) {
          const double wm = std::pow(w, Md);
          return std::polar(s_eps * w, theta * (wm - wm * wm) / Md);
        },
        [s_eps, Md, theta](double w) {
          const double wm = std::pow(w, Md);
          const double gp = theta * std::pow(w, Md - 1.0) * (1.0 - 2.0 * wm);
          const double g = theta * (wm - wm * wm) / Md;
          return std::polar(s_eps, g) + std::polar(s_eps * w, g) * Cx(0, gp);
        }};
  };

  struct CellRun {
    Homotopy HZ;
    double Md = 1;
    double s_eps = 0;
  };
  std::vector<CellRun> runs;
  for (const CellStart& cs : rep.starts) {
    Int M = 1;
    Homotopy HZ = homotopy_from_system(cell_start_family(F, S, cs, M));
    const double Md = to_double(M);
    runs.push_back({std::move(HZ), Md, std::pow(eps_glob, 1.0 / Md)});
  }

  // Track one start root to t = 1.  The one-step Euler/Newton shortcut
  // across the z-phase is attempted only on the first pass; repair passes
  // track the whole bowed arc.
  const auto run_path = [&](int ci, int ri, bool shortcut, double thz, double thx) {
    const CellStart& cs = rep.starts[ci];
    const CellRun& cr = runs[ci];
    PolyhedralPath pp;
    pp.cell = ci;
    pp.root = ri;
    try {
      CxVec z;
      bool have_z = false;
      if (shortcut) {
        z = euler_predict(cr.HZ, Cx(0), cs.roots[ri], Cx(cr.s_eps));
        z = newton_correct(cr.HZ, Cx(cr.s_eps), z, 20, cfg.track.newton_tol);
        have_z = inf_norm(cr.HZ.eval(Cx(cr.s_eps), z)) <= 1e-6;
      }
      if (!have_z) {
        const TrackCurve z_arc = make_z_arc(cr.s_eps, cr.Md, thz);
        const PathResult rescue = track_curve(cr.HZ, cs.roots[ri], z_arc, 0.0, 1.0, cfg.track);
        if (rescue.status == PathStatus::Diverged) {
          pp.status = PathStatus::Diverged;
          pp.x = rescue.x;
          pp.residual = std::numeric_limits<double>::infinity();
          return pp;
        }
        z = rescue.x;
      }

      // Handoff x_j = z_j * eps^{nu_j}, then the x-phase to t = 1.
      CxVec x(n);
      for (int j = 0; j < n; ++j) x[j] = z[j] * std::pow(eps_glob, to_double(cs.nu[j]));
      const PathResult pr = track_curve(HX, x, make_x_arc(thx), 0.0, 1.0, cfg.track);

      pp.status = pr.status;
      pp.x = pr.x;
      pp.residual = pr.status == PathStatus::Diverged ? std::numeric_limits<double>::infinity()
                                                      : inf_norm(eval_system(F, pr.x));
      if (pp.status != PathStatus::Diverged) {
        try {
          const AlphaReport ar = newton_refine(F, pp.x, 1);
          if (ar.certified) {
            pp.certified = true;
            pp.x = ar.x;
            pp.residual = inf_norm(eval_system(F, pp.x));
          }
        } catch (const Error& e) {
          if (e.code() != Errc::SingularJacobian) throw;
        }
      }
    } catch (const Error& e) {
      pp.aborted = true;
      pp.error = errc_name(e.code());
      pp.residual = std::numeric_limits<double>::infinity();
    }
    return pp;
  };

  for (std::size_t ci = 0; ci < rep.starts.size(); ++ci)
    for (std::size_t ri = 0; ri < rep.starts[ci].roots.size(); ++ri)
      rep.paths.push_back(
          run_path(static_cast<int>(ci), static_cast<int>(ri), true, theta_z, theta_x));

  const auto dedupe = [&] {
    rep.solutions.clear();
    for (PolyhedralPath& pp : rep.paths) {
      if (pp.aborted || pp.status == PathStatus::Diverged) continue;
      bool dup = false;
      for (const CxVec& s : rep.solutions)
        if (max_dist(s, pp.x) < cfg.cluster_tol) {
          dup = true;
          break;
        }
      pp.duplicate = dup;
      if (!dup) rep.solutions.push_back(pp.x);
    }
  };
  dedupe();

  // Repair pass: a shortcut that lands on the wrong branch shows up as a
  // collision of endpoints, and an unlucky bow angle as an aborted path.
  // Re-track every path involved (both collision partners) along fully
  // bowed arcs with fresh angles.
  for (int round = 0; round < 3; ++round) {
    if (Int(static_cast<long long>(rep.solutions.size())) >= rep.mixed_volume) break;
    std::vector<std::size_t> retry;
    for (std::size_t i = 0; i < rep.paths.size(); ++i) {
      const PolyhedralPath& p = rep.paths[i];
      if (p.aborted || p.duplicate) {
        retry.push_back(i);
        continue;
      }
      if (p.status == PathStatus::Diverged) continue;
      for (const PolyhedralPath& q : rep.paths)
        if (q.duplicate && max_dist(p.x, q.x) < cfg.cluster_tol) {
          retry.push_back(i);
          break;
        }
    }
    if (retry.empty()) break;
    const double thz = (rng() & 1 ? 1.0 : -1.0) * bow(rng);
    const double thx = (rng() & 1 ? 1.0 : -1.0) * bow(rng);
    for (std::size_t i : retry)
      rep.paths[i] = run_path(rep.paths[i].cell, rep.paths[i].root, false, thz, thx);
    dedupe();
  }
  return rep;
}

std::vector<CxVec> polyhedral_solve(const SparseSystem& F, const PolyhedralConfig& cfg) {
  PolyhedralReport rep = polyhedral_solve_report(F, cfg);
  if (Int(static_cast<long long>(rep.solutions.size())) < rep.mixed_volume) {
    int dup = 0, div = 0, abort = 0;
    for (const PolyhedralPath& p : rep.paths) {
      dup += p.duplicate ? 1 : 0;
      div += (!p.aborted && p.status == PathStatus::Diverged) ? 1 : 0;
      abort += p.aborted ? 1 : 0;
    }
    fail(Errc::CountShortfall,
         "found " + std::to_string(rep.solutions.size()) + " distinct solutions, expected " +
             rep.mixed_volume.str() + " (" + std::to_string(dup) + " duplicate endpoints, " +
             std::to_string(div) + " diverged, " + std::to_string(abort) + " failed)");
  }
  return rep.solutions;
}

SparseSystem random_system_with_support(const std::vector<std::vector<ExpVec>>& supports,
                                        int nvars, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xe7037ed1a0b428dbull);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  SparseSystem G;
  for (const auto& sup : supports) {
    if (sup.empty()) fail(Errc::EmptySupport, "empty support");
    std::vector<Term> ts;
    for (const ExpVec& a : sup) ts.push_back({a, std::polar(1.0, ang(rng))});
    G.polys.push_back(SparsePoly::make(nvars, std::move(ts)));
  }
  return G;
}

SparseSolveReport sparse_solve(const SparseSystem& F, const PolyhedralConfig& cfg) {
  if (!F.square()) fail(Errc::NonSquare, "sparse solve needs a square system");
  std::vector<std::vector<ExpVec>> supports;
  for (const SparsePoly& f : F.polys) {
    if (f.is_zero()) fail(Errc::ZeroPolynomial, "zero polynomial in system");
    supports.push_back(support_of(f));
  }

  SparseSolveReport rep;
  const SparseSystem G = random_system_with_support(supports, F.nvars(), cfg.seed);
  rep.generic = polyhedral_solve_report(G, cfg);

  // Identical draw means the segment is constant; transport is the identity.
  const Homotopy H = gamma_homotopy(F, G, cfg.seed ^ 0x1d8e4e27c47d124full);
  for (const CxVec& s : rep.generic.solutions) {
    PathResult pr = track_path(H, s, cfg.track);
    if (pr.status == PathStatus::Diverged) {
      ++rep.diverged;
    } else {
      bool torus = true;
      for (const Cx& c : pr.x)
        if (std::abs(c) <= cfg.cluster_tol) torus = false;
      if (!torus) {
        ++rep.off_torus;
      } else {
        bool dup = false;
        for (const CxVec& t : rep.solutions)
          if (max_dist(t, pr.x) < cfg.cluster_tol) {
            dup = true;
            break;
          }
        if (dup)
          ++rep.duplicates;
        else
          rep.solutions.push_back(pr.x);
      }
    }
    rep.retrack.push_back(std::move(pr));
  }
  return rep;
}

}  // namespace polyhom
