#include "polyhom/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace polyhom {

namespace {

double max_dist(const CxVec& a, const CxVec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

SparseSystem concat(const SparseSystem& F, const SparseSystem& L) {
  SparseSystem out = F;
  for (const SparsePoly& l : L.polys) out.polys.push_back(l);
  return out;
}

void check_slice(const SparseSystem& L, int nvars) {
  for (const SparsePoly& l : L.polys) {
    if (l.nvars != nvars) fail(Errc::DimensionMismatch, "slice has the wrong variable count");
    if (l.is_zero() || total_degree(l) > 1)
      fail(Errc::DimensionMismatch, "slice polynomials must be affine-linear and nonzero");
  }
}

// Refine a point on the squared system when its Jacobian allows it.
CxVec polish(const SparseSystem& sq, CxVec x) {
  try {
    const AlphaReport ar = newton_refine(sq, x, 3);
    return ar.x;
  } catch (const Error& e) {
    if (e.code() != Errc::SingularJacobian) throw;
    return x;
  }
}

double residual(const SparseSystem& sq, const CxVec& x) {
  double m = 0;
  for (const Cx& v : eval_system(sq, x)) m = std::max(m, std::abs(v));
  return m;
}

struct Transport {
  std::vector<CxVec> finite;  // converged endpoints, input order preserved
  int diverged = 0;
};

// Move points from V(F | slice_from) to V(F | slice_to) with a gamma-trick
// homotopy; regular segment tracking, Newton polish at the end.
Transport transport(const SparseSystem& F, const SparseSystem& slice_from,
                    const SparseSystem& slice_to, const std::vector<CxVec>& points,
                    const TrackConfig& cfg, std::uint64_t seed) {
  const SparseSystem start = concat(F, slice_from);
  const SparseSystem target = concat(F, slice_to);
  const Homotopy H = gamma_homotopy(target, start, seed ^ 0x9e3779b97f4a7c15ull);
  Transport tr;
  for (const CxVec& p : points) {
    try {
      const PathResult pr = track_segment(H, p, 1.0, 0.0, cfg);
      if (pr.status == PathStatus::Diverged) {
        ++tr.diverged;
        continue;
      }
      tr.finite.push_back(polish(target, pr.x));
    } catch (const Error&) {
      ++tr.diverged;
    }
  }
  return tr;
}

// Translate the slice by t * v: only constant terms change, by -t <a_i, v>.
SparseSystem translate_slice(const SparseSystem& L, const CxVec& v, double t) {
  SparseSystem out;
  for (const SparsePoly& l : L.polys) {
    Cx shift(0);
    for (const Term& term : l.terms)
      for (std::size_t j = 0; j < term.exponent.size(); ++j)
        if (term.exponent[j] == 1) shift += term.coeff * v[j];
    std::vector<Term> ts = l.terms;
    ts.push_back({ExpVec(l.nvars, 0), -t * shift});
    out.polys.push_back(SparsePoly::make(l.nvars, std::move(ts)));
  }
  return out;
}

Cx coeff_at(const SparsePoly& f, std::int64_t i, std::int64_t j) {
  for (const Term& t : f.terms)
    if (t.exponent[0] == i && t.exponent[1] == j) return t.coeff;
  return Cx(0);
}

}  // namespace

CxVec centroid(const std::vector<CxVec>& pts) {
  if (pts.empty()) fail(Errc::EmptyInput, "centroid of an empty point set");
  CxVec c(pts[0].size(), Cx(0));
  for (const CxVec& p : pts)
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += p[j];
  for (Cx& v : c) v /= static_cast<double>(pts.size());
  return c;
}

SparseSystem random_slice(int nvars, int m, const std::vector<int>& coords, std::uint64_t seed) {
  if (nvars <= 0 || m <= 0) fail(Errc::EmptyInput, "slice needs positive dimensions");
  for (int c : coords)
    if (c < 0 || c >= nvars) fail(Errc::DimensionMismatch, "slice coordinate out of range");
  std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dull);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  SparseSystem L;
  for (int i = 0; i < m; ++i) {
    std::vector<Term> ts;
    for (int c : coords) {
      ExpVec e(nvars, 0);
      e[c] = 1;
      ts.push_back({std::move(e), std::polar(1.0, ang(rng))});
    }
    ts.push_back({ExpVec(nvars, 0), std::polar(1.0, ang(rng))});
    L.polys.push_back(SparsePoly::make(nvars, std::move(ts)));
  }
  return L;
}

SparseSystem random_slice(int nvars, int m, std::uint64_t seed) {
  std::vector<int> coords(nvars);
  for (int i = 0; i < nvars; ++i) coords[i] = i;
  return random_slice(nvars, m, coords, seed);
}

WitnessData witness_construct(const SparseSystem& F, int m, const TrackConfig& cfg,
                              std::uint64_t seed) {
  const int n = F.nvars();
  if (m < 1 || m >= n) fail(Errc::DimensionMismatch, "slice codimension out of range");
  if (static_cast<int>(F.polys.size()) != n - m)
    fail(Errc::NonSquare, "expected n - m equations for an m-dimensional variety");

  WitnessData W;
  W.equations = F;
  W.slice = random_slice(n, m, seed);
  const SparseSystem sq = concat(F, W.slice);
  const SolveReport rep = bezout_solve(sq, cfg, seed ^ 0x853c49e6748fea9bull);
  for (const CxVec& s : rep.solutions) {
    const CxVec p = polish(sq, s);
    if (residual(sq, p) > 1e-8) continue;
    bool dup = false;
    for (const CxVec& q : W.points)
      if (max_dist(p, q) < 1e-6) {
        dup = true;
        break;
      }
    if (!dup) W.points.push_back(p);
  }
  return W;
}

WitnessData move_witness(const WitnessData& W, const SparseSystem& slice_new,
                         const TrackConfig& cfg, std::uint64_t seed) {
  if (static_cast<int>(slice_new.polys.size()) != W.dim())
    fail(Errc::DimensionMismatch, "target slice has the wrong codimension");
  check_slice(slice_new, W.nvars());

  const Transport tr = transport(W.equations, W.slice, slice_new, W.points, cfg, seed);
  WitnessData out;
  out.equations = W.equations;
  out.slice = slice_new;
  for (const CxVec& p : tr.finite) {
    bool dup = false;
    for (const CxVec& q : out.points)
      if (max_dist(p, q) < 1e-6) {
        dup = true;
        break;
      }
    if (!dup) out.points.push_back(p);
  }
  if (out.points.size() < W.points.size())
    fail(Errc::CardinalityDrop, "witness transport lost " +
                                    std::to_string(W.points.size() - out.points.size()) +
                                    " of " + std::to_string(W.points.size()) + " points");
  return out;
}

PseudoWitnessData pseudo_witness(const WitnessData& W, const std::vector<int>& keep_coords,
                                 const TrackConfig& cfg, std::uint64_t seed) {
  if (keep_coords.empty()) fail(Errc::EmptyInput, "projection keeps no coordinates");
  if (static_cast<int>(keep_coords.size()) < W.dim())
    fail(Errc::DimensionMismatch, "image cannot have the slice dimension");

  PseudoWitnessData P;
  P.equations = W.equations;
  P.coords = keep_coords;
  P.slice = random_slice(W.nvars(), W.dim(), keep_coords, seed ^ 0xda3e39cb94b95bdbull);

  const Transport tr = transport(W.equations, W.slice, P.slice, W.points, cfg, seed);
  P.diverged = tr.diverged;
  for (const CxVec& p : tr.finite) {
    bool dup = false;
    for (const CxVec& q : P.points)
      if (max_dist(p, q) < 1e-6) {
        dup = true;
        break;
      }
    if (!dup) P.points.push_back(p);
  }
  if (P.points.empty()) fail(Errc::AllPathsDiverged, "no finite points over the pulled-back slice");

  // Cluster the projected points: their count is the degree of the image
  // and the cluster size is the degree of the projection on the source.
  std::vector<CxVec> proj;
  for (const CxVec& p : P.points) {
    CxVec q;
    for (int c : keep_coords) q.push_back(p[c]);
    bool seen = false;
    for (const CxVec& r : proj)
      if (max_dist(q, r) < 1e-6) {
        seen = true;
        break;
      }
    if (!seen) proj.push_back(q);
  }
  P.image_degree = static_cast<int>(proj.size());
  P.fiber_degree = static_cast<int>(P.points.size()) / std::max(1, P.image_degree);
  return P;
}

TraceReport trace_test(const WitnessData& W, const std::vector<int>& subset, const CxVec& pencil,
                       const TrackConfig& cfg, double tol) {
  if (subset.empty()) fail(Errc::EmptyInput, "trace test needs at least one point");
  if (static_cast<int>(pencil.size()) != W.nvars())
    fail(Errc::DimensionMismatch, "pencil direction has the wrong length");
  std::vector<CxVec> pts;
  for (int i : subset) {
    if (i < 0 || i >= static_cast<int>(W.points.size()))
      fail(Errc::DimensionMismatch, "subset index out of range");
    pts.push_back(W.points[i]);
  }

  TraceReport rep;
  rep.centroids[0] = centroid(pts);
  const SparseSystem half = translate_slice(W.slice, pencil, 0.5);
  const SparseSystem full = translate_slice(W.slice, pencil, 1.0);

  const Transport t1 = transport(W.equations, W.slice, half, pts, cfg, 0x6c62272e07bb0142ull);
  if (t1.diverged > 0 || t1.finite.size() != pts.size()) {
    rep.deviation = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.centroids[1] = centroid(t1.finite);

  const Transport t2 = transport(W.equations, half, full, t1.finite, cfg, 0x27d4eb2f165667c5ull);
  if (t2.diverged > 0 || t2.finite.size() != pts.size()) {
    rep.deviation = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.centroids[2] = centroid(t2.finite);

  double dev = 0;
  for (std::size_t j = 0; j < rep.centroids[0].size(); ++j)
    dev = std::max(dev,
                   std::abs((rep.centroids[0][j] + rep.centroids[2][j]) / 2.0 - rep.centroids[1][j]));
  rep.deviation = dev;
  rep.is_complete = dev < tol;
  return rep;
}

TraceReport trace_test(const WitnessData& W, const std::vector<int>& subset, std::uint64_t seed,
                       const TrackConfig& cfg, double tol) {
  std::mt19937_64 rng(seed ^ 0x94d049bb133111ebull);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  CxVec v(W.nvars());
  for (Cx& c : v) c = std::polar(1.0, ang(rng));
  return trace_test(W, subset, v, cfg, tol);
}

std::pair<Cx, Cx> trace_line(const SparsePoly& f) {
  if (f.nvars != 2) fail(Errc::DimensionMismatch, "trace line needs a plane curve");
  const std::int64_t d = total_degree(f);
  if (d < 1) fail(Errc::ZeroPolynomial, "trace line of a constant");
  const Cx lead = coeff_at(f, 0, d);
  if (lead == Cx(0)) fail(Errc::SingularExponentMatrix, "curve is missing the pure y^d term");
  const Cx dd(static_cast<double>(d));
  return {-coeff_at(f, 1, d - 1) / (dd * lead), -coeff_at(f, 0, d - 1) / (dd * lead)};
}

SparsePoly trace_curve(const SparsePoly& f) {
  if (f.nvars != 2) fail(Errc::DimensionMismatch, "trace curve needs a plane curve");
  std::int64_t dx = 0, dy = 0;
  for (const Term& t : f.terms) {
    dx = std::max(dx, t.exponent[0]);
    dy = std::max(dy, t.exponent[1]);
  }
  if (dy < 1) fail(Errc::ZeroPolynomial, "curve does not involve y");
  std::vector<Term> ts;
  for (std::int64_t i = 0; i <= dx; ++i) {
    const Cx a = coeff_at(f, i, dy - 1);
    if (a != Cx(0)) ts.push_back({{i, 0}, a});
    const Cx b = coeff_at(f, i, dy);
    if (b != Cx(0)) ts.push_back({{i, 1}, static_cast<double>(dy) * b});
  }
  return SparsePoly::make(2, std::move(ts));
}

}  // namespace polyhom
