#include "polyhom/polytope.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace polyhom {

namespace detail {

// One merged facet in chart coordinates: <normal, y> <= offset with integer
// data, normal primitive and outward.
struct ChartFacet {
  IntVec normal;
  Int offset;
  std::vector<int> corner_ids;
};

// Geometry kept from hull construction.  Points are mapped into an integer
// "chart": p = p0 + B * (y / L) with y in Z^r, so all hull predicates run on
// integers regardless of how the ambient rationals look.
struct PolytopeGeometry {
  RatVec p0;
  RatMat B;  // ambient_dim rows, r columns
  Int L = 1;
  int r = 0;
  Rat det_abs = 1;  // |det B| when square (volume correction)
  std::vector<IntVec> corners;
  std::vector<std::vector<int>> tris;
  std::vector<ChartFacet> facets;
  std::vector<int> vertex_corners;  // aligned with Polytope::vertices()
};

namespace {

IntVec primitive(IntVec v, Int* extra = nullptr) {
  Int g = 0;
  for (const auto& x : v) g = int_gcd(g, x < 0 ? Int(-x) : x);
  if (extra) g = int_gcd(g, *extra < 0 ? Int(-*extra) : *extra);
  if (g > 1) {
    for (auto& x : v) x /= g;
    if (extra) *extra /= g;
  }
  return v;
}

IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Primitive integer normal of the hyperplane through r affinely independent
// points of Z^r.
IntVec hyperplane_normal(const std::vector<IntVec>& pts) {
  const std::size_t r = pts[0].size();
  RatMat rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVec row(r);
    for (std::size_t j = 0; j < r; ++j) row[j] = Rat(pts[i][j] - pts[0][j]);
    rows.push_back(std::move(row));
  }
  RatMat ns = rat_nullspace(std::move(rows));
  if (ns.size() != 1) throw std::logic_error("hull: degenerate facet simplex");
  Int l = common_denominator(ns[0]);
  IntVec n(r);
  for (std::size_t j = 0; j < r; ++j) n[j] = numer(ns[0][j] * Rat(l));
  return primitive(std::move(n));
}

struct Tri {
  std::vector<int> c;  // sorted corner ids, size r
  IntVec a;            // outward normal
  Int b;               // <a, x> <= b on the hull
};

struct HullResult {
  std::vector<std::vector<int>> tris;
  std::vector<ChartFacet> facets;
  std::vector<int> vertex_ids;  // ascending
  Rat volume = 0;               // in chart units
};

Rat simplex_det_abs(const std::vector<IntVec>& pts, const IntVec& apex) {
  const std::size_t r = apex.size();
  IntMat m(pts.size(), IntVec(r));
  for (std::size_t i = 0; i < pts.size(); ++i) m[i] = sub(pts[i], apex);
  Int d = int_det(std::move(m));
  if (d < 0) d = -d;
  return Rat(d);
}

HullResult hull_fulldim(const std::vector<IntVec>& pts, int r) {
  HullResult out;
  const int npts = static_cast<int>(pts.size());

  if (r == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < npts; ++i) {
      if (pts[i][0] < pts[lo][0]) lo = i;
      if (pts[i][0] > pts[hi][0]) hi = i;
    }
    out.tris = {{lo}, {hi}};
    out.facets.push_back(ChartFacet{IntVec{Int(-1)}, -pts[lo][0], {lo}});
    out.facets.push_back(ChartFacet{IntVec{Int(1)}, pts[hi][0], {hi}});
    out.vertex_ids = {std::min(lo, hi), std::max(lo, hi)};
    out.volume = Rat(pts[hi][0] - pts[lo][0]);
    return out;
  }

  // Initial simplex: r+1 affinely independent points, found greedily.
  std::vector<int> simplex{0};
  RatMat basis;
  for (int i = 1; i < npts && static_cast<int>(simplex.size()) < r + 1; ++i) {
    RatVec row(r);
    for (int j = 0; j < r; ++j) row[j] = Rat(pts[i][j] - pts[0][j]);
    RatMat trial = basis;
    trial.push_back(row);
    if (row_reduce(trial) == trial.size()) {
      basis.push_back(std::move(row));
      simplex.push_back(i);
    }
  }
  if (static_cast<int>(simplex.size()) != r + 1)
    throw std::logic_error("hull: point set does not span the claimed dimension");

  RatVec centroid(r, Rat(0));
  for (int id : simplex)
    for (int j = 0; j < r; ++j) centroid[j] += Rat(pts[id][j]);
  for (auto& c : centroid) c /= (r + 1);

  auto make_tri = [&](std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    std::vector<IntVec> corner_pts;
    for (int id : ids) corner_pts.push_back(pts[id]);
    Tri t;
    t.a = hyperplane_normal(corner_pts);
    t.b = int_dot(t.a, pts[ids[0]]);
    Rat at_centroid = 0;
    for (int j = 0; j < r; ++j) at_centroid += Rat(t.a[j]) * centroid[j];
    if (at_centroid > Rat(t.b)) {
      for (auto& x : t.a) x = -x;
      t.b = -t.b;
    } else if (at_centroid == Rat(t.b)) {
      throw std::logic_error("hull: reference point landed on a facet");
    }
    t.c = std::move(ids);
    return t;
  };

  std::vector<Tri> tris;
  for (int drop = 0; drop <= r; ++drop) {
    std::vector<int> ids;
    for (int k = 0; k <= r; ++k)
      if (k != drop) ids.push_back(simplex[k]);
    tris.push_back(make_tri(std::move(ids)));
  }

  std::vector<bool> in_simplex(npts, false);
  for (int id : simplex) in_simplex[id] = true;

  for (int i = 0; i < npts; ++i) {
    if (in_simplex[i]) continue;
    std::vector<std::size_t> visible;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (int_dot(tris[t].a, pts[i]) > tris[t].b) visible.push_back(t);
    }
    if (visible.empty()) continue;  // inside or on the hull: never a vertex

    // Horizon ridges: sub-simplices of visible facets seen exactly once.
    std::map<std::vector<int>, int> ridge_count;
    for (std::size_t t : visible) {
      const auto& ids = tris[t].c;
      for (int drop = 0; drop < r; ++drop) {
        std::vector<int> ridge;
        for (int k = 0; k < r; ++k)
          if (k != drop) ridge.push_back(ids[k]);
        ++ridge_count[ridge];
      }
    }
    std::vector<Tri> next;
    std::vector<bool> is_visible(tris.size(), false);
    for (std::size_t t : visible) is_visible[t] = true;
    for (std::size_t t = 0; t < tris.size(); ++t)
      if (!is_visible[t]) next.push_back(std::move(tris[t]));
    for (auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;
      std::vector<int> ids = ridge;
      ids.push_back(i);
      next.push_back(make_tri(std::move(ids)));
    }
    tris = std::move(next);
  }

  // Merge coplanar boundary simplices into facets keyed by their hyperplane.
  std::map<std::pair<std::vector<Int>, Int>, std::vector<int>> groups;
  for (const auto& t : tris) {
    IntVec a = t.a;
    Int b = t.b;
    a = primitive(std::move(a), &b);
    auto& ids = groups[{a, b}];
    ids.insert(ids.end(), t.c.begin(), t.c.end());
    out.tris.push_back(t.c);
  }
  for (auto& [key, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    out.facets.push_back(ChartFacet{key.first, key.second, std::move(ids)});
  }

  // A corner is a vertex exactly when its incident facet normals span R^r.
  std::vector<int> used;
  for (const auto& t : tris) used.insert(used.end(), t.c.begin(), t.c.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  for (int id : used) {
    IntMat normals;
    for (const auto& f : out.facets) {
      if (int_dot(f.normal, pts[id]) == f.offset) normals.push_back(f.normal);
    }
    if (static_cast<int>(int_rank(normals)) == r) out.vertex_ids.push_back(id);
  }

  // Volume by the fan over the first vertex.
  const IntVec& apex = pts[out.vertex_ids.front()];
  Rat vol = 0;
  for (const auto& t : tris) {
    std::vector<IntVec> corner_pts;
    bool has_apex = false;
    for (int id : t.c) {
      if (pts[id] == apex) has_apex = true;
      corner_pts.push_back(pts[id]);
    }
    if (has_apex) continue;
    vol += simplex_det_abs(corner_pts, apex);
  }
  Rat fact = 1;
  for (int k = 2; k <= r; ++k) fact *= k;
  out.volume = vol / fact;
  return out;
}

Rat rat_pow_int(const Rat& x, int e) {
  Rat r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace
}  // namespace detail

Polytope convex_hull(const std::vector<RatVec>& points) {
  if (points.empty()) fail(Errc::EmptyInput, "convex hull of an empty point set");
  const int n = static_cast<int>(points[0].size());
  if (n == 0) fail(Errc::EmptyInput, "ambient dimension must be positive");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != n)
      fail(Errc::DimensionMismatch, "hull input points of unequal dimension");

  std::vector<RatVec> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Polytope P;
  P.ambient_ = n;
  if (pts.size() == 1) {
    P.dim_ = 0;
    P.verts_ = std::move(pts);
    return P;
  }

  // Affine basis of the point set: independent difference vectors.
  const RatVec& p0 = pts[0];
  RatMat basis_rows;  // each row = one basis difference (length n)
  for (std::size_t i = 1; i < pts.size() && basis_rows.size() < static_cast<std::size_t>(n);
       ++i) {
    RatVec row(n);
    for (int j = 0; j < n; ++j) row[j] = pts[i][j] - p0[j];
    RatMat trial = basis_rows;
    trial.push_back(row);
    if (row_reduce(trial) == trial.size()) basis_rows.push_back(std::move(row));
  }
  const int r = static_cast<int>(basis_rows.size());

  auto geom = std::make_shared<detail::PolytopeGeometry>();
  geom->p0 = p0;
  geom->r = r;
  geom->B.assign(n, RatVec(r));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) geom->B[i][j] = basis_rows[j][i];

  // Chart coordinates: y solves B y = p - p0, via r independent rows of B.
  RatMat Bt(r, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) Bt[j][i] = geom->B[i][j];
  std::vector<std::size_t> pivot_rows;
  {
    RatMat tmp = Bt;
    row_reduce(tmp, &pivot_rows);
  }
  RatMat BR(r, RatVec(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) BR[i][j] = geom->B[pivot_rows[i]][j];
  auto BRinv = rat_inverse(BR);
  if (!BRinv) throw std::logic_error("hull: chart basis not invertible");

  std::vector<RatVec> chart(pts.size(), RatVec(r));
  for (std::size_t k = 0; k < pts.size(); ++k) {
    RatVec rhs(r);
    for (int i = 0; i < r; ++i) rhs[i] = pts[k][pivot_rows[i]] - p0[pivot_rows[i]];
    for (int i = 0; i < r; ++i) chart[k][i] = rat_dot((*BRinv)[i], rhs);
  }
  Int L = 1;
  for (const auto& y : chart) L = int_lcm(L, common_denominator(y));
  geom->L = L;
  geom->corners.assign(pts.size(), IntVec(r));
  for (std::size_t k = 0; k < pts.size(); ++k)
    for (int i = 0; i < r; ++i) geom->corners[k][i] = numer(chart[k][i] * Rat(L));

  if (r == n) {
    Rat d = rat_det(geom->B);
    geom->det_abs = d < 0 ? -d : d;
  }

  auto hull = detail::hull_fulldim(geom->corners, r);
  geom->tris = std::move(hull.tris);
  geom->facets = std::move(hull.facets);
  geom->vertex_corners = hull.vertex_ids;

  P.dim_ = r;
  for (int id : hull.vertex_ids) P.verts_.push_back(pts[id]);
  if (r == n) P.volume_ = hull.volume * geom->det_abs / detail::rat_pow_int(Rat(L), n);
  P.geom_ = std::move(geom);
  return P;
}

const HRep& Polytope::hrep() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (cache_->hrep) return *cache_->hrep;

  HRep h;
  const int n = ambient_;
  if (dim_ == 0) {
    h.eq_normals = rat_identity(n);
    h.eq_offsets = verts_[0];
    cache_->hrep = std::move(h);
    return *cache_->hrep;
  }
  const auto& g = *geom_;
  // Affine-hull equations: directions orthogonal to every chart basis vector.
  RatMat Bt(g.r, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < g.r; ++j) Bt[j][i] = g.B[i][j];
  h.eq_normals = rat_nullspace(Bt);
  for (const auto& e : h.eq_normals) h.eq_offsets.push_back(rat_dot(e, g.p0));

  std::map<int, int> corner_to_vertex;
  for (std::size_t v = 0; v < g.vertex_corners.size(); ++v)
    corner_to_vertex[g.vertex_corners[v]] = static_cast<int>(v);

  for (const auto& cf : g.facets) {
    RatVec a_chart(g.r);
    for (int j = 0; j < g.r; ++j) a_chart[j] = Rat(cf.normal[j]);
    auto normal = rat_solve(Bt, a_chart);  // B^T n = a, always consistent
    if (!normal) throw std::logic_error("hrep: failed to lift facet normal");
    Rat offset = rat_dot(*normal, g.p0) + Rat(cf.offset) / Rat(g.L);
    // Scale (normal, offset) to a primitive integer vector for determinism.
    RatVec aug = *normal;
    aug.push_back(offset);
    Int scale = common_denominator(aug);
    IntVec ints(n + 1);
    Int gg = 0;
    for (int i = 0; i <= n; ++i) {
      ints[i] = numer(aug[i] * Rat(scale));
      gg = int_gcd(gg, ints[i] < 0 ? Int(-ints[i]) : ints[i]);
    }
    if (gg == 0) gg = 1;
    FacetIneq f;
    f.normal.resize(n);
    for (int i = 0; i < n; ++i) f.normal[i] = Rat(ints[i] / gg);
    f.offset = Rat(ints[n] / gg);
    for (int id : cf.corner_ids) {
      auto it = corner_to_vertex.find(id);
      if (it != corner_to_vertex.end()) f.vertex_ids.push_back(it->second);
    }
    h.facets.push_back(std::move(f));
  }
  cache_->hrep = std::move(h);
  return *cache_->hrep;
}

std::pair<Rat, Face> support_data(const Polytope& P, const RatVec& omega) {
  if (static_cast<int>(omega.size()) != P.ambient_dim())
    fail(Errc::DimensionMismatch, "support direction has wrong length");
  Face face;
  face.omega = omega;
  Rat best = 0;
  bool first = true;
  for (const auto& v : P.vertices()) {
    Rat val = rat_dot(v, omega);
    if (first || val > best) {
      best = val;
      first = false;
    }
  }
  for (const auto& v : P.vertices())
    if (rat_dot(v, omega) == best) face.vertices.push_back(v);
  face.value = best;
  return {best, face};
}

Polytope minkowski_sum(const Polytope& P, const Polytope& Q) {
  if (P.ambient_dim() != Q.ambient_dim())
    fail(Errc::DimensionMismatch, "Minkowski sum of polytopes in different spaces");
  std::vector<RatVec> sums;
  sums.reserve(P.vertices().size() * Q.vertices().size());
  for (const auto& p : P.vertices())
    for (const auto& q : Q.vertices()) {
      RatVec s(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + q[i];
      sums.push_back(std::move(s));
    }
  return convex_hull(sums);
}

bool contains(const Polytope& P, const RatVec& p) {
  if (static_cast<int>(p.size()) != P.ambient_dim())
    fail(Errc::DimensionMismatch, "membership query point has wrong length");
  const HRep& h = P.hrep();
  for (std::size_t i = 0; i < h.eq_normals.size(); ++i)
    if (rat_dot(h.eq_normals[i], p) != h.eq_offsets[i]) return false;
  for (const auto& f : h.facets)
    if (rat_dot(f.normal, p) > f.offset) return false;
  return true;
}

std::vector<IntVec> lattice_points(const Polytope& P) {
  const int n = P.ambient_dim();
  std::vector<Int> lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Rat mn = P.vertices()[0][i], mx = mn;
    for (const auto& v : P.vertices()) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = ceil_rat(mn);
    hi[i] = floor_rat(mx);
    if (lo[i] > hi[i]) return {};
  }
  std::vector<IntVec> out;
  IntVec cur = lo;
  for (;;) {
    RatVec p(n);
    for (int i = 0; i < n; ++i) p[i] = Rat(cur[i]);
    if (contains(P, p)) out.push_back(cur);
    int k = 0;
    while (k < n && ++cur[k] > hi[k]) {
      cur[k] = lo[k];
      ++k;
    }
    if (k == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<RatMat, RatVec> invariant_constraint(const IntMat& A, const Int& d, const Int& D) {
  if (A.empty()) fail(Errc::EmptyInput, "constraint matrix is empty");
  const std::size_t n = A.size(), m = A[0].size();
  for (std::size_t j = 0; j < m; ++j) {
    Int colsum = 0;
    for (std::size_t i = 0; i < n; ++i) colsum += A[i][j];
    if (colsum != d)
      fail(Errc::NonUniformDegree, "support column does not have the uniform degree");
  }
  RatMat M(n + 1, RatVec(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) M[i][j] = Rat(A[i][j]);
  for (std::size_t j = 0; j < m; ++j) M[n][j] = 1;
  RatVec rhs(n + 1);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = Rat(d * D) / Rat(Int(n));
  rhs[n] = Rat(D);
  return {std::move(M), std::move(rhs)};
}

RatVec to_ratvec(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

RatVec to_ratvec(const ExpVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

Polytope convex_hull_int(const std::vector<IntVec>& points) {
  std::vector<RatVec> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back(to_ratvec(p));
  return convex_hull(pts);
}

Polytope newton_polytope(const SparsePoly& f, bool homogenize) {
  if (f.is_zero()) fail(Errc::ZeroPolynomial, "Newton polytope of the zero polynomial");
  std::vector<RatVec> pts;
  std::int64_t deg = total_degree(f);
  for (const auto& t : f.terms) {
    RatVec p = to_ratvec(t.exponent);
    if (homogenize) {
      std::int64_t s = 0;
      for (auto e : t.exponent) s += e;
      p.emplace_back(deg - s);
    }
    pts.push_back(std::move(p));
  }
  return convex_hull(pts);
}

}  // namespace polyhom
