#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "polyhom/error.hpp"
#include "polyhom/exactlin.hpp"
#include "polyhom/poly.hpp"
#include "polyhom/rational.hpp"

namespace polyhom {

// One facet inequality <normal, x> <= offset, tight exactly on the listed
// vertices (indices into Polytope::vertices()).
struct FacetIneq {
  RatVec normal;
  Rat offset;
  std::vector<int> vertex_ids;
};

// Halfspace description: the polytope is the set of points satisfying every
// equation (its affine hull) and every facet inequality.
struct HRep {
  std::vector<FacetIneq> facets;
  RatMat eq_normals;  // <eq_normals[i], x> == eq_offsets[i]
  RatVec eq_offsets;
};

namespace detail {
struct PolytopeGeometry;  // chart coordinates + boundary triangulation
}

// Exact rational polytope, stored by its extreme points.  Lower-dimensional
// polytopes live in the full ambient space.  The halfspace representation is
// derived on first request and memoized behind a lock; everything else is
// immutable after construction, so instances may be shared across threads.
class Polytope {
 public:
  Polytope() = default;

  int ambient_dim() const { return ambient_; }
  int dim() const { return dim_; }
  const std::vector<RatVec>& vertices() const { return verts_; }

  // Euclidean volume; zero whenever dim() < ambient_dim().
  const Rat& volume() const { return volume_; }

  const HRep& hrep() const;

  friend Polytope convex_hull(const std::vector<RatVec>& points);

 private:
  int ambient_ = 0;
  int dim_ = -1;
  std::vector<RatVec> verts_;
  Rat volume_ = 0;
  std::shared_ptr<detail::PolytopeGeometry> geom_;
  struct CacheBox {
    std::mutex mu;
    std::optional<HRep> hrep;
  };
  std::shared_ptr<CacheBox> cache_ = std::make_shared<CacheBox>();
};

// The face of P exposed by a direction, together with the support value.
struct Face {
  RatVec omega;
  Rat value;
  std::vector<RatVec> vertices;
};

Polytope convex_hull(const std::vector<RatVec>& points);

// (h_P(omega), argmax face): support function value max <x, omega> over P.
std::pair<Rat, Face> support_data(const Polytope& P, const RatVec& omega);

Polytope minkowski_sum(const Polytope& P, const Polytope& Q);

// Exact membership test (affine-hull equations plus facet inequalities).
bool contains(const Polytope& P, const RatVec& p);

// All integer points of P, boundary included, sorted lexicographically.
std::vector<IntVec> lattice_points(const Polytope& P);

// Stacked linear system ((A; 1), (dD/n, ..., dD/n, D)) confining oracle
// answers for symmetric invariants: A must have uniform column sum d.
std::pair<RatMat, RatVec> invariant_constraint(const IntMat& A, const Int& d, const Int& D);

// Convex hull of the support; optionally homogenized into n+1 coordinates
// with constant coordinate sum equal to the polytope degree.
Polytope newton_polytope(const SparsePoly& f, bool homogenize = false);

// Convenience: hull of integer points.
Polytope convex_hull_int(const std::vector<IntVec>& points);
RatVec to_ratvec(const IntVec& v);
RatVec to_ratvec(const ExpVec& v);

}  // namespace polyhom
