#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "polyhom/poly.hpp"
#include "polyhom/tracker.hpp"

namespace polyhom {

// A positive-dimensional variety represented by its finite intersection
// with a generic affine-linear slice of complementary dimension.
struct WitnessData {
  SparseSystem equations;  // n - m polynomials in n variables
  SparseSystem slice;      // m affine-linear polynomials
  std::vector<CxVec> points;

  int nvars() const { return equations.nvars(); }
  int dim() const { return static_cast<int>(slice.polys.size()); }
};

// A witness set for a coordinate projection of a variety: the slice is
// pulled back from the image coordinates while the points live upstream.
struct PseudoWitnessData {
  SparseSystem equations;
  std::vector<int> coords;  // coordinates kept by the projection
  SparseSystem slice;       // affine-linear polys in the kept coordinates only
  std::vector<CxVec> points;
  int diverged = 0;      // paths lost while deforming the slice
  int fiber_degree = 0;  // upstream points per image point
  int image_degree = 0;  // distinct projected points = degree of the image
};

struct TraceReport {
  bool is_complete = false;
  std::array<CxVec, 3> centroids;  // at pencil values t = 0, 1/2, 1
  double deviation = 0;            // max-norm of (c0 + c2)/2 - c1
};

// Coordinate-wise mean of a nonempty point set.
CxVec centroid(const std::vector<CxVec>& pts);

// m affine-linear polynomials with random unit-modulus coefficients on the
// listed coordinates (all of them by default) and a constant term.
SparseSystem random_slice(int nvars, int m, std::uint64_t seed);
SparseSystem random_slice(int nvars, int m, const std::vector<int>& coords, std::uint64_t seed);

// Intersect the pure m-dimensional V(F) with m random affine-linear slices
// and solve the squared-up system with a total-degree homotopy.
WitnessData witness_construct(const SparseSystem& F, int m, const TrackConfig& cfg = {},
                              std::uint64_t seed = 0);

// Transport the witness points onto a new slice of the same codimension.
// Throws CardinalityDrop when endpoints are lost or collide (the target
// slice was not generic enough).
WitnessData move_witness(const WitnessData& W, const SparseSystem& slice_new,
                         const TrackConfig& cfg = {}, std::uint64_t seed = 0);

// Deform the slice to one pulled back from the kept coordinates.  Paths may
// legitimately diverge when the projection drops degree; the finite
// endpoints make up the pseudo-witness point set.
PseudoWitnessData pseudo_witness(const WitnessData& W, const std::vector<int>& keep_coords,
                                 const TrackConfig& cfg = {}, std::uint64_t seed = 0);

// Transport a subset of the witness points across three members t = 0, 1/2,
// 1 of the pencil of slices translated by t * pencil.  The subset is a
// complete witness set for a union of components exactly when the three
// centroids are collinear (midpoint deviation below tol); the check is a
// reliable heuristic, not a certificate.
TraceReport trace_test(const WitnessData& W, const std::vector<int>& subset, const CxVec& pencil,
                       const TrackConfig& cfg = {}, double tol = 1e-6);
TraceReport trace_test(const WitnessData& W, const std::vector<int>& subset,
                       std::uint64_t seed = 0, const TrackConfig& cfg = {}, double tol = 1e-6);

// Closed forms for plane curves cut by vertical lines x = t.  For a curve
// of degree d with full Newton polytope the centroids fill the line
// y = slope x + intercept with slope = -c_(1,d-1) / (d c_(0,d)); in general
// they fill the trace curve sum_i c_(i,e-1) x^i + e y sum_i c_(i,e) x^i
// where e = deg_y f.
std::pair<Cx, Cx> trace_line(const SparsePoly& f);
SparsePoly trace_curve(const SparsePoly& f);

}  // namespace polyhom
