#pragma once

// The polyhedral homotopy: binomial start systems from fine mixed cells,
// lifted through the t-power deformation to solve sparse systems at their
// mixed-volume root count.

#include <cstdint>
#include <string>
#include <vector>

#include "polyhom/poly.hpp"
#include "polyhom/rational.hpp"
#include "polyhom/subdivision.hpp"
#include "polyhom/tracker.hpp"

namespace polyhom {

// Start data harvested from one fine mixed cell: the cell, the rescaling
// direction nu (the cell's lower-hull direction is omega = (-nu, -1)), the
// binomial restriction of F to the cell edges, and its torus solutions.
struct CellStart {
  SubdivisionCell cell;
  RatVec nu;
  SparseSystem binomial;
  std::vector<CxVec> roots;
};

// One CellStart per mixed cell of S whose restriction of F is a genuine
// binomial system; restrictions degenerating to monomials have no torus
// solutions and are skipped.  The root counts add up to the mixed volume.
std::vector<CellStart> build_cell_starts(const SparseSystem& F, const Subdivision& S);

struct PolyhedralConfig {
  TrackConfig track;
  std::uint64_t seed = 0;
  double epsilon = 0.1;  // handoff parameter between the z- and x-phases
  int lift_range = 8;    // integer lifts are drawn uniformly from [0, lift_range)
  int lift_retries = 10;
  double cluster_tol = 1e-6;  // max-norm radius for duplicate detection
};

struct PolyhedralPath {
  int cell = 0;
  int root = 0;
  PathStatus status = PathStatus::Converged;
  CxVec x;
  double residual = 0;
  bool certified = false;  // passed the alpha test on F after one refinement
  bool duplicate = false;  // within cluster_tol of an earlier endpoint
  bool aborted = false;    // the tracker gave up (singular target etc.)
  std::string error;       // failure name when aborted
};

struct PolyhedralReport {
  Int mixed_volume = 0;  // = number of tracked paths
  std::vector<CellStart> starts;
  std::vector<PolyhedralPath> paths;
  std::vector<CxVec> solutions;  // distinct finite endpoints, cell-then-root order
};

// Full diagnostics; never throws on shortfalls (the caller sees the counts).
PolyhedralReport polyhedral_solve_report(const SparseSystem& F,
                                         const PolyhedralConfig& cfg = {});

// Torus solutions of a system general for its support.  Throws
// CountShortfall when fewer than mixed-volume-many distinct endpoints
// survive, with the duplicate/divergence tally in the message.
std::vector<CxVec> polyhedral_solve(const SparseSystem& F, const PolyhedralConfig& cfg = {});

// A system with the given supports and unit-modulus random coefficients.
SparseSystem random_system_with_support(const std::vector<std::vector<ExpVec>>& supports,
                                        int nvars, std::uint64_t seed);

struct SparseSolveReport {
  PolyhedralReport generic;           // the random general system and its solve
  std::vector<PathResult> retrack;    // one per generic solution
  std::vector<CxVec> solutions;       // distinct torus endpoints on F
  int diverged = 0;
  int duplicates = 0;
  int off_torus = 0;  // finite endpoints with a vanishing coordinate
};

// Solve an arbitrary sparse system: solve a random general system with the
// same supports polyhedrally, then move its solutions to F along a gamma
// segment.  Nothing is silently dropped; every endpoint is accounted for.
SparseSolveReport sparse_solve(const SparseSystem& F, const PolyhedralConfig& cfg = {});

}  // namespace polyhom
