#pragma once

// Numerical interrogation of the Newton polytope of a hypersurface that is
// known only through sample points: the hypersurface is intersected with a
// parametrized line whose coordinates are pushed toward a toric limit by a
// direction vector, and the limits of the intersection parameters reveal
// which face of the polytope the direction exposes.  On top of the raw query
// sit an a-priori convergence-rate bound, reconstruction of an integral
// polytope from vertex answers, and a tropical membership test driven by
// coordinate projections.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "polyhom/poly.hpp"
#include "polyhom/polytope.hpp"
#include "polyhom/tracker.hpp"
#include "polyhom/witness.hpp"

namespace polyhom {

// Knobs for the query loop.  The line parameter t starts at 1, first doubles,
// then grows by step_factor per probe.  A path settles once its intersection
// parameter moves less than 10^-certainty between consecutive probes twice in
// a row; it escapes once it is larger than escape_size and jumps by more than
// 10^certainty twice in a row.  Settled paths within epsilon of a target are
// attributed to it, all others count as "elsewhere".
struct OracleConfig {
  int certainty = 6;
  double epsilon = 0.05;      // attribution radius around each target
  int min_steps = 5;          // probes before settle/escape tests begin
  int max_steps = 400;        // probe budget per query
  double step_factor = 1.25;  // multiplicative growth of t per probe
  double escape_size = 1e4;   // |s| considered large
  bool record_paths = false;  // keep (t, s) samples per path
  TrackConfig track;
};

struct OracleAnswer {
  enum class Kind { Vertex, Face, EntirePolytope };
  Kind kind = Kind::Face;
  // Settled-path counts per target with the diverging count in the last
  // slot.  When kind == Vertex (every path accounted for) this vector is the
  // exposed vertex of the homogenized Newton polytope.  Empty for
  // EntirePolytope answers.
  std::vector<std::int64_t> beta;
  int elsewhere = 0;  // settled away from every target
  // Probe samples (t, s) per path, filled when record_paths is set.
  std::vector<std::vector<std::pair<double, Cx>>> traces;
};

// A degree-d hypersurface H in C^n held as d tracked intersection points
// with the moving line L_t(s) = (t^{w_1}(a_1 s - b_1), ..., t^{w_n}(a_n s -
// b_n)).  The targets rho_i = b_i / a_i are the n-th roots of unity rotated
// by a random phase so they stay pairwise well separated.  Construction
// fixes the line at t = 1 and solves H on it; query() pushes t toward
// infinity in the chosen direction.  Instances are immutable after
// construction and may be queried repeatedly.
class HypersurfaceOracle {
 public:
  // Explicit hypersurface V(f), f in n >= 1 variables.
  HypersurfaceOracle(const SparsePoly& f, std::uint64_t seed, const OracleConfig& cfg = {});
  // Hypersurface presented as a witness set (one equation, n - 1 slices).
  HypersurfaceOracle(const WitnessData& W, std::uint64_t seed, const OracleConfig& cfg = {});
  // Closure of a coordinate projection of a complete intersection, presented
  // as a pseudo-witness set; the queries track one upstream point per image
  // point, rescaling every coordinate by its current magnitude before each
  // probe so the tracked unknowns stay O(1) while the true coordinates
  // follow their toric growth orders.
  HypersurfaceOracle(const PseudoWitnessData& P, std::uint64_t seed, const OracleConfig& cfg = {});

  OracleAnswer query(const std::vector<double>& omega) const;

  int dimension() const { return n_; }  // ambient dimension of H
  int degree() const { return degree_; }
  const CxVec& anchor_a() const { return a_; }
  const CxVec& anchor_b() const { return b_; }
  CxVec targets() const;  // rho_i = b_i / a_i

 private:
  void init_line(int n, std::uint64_t seed);
  void setup_explicit(const SparsePoly& f);
  void setup_projection(const SparseSystem& eqs, const SparseSystem& slice,
                        const std::vector<int>& coords, const std::vector<CxVec>& points,
                        int image_degree, std::uint64_t seed);
  Homotopy line_homotopy(const std::vector<double>& omega) const;
  Homotopy upstream_homotopy(const std::vector<double>& omega, const std::vector<double>& lam,
                             double s_scale, double t_start) const;

  OracleConfig cfg_;
  int n_ = 0;       // hypersurface ambient dimension
  int degree_ = 0;  // number of tracked intersection parameters
  CxVec a_, b_;

  // Explicit mode: f(L_t(s)) = sum_alpha c_alpha t^{<w,alpha>-h} U_alpha(s)
  // with U_alpha = prod_i (a_i s - b_i)^{alpha_i} kept in factored form so
  // evaluation error scales with the local value near clustered roots.
  bool explicit_mode_ = false;
  std::vector<ExpVec> support_;
  CxVec coeffs_;

  // Projection mode: the upstream equations plus the kept coordinates
  // carrying the line conditions; lam holds per-coordinate scales and every
  // row is normalized by its largest coefficient before tracking.
  int upstream_ = 0;  // N, the number of upstream variables
  std::vector<SparsePoly> eqs_;
  std::vector<int> coords_;

  CxVec start_s_;                 // intersection parameters at t = 1
  std::vector<CxVec> start_up_;   // projection mode: upstream points at t = 1
};

OracleAnswer oracle_query(const HypersurfaceOracle& oracle, const std::vector<double>& omega);

// A-priori decay rate for the intersection parameters: once a path s(t) with
// limit z enters the ball |s - z| <= gamma_ball, it obeys
//   |s(t) - z|^multiplicity <= constant * t^-rate.
struct ConvergenceBound {
  bool exposes_everything = false;  // the direction exposes all of supp(f)
  double rate = 0;                  // exponent gap to the non-exposed terms
  double multiplicity = 0;          // paths sharing the limit z
  double constant = 0;
  double gamma_ball = 0;
  CxVec other_limits;  // settle points away from the targets

  double at(double t) const;  // constant * t^-rate
};

ConvergenceBound convergence_bound(const SparsePoly& f, const std::vector<double>& omega,
                                   const CxVec& a, const CxVec& b, Cx z);

// Vertex oracle: the exposed vertex when the face of the polytope in a
// direction is a single point, nullopt when it is positive-dimensional.
using VertexOracle = std::function<std::optional<ExpVec>(const std::vector<double>&)>;

// Exact oracle over the convex hull of a known point set.
VertexOracle vertex_oracle_from_points(std::vector<ExpVec> points);

// Numerical oracle for the homogenized Newton polytope (dimension n + 1) of
// the hypersurface behind a query object; vertex answers are the beta
// vectors of queries whose paths all settle on targets or escape.
VertexOracle vertex_oracle(HypersurfaceOracle oracle);

struct ReconstructOptions {
  std::uint64_t seed = 0;
  int orthant_attempts = 8;  // vertex retries per orthant probe
  // Optional affine confinement A x = rhs known a priori; query directions
  // are projected onto the kernel of A and candidate points filtered.
  const std::pair<RatMat, RatVec>* constraints = nullptr;
};

// Recover an integral polytope inside [0, box]^dim from a vertex oracle by
// maintaining an inner hull of confirmed vertices and an outer hull of
// not-yet-excluded lattice points.  Each outer vertex is exposed and either
// confirmed, cut off by the answering halfspace, or (on a face answer)
// deleted, until the hulls agree.
Polytope reconstruct_polytope(const VertexOracle& oracle, int dim, std::int64_t box,
                              const ReconstructOptions& opt = {});

// --- tropical membership -----------------------------------------------------

struct ProjectionReport {
  std::vector<int> coords;  // kept coordinates
  int image_degree = 0;     // 0 when the projection was skipped
  OracleAnswer answer;
};

struct TropicalReport {
  bool member = true;  // false is definitive, true heuristic
  std::vector<ProjectionReport> projections;
};

struct TropicalOptions {
  // Monomial change of coordinates, rows = exponent vectors of the variable
  // images; must be unimodular.  Queries substitute it into the equations
  // and pull directions back through its inverse.
  std::optional<std::vector<ExpVec>> change;
  bool random_change = false;  // draw a unimodular change when none is given
  std::uint64_t seed = 0;
  OracleConfig oracle;
};

// Is the direction in the tropical variety of V(f)?  One query: membership
// holds exactly when the exposed face is not a single support point.
TropicalReport tropical_membership(const SparsePoly& f, const std::vector<double>& omega,
                                   const TropicalOptions& opt = {});

// Membership test for a complete intersection V(E) of dimension m in C^n:
// every projection onto m + 1 coordinates whose image is a hypersurface is
// queried in the projected direction and the verdicts are intersected.
// Witness data is built once at construction; queries are then cheap.
class TropicalMembershipTester {
 public:
  TropicalMembershipTester(const SparseSystem& E, int m, const TropicalOptions& opt = {});
  TropicalReport query(const std::vector<double>& omega) const;

  const std::vector<ExpVec>& change() const { return change_; }

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<ExpVec> change_;  // identity when no change was requested
  RatMat change_inverse_;
  struct Projection {
    std::vector<int> coords;
    int image_degree = 0;
    std::optional<HypersurfaceOracle> oracle;
  };
  std::vector<Projection> projections_;
};

TropicalReport tropical_membership(const SparseSystem& E, int m, const std::vector<double>& omega,
                                   const TropicalOptions& opt = {});

// --- symmetric-invariant support ----------------------------------------------

// Exponent vectors of all degree-d monomials in n variables, ordered by
// descending lexicographic comparison (x-power first).  This is the
// coordinate order used for invariant constraints.
std::vector<ExpVec> graded_monomials(int nvars, std::int64_t degree);

// Permutation induced on the graded_monomials coordinates by permuting the
// variables with sigma (image convention: variable i goes to sigma[i]).
std::vector<int> monomial_permutation(int nvars, std::int64_t degree,
                                      const std::vector<int>& sigma);

}  // namespace polyhom
