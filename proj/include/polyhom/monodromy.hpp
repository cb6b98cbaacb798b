#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polyhom/poly.hpp"
#include "polyhom/rational.hpp"
#include "polyhom/tracker.hpp"

namespace polyhom {

// One monodromy loop in parameter space: out along the segment from s1
// toward s2 bent by the accessory constant c1, back along the segment from
// s2 toward s1 bent by c2.  Since scaling a system's coefficients fixes its
// zero set, the bent endpoints c1*s2 and c2*s1 carry the fibers of s2 and
// s1, closing the loop.
struct LoopSpec {
  CxVec s2;
  Cx c1{0, 1};
  Cx c2{0, 1};
};

struct LoopResult {
  // to[i] = index in the input fiber reached by point i, or -1 when the
  // endpoint is a solution not previously known.
  std::vector<int> to;
  std::vector<CxVec> new_points;
};

// Track every fiber point of the system at s1 around the loop and read off
// the induced permutation by matching endpoints at 1e-6.  Throws
// PathFailure when a leg diverges and MatchAmbiguity when two fiber points
// collide at the matching radius.
LoopResult monodromy_loop(const ParamSystem& PS, const CxVec& s1, const std::vector<CxVec>& fiber,
                          const LoopSpec& spec, const TrackConfig& cfg = {});

struct MonodromyOptions {
  std::optional<long long> target_count;  // stop when this many points are known
  bool trace_stop = false;                // stop when the witness trace test passes
  int slice_polys = 0;                    // trailing moving-slice polynomials (trace mode)
  bool conjugation = false;               // close each discovery under conjugation
  std::vector<int> moving_params;         // parameter indices loops may vary (empty = all)
  int budget_per_degree = 20;             // tracked legs allowed per expected degree
  TrackConfig track;
};

struct MonodromyResult {
  std::vector<CxVec> fiber;
  bool complete = false;  // a stopping criterion was met before the budget ran out
  int loops = 0;          // loops attempted
  std::vector<std::vector<int>> permutations;  // successful loops, -1 for new points
};

// Grow a fiber of the family at s1 from seed points by repeated random
// monodromy loops.  With conjugation enabled (real family, real s1) every
// nonreal discovery also contributes its complex conjugate.  Exhausting the
// loop budget reports an incomplete fiber rather than throwing.
MonodromyResult monodromy_solve(const ParamSystem& PS, const CxVec& s1,
                                const std::vector<CxVec>& seeds, const MonodromyOptions& opts = {},
                                std::uint64_t seed = 0);

enum class ConjugationModel { Symmetric, Involutions, FixedPointFree };

// Exact probability that a uniform pair from S_d x R_d generates a
// transitive subgroup of S_d, where R_d is the whole group, the set of
// involutions, or the fixed-point-free involutions (d even).  Computed by
// the recursion t_d = 1 - sum_{i<d} (i/d) t_i |R_i| |R_{d-i}| / |R_d|.
Rat transitivity_probability(int d, ConjugationModel model);

}  // namespace polyhom
