#pragma once

// Mixed volumes of tuples of polytopes, normalized so that the mixed volume
// of n copies of P equals n! vol(P).  Three independent routes are provided
// on purpose: inclusion-exclusion over Minkowski sums, lattice point counts,
// and mixed cells of a random fine subdivision.

#include <cstdint>
#include <vector>

#include "polyhom/poly.hpp"
#include "polyhom/polytope.hpp"

namespace polyhom {

// Inclusion-exclusion over volumes of partial Minkowski sums.  Works for
// arbitrary rational polytopes; requires exactly n polytopes in R^n.
Rat mixed_volume_alternating(const std::vector<Polytope>& P);

// Inclusion-exclusion over lattice point counts.  Requires integral
// polytopes (vertices in Z^n).
Int mixed_volume_lattice(const std::vector<Polytope>& P);

// Sum of the volumes of the mixed cells of a random fine subdivision of the
// vertex sets.  Returns 0 for span-deficient input.
Int mixed_volume_cells(const std::vector<std::vector<ExpVec>>& supports,
                       std::uint64_t seed = 0);

// Convenience entry points on supports.
Polytope hull_of_support(const std::vector<ExpVec>& support);
Rat mixed_volume_alternating(const std::vector<std::vector<ExpVec>>& supports);
Int mixed_volume_lattice(const std::vector<std::vector<ExpVec>>& supports);

// dim(P_1 + ... + P_k) - k.
int dimension_defect(const std::vector<Polytope>& P);

// True when every nonempty sub-tuple has nonnegative defect; for n polytopes
// in R^n this is equivalent to a positive mixed volume.
bool is_essential(const std::vector<Polytope>& P);

}  // namespace polyhom
