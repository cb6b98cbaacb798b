#pragma once

// Regular subdivisions of a Minkowski sum of point configurations, induced
// by lifting each configuration and projecting the lower hull back down.

#include <cstdint>
#include <vector>

#include "polyhom/poly.hpp"
#include "polyhom/polytope.hpp"

namespace polyhom {

// One cell of the subdivision.  `omega` is the lower-hull direction in
// Q^{n+1}, normalized so its last coordinate is -1; the cell of each support
// is the subset maximizing <omega, (a, lift(a))>.
struct SubdivisionCell {
  RatVec omega;
  std::vector<std::vector<int>> parts;  // per support: indices into it
  std::vector<int> type;                // dim conv(parts[i])
  Rat volume;                           // Euclidean volume of the projected cell
};

struct Subdivision {
  int n = 0;  // dimension of the support points
  std::vector<std::vector<ExpVec>> supports;
  std::vector<RatVec> lifts;
  std::vector<SubdivisionCell> cells;
  bool fine = false;  // every cell satisfies sum(|parts[i]| - 1) == n
};

// Subdivision induced by the given lifting values (one per support point).
Subdivision regular_subdivision(const std::vector<std::vector<ExpVec>>& supports,
                                const std::vector<RatVec>& lifts);

// Retry random integer lifts until the induced subdivision is fine.
Subdivision random_fine_subdivision(const std::vector<std::vector<ExpVec>>& supports,
                                    std::uint64_t seed, int max_tries = 10);

// Cells whose type matches `type` exactly; an empty filter selects all cells.
std::vector<SubdivisionCell> mixed_cells(const Subdivision& S, const std::vector<int>& type);

}  // namespace polyhom
