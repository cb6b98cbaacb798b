#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "polyhom/error.hpp"

namespace polyhom {

using Cx = std::complex<double>;
using CxVec = std::vector<Cx>;
using CxMat = std::vector<CxVec>;  // row-major
using ExpVec = std::vector<std::int64_t>;

// One monomial c * x^a.  Exponents may be negative (Laurent terms).
struct Term {
  ExpVec exponent;
  Cx coeff;
};

// Sparse polynomial in a fixed number of variables.  Values are immutable by
// convention: construct through make(), which canonicalizes (exponents sorted
// lexicographically, duplicates merged, exact-zero coefficients dropped), and
// treat the result as read-only.
struct SparsePoly {
  int nvars = 0;
  std::vector<Term> terms;

  static SparsePoly make(int nvars, std::vector<Term> ts);
  bool is_zero() const { return terms.empty(); }
};

struct SparseSystem {
  std::vector<SparsePoly> polys;

  int nvars() const { return polys.empty() ? 0 : polys[0].nvars; }
  bool square() const { return !polys.empty() && static_cast<int>(polys.size()) == nvars(); }
};

// Integer power with exact zero handling; negative exponents at zero are the
// caller's error (ZeroBaseNegativeExponent).
Cx cx_pow(Cx base, std::int64_t e);

Cx eval_poly(const SparsePoly& f, const CxVec& x);
CxVec eval_system(const SparseSystem& F, const CxVec& x);

// Exact partial derivative with respect to variable j.
SparsePoly dpoly(const SparsePoly& f, int j);

// Jacobian matrix [df_i/dx_j] of a square system at x.
CxMat jacobian(const SparseSystem& F, const CxVec& x);

// Exponents of the (canonical) nonzero terms, sorted.
std::vector<ExpVec> support_of(const SparsePoly& f);

// Arithmetic used to assemble homotopies and test fixtures.
SparsePoly poly_add(const SparsePoly& f, const SparsePoly& g);
SparsePoly poly_sub(const SparsePoly& f, const SparsePoly& g);
SparsePoly poly_mul(const SparsePoly& f, const SparsePoly& g);
SparsePoly poly_scale(const SparsePoly& f, Cx c);

// Largest coordinate sum over the support (classical total degree for
// non-Laurent polynomials).
std::int64_t total_degree(const SparsePoly& f);

}  // namespace polyhom
