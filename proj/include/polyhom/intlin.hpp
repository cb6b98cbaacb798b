#pragma once

// Integer linear algebra for exponent lattices: Smith normal form, lattices
// spanned by support differences, binomial system solving, and monomial
// changes of coordinates.

#include <optional>
#include <vector>

#include "polyhom/exactlin.hpp"
#include "polyhom/poly.hpp"

namespace polyhom {

// A = P * D * Q with P, Q unimodular and D diagonal with d_1 | d_2 | ...,
// all d_i >= 0.
struct SmithForm {
  IntMat P, D, Q;
  IntVec diag;  // diagonal of D, length min(rows, cols)
  int rank = 0;
};

SmithForm smith_normal_form(const IntMat& A);

// The lattice generated by the within-support differences a - a_0, taken
// over every support in the family.
struct LatticeData {
  IntMat generators;        // columns are the differences, n rows
  int rank = 0;
  std::optional<Int> index;  // [Z^n : lattice] when the rank is full
  IntMat saturation_basis;   // columns: lattice basis of the saturation
  SmithForm snf;
};

LatticeData lattice_data(const std::vector<std::vector<ExpVec>>& supports);

// All solutions of x^A = b on the torus, where column i of A is the
// exponent of the i-th equation.  There are |det A| of them.
std::vector<CxVec> solve_binomial(const IntMat& A, const CxVec& b);

// x^phi: component i is x raised to column i of phi.
CxVec apply_monomial_map(const IntMat& phi, const CxVec& x);

// Substitution of the monomial map into a polynomial: exponents map to
// phi * alpha (push) or phi^{-1} * alpha (pull; the support must lie in the
// image lattice).  Colliding exponents have their coefficients summed.
SparsePoly push_monomials(const SparsePoly& f, const IntMat& phi);
SparsePoly pull_monomials(const SparsePoly& f, const IntMat& phi);

// How a face direction transforms under the monomial change: (phi^{-1})^T w.
RatVec transform_direction(const IntMat& phi, const RatVec& omega);

}  // namespace polyhom
