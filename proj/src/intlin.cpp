#include "polyhom/intlin.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "polyhom/error.hpp"

namespace polyhom {

namespace {

Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

SmithForm smith_normal_form(const IntMat& A) {
  const int k = static_cast<int>(A.size());
  const int m = k == 0 ? 0 : static_cast<int>(A[0].size());
  SmithForm S;
  S.D = A;
  S.P = int_identity(k);
  S.Q = int_identity(m);
  IntMat& M = S.D;

  // Elementary operations, mirrored into P (inverse row ops as column ops)
  // and Q (inverse column ops as row ops) so that A = P * M * Q throughout.
  auto row_swap = [&](int i, int j) {
    std::swap(M[i], M[j]);
    for (int r = 0; r < k; ++r) std::swap(S.P[r][i], S.P[r][j]);
  };
  auto col_swap = [&](int i, int j) {
    for (int r = 0; r < k; ++r) std::swap(M[r][i], M[r][j]);
    std::swap(S.Q[i], S.Q[j]);
  };
  auto row_add = [&](int i, int j, const Int& c) {  // row i += c * row j
    for (int t = 0; t < m; ++t) M[i][t] += c * M[j][t];
    for (int r = 0; r < k; ++r) S.P[r][j] -= c * S.P[r][i];
  };
  auto col_add = [&](int i, int j, const Int& c) {  // col i += c * col j
    for (int r = 0; r < k; ++r) M[r][i] += c * M[r][j];
    for (int t = 0; t < m; ++t) S.Q[j][t] -= c * S.Q[i][t];
  };
  auto row_negate = [&](int i) {
    for (int t = 0; t < m; ++t) M[i][t] = -M[i][t];
    for (int r = 0; r < k; ++r) S.P[r][i] = -S.P[r][i];
  };

  const int steps = std::min(k, m);
  for (int t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing submatrix becomes the pivot.
      int pi = -1, pj = -1;
      for (int i = t; i < k; ++i)
        for (int j = t; j < m; ++j)
          if (M[i][j] != 0 &&
              (pi < 0 || int_abs(M[i][j]) < int_abs(M[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        t = steps;  // the rest of the matrix is zero
        break;
      }
      if (pi != t) row_swap(pi, t);
      if (pj != t) col_swap(pj, t);

      bool clean = true;
      for (int i = t + 1; i < k; ++i) {
        if (M[i][t] == 0) continue;
        Int quot = M[i][t] / M[t][t];
        if (quot != 0) row_add(i, t, -quot);
        if (M[i][t] != 0) clean = false;  // remainder: retry with smaller pivot
      }
      for (int j = t + 1; j < m; ++j) {
        if (M[t][j] == 0) continue;
        Int quot = M[t][j] / M[t][t];
        if (quot != 0) col_add(j, t, -quot);
        if (M[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the remaining submatrix for the divisibility
      // chain; pull a bad row up and keep reducing otherwise.
      bool divides = true;
      for (int i = t + 1; i < k && divides; ++i)
        for (int j = t + 1; j < m && divides; ++j)
          if (M[i][j] % M[t][t] != 0) {
            row_add(t, i, Int(1));
            divides = false;
          }
      if (divides) break;
    }
    if (t >= steps) break;
  }

  for (int i = 0; i < steps; ++i)
    if (M[i][i] < 0) row_negate(i);

  S.diag.resize(steps);
  for (int i = 0; i < steps; ++i) {
    S.diag[i] = M[i][i];
    if (S.diag[i] != 0) ++S.rank;
  }
  return S;
}

LatticeData lattice_data(const std::vector<std::vector<ExpVec>>& supports) {
  if (supports.empty()) fail(Errc::EmptyInput, "no supports given");
  int n = -1;
  for (const auto& s : supports) {
    if (s.empty()) fail(Errc::EmptySupport, "support is empty");
    if (n < 0) n = static_cast<int>(s[0].size());
    for (const auto& a : s)
      if (static_cast<int>(a.size()) != n)
        fail(Errc::DimensionMismatch, "support points of unequal dimension");
  }

  LatticeData L;
  L.generators.assign(n, {});
  for (const auto& s : supports)
    for (std::size_t j = 1; j < s.size(); ++j)
      for (int i = 0; i < n; ++i) L.generators[i].push_back(Int(s[j][i] - s[0][i]));

  L.snf = smith_normal_form(L.generators);
  L.rank = L.snf.rank;
  if (L.rank == n) {
    Int idx = 1;
    for (const auto& d : L.snf.diag) idx *= d;
    L.index = idx;
  }
  L.saturation_basis.assign(n, IntVec(L.rank));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < L.rank; ++j) L.saturation_basis[i][j] = L.snf.P[i][j];
  return L;
}

CxVec apply_monomial_map(const IntMat& phi, const CxVec& x) {
  const int n = static_cast<int>(phi.size());
  if (static_cast<int>(x.size()) != n)
    fail(Errc::DimensionMismatch, "point and monomial map of different sizes");
  CxVec y(phi.empty() ? 0 : phi[0].size(), Cx(1));
  for (std::size_t i = 0; i < y.size(); ++i)
    for (int j = 0; j < n; ++j)
      y[i] *= cx_pow(x[j], phi[j][i].convert_to<std::int64_t>());
  return y;
}

std::vector<CxVec> solve_binomial(const IntMat& A, const CxVec& b) {
  const int n = static_cast<int>(A.size());
  if (n == 0) fail(Errc::EmptyInput, "empty binomial system");
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != n)
      fail(Errc::NonSquare, "binomial exponent matrix must be square");
  if (static_cast<int>(b.size()) != n)
    fail(Errc::DimensionMismatch, "right-hand side of wrong length");
  if (int_det(A) == 0)
    fail(Errc::SingularExponentMatrix, "exponent matrix is singular");
  for (const auto& v : b)
    if (v == Cx(0)) fail(Errc::ZeroRightHandSide, "right-hand side has a zero entry");

  // x^{PDQ} = b  <=>  w^D = b^{Q^{-1}} with w = x^P.
  SmithForm S = smith_normal_form(A);
  IntMat Qinv = unimodular_inverse(S.Q);
  IntMat Pinv = unimodular_inverse(S.P);
  CxVec c = apply_monomial_map(Qinv, b);

  std::vector<std::vector<Cx>> root_choices(n);
  for (int i = 0; i < n; ++i) {
    const long long d = S.diag[i].convert_to<long long>();
    const double mod = std::pow(std::abs(c[i]), 1.0 / static_cast<double>(d));
    const double arg = std::arg(c[i]) / static_cast<double>(d);
    for (long long j = 0; j < d; ++j) {
      double angle = arg + 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d);
      root_choices[i].push_back(std::polar(mod, angle));
    }
  }

  std::vector<CxVec> solutions;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    CxVec w(n);
    for (int i = 0; i < n; ++i) w[i] = root_choices[i][idx[i]];
    solutions.push_back(apply_monomial_map(Pinv, w));
    std::size_t k = 0;
    while (k < static_cast<std::size_t>(n) && ++idx[k] == root_choices[k].size()) {
      idx[k] = 0;
      ++k;
    }
    if (k == static_cast<std::size_t>(n)) break;
  }
  return solutions;
}

SparsePoly push_monomials(const SparsePoly& f, const IntMat& phi) {
  const int n = f.nvars;
  if (static_cast<int>(phi.size()) != n || (n > 0 && static_cast<int>(phi[0].size()) != n))
    fail(Errc::DimensionMismatch, "monomial map size does not match variable count");
  std::vector<Term> terms;
  for (const auto& t : f.terms) {
    ExpVec e(n, 0);
    for (int i = 0; i < n; ++i) {
      Int v = 0;
      for (int j = 0; j < n; ++j) v += phi[i][j] * Int(t.exponent[j]);
      e[i] = v.convert_to<std::int64_t>();
    }
    terms.push_back({std::move(e), t.coeff});
  }
  return SparsePoly::make(n, std::move(terms));
}

SparsePoly pull_monomials(const SparsePoly& f, const IntMat& phi) {
  const int n = f.nvars;
  if (static_cast<int>(phi.size()) != n || (n > 0 && static_cast<int>(phi[0].size()) != n))
    fail(Errc::DimensionMismatch, "monomial map size does not match variable count");
  RatMat inv_rows = to_rat(phi);
  auto inv = rat_inverse(inv_rows);
  if (!inv) fail(Errc::NonInvertible, "monomial map is singular");
  std::vector<Term> terms;
  for (const auto& t : f.terms) {
    ExpVec e(n, 0);
    for (int i = 0; i < n; ++i) {
      Rat v = 0;
      for (int j = 0; j < n; ++j) v += (*inv)[i][j] * Rat(Int(t.exponent[j]));
      if (!is_integral(v))
        fail(Errc::NonInvertible,
             "support point does not lie in the image lattice of the monomial map");
      e[i] = numer(v).convert_to<std::int64_t>();
    }
    terms.push_back({std::move(e), t.coeff});
  }
  return SparsePoly::make(n, std::move(terms));
}

RatVec transform_direction(const IntMat& phi, const RatVec& omega) {
  const int n = static_cast<int>(phi.size());
  if (static_cast<int>(omega.size()) != n)
    fail(Errc::DimensionMismatch, "direction and monomial map of different sizes");
  auto inv = rat_inverse(to_rat(phi));
  if (!inv) fail(Errc::NonInvertible, "monomial map is singular");
  RatVec out(n, Rat(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += (*inv)[j][i] * omega[j];
  return out;
}

}  // namespace polyhom
