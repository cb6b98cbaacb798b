#include "polyhom/poly.hpp"

#include <algorithm>
#include <map>

namespace polyhom {

SparsePoly SparsePoly::make(int nvars, std::vector<Term> ts) {
  for (const auto& t : ts) {
    if (static_cast<int>(t.exponent.size()) != nvars)
      fail(Errc::DimensionMismatch, "term exponent length does not match variable count");
  }
  std::map<ExpVec, Cx> merged;
  for (auto& t : ts) merged[t.exponent] += t.coeff;
  SparsePoly f;
  f.nvars = nvars;
  for (auto& [e, c] : merged) {
    if (c.real() == 0.0 && c.imag() == 0.0) continue;  // exact-zero drop only
    f.terms.push_back(Term{e, c});
  }
  return f;
}

Cx cx_pow(Cx base, std::int64_t e) {
  if (e < 0) {
    if (base.real() == 0.0 && base.imag() == 0.0)
      fail(Errc::ZeroBaseNegativeExponent, "0 raised to a negative exponent");
    return cx_pow(Cx(1.0, 0.0) / base, -e);
  }
  Cx acc(1.0, 0.0);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

Cx eval_poly(const SparsePoly& f, const CxVec& x) {
  if (static_cast<int>(x.size()) != f.nvars)
    fail(Errc::DimensionMismatch, "evaluation point has wrong length");
  Cx s(0.0, 0.0);
  for (const auto& t : f.terms) {
    Cx m = t.coeff;
    for (int i = 0; i < f.nvars; ++i) {
      if (t.exponent[i] != 0) m *= cx_pow(x[i], t.exponent[i]);
    }
    s += m;
  }
  return s;
}

CxVec eval_system(const SparseSystem& F, const CxVec& x) {
  CxVec out;
  out.reserve(F.polys.size());
  for (const auto& f : F.polys) out.push_back(eval_poly(f, x));
  return out;
}

SparsePoly dpoly(const SparsePoly& f, int j) {
  std::vector<Term> ts;
  for (const auto& t : f.terms) {
    if (t.exponent[j] == 0) continue;
    Term d = t;
    d.coeff *= static_cast<double>(t.exponent[j]);
    d.exponent[j] -= 1;
    ts.push_back(std::move(d));
  }
  return SparsePoly::make(f.nvars, std::move(ts));
}

CxMat jacobian(const SparseSystem& F, const CxVec& x) {
  if (!F.square()) fail(Errc::NonSquare, "jacobian requires a square system");
  const int n = F.nvars();
  CxMat J(n, CxVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) J[i][j] = eval_poly(dpoly(F.polys[i], j), x);
  return J;
}

std::vector<ExpVec> support_of(const SparsePoly& f) {
  std::vector<ExpVec> s;
  s.reserve(f.terms.size());
  for (const auto& t : f.terms) s.push_back(t.exponent);
  return s;  // already sorted and distinct by canonical form
}

SparsePoly poly_add(const SparsePoly& f, const SparsePoly& g) {
  std::vector<Term> ts = f.terms;
  ts.insert(ts.end(), g.terms.begin(), g.terms.end());
  return SparsePoly::make(f.nvars, std::move(ts));
}

SparsePoly poly_sub(const SparsePoly& f, const SparsePoly& g) {
  return poly_add(f, poly_scale(g, Cx(-1.0, 0.0)));
}

SparsePoly poly_mul(const SparsePoly& f, const SparsePoly& g) {
  std::vector<Term> ts;
  ts.reserve(f.terms.size() * g.terms.size());
  for (const auto& a : f.terms) {
    for (const auto& b : g.terms) {
      Term t;
      t.exponent.resize(f.nvars);
      for (int i = 0; i < f.nvars; ++i) t.exponent[i] = a.exponent[i] + b.exponent[i];
      t.coeff = a.coeff * b.coeff;
      ts.push_back(std::move(t));
    }
  }
  return SparsePoly::make(f.nvars, std::move(ts));
}

SparsePoly poly_scale(const SparsePoly& f, Cx c) {
  std::vector<Term> ts = f.terms;
  for (auto& t : ts) t.coeff *= c;
  return SparsePoly::make(f.nvars, std::move(ts));
}

std::int64_t total_degree(const SparsePoly& f) {
  std::int64_t d = 0;
  for (const auto& t : f.terms) {
    std::int64_t s = 0;
    for (auto e : t.exponent) s += e;
    d = std::max(d, s);
  }
  return d;
}

}  // namespace polyhom
