#include "polyhom/mixedvol.hpp"

#include "polyhom/error.hpp"
#include "polyhom/subdivision.hpp"

namespace polyhom {

namespace {

// Hull of the Minkowski sum of the polytopes selected by `mask`.
Polytope masked_sum(const std::vector<Polytope>& P, unsigned mask) {
  std::vector<RatVec> pts{RatVec(P[0].ambient_dim(), Rat(0))};
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (!(mask & (1u << i))) continue;
    std::vector<RatVec> next;
    for (const auto& s : pts)
      for (const auto& v : P[i].vertices()) {
        RatVec t(s.size());
        for (std::size_t j = 0; j < s.size(); ++j) t[j] = s[j] + v[j];
        next.push_back(std::move(t));
      }
    pts = std::move(next);
  }
  return convex_hull(pts);
}

void check_square(const std::vector<Polytope>& P) {
  if (P.empty()) fail(Errc::EmptyInput, "no polytopes given");
  const int n = P[0].ambient_dim();
  if (static_cast<int>(P.size()) != n)
    fail(Errc::NonSquare, "mixed volume needs as many polytopes as dimensions");
  for (const auto& p : P)
    if (p.ambient_dim() != n)
      fail(Errc::DimensionMismatch, "polytopes live in different spaces");
}

}  // namespace

Rat mixed_volume_alternating(const std::vector<Polytope>& P) {
  check_square(P);
  const int n = static_cast<int>(P.size());
  Rat mv = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int bits = __builtin_popcount(mask);
    Rat vol = masked_sum(P, mask).volume();
    mv += ((n - bits) % 2 == 0) ? vol : -vol;
  }
  return mv;
}

Int mixed_volume_lattice(const std::vector<Polytope>& P) {
  check_square(P);
  for (const auto& p : P)
    for (const auto& v : p.vertices())
      for (const auto& c : v)
        if (!is_integral(c))
          fail(Errc::NonIntegral, "lattice point count needs integral polytopes");
  const int n = static_cast<int>(P.size());
  Int mv = (n % 2 == 0) ? 1 : -1;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int bits = __builtin_popcount(mask);
    Int count = static_cast<long long>(lattice_points(masked_sum(P, mask)).size());
    mv += ((n - bits) % 2 == 0) ? count : -count;
  }
  return mv;
}

Int mixed_volume_cells(const std::vector<std::vector<ExpVec>>& supports, std::uint64_t seed) {
  if (supports.empty()) fail(Errc::EmptyInput, "no supports given");
  // Subdivide the vertex sets only; interior points never enter a lower facet
  // that matters for the volume count.
  std::vector<std::vector<ExpVec>> verts;
  for (const auto& s : supports) {
    std::vector<ExpVec> reduced;
    const Polytope hull = hull_of_support(s);
    for (const auto& v : hull.vertices()) {
      ExpVec e(v.size());
      for (std::size_t j = 0; j < v.size(); ++j)
        e[j] = numer(v[j]).convert_to<std::int64_t>();
      reduced.push_back(std::move(e));
    }
    verts.push_back(std::move(reduced));
  }
  const int n = static_cast<int>(verts[0].empty() ? 0 : verts[0][0].size());
  if (static_cast<int>(verts.size()) != n)
    fail(Errc::NonSquare, "mixed volume needs as many supports as dimensions");
  Subdivision S;
  try {
    S = random_fine_subdivision(verts, seed);
  } catch (const Error& e) {
    if (e.code() == Errc::SpanDeficient) return 0;
    throw;
  }
  Rat mv = 0;
  for (const auto& c : mixed_cells(S, std::vector<int>(n, 1))) mv += c.volume;
  if (denom(mv) != 1) throw std::logic_error("mixed cell volumes did not sum to an integer");
  return numer(mv);
}

Polytope hull_of_support(const std::vector<ExpVec>& support) {
  if (support.empty()) fail(Errc::EmptySupport, "support is empty");
  std::vector<RatVec> pts;
  for (const auto& a : support) pts.push_back(to_ratvec(a));
  return convex_hull(pts);
}

Rat mixed_volume_alternating(const std::vector<std::vector<ExpVec>>& supports) {
  std::vector<Polytope> P;
  for (const auto& s : supports) P.push_back(hull_of_support(s));
  return mixed_volume_alternating(P);
}

Int mixed_volume_lattice(const std::vector<std::vector<ExpVec>>& supports) {
  std::vector<Polytope> P;
  for (const auto& s : supports) P.push_back(hull_of_support(s));
  return mixed_volume_lattice(P);
}

int dimension_defect(const std::vector<Polytope>& P) {
  if (P.empty()) fail(Errc::EmptyInput, "no polytopes given");
  unsigned all = (1u << P.size()) - 1;
  return masked_sum(P, all).dim() - static_cast<int>(P.size());
}

bool is_essential(const std::vector<Polytope>& P) {
  if (P.empty()) fail(Errc::EmptyInput, "no polytopes given");
  for (unsigned mask = 1; mask < (1u << P.size()); ++mask) {
    std::vector<Polytope> sub;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (mask & (1u << i)) sub.push_back(P[i]);
    if (masked_sum(P, mask).dim() < static_cast<int>(sub.size())) return false;
  }
  return true;
}

}  // namespace polyhom
