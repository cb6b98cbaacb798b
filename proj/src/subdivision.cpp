#include "polyhom/subdivision.hpp"

#include <map>
#include <random>
#include <stdexcept>

#include "polyhom/error.hpp"

namespace polyhom {

namespace {

// Iterate over all ways of picking one index from each of k ranges.
bool advance_odometer(std::vector<int>& idx, const std::vector<int>& sizes) {
  std::size_t k = 0;
  while (k < idx.size() && ++idx[k] == sizes[k]) {
    idx[k] = 0;
    ++k;
  }
  return k < idx.size();
}

Rat omega_value(const RatVec& omega, const ExpVec& a, const Rat& lift) {
  Rat v = -lift;  // last coordinate of omega is -1
  for (std::size_t j = 0; j < a.size(); ++j) v += omega[j] * Rat(Int(a[j]));
  return v;
}

// Hull of the Minkowski sum of the selected subsets of the supports.
Polytope cell_hull(const std::vector<std::vector<ExpVec>>& supports,
                   const std::vector<std::vector<int>>& parts, int n) {
  std::vector<int> sizes, idx(parts.size(), 0);
  for (const auto& p : parts) sizes.push_back(static_cast<int>(p.size()));
  std::vector<RatVec> pts;
  do {
    RatVec s(n, Rat(0));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const ExpVec& a = supports[i][parts[i][idx[i]]];
      for (int j = 0; j < n; ++j) s[j] += Rat(Int(a[j]));
    }
    pts.push_back(std::move(s));
  } while (advance_odometer(idx, sizes));
  return convex_hull(pts);
}

SubdivisionCell make_cell(const std::vector<std::vector<ExpVec>>& supports,
                          const std::vector<RatVec>& lifts, RatVec omega, int n) {
  SubdivisionCell cell;
  cell.omega = std::move(omega);
  for (std::size_t i = 0; i < supports.size(); ++i) {
    Rat best;
    bool first = true;
    for (std::size_t a = 0; a < supports[i].size(); ++a) {
      Rat v = omega_value(cell.omega, supports[i][a], lifts[i][a]);
      if (first || v > best) {
        best = v;
        first = false;
      }
    }
    std::vector<int> argmax;
    for (std::size_t a = 0; a < supports[i].size(); ++a)
      if (omega_value(cell.omega, supports[i][a], lifts[i][a]) == best)
        argmax.push_back(static_cast<int>(a));
    cell.parts.push_back(std::move(argmax));
  }
  for (std::size_t i = 0; i < supports.size(); ++i) {
    std::vector<RatVec> pts;
    for (int a : cell.parts[i]) pts.push_back(to_ratvec(supports[i][a]));
    cell.type.push_back(convex_hull(pts).dim());
  }
  cell.volume = cell_hull(supports, cell.parts, n).volume();
  return cell;
}

bool cell_is_fine(const SubdivisionCell& c, int n) {
  int corners = 0;
  for (const auto& p : c.parts) corners += static_cast<int>(p.size()) - 1;
  return corners == n;
}

}  // namespace

Subdivision regular_subdivision(const std::vector<std::vector<ExpVec>>& supports,
                                const std::vector<RatVec>& lifts) {
  if (supports.empty()) fail(Errc::EmptyInput, "no supports given");
  if (supports.size() != lifts.size())
    fail(Errc::DimensionMismatch, "one lift vector per support is required");
  const int n = supports[0].empty() ? 0 : static_cast<int>(supports[0][0].size());
  for (std::size_t i = 0; i < supports.size(); ++i) {
    if (supports[i].empty()) fail(Errc::EmptySupport, "support is empty");
    if (supports[i].size() != lifts[i].size())
      fail(Errc::DimensionMismatch, "lift count does not match support size");
    for (const auto& a : supports[i])
      if (static_cast<int>(a.size()) != n)
        fail(Errc::DimensionMismatch, "support points of unequal dimension");
  }

  Subdivision S;
  S.n = n;
  S.supports = supports;
  S.lifts = lifts;

  // Lifted Minkowski points.  Only the lowest lift per projected point can
  // lie on the lower hull, so dedupe by base point keeping the minimum.
  std::map<ExpVec, Rat> lifted;
  std::vector<int> sizes, idx(supports.size(), 0);
  for (const auto& s : supports) sizes.push_back(static_cast<int>(s.size()));
  do {
    ExpVec base(n, 0);
    Rat lift = 0;
    for (std::size_t i = 0; i < supports.size(); ++i) {
      const ExpVec& a = supports[i][idx[i]];
      for (int j = 0; j < n; ++j) base[j] += a[j];
      lift += lifts[i][idx[i]];
    }
    auto it = lifted.find(base);
    if (it == lifted.end())
      lifted.emplace(std::move(base), lift);
    else if (lift < it->second)
      it->second = lift;
  } while (advance_odometer(idx, sizes));

  std::vector<RatVec> pts;
  for (const auto& [base, lift] : lifted) {
    RatVec p = to_ratvec(base);
    p.push_back(lift);
    pts.push_back(std::move(p));
  }
  Polytope lifted_hull = convex_hull(pts);
  const HRep& h = lifted_hull.hrep();

  if (!h.eq_normals.empty()) {
    // Flat lifted hull.  With two independent equations (or one that does
    // not involve the lift coordinate) the projected sum is flat too.
    if (h.eq_normals.size() >= 2 || h.eq_normals[0][n] == 0)
      fail(Errc::SpanDeficient, "supports do not jointly span the ambient space");
    // The lift is an affine function of the base point: one trivial cell.
    RatVec omega(n + 1);
    const RatVec& e = h.eq_normals[0];
    for (int j = 0; j <= n; ++j) omega[j] = -e[j] / e[n];
    S.cells.push_back(make_cell(supports, lifts, std::move(omega), n));
    S.fine = cell_is_fine(S.cells[0], n);
    return S;
  }

  for (const auto& f : h.facets) {
    if (f.normal[n] >= 0) continue;  // not on the lower hull
    RatVec omega(n + 1);
    for (int j = 0; j <= n; ++j) omega[j] = -f.normal[j] / f.normal[n];
    SubdivisionCell cell = make_cell(supports, lifts, std::move(omega), n);
    // The per-support maxima must add up to the facet's support value.
    Rat total = 0;
    for (std::size_t i = 0; i < supports.size(); ++i)
      total += omega_value(cell.omega, supports[i][cell.parts[i][0]], lifts[i][cell.parts[i][0]]);
    if (total != -f.offset / f.normal[n])
      throw std::logic_error("subdivision: cell recovery mismatch");
    S.cells.push_back(std::move(cell));
  }

  S.fine = true;
  for (const auto& c : S.cells)
    if (!cell_is_fine(c, n)) S.fine = false;
  return S;
}

Subdivision random_fine_subdivision(const std::vector<std::vector<ExpVec>>& supports,
                                    std::uint64_t seed, int max_tries) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> height(0, 65535);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    std::vector<RatVec> lifts;
    for (const auto& s : supports) {
      RatVec l(s.size());
      for (auto& v : l) v = Rat(height(rng));
      lifts.push_back(std::move(l));
    }
    Subdivision S = regular_subdivision(supports, lifts);
    if (S.fine) return S;
  }
  fail(Errc::NonFineCell, "random lifts failed to produce a fine subdivision");
}

std::vector<SubdivisionCell> mixed_cells(const Subdivision& S, const std::vector<int>& type) {
  std::vector<SubdivisionCell> out;
  for (const auto& c : S.cells)
    if (type.empty() || c.type == type) out.push_back(c);
  return out;
}

}  // namespace polyhom
