#include "polyhom/monodromy.hpp"

#include "polyhom/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace polyhom {

namespace {

double max_dist(const CxVec& a, const CxVec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double residual(const SparseSystem& F, const CxVec& x) {
  double m = 0;
  for (const Cx& v : eval_system(F, x)) m = std::max(m, std::abs(v));
  return m;
}

CxVec polish(const SparseSystem& F, CxVec x) {
  try {
    return newton_refine(F, x, 3).x;
  } catch (const Error& e) {
    if (e.code() != Errc::SingularJacobian) throw;
    return x;
  }
}

int find_match(const std::vector<CxVec>& pts, const CxVec& x, double radius) {
  int hit = -1;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (max_dist(pts[j], x) >= radius) continue;
    if (hit >= 0) fail(Errc::MatchAmbiguity, "endpoint matches two known fiber points");
    hit = static_cast<int>(j);
  }
  return hit;
}

constexpr double kCluster = 1e-6;

}  // namespace

LoopResult monodromy_loop(const ParamSystem& PS, const CxVec& s1, const std::vector<CxVec>& fiber,
                          const LoopSpec& spec, const TrackConfig& cfg) {
  if (fiber.empty()) fail(Errc::EmptyInput, "monodromy loop needs at least one fiber point");
  if (static_cast<int>(s1.size()) != PS.param_count() ||
      static_cast<int>(spec.s2.size()) != PS.param_count())
    fail(Errc::DimensionMismatch, "parameter vectors do not match the family");

  const SparseSystem F1 = PS.instantiate(s1);
  const SparseSystem F2 = PS.instantiate(spec.s2);
  // Out: start on the fiber of F1 at t = 1, end on c1 F2 at t = 0; back the
  // same way with the roles swapped.  Scaled systems share their zero sets,
  // so the two legs concatenate to a loop based at s1.
  const Homotopy out = gamma_homotopy(F2, F1, spec.c1, Cx(1));
  const Homotopy back = gamma_homotopy(F1, F2, spec.c2, Cx(1));

  // Any tracking loss on a leg is a loop failure: the caller can retry with
  // fresh accessory constants.
  const auto run_leg = [&](const Homotopy& H, const CxVec& p, const char* which) {
    try {
      PathResult pr = track_segment(H, p, 1.0, 0.0, cfg);
      if (pr.status != PathStatus::Diverged) return pr.x;
    } catch (const Error& e) {
      if (e.code() == Errc::MatchAmbiguity) throw;
    }
    fail(Errc::PathFailure, std::string(which) + " leg of a monodromy loop was lost");
  };

  std::vector<CxVec> ends;
  for (const CxVec& p : fiber)
    ends.push_back(polish(F1, run_leg(back, run_leg(out, p, "outbound"), "return")));

  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = i + 1; j < ends.size(); ++j)
      if (max_dist(ends[i], ends[j]) < kCluster)
        fail(Errc::MatchAmbiguity, "two loop endpoints collide at the matching radius");

  LoopResult res;
  for (const CxVec& e : ends) {
    const int hit = find_match(fiber, e, kCluster);
    res.to.push_back(hit);
    if (hit < 0) res.new_points.push_back(e);
  }
  return res;
}

MonodromyResult monodromy_solve(const ParamSystem& PS, const CxVec& s1,
                                const std::vector<CxVec>& seeds, const MonodromyOptions& opts,
                                std::uint64_t seed) {
  if (seeds.empty()) fail(Errc::EmptyInput, "monodromy solve needs a seed point");
  if (opts.trace_stop &&
      (opts.slice_polys < 1 || opts.slice_polys >= static_cast<int>(PS.supports.size())))
    fail(Errc::DimensionMismatch, "trace stopping needs a trailing moving slice");
  for (int idx : opts.moving_params)
    if (idx < 0 || idx >= PS.param_count())
      fail(Errc::DimensionMismatch, "moving parameter index out of range");

  const SparseSystem F1 = PS.instantiate(s1);
  std::mt19937_64 rng(seed ^ 0xd1b54a32d192ed03ull);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  const auto unit = [&] { return std::polar(1.0, ang(rng)); };
  // Accessory constants must be nonreal for the legs to be generic arcs.
  const auto nonreal_unit = [&] {
    Cx c = unit();
    while (std::abs(c.imag()) < 0.1) c = unit();
    return c;
  };

  MonodromyResult res;
  const auto add_point = [&](CxVec p) -> bool {
    p = polish(F1, std::move(p));
    if (residual(F1, p) > 1e-8) return false;
    for (const CxVec& q : res.fiber)
      if (max_dist(q, p) < kCluster) return false;
    res.fiber.push_back(std::move(p));
    return true;
  };
  const auto close_conjugates = [&] {
    if (!opts.conjugation) return;
    for (std::size_t i = 0; i < res.fiber.size(); ++i) {
      CxVec c = res.fiber[i];
      for (Cx& v : c) v = std::conj(v);
      add_point(std::move(c));
    }
  };
  for (const CxVec& s : seeds) add_point(s);
  close_conjugates();

  const auto stopped = [&] {
    if (opts.target_count &&
        static_cast<long long>(res.fiber.size()) >= *opts.target_count)
      return true;
    if (opts.trace_stop) {
      WitnessData W;
      const int k = static_cast<int>(PS.supports.size()) - opts.slice_polys;
      W.equations.polys.assign(F1.polys.begin(), F1.polys.begin() + k);
      W.slice.polys.assign(F1.polys.begin() + k, F1.polys.end());
      W.points = res.fiber;
      std::vector<int> all(res.fiber.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
      try {
        return trace_test(W, all, rng(), opts.track).is_complete;
      } catch (const Error&) {
        return false;
      }
    }
    return false;
  };

  long long legs = 0;
  while (true) {
    if (stopped()) {
      res.complete = true;
      break;
    }
    const long long expected =
        opts.target_count ? *opts.target_count
                          : std::max<long long>(2, static_cast<long long>(res.fiber.size()));
    if (legs >= static_cast<long long>(opts.budget_per_degree) * expected) break;

    LoopSpec spec;
    spec.s2 = s1;
    if (opts.moving_params.empty()) {
      for (Cx& v : spec.s2) v = unit();
    } else {
      for (int idx : opts.moving_params) spec.s2[idx] = unit();
    }
    spec.c1 = nonreal_unit();
    spec.c2 = nonreal_unit();

    ++res.loops;
    legs += 2 * static_cast<long long>(res.fiber.size());
    try {
      LoopResult lr = monodromy_loop(PS, s1, res.fiber, spec, opts.track);
      for (CxVec& p : lr.new_points) add_point(std::move(p));
      close_conjugates();
      res.permutations.push_back(std::move(lr.to));
    } catch (const Error& e) {
      if (e.code() != Errc::PathFailure && e.code() != Errc::MatchAmbiguity) throw;
    }
  }
  return res;
}

Rat transitivity_probability(int d, ConjugationModel model) {
  if (d < 1) fail(Errc::EmptyInput, "degree must be positive");
  if (model == ConjugationModel::FixedPointFree && d % 2 != 0)
    fail(Errc::OddDForFPF, "fixed-point-free involutions need even degree");

  std::vector<Int> R(d + 1, 0);
  R[0] = 1;
  switch (model) {
    case ConjugationModel::Symmetric:
      for (int i = 1; i <= d; ++i) R[i] = R[i - 1] * i;
      break;
    case ConjugationModel::Involutions:
      // Permutations squaring to the identity: a(i) = a(i-1) + (i-1) a(i-2).
      for (int i = 1; i <= d; ++i) R[i] = R[i - 1] + (i > 1 ? Int(i - 1) * R[i - 2] : Int(0));
      break;
    case ConjugationModel::FixedPointFree:
      // (2j-1)!! on even sizes, none on odd sizes.
      for (int i = 2; i <= d; i += 2) R[i] = R[i - 2] * (i - 1);
      for (int i = 1; i <= d; i += 2) R[i] = 0;
      break;
  }

  std::vector<Rat> t(d + 1, Rat(0));
  for (int k = 1; k <= d; ++k) {
    if (R[k] == 0) continue;
    Rat acc(0);
    for (int i = 1; i < k; ++i) {
      if (R[i] == 0 || R[k - i] == 0) continue;
      acc += Rat(i) * t[i] * Rat(R[i] * R[k - i]) / (Rat(k) * Rat(R[k]));
    }
    t[k] = Rat(1) - acc;
  }
  return t[d];
}

}  // namespace polyhom
