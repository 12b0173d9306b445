#include "allpay/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace allpay {
namespace {

std::string point_str(const Vec& p) {
  std::string s = "(";
  for (int i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(p(i));
  }
  return s + ")";
}

// 53-bit uniform in [0, 1); avoids the implementation-defined behavior of
// std::uniform_real_distribution so seeded output is stable.
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

int MixedStrategy::dims() const {
  if (!atoms.empty()) return static_cast<int>(atoms.front().point.size());
  if (!segments.empty()) return static_cast<int>(segments.front().a.size());
  return 0;
}

double MixedStrategy::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms) m += a.prob;
  for (const auto& s : segments) m += s.prob;
  return m;
}

void validate_strategy(const MixedStrategy& strategy, const AuctionProfile& profile) {
  double budget = profile.budget(strategy.owner);
  auto check_point = [&](const Vec& p) {
    if (p.size() != profile.n_items)
      throw AuctionError(ErrorKind::support_infeasible,
                         "support point " + point_str(p) + " has wrong dimension");
    if (p.minCoeff() < -kTol)
      throw AuctionError(ErrorKind::support_infeasible,
                         "support point " + point_str(p) + " has a negative coordinate");
    if (p.sum() > budget + kTol)
      throw AuctionError(ErrorKind::support_infeasible,
                         "support point " + point_str(p) + " exceeds the owner's budget " +
                             std::to_string(budget));
  };
  for (const auto& a : strategy.atoms) {
    if (!(a.prob > 0.0))
      throw AuctionError(ErrorKind::mass_not_normalized, "atom with non-positive mass");
    check_point(a.point);
  }
  for (const auto& s : strategy.segments) {
    if (!(s.prob > 0.0))
      throw AuctionError(ErrorKind::mass_not_normalized, "segment with non-positive mass");
    if (s.length() <= kTol)
      throw AuctionError(ErrorKind::support_infeasible, "degenerate zero-length segment");
    check_point(s.a);
    check_point(s.b);  // budget feasibility extends to the segment by convexity
  }
  double mass = strategy.total_mass();
  if (!approx_eq(mass, 1.0))
    throw AuctionError(ErrorKind::mass_not_normalized,
                       "total mass is " + std::to_string(mass));
}

MarginalCdf::MarginalCdf(std::vector<Atom> atoms, std::vector<Piece> raw_pieces) {
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.x < b.x; });
  for (const auto& a : atoms) {
    if (a.mass <= 1e-13) continue;
    if (!atoms_.empty() && approx_eq(atoms_.back().x, a.x))
      atoms_.back().mass += a.mass;
    else
      atoms_.push_back(a);
  }

  // Flatten possibly-overlapping mass intervals into disjoint constant-density
  // pieces: cut at every interval end, sum densities per elementary interval.
  std::vector<double> cuts;
  for (const auto& p : raw_pieces) {
    if (p.density <= 0.0 || p.hi - p.lo <= kTol) continue;
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return approx_eq(a, b); }),
             cuts.end());
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    double lo = cuts[k], hi = cuts[k + 1];
    double density = 0.0;
    for (const auto& p : raw_pieces) {
      if (p.density <= 0.0 || p.hi - p.lo <= kTol) continue;
      if (p.lo <= lo + kTol && p.hi >= hi - kTol) density += p.density;
    }
    if (density <= 0.0) continue;
    if (!pieces_.empty() && approx_eq(pieces_.back().hi, lo) &&
        approx_eq(pieces_.back().density, density))
      pieces_.back().hi = hi;
    else
      pieces_.push_back({lo, hi, density});
  }
}

double MarginalCdf::value(double x) const {
  double f = 0.0;
  for (const auto& a : atoms_) {
    if (a.x <= x + kTol) f += a.mass;
    else break;
  }
  for (const auto& p : pieces_) {
    if (p.lo >= x) break;
    f += p.density * (std::min(x, p.hi) - p.lo);
  }
  return f;
}

double MarginalCdf::left_limit(double x) const {
  double f = 0.0;
  for (const auto& a : atoms_) {
    if (a.x < x - kTol) f += a.mass;
    else break;
  }
  for (const auto& p : pieces_) {
    if (p.lo >= x) break;
    f += p.density * (std::min(x, p.hi) - p.lo);
  }
  return f;
}

double MarginalCdf::atom_mass_at(double x) const {
  for (const auto& a : atoms_) {
    if (approx_eq(a.x, x)) return a.mass;
    if (a.x > x + kTol) break;
  }
  return 0.0;
}

double MarginalCdf::total_mass() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.mass;
  for (const auto& p : pieces_) m += p.density * (p.hi - p.lo);
  return m;
}

double MarginalCdf::sup_support() const {
  double s = 0.0;
  if (!atoms_.empty()) s = std::max(s, atoms_.back().x);
  if (!pieces_.empty()) s = std::max(s, pieces_.back().hi);
  return s;
}

double MarginalCdf::inf_support() const {
  double s = std::numeric_limits<double>::infinity();
  if (!atoms_.empty()) s = std::min(s, atoms_.front().x);
  if (!pieces_.empty()) s = std::min(s, pieces_.front().lo);
  return std::isfinite(s) ? s : 0.0;
}

std::vector<double> MarginalCdf::breakpoints() const {
  std::vector<double> bp;
  for (const auto& p : pieces_) {
    bp.push_back(p.lo);
    bp.push_back(p.hi);
  }
  for (const auto& a : atoms_) bp.push_back(a.x);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return approx_eq(a, b); }),
           bp.end());
  return bp;
}

double cdf_eval(const MarginalCdf& marginal, double x, CdfSide side) {
  return side == CdfSide::left_limit ? marginal.left_limit(x) : marginal.value(x);
}

MarginalCdf marginal_of(const MixedStrategy& strategy, int item) {
  std::vector<MarginalCdf::Atom> atoms;
  std::vector<MarginalCdf::Piece> pieces;
  for (const auto& a : strategy.atoms) atoms.push_back({a.point(item), a.prob});
  for (const auto& s : strategy.segments) {
    double lo = std::min(s.a(item), s.b(item));
    double hi = std::max(s.a(item), s.b(item));
    if (hi - lo <= kTol)
      atoms.push_back({0.5 * (lo + hi), s.prob});
    else
      pieces.push_back({lo, hi, s.prob / (hi - lo)});
  }
  return MarginalCdf(std::move(atoms), std::move(pieces));
}

double cdf_sup_distance(const MarginalCdf& lhs, const MarginalCdf& rhs) {
  std::vector<double> probes = lhs.breakpoints();
  auto more = rhs.breakpoints();
  probes.insert(probes.end(), more.begin(), more.end());
  probes.push_back(0.0);
  double d = 0.0;
  for (double x : probes) {
    d = std::max(d, std::abs(lhs.value(x) - rhs.value(x)));
    d = std::max(d, std::abs(lhs.left_limit(x) - rhs.left_limit(x)));
    d = std::max(d, std::abs(lhs.atom_mass_at(x) - rhs.atom_mass_at(x)));
  }
  return d;
}

std::vector<Vec> sample(const MixedStrategy& strategy, std::uint64_t seed, int count) {
  std::mt19937_64 eng(seed);
  std::vector<Vec> draws;
  draws.reserve(static_cast<size_t>(count));
  double mass = strategy.total_mass();
  for (int k = 0; k < count; ++k) {
    double u = uniform01(eng) * mass;
    double acc = 0.0;
    const AtomComponent* atom = nullptr;
    const SegmentComponent* seg = nullptr;
    for (const auto& a : strategy.atoms) {
      acc += a.prob;
      if (u < acc) { atom = &a; break; }
    }
    if (!atom) {
      for (const auto& s : strategy.segments) {
        acc += s.prob;
        if (u < acc) { seg = &s; break; }
      }
      if (!seg && !strategy.segments.empty()) seg = &strategy.segments.back();
      if (!seg && !strategy.atoms.empty()) atom = &strategy.atoms.back();
    }
    Vec x;
    if (atom) {
      x = atom->point;
    } else {
      double t = uniform01(eng);
      x = seg->a + t * (seg->b - seg->a);
    }
    draws.push_back(x.cwiseMax(0.0));
  }
  return draws;
}

}  // namespace allpay
