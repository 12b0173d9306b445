#pragma once

#include <cstdint>
#include <vector>

#include "allpay/model.hpp"

namespace allpay {

// Point mass at a single bid vector.
struct AtomComponent {
  Vec point;
  double prob = 0.0;
};

// Probability mass spread uniformly (by arc length) over the segment a-b.
// The density per unit length is recoverable as prob / |b - a|.
struct SegmentComponent {
  Vec a;
  Vec b;
  double prob = 0.0;

  double length() const { return (b - a).norm(); }
  double density() const { return prob / length(); }
};

// Finite mixture of atoms and uniform segments in n-dimensional bid space.
struct MixedStrategy {
  int owner = 1;  // 1 or 2
  std::vector<AtomComponent> atoms;
  std::vector<SegmentComponent> segments;

  int dims() const;
  double total_mass() const;
};

// Throws mass_not_normalized or support_infeasible.
void validate_strategy(const MixedStrategy& strategy, const AuctionProfile& profile);

// One-dimensional law of one bid coordinate: finitely many atoms plus a
// piecewise-constant density. Both one-sided CDF values are evaluable
// everywhere, which utility evaluation at opponent atoms relies on.
class MarginalCdf {
 public:
  struct Atom {
    double x;
    double mass;
  };
  // CDF rises linearly with slope `density` on [lo, hi].
  struct Piece {
    double lo;
    double hi;
    double density;
  };

  MarginalCdf() = default;
  // Canonicalizes: merges coincident atoms, splits/merges overlapping mass
  // intervals into disjoint pieces (slope tolerance kTol), drops zero mass.
  MarginalCdf(std::vector<Atom> atoms, std::vector<Piece> raw_pieces);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  double value(double x) const;       // F(x)
  double left_limit(double x) const;  // F(x^-)
  double atom_mass_at(double x) const;
  double total_mass() const;
  double sup_support() const;
  double inf_support() const;
  // Sorted locations where the CDF changes shape: piece ends and atoms.
  std::vector<double> breakpoints() const;

 private:
  std::vector<Atom> atoms_;    // sorted by x, strictly separated
  std::vector<Piece> pieces_;  // sorted, disjoint, positive density
};

enum class CdfSide { left_limit, right_value };

double cdf_eval(const MarginalCdf& marginal, double x, CdfSide side);

// Projects the mixture onto one coordinate. Segments spread their mass
// uniformly over the coordinate interval; a segment perpendicular to the
// axis projects to an atom.
MarginalCdf marginal_of(const MixedStrategy& strategy, int item);

// Largest absolute discrepancy between two CDFs, probing one-sided values
// around every breakpoint of either side.
double cdf_sup_distance(const MarginalCdf& lhs, const MarginalCdf& rhs);

// i.i.d. draws; deterministic for a fixed seed, component picked by its
// probability, position on a segment uniform in arc length.
std::vector<Vec> sample(const MixedStrategy& strategy, std::uint64_t seed, int count);

}  // namespace allpay
