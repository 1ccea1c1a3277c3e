#ifndef TROPSEC_SECANTGRAPH_HPP
#define TROPSEC_SECANTGRAPH_HPP

#include "tropsec/mastergraph.hpp"

#include <string>
#include <vector>

namespace tropsec {

// Rank-2 lineality lattice of the secant fan: the all-ones vector and the
// exponent vector.
struct LinealityLattice {
  IntVec l1;  // (1, ..., 1)
  IntVec l2;  // (0, i_1, ..., i_n)
  std::vector<IntVec> generators() const { return {l1, l2}; }
};

LinealityLattice lineality_lattice(const ExponentSequence& e);

// One 4-dimensional cone of the secant fan: two graph rays plus the
// lineality, with its weight and the master cones mapping onto it.
struct SecantCone {
  NodeLabel a, b;
  Rat weight;
  // provenance: master-fan cone (by labels) with its per-cone contribution
  std::vector<std::pair<EdgeKey, Rat>> provenance;
};

struct SecantFan {
  ExponentSequence e;
  LinealityLattice lin;
  Quotient quotient;                  // modulo {l1, l2}
  std::map<NodeLabel, IntVec> rays;   // reduced node vectors in Z^{n+1}
  std::vector<SecantCone> cones;

  Cone cone_of(const SecantCone& c) const {
    return Cone{{rays.at(c.a), rays.at(c.b)}, lin.generators()};
  }
  RayGraph to_graph() const;
};

// Weight contribution of one master cone under the Hadamard push-forward:
// (1/2) * m_sigma * gcd(4x4 minors of (x|y|l1|l2)) / gcd(2x2 minors of (x|y)).
Rat secant_cone_weight(const IntVec& x, const IntVec& y, const Rat& m_sigma,
                       const LinealityLattice& lin);

// Reduces the master fan modulo the lineality lattice: drops cones that are
// not 4-dimensional (the drop list is asserted against the expected
// pattern), identifies rays that coincide modulo lineality, and sums the
// push-forward contributions per surviving cone. Totals are asserted
// integral.
SecantFan reduce_master_mod_lineality(const TropicalFan& mf,
                                      const ExponentSequence& e);

enum class WeightMode { LatticeIndex, ClosedForm };

// The tropical secant graph. Lattice-index weights come from the master-fan
// reduction (the default); closed-form weights evaluate the printed
// formulas literally, including the empty-gcd-is-0 convention.
RayGraph build_tropical_secant_graph(const ExponentSequence& e,
                                     WeightMode mode = WeightMode::LatticeIndex);

// Differences between the two constructions. Edges in the documented
// discrepancy class (D_{i_j}E_{i_j} edges, where the printed formula is
// known to disagree with the lattice index) are flagged, all other
// differences are errors.
struct DualConstructionReport {
  struct Diff {
    EdgeKey edge;
    Rat lattice_weight;
    Rat closed_weight;
    bool flagged;  // true: known discrepancy class
  };
  std::vector<Diff> diffs;
  bool structurally_equal = true;
  std::string detail;
  bool ok() const {
    if (!structurally_equal) return false;
    for (const Diff& d : diffs) {
      if (!d.flagged) return false;
    }
    return true;
  }
};

DualConstructionReport compare_dual_constructions(const ExponentSequence& e);

// Builds the secant fan and asserts the cross-construction equality (modulo
// the documented discrepancy class). Throws MathError with a diff report on
// mismatch.
SecantFan secant_fan(const ExponentSequence& e);

// First tropical secant complex: a chain with n-1 vertices.
struct SecantComplex {
  std::vector<RatVec> vertices;  // v^(1), ..., v^(n-1); chain edges implied
};

SecantComplex secant_complex(const ExponentSequence& e);

}  // namespace tropsec

#endif  // TROPSEC_SECANTGRAPH_HPP
