#ifndef TROPSEC_MASTERGRAPH_HPP
#define TROPSEC_MASTERGRAPH_HPP

#include "tropsec/fans.hpp"
#include "tropsec/lattice.hpp"

#include <map>
#include <string>
#include <vector>

namespace tropsec {

// Subset of the exponent set cut out by arithmetic progressions, together
// with every common difference r that reproduces it exactly.
struct ProgressionSubset {
  IntVec members;                       // sorted exponent values, size >= 2
  std::vector<std::size_t> indices;     // positions within (i_0..i_n)
  IntVec differences;                   // sorted list of generating r
  Int phi_sum;                          // sum of euler_phi over differences

  bool is_full(std::size_t n) const { return members.size() == n + 1; }
};

struct NormalizeResult {
  ExponentSequence seq;
  // normalized index j -> raw positions collapsing onto it (index 0 maps to
  // the prepended zero and is always empty)
  std::map<std::size_t, std::vector<std::size_t>> partition;
};

// Sorted distinct values divided by their gcd with 0 prepended. Throws on an
// empty list, nonpositive entries, or a single repeated value.
NormalizeResult normalize_exponents(const IntVec& raw);

// Every subset of size >= 2 obtained by intersecting an arithmetic
// progression with the exponent set, grouped with all generating common
// differences. Scans r in [1, i_n]: any larger r yields only singletons.
std::vector<ProgressionSubset> enumerate_progression_subsets(
    const ExponentSequence& e);

// The master graph: caterpillars G_{E,D}, G_{h,D} plus the progression star
// graphs, realized in Z^{n+1} with the multiplicities of the construction.
// Bivalent F nodes are retained (pruning is a separate pass); E_{i_1} is
// flagged keep-always.
RayGraph build_master_graph(const ExponentSequence& e);

struct BalanceReport {
  struct NodeResult {
    NodeLabel node;
    bool balanced;
    IntVec weighted_lift_sum;  // the balancing sum, for diagnostics
  };
  std::vector<NodeResult> nodes;
  bool all_balanced = true;
};

// Checks the balancing condition at every node: the weighted sum of
// primitive edge lifts must lie in Z<w/content(w)>. Graphs with lineality are
// handled by passing a quotient graph to this function instead.
BalanceReport check_balancing(const RayGraph& g);

// Divisorial valuation vectors of all boundary components.
struct ValuationTable {
  std::size_t n = 0;
  std::map<NodeLabel, IntVec> d;        // D(i_j), 0 <= j <= n
  std::map<Int, IntVec> e_l;            // 1 <= l <= i_{n-1}
  std::map<Int, IntVec> h_l;            // 2 <= l <= i_n
  IntVec h_cap;                         // [H]
  IntVec d_infinity;                    // [D_infinity]
  std::map<NodeLabel, IntVec> f;        // F(subset)
};

ValuationTable divisorial_valuations(const ExponentSequence& e);

struct CoarseningReport {
  struct Item {
    std::string what;
    bool ok;
    std::string detail;
  };
  std::vector<Item> items;
  bool all_ok = true;

  void add(const std::string& what, bool ok, const std::string& detail = "") {
    items.push_back({what, ok, detail});
    all_ok = all_ok && ok;
  }
};

// Verifies the coarsening identities: consecutive exceptional rays collapse
// onto the cones spanned by the rays at actual exponents, the h_{i_n} ray
// falls inside <h_{i_{n-1}}, D_{i_n}>, the two D_infinity cases, and the
// final clause that pairwise intersections of maximal cones over the master
// graph are trivial except for the F_{ending} identification.
CoarseningReport check_coarsening(const ExponentSequence& e);

// The weighted fan whose maximal cones are the cones over master-graph
// edges; when the ending subset {i_1..i_n} is a progression subset, the
// coinciding cones over D_{i_1}E_{i_1} and F_e D_{i_1} are merged with summed
// weight.
TropicalFan master_fan(const ExponentSequence& e);

}  // namespace tropsec

#endif  // TROPSEC_MASTERGRAPH_HPP
