#ifndef TROPSEC_CHOW_HPP
#define TROPSEC_CHOW_HPP

#include "tropsec/polytope.hpp"

#include <vector>

namespace tropsec {

// Tropical Chow hypersurface: Minkowski sums of fan cones with reflected
// coordinate orthants, with lattice-index weights.
struct ChowFan {
  std::size_t d = 0;        // dimension of the source cones in TP P^n
  std::size_t ambient = 0;  // n + 1
  std::vector<IntVec> lineality;  // {1, exponent vector}
  struct ChowCone {
    std::vector<IntVec> sigma_rays;   // the two graph rays (ambient coords)
    std::vector<std::size_t> orthant; // J: reflected basis directions
    Rat weight;
  };
  std::vector<ChowCone> cones;
};

// For every maximal cone sigma and every (n-d-1)-subset J of {0..n}: keep
// sigma + C_J when it has codimension one, weighted by the source weight
// times the gcd of maximal minors of the combined generator matrix (built on
// a saturated basis of the sigma span) in quotient coordinates; rank
// deficient pairs are discarded.
ChowFan chow_map(const SecantFan& fan, std::size_t d);

WeightedConeFan fan_from_chow(const ChowFan& cf);

// Ridge-grouped balancing of a codimension-one weighted fan: at every ridge,
// the weighted sum of primitive transverse generators must fall back into
// the ridge span.
bool codim1_fan_balanced(const WeightedConeFan& fan, std::string* why);

struct ChowPolytopeResult {
  Polytope polytope;
  std::pair<Int, Int> degrees;  // multidegree of the Chow polytope
  std::size_t chamber_count = 0;
};

// Orthant-shooting pipeline: enumerate vertices of the Chow polytope of the
// first secant variety and take their hull. Requires n >= 5 (the n = 4 case
// is the Newton-polytope pipeline).
ChowPolytopeResult chow_polytope(const ExponentSequence& e,
                                 const EnumerateOptions& opt = {});

// Both sides of the weighted-degree relation: the exponent-graded degree of
// the Chow hypersurface and its quotient by the codimension. Reported, not
// asserted.
struct ChowDegreeReport {
  Int degree_ones;      // multidegree under the all-ones grading
  Int degree_weighted;  // multidegree under the exponent grading
  Int codim;            // n - 3
  bool ones_divisible;
  bool weighted_divisible;
};

ChowDegreeReport chow_degree_report(const ChowPolytopeResult& r,
                                    const ExponentSequence& e);

}  // namespace tropsec

#endif  // TROPSEC_CHOW_HPP
