#ifndef TROPSEC_LATTICE_HPP
#define TROPSEC_LATTICE_HPP

#include "tropsec/matrix.hpp"
#include "tropsec/numeric.hpp"

namespace tropsec {

// Euler's totient. r = 0 is rejected.
Int euler_phi(const Int& r);

// gcd over all k x k minors (absolute values) of m; 0 when all vanish and 1
// for k = 0 (empty minor). Computed both via the Smith normal form (product
// of the first k invariant factors) and by direct minor enumeration; the two
// routes are asserted equal.
Int gcd_of_maximal_minors(const IntMatrix& m, std::size_t k);

// Index of the sublattice generated by the rows of span_small inside the
// saturation of the common rational row span. Both inputs must have full row
// rank and span the same subspace.
Int lattice_index_quotient(const IntMatrix& span_small,
                           const IntMatrix& span_big);

// Lift data produced by primitive_lift.
struct PrimitiveLift {
  IntVec u;        // completes w/content(w) to a basis of sat(Z<w, wi>)
  Rat coeff_w;     // u = coeff_w * w + coeff_wi * wi, both >= 0
  Rat coeff_wi;    // strictly positive
};

// The unique generator of sat(Z<w,wi>)/Z<w0> whose lifts meet the cone
// R>=0<w, wi>, represented by the lift with minimal nonnegative coefficient
// on w. Throws on collinear inputs ("no transverse direction").
PrimitiveLift primitive_lift(const IntVec& w, const IntVec& wi);

}  // namespace tropsec

#endif  // TROPSEC_LATTICE_HPP
