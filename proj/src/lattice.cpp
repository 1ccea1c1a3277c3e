#include "tropsec/lattice.hpp"

#include <algorithm>
#include <vector>

namespace tropsec {

Int euler_phi(const Int& r) {
  if (r <= 0) throw std::invalid_argument("euler_phi requires r >= 1");
  Int n = r;
  Int result = r;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Advances sel to the next k-subset of {0..n-1}; false when exhausted.
bool next_subset(std::vector<std::size_t>& sel, std::size_t n) {
  const std::size_t k = sel.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (sel[i] + (k - i) < n) {
      ++sel[i];
      for (std::size_t t = i + 1; t < k; ++t) sel[t] = sel[t - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> first_subset(std::size_t k) {
  std::vector<std::size_t> sel(k);
  for (std::size_t i = 0; i < k; ++i) sel[i] = i;
  return sel;
}

Int gcd_minors_by_enumeration(const IntMatrix& m, std::size_t k) {
  Int g = 0;
  std::vector<std::size_t> rsel = first_subset(k);
  do {
    std::vector<std::size_t> csel = first_subset(k);
    do {
      IntMatrix sub(k, k);
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rsel[a], csel[b]);
      }
      g = gcd_int(g, determinant(sub));
    } while (next_subset(csel, m.cols()));
  } while (next_subset(rsel, m.rows()));
  return g;
}

Int gcd_minors_by_snf(const IntMatrix& m, std::size_t k) {
  IntVec d = smith_invariant_factors(m);
  if (d.size() < k) return 0;
  Int p = 1;
  for (std::size_t i = 0; i < k; ++i) p *= d[i];
  return p;
}

}  // namespace

Int gcd_of_maximal_minors(const IntMatrix& m, std::size_t k) {
  if (k == 0) return 1;
  if (k > std::min(m.rows(), m.cols())) {
    throw std::invalid_argument("minor size exceeds matrix dimensions");
  }
  Int via_snf = gcd_minors_by_snf(m, k);
  Int via_enum = gcd_minors_by_enumeration(m, k);
  if (via_snf != via_enum) {
    throw MathError("gcd_of_maximal_minors: SNF and enumeration disagree (" +
                    via_snf.str() + " vs " + via_enum.str() + ")");
  }
  return via_snf;
}

Int lattice_index_quotient(const IntMatrix& span_small,
                           const IntMatrix& span_big) {
  const std::size_t k = span_small.rows();
  if (rank(span_small) != k || rank(span_big) != span_big.rows() ||
      k != span_big.rows()) {
    throw MathError("degenerate span");
  }
  // same rational span required
  IntMatrix stacked(2 * k, span_small.cols());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < span_small.cols(); ++j) {
      stacked(i, j) = span_small(i, j);
      stacked(k + i, j) = span_big(i, j);
    }
  }
  if (rank(stacked) != k) throw MathError("degenerate span");
  Int num = gcd_of_maximal_minors(span_small, k);
  Int den = gcd_of_maximal_minors(span_big, k);
  if (num % den != 0) throw MathError("non-integral lattice index");
  return num / den;
}

PrimitiveLift primitive_lift(const IntVec& w, const IntVec& wi) {
  if (is_zero(w)) throw std::invalid_argument("primitive_lift: w = 0");
  if (collinear(w, wi)) throw MathError("no transverse direction");
  const Int c = content(w);
  const IntVec w0 = make_primitive(w);

  IntMatrix sat = saturation_basis(IntMatrix::from_rows({w, wi}));
  if (sat.rows() != 2) throw MathError("primitive_lift: saturation rank != 2");

  // w0 = a*V1 + b*V2 with gcd(a, b) = 1 since w0 is primitive
  std::optional<RatVec> co = coordinates_in_row_basis(sat, w0);
  if (!co) throw MathError("primitive_lift: w outside saturation");
  Int a = boost::multiprecision::numerator((*co)[0]);
  Int b = boost::multiprecision::numerator((*co)[1]);
  if (boost::multiprecision::denominator((*co)[0]) != 1 ||
      boost::multiprecision::denominator((*co)[1]) != 1) {
    throw MathError("primitive_lift: non-integral basis coordinates");
  }
  Int p, q;
  Int g = ext_gcd(a, b, p, q);
  if (g != 1) throw MathError("primitive_lift: w0 not primitive in saturation");
  // a*q' - b*p' = 1 with (p', q') from ext_gcd output (a*p + b*q = 1)
  IntVec u0 = sub(scale(q, sat.row(0)), scale(p, sat.row(1)));
  // check: det of coordinates [[a, b], [-?]] ... u0 = q*V1 - p*V2 gives
  // a*(-p) - b*q = -(a*p + b*q) = -1, a unimodular pair either way.

  // wi = alpha*w0 + beta*u0 with integers; flip u0 so beta > 0
  std::optional<RatVec> cw = coordinates_in_row_basis(
      IntMatrix::from_rows({w0, u0}), wi);
  if (!cw) throw MathError("primitive_lift: wi escaped the saturation");
  Rat alpha = (*cw)[0], beta = (*cw)[1];
  if (boost::multiprecision::denominator(alpha) != 1 ||
      boost::multiprecision::denominator(beta) != 1) {
    throw MathError("primitive_lift: non-integral expansion of wi");
  }
  if (beta < 0) {
    u0 = scale(-1, u0);
    beta = -beta;
  }
  Int ai = boost::multiprecision::numerator(alpha);
  Int bi = boost::multiprecision::numerator(beta);

  // canonical representative: u = u0 + k*w0 with k = ceil(alpha/beta), the
  // lift in the cone R>=0<w, wi> whose coefficient on w is minimal
  Int k = ceil_div(ai, bi);
  IntVec u = add(u0, scale(k, w0));

  PrimitiveLift out;
  out.u = u;
  out.coeff_wi = Rat(1) / Rat(bi);
  out.coeff_w = (Rat(k) - Rat(ai) / Rat(bi)) / Rat(c);
  if (out.coeff_w < 0 || out.coeff_wi <= 0) {
    throw MathError("primitive_lift: canonical representative left the cone");
  }
  return out;
}

}  // namespace tropsec
