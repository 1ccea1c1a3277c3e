#ifndef TROPSEC_NUMERIC_HPP
#define TROPSEC_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropsec {

// Exact arbitrary-precision scalars used everywhere; no floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Raised when an exact mathematical consistency check fails (dual-construction
// mismatch, non-integral weight, unmatched crossing, ...). The CLI maps this
// to exit code 2.
class MathError : public std::runtime_error {
 public:
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a configured resource bound is exceeded. CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int lcm_int(const Int& a, const Int& b) {
  return boost::multiprecision::lcm(a, b);
}

// gcd over a range; empty range yields 0 (the convention used throughout).
inline Int gcd_range(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd_int(g, x);
  return g;
}

// gcd of the entries of a vector (its "content"); 0 for the zero vector.
inline Int content(const IntVec& v) { return gcd_range(v); }

// Divides v by its content, producing a primitive vector pointing the same
// way. The zero vector is rejected.
inline IntVec make_primitive(const IntVec& v) {
  Int c = content(v);
  if (c == 0) throw MathError("cannot normalize the zero vector");
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / c;
  return out;
}

// Extended gcd: returns g = gcd(a, b) and x, y with a*x + b*y = g.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return abs_int(a);
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw MathError("floor_div by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline IntVec add(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline IntVec scale(const Int& c, const IntVec& a) {
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
  return out;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const IntVec& a) {
  for (const Int& x : a) {
    if (x != 0) return false;
  }
  return true;
}

inline IntVec unit_vector(std::size_t dim, std::size_t j) {
  IntVec e(dim, 0);
  e[j] = 1;
  return e;
}

// True iff b = c*a for some rational c (collinearity over Q; zero vectors are
// collinear with everything).
inline bool collinear(const IntVec& a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] * b[j] != a[j] * b[i]) return false;
    }
  }
  return true;
}

// b = c*a with c an integer; requires a primitive to be meaningful.
inline bool is_integer_multiple_of(const IntVec& b, const IntVec& a_primitive) {
  if (!collinear(a_primitive, b)) return false;
  if (is_zero(b)) return true;
  for (std::size_t i = 0; i < a_primitive.size(); ++i) {
    if (a_primitive[i] != 0) return b[i] % a_primitive[i] == 0;
  }
  return false;
}

inline RatVec to_rat(const IntVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

// Clears denominators: returns the primitive integer vector on the same ray
// (positive scaling only).
inline IntVec rat_to_primitive_int(const RatVec& v) {
  Int l = 1;
  for (const Rat& x : v) l = lcm_int(l, boost::multiprecision::denominator(x));
  IntVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = boost::multiprecision::numerator(v[i]) *
           (l / boost::multiprecision::denominator(v[i]));
  }
  return make_primitive(w);
}

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string vec_to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  s += ")";
  return s;
}

inline std::string vec_to_string(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += boost::multiprecision::numerator(v[i]).str();
    if (boost::multiprecision::denominator(v[i]) != 1) {
      s += "/" + boost::multiprecision::denominator(v[i]).str();
    }
  }
  s += ")";
  return s;
}

}  // namespace tropsec

#endif  // TROPSEC_NUMERIC_HPP
