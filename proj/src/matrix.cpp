#include "tropsec/matrix.hpp"

#include <algorithm>
#include <cassert>

namespace tropsec {

Int determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw MathError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

// Fraction-free row echelon; returns pivot columns. Destroys m.
std::vector<std::size_t> echelon(IntMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      Int a = m(r, c), b = m(i, c);
      Int g = gcd_int(a, b);
      Int fa = b / g, fr = a / g;
      for (std::size_t j = c; j < m.cols(); ++j) {
        m(i, j) = m(i, j) * fr - m(r, j) * fa;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(IntMatrix m) { return echelon(m).size(); }

IntVec smith_invariant_factors(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntVec diag;
  std::size_t t = 0;
  const std::size_t lim = std::min(rows, cols);
  while (t < lim) {
    // locate the smallest nonzero entry in the trailing block
    bool found = false;
    std::size_t bi = t, bj = t;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (m(i, j) != 0) {
          Int a = abs_int(m(i, j));
          if (!found || a < best) {
            found = true;
            best = a;
            bi = i;
            bj = j;
          }
        }
      }
    }
    if (!found) break;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(t, j), m(bi, j));
    for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, t), m(i, bj));

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (m(i, t) != 0) {
        Int q = m(i, t) / m(t, t);
        for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) clean = false;
      }
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (m(t, j) != 0) {
        Int q = m(t, j) / m(t, t);
        for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
    }
    if (!clean) continue;  // pivot shrank; repeat with the same t

    // pivot must divide the rest of the block
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i) {
      for (std::size_t j = t + 1; j < cols && divides; ++j) {
        if (m(i, j) % m(t, t) != 0) {
          for (std::size_t jj = t; jj < cols; ++jj) m(t, jj) += m(i, jj);
          divides = false;
        }
      }
    }
    if (!divides) continue;
    diag.push_back(abs_int(m(t, t)));
    ++t;
  }
  return diag;
}

IntMatrix hnf_rows(IntMatrix m, IntMatrix* u) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix uu = IntMatrix::identity(rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // gcd the column below r into row r
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(p, j));
      for (std::size_t j = 0; j < rows; ++j) std::swap(uu(r, j), uu(p, j));
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      while (m(i, c) != 0) {
        Int q = m(r, c) / m(i, c);
        for (std::size_t j = 0; j < cols; ++j) m(r, j) -= q * m(i, j);
        for (std::size_t j = 0; j < rows; ++j) uu(r, j) -= q * uu(i, j);
        for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(i, j));
        for (std::size_t j = 0; j < rows; ++j) std::swap(uu(r, j), uu(i, j));
      }
    }
    if (m(r, c) < 0) {
      for (std::size_t j = 0; j < cols; ++j) m(r, j) = -m(r, j);
      for (std::size_t j = 0; j < rows; ++j) uu(r, j) = -uu(r, j);
    }
    // reduce entries above the pivot
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(m(i, c), m(r, c));
      if (q != 0) {
        for (std::size_t j = 0; j < cols; ++j) m(i, j) -= q * m(r, j);
        for (std::size_t j = 0; j < rows; ++j) uu(i, j) -= q * uu(r, j);
      }
    }
    ++r;
  }
  if (u) *u = uu;
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
  }
  return out;
}

IntMatrix saturation_basis(const IntMatrix& m) {
  // Saturation via the kernel-of-kernel route: sat(L) = ker(ker(L)^T)^T,
  // computed with HNF and exact rational elimination.
  IntMatrix h = hnf_rows(m);
  const std::size_t k = h.rows();
  if (k == 0) return IntMatrix(0, m.cols());
  std::vector<IntVec> kern = kernel_basis(h);
  if (kern.empty()) {
    // full rank lattice: saturation is Z^n, but respect the span: k == cols
    return IntMatrix::identity(m.cols());
  }
  IntMatrix kt = IntMatrix::from_rows(kern);
  std::vector<IntVec> sat = kernel_basis(kt);
  if (sat.size() != k) throw MathError("saturation rank mismatch");
  // Rows of sat generate a saturated lattice already (kernel lattices are
  // saturated); HNF for a canonical presentation.
  return hnf_rows(IntMatrix::from_rows(sat));
}

namespace {

// Exact inverse of a unimodular matrix.
IntMatrix inverse_unimodular(const IntMatrix& u) {
  const std::size_t n = u.rows();
  IntMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<RatVec> x = solve(u, unit_vector(n, j));
    if (!x) throw MathError("inverse_unimodular: singular input");
    for (std::size_t i = 0; i < n; ++i) {
      if (boost::multiprecision::denominator((*x)[i]) != 1) {
        throw MathError("inverse_unimodular: input not unimodular");
      }
      inv(i, j) = boost::multiprecision::numerator((*x)[i]);
    }
  }
  return inv;
}

}  // namespace

IntMatrix complete_to_unimodular(const IntMatrix& m) {
  const std::size_t k = m.rows(), n = m.cols();
  IntVec d = smith_invariant_factors(m);
  if (d.size() != k) throw MathError("complete_to_unimodular: rank deficient");
  for (const Int& x : d) {
    if (x != 1) throw MathError("complete_to_unimodular: lattice not saturated");
  }
  // Column HNF via row HNF of the transpose: Ut * m^T = [R; 0], so with
  // V = Ut^T we get m * V = [R^T | 0] with R^T unimodular (saturated lattice).
  // Writing W = V^{-1}, the rows of m equal R^T * (first k rows of W), hence
  // [m; last n-k rows of W] is unimodular and completes the given rows.
  IntMatrix ut;
  hnf_rows(m.transposed(), &ut);
  IntMatrix w = inverse_unimodular(ut.transposed());
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(i, j);
  }
  for (std::size_t i = k; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = w(i, j);
  }
  Int det = determinant(out);
  if (det != 1 && det != -1) throw MathError("complete_to_unimodular failed");
  return out;
}

std::vector<IntVec> kernel_basis(const IntMatrix& m) {
  IntMatrix e = m;
  std::vector<std::size_t> pivots = echelon(e);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<IntVec> basis;
  for (std::size_t freec = 0; freec < n; ++freec) {
    if (is_pivot[freec]) continue;
    RatVec x(n, Rat(0));
    x[freec] = 1;
    // back-substitute through the echelon rows
    for (std::size_t pi = pivots.size(); pi-- > 0;) {
      std::size_t pc = pivots[pi];
      Rat s = 0;
      for (std::size_t j = pc + 1; j < n; ++j) s += Rat(e(pi, j)) * x[j];
      x[pc] = -s / Rat(e(pi, pc));
    }
    basis.push_back(rat_to_primitive_int(x));
  }
  return basis;
}

std::optional<IntVec> kernel_vector(const IntMatrix& m) {
  std::vector<IntVec> b = kernel_basis(m);
  if (b.size() != 1) return std::nullopt;
  return b[0];
}

std::optional<RatVec> solve(const IntMatrix& a, const RatVec& b) {
  const std::size_t rows = a.rows(), cols = a.cols();
  // rational Gaussian elimination on the augmented matrix
  std::vector<RatVec> m(rows, RatVec(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = Rat(a(i, j));
    m[i][cols] = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i != r && m[i][c] != 0) {
        Rat f = m[i][c] / m[r][c];
        for (std::size_t j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (m[i][cols] != 0) return std::nullopt;
  }
  RatVec x(cols, Rat(0));
  for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
    // rows were fully reduced; every non-pivot coordinate stays 0
    Rat s = m[pi][cols];
    for (std::size_t j = pivots[pi] + 1; j < cols; ++j) {
      if (m[pi][j] != 0) s -= m[pi][j] * x[j];
    }
    x[pivots[pi]] = s / m[pi][pivots[pi]];
  }
  // verify (guards the underdetermined path)
  for (std::size_t i = 0; i < rows; ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < cols; ++j) s += Rat(a(i, j)) * x[j];
    if (s != b[i]) return std::nullopt;
  }
  return x;
}

std::optional<RatVec> solve(const IntMatrix& a, const IntVec& b) {
  return solve(a, to_rat(b));
}

std::optional<RatVec> coordinates_in_row_basis(const IntMatrix& basis_rows,
                                               const IntVec& b) {
  return solve(basis_rows.transposed(), b);
}

}  // namespace tropsec
