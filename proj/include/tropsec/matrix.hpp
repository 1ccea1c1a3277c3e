#ifndef TROPSEC_MATRIX_HPP
#define TROPSEC_MATRIX_HPP

#include "tropsec/numeric.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tropsec {

// Dense matrix of exact integers. Small sizes throughout (dim <= ~12), so a
// flat row-major vector is plenty.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVec>& rows) {
    if (rows.empty()) return IntMatrix(0, 0);
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[0].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_cols(const std::vector<IntVec>& cols) {
    if (cols.empty()) return IntMatrix(0, 0);
    IntMatrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (std::size_t i = 0; i < cols[0].size(); ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVec row(std::size_t i) const {
    IntVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  IntVec col(std::size_t j) const {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<IntVec> row_list() const {
    std::vector<IntVec> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> data_;
};

// Determinant by fraction-free Bareiss elimination.
Int determinant(IntMatrix m);

// Rank over Q.
std::size_t rank(IntMatrix m);

// Smith normal form. Returns the diagonal invariant factors d_1 | d_2 | ...
// (nonnegative, trailing zeros trimmed). Row/column gcd reduction with a
// smallest-pivot heuristic to limit coefficient growth.
IntVec smith_invariant_factors(IntMatrix m);

// Hermite normal form of the row lattice (row-style, lower-staircase).
// Returns the nonzero rows; U (if given) collects the unimodular row
// transform so that U * input = [hnf; 0].
IntMatrix hnf_rows(IntMatrix m, IntMatrix* u = nullptr);

// Basis of the saturation of the row lattice: a basis of (row span) cap Z^n.
// Rows are primitive parts of an HNF-completed unimodular basis.
IntMatrix saturation_basis(const IntMatrix& m);

// Completes the rows of `m` (a basis of a saturated rank-k lattice) to a
// unimodular (n x n) matrix. Throws if the row lattice is not saturated.
IntMatrix complete_to_unimodular(const IntMatrix& m);

// Primitive integer kernel vector of a matrix whose kernel has dimension 1;
// nullopt when the kernel dimension differs from 1.
std::optional<IntVec> kernel_vector(const IntMatrix& m);

// Basis of the (right) kernel over Q, cleared to primitive integer vectors.
std::vector<IntVec> kernel_basis(const IntMatrix& m);

// Solves A x = b exactly over Q. Returns nullopt when inconsistent. When the
// solution is not unique, one solution is returned (least in the eliminated
// coordinates); callers that require uniqueness should check rank first.
std::optional<RatVec> solve(const IntMatrix& a, const IntVec& b);
std::optional<RatVec> solve(const IntMatrix& a, const RatVec& b);

// Expresses b in the basis given by the rows of `basis_rows` (must have full
// row rank); nullopt when b is outside the row span.
std::optional<RatVec> coordinates_in_row_basis(const IntMatrix& basis_rows,
                                               const IntVec& b);

}  // namespace tropsec

#endif  // TROPSEC_MATRIX_HPP
