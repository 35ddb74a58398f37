#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "tfib/error.hpp"

namespace tfib {

using Integer = mpz_class;
using LatticeVector = std::vector<Integer>;

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<LatticeVector>& rows);
  static IntMatrix from_columns(const std::vector<LatticeVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;
  bool is_identity() const;

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  LatticeVector row(std::size_t r) const;
  LatticeVector column(std::size_t c) const;
  IntMatrix transpose() const;

  IntMatrix operator*(const IntMatrix& o) const;
  LatticeVector operator*(const LatticeVector& v) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix operator-() const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Row-major nested-bracket form, e.g. [[1,0],[0,1]].
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// U * A * V == D, D diagonal with d1 | d2 | ... and d_i >= 0.
struct SnfResult {
  IntMatrix D;
  IntMatrix U;
  IntMatrix V;
  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

SnfResult smith_normal_form(const IntMatrix& A);
// Nonzero elementary divisors only; skips transform bookkeeping.
std::vector<Integer> elementary_divisors(const IntMatrix& A);
std::size_t rank(const IntMatrix& A);

// Row-style Hermite normal form with zero rows removed.
IntMatrix hermite_normal_form(const IntMatrix& A);

Integer determinant(const IntMatrix& A);
bool is_unimodular(const IntMatrix& A);
IntMatrix inverse_unimodular(const IntMatrix& A);
IntMatrix transpose_inverse(const IntMatrix& T);
IntMatrix matrix_power(const IntMatrix& T, long exponent);
IntMatrix vstack(const std::vector<IntMatrix>& blocks);

Integer content(const IntMatrix& A);
Integer content(const LatticeVector& v);
bool is_primitive(const LatticeVector& v);

// Saturated basis of {v : A v = 0}, in Hermite normal form.
std::vector<LatticeVector> kernel_saturated(const IntMatrix& A);

// Unimodular matrix whose first rows are the given rows; rows must span a saturated sublattice.
IntMatrix complete_to_basis(const std::vector<LatticeVector>& rows, std::size_t dim);

// Integer solution of A x = b when one exists.
std::optional<LatticeVector> solve_integer(const IntMatrix& A, const LatticeVector& b);

bool is_unipotent(const IntMatrix& T);
bool trivial_invariants_all_n(const std::vector<IntMatrix>& Ts);

Integer trace(const IntMatrix& T);
std::string to_string(const LatticeVector& v);

}  // namespace tfib
