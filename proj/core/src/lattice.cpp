#include "tfib/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace tfib {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::NotUnimodular: return "NOT_UNIMODULAR";
    case ErrorCode::DeterminantNotOne: return "DETERMINANT_NOT_ONE";
    case ErrorCode::ZeroVector: return "ZERO_VECTOR";
    case ErrorCode::SemistableRequired: return "SEMISTABLE_REQUIRED";
    case ErrorCode::RelationViolated: return "RELATION_VIOLATED";
    case ErrorCode::ValencyMismatch: return "VALENCY_MISMATCH";
    case ErrorCode::NotWellBehaved: return "NOT_WELL_BEHAVED";
    case ErrorCode::InvalidGraph: return "INVALID_GRAPH";
    case ErrorCode::InvalidChain: return "INVALID_CHAIN";
    case ErrorCode::NotTiling: return "NOT_TILING";
    case ErrorCode::NotUnimodularTriangulation: return "NOT_UNIMODULAR_TRIANGULATION";
    case ErrorCode::NotFlippable: return "NOT_FLIPPABLE";
    case ErrorCode::IndexClash: return "INDEX_CLASH";
    case ErrorCode::UnknownTopology: return "UNKNOWN_TOPOLOGY";
    case ErrorCode::MalformedInput: return "MALFORMED_INPUT";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<LatticeVector>& rows) {
  if (rows.empty()) return {};
  IntMatrix M(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != M.cols_) throw Error(ErrorCode::InvalidArgument, "ragged rows");
    for (std::size_t j = 0; j < M.cols_; ++j) M(i, j) = rows[i][j];
  }
  return M;
}

IntMatrix IntMatrix::from_columns(const std::vector<LatticeVector>& cols) {
  return from_rows(cols).transpose();
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

LatticeVector IntMatrix::row(std::size_t r) const {
  return LatticeVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

LatticeVector IntMatrix::column(std::size_t c) const {
  LatticeVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in product");
  IntMatrix P(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) P(i, j) += a * o(k, j);
    }
  return P;
}

LatticeVector IntMatrix::operator*(const LatticeVector& v) const {
  if (cols_ != v.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in product");
  LatticeVector out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in sum");
  IntMatrix S = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) S.data_[i] += o.data_[i];
  return S;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in difference");
  IntMatrix S = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) S.data_[i] -= o.data_[i];
  return S;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix S = *this;
  for (auto& x : S.data_) x = -x;
  return S;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string to_string(const LatticeVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::vector<Integer> SnfResult::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

std::size_t SnfResult::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void swap_rows(IntMatrix& M, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < M.cols(); ++j) std::swap(M(a, j), M(b, j));
}

void swap_cols(IntMatrix& M, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < M.rows(); ++i) std::swap(M(i, a), M(i, b));
}

// row dst -= q * row src
void sub_row(IntMatrix& M, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t j = 0; j < M.cols(); ++j)
    if (M(src, j) != 0) M(dst, j) -= q * M(src, j);
}

// col dst -= q * col src
void sub_col(IntMatrix& M, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t i = 0; i < M.rows(); ++i)
    if (M(i, src) != 0) M(i, dst) -= q * M(i, src);
}

void negate_row(IntMatrix& M, std::size_t r) {
  for (std::size_t j = 0; j < M.cols(); ++j) M(r, j) = -M(r, j);
}

// Shared SNF loop; U and V are updated only when track is set.
void snf_in_place(IntMatrix& A, IntMatrix* U, IntMatrix* V) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool exhausted = false;
    for (;;) {
      // Pivot: smallest nonzero |a|, then lowest row, then lowest column.
      std::size_t pr = m, pc = n;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Integer& a = A(i, j);
          if (a == 0) continue;
          if (pr == m || cmpabs(a, best) < 0) {
            best = abs(a);
            pr = i;
            pc = j;
          }
        }
      if (pr == m) {
        exhausted = true;
        break;
      }
      swap_rows(A, t, pr);
      if (U) swap_rows(*U, t, pr);
      swap_cols(A, t, pc);
      if (V) swap_cols(*V, t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        Integer q = floor_div(A(i, t), A(t, t));
        sub_row(A, i, t, q);
        if (U) sub_row(*U, i, t, q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        Integer q = floor_div(A(t, j), A(t, t));
        sub_col(A, j, t, q);
        if (V) sub_col(*V, j, t, q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      // Pull a non-divisible row into the pivot row; the next pass shrinks the pivot.
      sub_row(A, t, bad, Integer(-1));
      if (U) sub_row(*U, t, bad, Integer(-1));
    }
    if (exhausted) break;
    if (A(t, t) < 0) {
      negate_row(A, t);
      if (U) negate_row(*U, t);
    }
  }
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& A) {
  if (A.empty()) throw Error(ErrorCode::InvalidArgument, "smith_normal_form of an empty matrix");
  SnfResult r{A, IntMatrix::identity(A.rows()), IntMatrix::identity(A.cols())};
  snf_in_place(r.D, &r.U, &r.V);
  return r;
}

std::vector<Integer> elementary_divisors(const IntMatrix& A) {
  if (A.empty()) return {};
  IntMatrix D = A;
  snf_in_place(D, nullptr, nullptr);
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

std::size_t rank(const IntMatrix& A) { return elementary_divisors(A).size(); }

IntMatrix hermite_normal_form(const IntMatrix& A) {
  IntMatrix H = A;
  const std::size_t m = H.rows();
  const std::size_t n = H.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (p == m || cmpabs(H(i, c), H(p, c)) < 0)) p = i;
      if (p == m) break;
      swap_rows(H, r, p);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        sub_row(H, i, r, floor_div(H(i, c), H(r, c)));
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0) negate_row(H, r);
    for (std::size_t i = 0; i < r; ++i)
      if (H(i, c) != 0) sub_row(H, i, r, floor_div(H(i, c), H(r, c)));
    ++r;
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = H(i, j);
  return out;
}

Integer determinant(const IntMatrix& A) {
  if (!A.is_square()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && M(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(M, k, p);
      sign = -sign;
    }
    // Bareiss step: exact division by the previous pivot.
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        M(i, j) = v;
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& A) {
  if (!A.is_square() || A.empty()) return false;
  Integer d = determinant(A);
  return d == 1 || d == -1;
}

IntMatrix inverse_unimodular(const IntMatrix& A) {
  if (!is_unimodular(A)) throw Error(ErrorCode::NotUnimodular, "matrix " + A.to_string() + " has det != +-1");
  // U A V = I  =>  A^{-1} = V U.
  SnfResult s = smith_normal_form(A);
  return s.V * s.U;
}

IntMatrix transpose_inverse(const IntMatrix& T) { return inverse_unimodular(T).transpose(); }

IntMatrix matrix_power(const IntMatrix& T, long exponent) {
  if (!T.is_square()) throw Error(ErrorCode::InvalidArgument, "power of a non-square matrix");
  IntMatrix base = exponent < 0 ? inverse_unimodular(T) : T;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  IntMatrix out = IntMatrix::identity(T.rows());
  while (e) {
    if (e & 1UL) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

IntMatrix vstack(const std::vector<IntMatrix>& blocks) {
  std::size_t rows = 0;
  std::size_t cols = blocks.empty() ? 0 : blocks.front().cols();
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw Error(ErrorCode::InvalidArgument, "vstack column mismatch");
    rows += b.rows();
  }
  IntMatrix S(rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks)
    for (std::size_t i = 0; i < b.rows(); ++i, ++r)
      for (std::size_t j = 0; j < cols; ++j) S(r, j) = b(i, j);
  return S;
}

Integer content(const IntMatrix& A) {
  Integer g = 0;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) g = gcd(g, A(i, j));
  return g;
}

Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

bool is_primitive(const LatticeVector& v) {
  Integer g = content(v);
  if (g == 0) throw Error(ErrorCode::ZeroVector, "primitivity of the zero vector is undefined");
  return g == 1;
}

std::vector<LatticeVector> kernel_saturated(const IntMatrix& A) {
  const std::size_t n = A.cols();
  if (n == 0) return {};
  if (A.rows() == 0 || A.is_zero()) {
    std::vector<LatticeVector> basis;
    for (std::size_t i = 0; i < n; ++i) {
      LatticeVector e(n, Integer(0));
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  SnfResult s = smith_normal_form(A);
  const std::size_t r = s.rank();
  if (r == n) return {};
  std::vector<LatticeVector> vs;
  for (std::size_t j = r; j < n; ++j) vs.push_back(s.V.column(j));
  IntMatrix H = hermite_normal_form(IntMatrix::from_rows(vs));
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < H.rows(); ++i) out.push_back(H.row(i));
  return out;
}

IntMatrix complete_to_basis(const std::vector<LatticeVector>& rows, std::size_t dim) {
  if (rows.empty()) return IntMatrix::identity(dim);
  IntMatrix K = IntMatrix::from_rows(rows);
  if (K.cols() != dim) throw Error(ErrorCode::InvalidArgument, "basis completion dimension mismatch");
  const std::size_t k = K.rows();
  SnfResult s = smith_normal_form(K);
  for (std::size_t i = 0; i < k; ++i)
    if (s.D(i, i) != 1) throw Error(ErrorCode::InvalidArgument, "rows do not span a saturated sublattice");
  IntMatrix Vinv = inverse_unimodular(s.V);
  IntMatrix M(dim, dim);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < dim; ++j) M(i, j) = K(i, j);
  for (std::size_t i = k; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) M(i, j) = Vinv(i, j);
  return M;
}

std::optional<LatticeVector> solve_integer(const IntMatrix& A, const LatticeVector& b) {
  if (A.rows() != b.size()) throw Error(ErrorCode::InvalidArgument, "solve_integer dimension mismatch");
  SnfResult s = smith_normal_form(A);
  LatticeVector ub = s.U * b;
  LatticeVector y(A.cols(), Integer(0));
  for (std::size_t i = 0; i < ub.size(); ++i) {
    const Integer d = i < std::min(A.rows(), A.cols()) ? s.D(i, i) : Integer(0);
    if (d == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (!mpz_divisible_p(ub[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    y[i] = ub[i] / d;
  }
  return s.V * y;
}

bool is_unipotent(const IntMatrix& T) {
  if (!T.is_square()) throw Error(ErrorCode::InvalidArgument, "is_unipotent needs a square matrix");
  const std::size_t n = T.rows();
  IntMatrix N = T - IntMatrix::identity(n);
  IntMatrix P = N;
  for (std::size_t k = 1; k < n; ++k) P = P * N;
  return P.is_zero();
}

bool trivial_invariants_all_n(const std::vector<IntMatrix>& Ts) {
  if (Ts.empty()) throw Error(ErrorCode::InvalidArgument, "trivial_invariants_all_n of an empty list");
  const std::size_t d = Ts.front().rows();
  std::vector<IntMatrix> blocks;
  for (const auto& T : Ts) {
    if (!T.is_square() || T.rows() != d) throw Error(ErrorCode::InvalidArgument, "matrices must share one square dimension");
    blocks.push_back(T - IntMatrix::identity(d));
  }
  auto ed = elementary_divisors(vstack(blocks));
  return ed.size() == d && std::all_of(ed.begin(), ed.end(), [](const Integer& x) { return x == 1; });
}

Integer trace(const IntMatrix& T) {
  if (!T.is_square()) throw Error(ErrorCode::InvalidArgument, "trace of a non-square matrix");
  Integer t = 0;
  for (std::size_t i = 0; i < T.rows(); ++i) t += T(i, i);
  return t;
}

}  // namespace tfib
