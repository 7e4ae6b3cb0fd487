#pragma once

// Exact linear algebra over the integers: Hermite and Smith normal forms,
// kernels, cokernels and finite quotients of lattices.
//
// Every matrix is a value type holding arbitrary-precision entries. Lattices
// are represented by the column span of a matrix.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "periods/errors.hpp"

namespace periods {

using Integer = boost::multiprecision::cpp_int;

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Row-major literal, e.g. IntegerMatrix{{1, 1}, {0, -1}}.
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_)
        raise(ErrorKind::DimensionMismatch, "ragged matrix literal");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
  }

  static IntegerMatrix diagonal(const std::vector<long long>& d) {
    IntegerMatrix D(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) D(i, i) = d[i];
    return D;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntegerMatrix column_range(std::size_t first, std::size_t last) const {
    IntegerMatrix out(rows_, last - first);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = first; j < last; ++j) out(i, j - first) = (*this)(i, j);
    return out;
  }
  IntegerMatrix column(std::size_t j) const { return column_range(j, j + 1); }

  IntegerMatrix transpose() const {
    IntegerMatrix T(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
    return T;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
  }

  bool column_is_zero(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, j) != 0) return false;
    return true;
  }

  // Elementary operations; the normal-form algorithms are written in terms of these.
  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void negate_column(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  /// column[dst] += factor * column[src]
  void add_column_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// (column[a], column[b]) <- (p*a + q*b, r*a + s*b)
  void combine_columns(std::size_t a, std::size_t b, const Integer& p, const Integer& q,
                       const Integer& r, const Integer& s) {
    for (std::size_t i = 0; i < rows_; ++i) {
      Integer x = (*this)(i, a), y = (*this)(i, b);
      (*this)(i, a) = p * x + q * y;
      (*this)(i, b) = r * x + s * y;
    }
  }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_)
      raise(ErrorKind::DimensionMismatch, "matrix product " + a.shape() + " * " + b.shape());
    IntegerMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntegerMatrix operator+(IntegerMatrix a, const IntegerMatrix& b) {
    a.check_same_shape(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend IntegerMatrix operator-(IntegerMatrix a, const IntegerMatrix& b) {
    a.check_same_shape(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend IntegerMatrix operator-(IntegerMatrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }
  friend IntegerMatrix operator*(const Integer& s, IntegerMatrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  void check_same_shape(const IntegerMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      raise(ErrorKind::DimensionMismatch, shape() + " vs " + b.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// [A | B]
inline IntegerMatrix hstack(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows())
    raise(ErrorKind::DimensionMismatch, "hstack " + a.shape() + " | " + b.shape());
  IntegerMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

namespace detail {

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct Bezout {
  Integer gcd, s, t;  // s*a + t*b = gcd >= 0
};

inline Bezout extended_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

}  // namespace detail

/// Fraction-free (Bareiss) determinant; the empty matrix has determinant 1.
inline Integer determinant(const IntegerMatrix& a) {
  if (!a.is_square()) raise(ErrorKind::DimensionMismatch, "determinant of " + a.shape());
  const std::size_t n = a.rows();
  IntegerMatrix m = a;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return n == 0 ? Integer(1) : sign * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntegerMatrix& u) {
  if (!u.is_square()) return false;
  Integer d = determinant(u);
  return d == 1 || d == -1;
}

struct HermiteForm {
  IntegerMatrix H;  // H = A * U
  IntegerMatrix U;  // unimodular
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // pivot row of column j, j < rank
};

/// Column-style Hermite normal form. The first `rank` columns of H carry
/// strictly increasing pivot rows with positive pivots, each entry left of a
/// pivot in its row lies in [0, pivot), and all remaining columns are zero.
inline HermiteForm hermite_normal_form(const IntegerMatrix& a) {
  HermiteForm out{a, IntegerMatrix::identity(a.cols()), 0, {}};
  IntegerMatrix& H = out.H;
  IntegerMatrix& U = out.U;
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t pc = 0;
  for (std::size_t i = 0; i < m && pc < n; ++i) {
    for (std::size_t k = pc + 1; k < n; ++k) {
      if (H(i, k) == 0) continue;
      if (H(i, pc) == 0) {
        H.swap_columns(pc, k);
        U.swap_columns(pc, k);
        continue;
      }
      const Integer a_ = H(i, pc), b_ = H(i, k);
      auto [g, s, t] = detail::extended_gcd(a_, b_);
      const Integer r = -b_ / g, q = a_ / g;
      H.combine_columns(pc, k, s, t, r, q);
      U.combine_columns(pc, k, s, t, r, q);
    }
    if (H(i, pc) == 0) continue;
    if (H(i, pc) < 0) {
      H.negate_column(pc);
      U.negate_column(pc);
    }
    const Integer pivot = H(i, pc);
    for (std::size_t j = 0; j < pc; ++j) {
      Integer f = -detail::floor_div(H(i, j), pivot);
      H.add_column_multiple(j, pc, f);
      U.add_column_multiple(j, pc, f);
    }
    out.pivot_rows.push_back(i);
    ++pc;
  }
  out.rank = pc;
  return out;
}

inline std::size_t rank(const IntegerMatrix& a) { return hermite_normal_form(a).rank; }

/// Canonical basis (HNF columns) of the lattice spanned by the columns of `a`.
inline IntegerMatrix column_basis(const IntegerMatrix& a) {
  HermiteForm h = hermite_normal_form(a);
  return h.H.column_range(0, h.rank);
}

struct SmithForm {
  IntegerMatrix S;  // S = U * A * V
  IntegerMatrix U;
  IntegerMatrix V;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

inline SmithForm smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm out{a, IntegerMatrix::identity(m), IntegerMatrix::identity(n)};
  IntegerMatrix& S = out.S;
  IntegerMatrix& U = out.U;
  IntegerMatrix& V = out.V;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = m, pj = n;
      Integer best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (S(i, j) == 0) continue;
          Integer v = abs(S(i, j));
          if (pi == m || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi == m) return out;  // trailing block is zero
      S.swap_rows(t, pi);
      U.swap_rows(t, pi);
      S.swap_columns(t, pj);
      V.swap_columns(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q = -(S(i, t) / S(t, t));
        S.add_row_multiple(i, t, q);
        U.add_row_multiple(i, t, q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q = -(S(t, j) / S(t, t));
        S.add_column_multiple(j, t, q);
        V.add_column_multiple(j, t, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility chain: fold an offending row into the pivot row and retry
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            S.add_row_multiple(t, i, 1);
            U.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return out;
}

/// Finite abelian group given by its invariant factors d1 | d2 | ... (each >= 2).
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<Integer> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] < 2)
        raise(ErrorKind::DimensionMismatch, "invariant factor below 2");
      if (i > 0 && factors_[i] % factors_[i - 1] != 0)
        raise(ErrorKind::DimensionMismatch, "invariant factors break the divisibility chain");
    }
  }

  /// Keeps the entries >= 2 of a Smith diagonal.
  static FiniteAbelianGroup from_smith_diagonal(const std::vector<Integer>& diag) {
    std::vector<Integer> f;
    for (const auto& d : diag)
      if (d >= 2) f.push_back(d);
    return FiniteAbelianGroup(std::move(f));
  }

  const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
  bool is_trivial() const noexcept { return factors_.empty(); }

  Integer order() const {
    Integer o = 1;
    for (const auto& d : factors_) o *= d;
    return o;
  }

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

  friend std::ostream& operator<<(std::ostream& os, const FiniteAbelianGroup& g) {
    if (g.factors_.empty()) return os << "0";
    for (std::size_t i = 0; i < g.factors_.size(); ++i)
      os << (i ? " + " : "") << "Z/" << g.factors_[i];
    return os;
  }

 private:
  std::vector<Integer> factors_;
};

/// Z-basis of { v : A v = 0 }, canonicalised by HNF. Empty (cols x 0) when A is injective.
inline IntegerMatrix kernel_basis(const IntegerMatrix& a) {
  HermiteForm h = hermite_normal_form(a);
  return column_basis(h.U.column_range(h.rank, a.cols()));
}

struct Cokernel {
  std::size_t free_rank = 0;
  FiniteAbelianGroup torsion;
};

/// Z^rows / (column span of A).
inline Cokernel cokernel(const IntegerMatrix& a) {
  SmithForm s = smith_normal_form(a);
  auto diag = s.diagonal();
  std::size_t r = std::count_if(diag.begin(), diag.end(), [](const Integer& d) { return d != 0; });
  return {a.rows() - r, FiniteAbelianGroup::from_smith_diagonal(diag)};
}

/// Coordinates X with basis * X = vectors, where `basis` is a column HNF basis.
/// Returns false when some column of `vectors` is not an integer combination.
inline bool solve_in_hermite_basis(const HermiteForm& basis, const IntegerMatrix& vectors,
                                   IntegerMatrix& coords) {
  const IntegerMatrix& H = basis.H;
  coords = IntegerMatrix(basis.rank, vectors.cols());
  for (std::size_t c = 0; c < vectors.cols(); ++c) {
    IntegerMatrix residual = vectors.column(c);
    for (std::size_t j = 0; j < basis.rank; ++j) {
      const std::size_t p = basis.pivot_rows[j];
      if (residual(p, 0) % H(p, j) != 0) return false;
      Integer x = residual(p, 0) / H(p, j);
      coords(j, c) = x;
      for (std::size_t i = 0; i < H.rows(); ++i) residual(i, 0) -= x * H(i, j);
    }
    if (!residual.is_zero()) return false;
  }
  return true;
}

/// (span sup) / (span sub). Both arguments may be arbitrary generating sets.
inline FiniteAbelianGroup finite_quotient(const IntegerMatrix& sub, const IntegerMatrix& sup) {
  if (sub.rows() != sup.rows())
    raise(ErrorKind::DimensionMismatch, "finite_quotient " + sub.shape() + " in " + sup.shape());
  HermiteForm sup_hnf = hermite_normal_form(sup);
  sup_hnf.H = sup_hnf.H.column_range(0, sup_hnf.rank);
  IntegerMatrix sub_basis = column_basis(sub);

  IntegerMatrix coords;
  if (!solve_in_hermite_basis(sup_hnf, sub_basis, coords))
    raise(ErrorKind::SubNotContained, "sub-lattice is not contained in the super-lattice");
  if (sub_basis.cols() != sup_hnf.rank)
    raise(ErrorKind::RankMismatch, "ranks " + std::to_string(sub_basis.cols()) + " and " +
                                       std::to_string(sup_hnf.rank) + " differ; quotient is infinite");
  return FiniteAbelianGroup::from_smith_diagonal(smith_normal_form(coords).diagonal());
}

}  // namespace periods
