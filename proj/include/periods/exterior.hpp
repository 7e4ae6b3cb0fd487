#pragma once

// Translation-invariant differential forms on R^{2g} = C^g with complex
// coefficients.
//
// Coordinate convention, used everywhere in the library:
//   real coordinates are ordered (x_1, ..., x_g, y_1, ..., y_g),
//   z_n = x_n + i y_n,
//   multiplication by i is J = [[0, -I], [I, 0]].
// Index sets are 1-based and strictly increasing, so x_n has index n and y_n
// has index g + n.

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "periods/errors.hpp"
#include "periods/linalg.hpp"

namespace periods {

using IndexSet = std::vector<int>;

template <class Real = double>
class AlternatingForm {
 public:
  using Scalar = std::complex<Real>;

  AlternatingForm(int ambient_dim, int degree) : ambient_dim_(ambient_dim), degree_(degree) {
    if (ambient_dim < 0 || degree < 0)
      raise(ErrorKind::DimensionMismatch, "negative dimension or degree");
  }

  /// The monomial coefficient * dx_{i_1} ^ ... ^ dx_{i_k}.
  static AlternatingForm monomial(int ambient_dim, const IndexSet& indices, Scalar coefficient = 1) {
    AlternatingForm f(ambient_dim, static_cast<int>(indices.size()));
    f.add(indices, coefficient);
    return f;
  }

  int ambient_dim() const noexcept { return ambient_dim_; }
  int degree() const noexcept { return degree_; }
  const std::map<IndexSet, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coeff(const IndexSet& indices) const {
    check_indices(indices);
    auto it = terms_.find(indices);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add(const IndexSet& indices, Scalar value) {
    check_indices(indices);
    if (value == Scalar(0)) return;
    auto [it, inserted] = terms_.try_emplace(indices, value);
    if (!inserted) {
      it->second += value;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  friend AlternatingForm operator+(AlternatingForm a, const AlternatingForm& b) {
    a.check_compatible(b);
    for (const auto& [idx, c] : b.terms_) a.add(idx, c);
    return a;
  }

  friend AlternatingForm operator*(Scalar s, const AlternatingForm& a) {
    AlternatingForm out(a.ambient_dim_, a.degree_);
    for (const auto& [idx, c] : a.terms_) out.add(idx, s * c);
    return out;
  }

  friend bool operator==(const AlternatingForm&, const AlternatingForm&) = default;

 private:
  void check_indices(const IndexSet& indices) const {
    if (static_cast<int>(indices.size()) != degree_)
      raise(ErrorKind::DegreeMismatch, "index set of size " + std::to_string(indices.size()) +
                                           " for a degree-" + std::to_string(degree_) + " form");
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] < 1 || indices[k] > ambient_dim_)
        raise(ErrorKind::IndexOutOfRange, "coordinate index " + std::to_string(indices[k]));
      if (k > 0 && indices[k] <= indices[k - 1])
        raise(ErrorKind::IndexOutOfRange, "index set is not strictly increasing");
    }
  }
  void check_compatible(const AlternatingForm& b) const {
    if (ambient_dim_ != b.ambient_dim_ || degree_ != b.degree_)
      raise(ErrorKind::DimensionMismatch, "adding forms of different shape");
  }

  int ambient_dim_;
  int degree_;
  std::map<IndexSet, Scalar> terms_;
};

/// The fixed identification R^{2g} = C^g.
class CoordinateConvention {
 public:
  explicit CoordinateConvention(int g) : g_(g) {
    if (g < 1) raise(ErrorKind::DimensionMismatch, "g must be at least 1");
  }

  int g() const noexcept { return g_; }
  int real_dim() const noexcept { return 2 * g_; }
  int x_index(int n) const {
    check(n);
    return n;
  }
  int y_index(int n) const {
    check(n);
    return g_ + n;
  }

  template <class Real = double>
  RealMatrix<Real> complex_structure() const {
    RealMatrix<Real> J = RealMatrix<Real>::Zero(2 * g_, 2 * g_);
    for (int n = 0; n < g_; ++n) {
      J(n, g_ + n) = Real(-1);
      J(g_ + n, n) = Real(1);
    }
    return J;
  }

 private:
  void check(int n) const {
    if (n < 1 || n > g_)
      raise(ErrorKind::IndexOutOfRange, "complex coordinate " + std::to_string(n) +
                                            " outside 1.." + std::to_string(g_));
  }
  int g_;
};

/// dz_n = dx_n + i dy_n
template <class Real = double>
AlternatingForm<Real> basis_dz(const CoordinateConvention& conv, int n) {
  AlternatingForm<Real> f(conv.real_dim(), 1);
  f.add({conv.x_index(n)}, {1, 0});
  f.add({conv.y_index(n)}, {0, 1});
  return f;
}

/// dzbar_n = dx_n - i dy_n
template <class Real = double>
AlternatingForm<Real> basis_dzbar(const CoordinateConvention& conv, int n) {
  AlternatingForm<Real> f(conv.real_dim(), 1);
  f.add({conv.x_index(n)}, {1, 0});
  f.add({conv.y_index(n)}, {0, -1});
  return f;
}

namespace detail {

// Sign of the shuffle that sorts the concatenation (a, b) of two disjoint
// increasing sequences.
inline int shuffle_sign(const IndexSet& a, const IndexSet& b) {
  long inversions = 0;
  std::size_t j = 0;
  for (int x : a) {
    while (j < b.size() && b[j] < x) ++j;
    inversions += static_cast<long>(j);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

inline void for_each_subset(int n, int k, const auto& visit) {
  IndexSet idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  if (k > n) return;
  while (true) {
    visit(static_cast<const IndexSet&>(idx));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i + 1) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

template <class Real>
AlternatingForm<Real> wedge(const AlternatingForm<Real>& a, const AlternatingForm<Real>& b) {
  if (a.ambient_dim() != b.ambient_dim())
    raise(ErrorKind::DimensionMismatch, "wedge of forms on R^" + std::to_string(a.ambient_dim()) +
                                            " and R^" + std::to_string(b.ambient_dim()));
  AlternatingForm<Real> out(a.ambient_dim(), a.degree() + b.degree());
  if (out.degree() > out.ambient_dim()) return out;
  IndexSet merged;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      merged.clear();
      std::set_union(ia.begin(), ia.end(), ib.begin(), ib.end(), std::back_inserter(merged));
      if (merged.size() != ia.size() + ib.size()) continue;  // repeated index
      out.add(merged, Real(detail::shuffle_sign(ia, ib)) * ca * cb);
    }
  }
  return out;
}

template <class Real>
AlternatingForm<Real> wedge_all(const std::vector<AlternatingForm<Real>>& factors, int ambient_dim) {
  AlternatingForm<Real> acc = AlternatingForm<Real>::monomial(ambient_dim, {}, 1);
  for (const auto& f : factors) acc = wedge(acc, f);
  return acc;
}

/// (L^* a)(v_1, ..., v_k) = a(L v_1, ..., L v_k), via k x k minors of L.
template <class Real>
AlternatingForm<Real> pullback(const AlternatingForm<Real>& a, const RealMatrix<Real>& L) {
  const int n = a.ambient_dim();
  if (L.rows() != n || L.cols() != n)
    raise(ErrorKind::DimensionMismatch, "pullback matrix must be " + std::to_string(n) + "x" +
                                            std::to_string(n));
  const int k = a.degree();
  AlternatingForm<Real> out(n, k);
  if (k == 0) return a;
  RealMatrix<Real> minor(k, k);
  detail::for_each_subset(n, k, [&](const IndexSet& cols) {
    std::complex<Real> acc = 0;
    for (const auto& [rows, c] : a.terms()) {
      for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) minor(r, s) = L(rows[r] - 1, cols[s] - 1);
      acc += c * minor.determinant();
    }
    out.add(cols, acc);
  });
  return out;
}

/// Integral of a top-degree form over the fundamental domain of M Z^{2g},
/// parametrised by t -> M t on the unit cube: (coefficient) * det M, signed.
template <class Real>
std::complex<Real> integrate_top(const AlternatingForm<Real>& a, const RealMatrix<Real>& M) {
  const int n = a.ambient_dim();
  if (a.degree() != n)
    raise(ErrorKind::DegreeMismatch, "integrate_top needs a degree-" + std::to_string(n) + " form");
  if (M.rows() != n || M.cols() != n)
    raise(ErrorKind::DimensionMismatch, "lattice matrix must be " + std::to_string(n) + "x" +
                                            std::to_string(n));
  const Real det = M.determinant();
  if (is_numerically_singular<Real>(M, det))
    raise(ErrorKind::SingularMatrix, "lattice matrix is singular");
  IndexSet all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  return a.coeff(all) * det;
}

/// X + iY  ->  [[X, -Y], [Y, X]]
template <class Real>
RealMatrix<Real> realify(const ComplexMatrix<Real>& T) {
  const auto g = T.rows();
  if (T.cols() != g) raise(ErrorKind::DimensionMismatch, "realify needs a square matrix");
  RealMatrix<Real> R(2 * g, 2 * g);
  R.topLeftCorner(g, g) = T.real();
  R.topRightCorner(g, g) = -T.imag();
  R.bottomLeftCorner(g, g) = T.imag();
  R.bottomRightCorner(g, g) = T.real();
  return R;
}

/// Columns of a real 2g x k matrix read as vectors of C^g.
template <class Real>
ComplexMatrix<Real> complexify_columns(const RealMatrix<Real>& R) {
  const auto g = R.rows() / 2;
  ComplexMatrix<Real> Z(g, R.cols());
  for (Eigen::Index i = 0; i < g; ++i)
    for (Eigen::Index j = 0; j < R.cols(); ++j) Z(i, j) = {R(i, j), R(g + i, j)};
  return Z;
}

}  // namespace periods
