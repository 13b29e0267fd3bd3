#pragma once

// Exact rational matrices and subspaces. Every subspace is stored through the
// reduced row-echelon form of a row basis, so equality is structural.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rsg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  // Integer literal convenience: Matrix::of({{1, 0}, {0, 1}}).
  static Matrix of(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    Matrix m(rows.size(), cols);
    std::size_t i = 0;
    for (const auto& r : rows) {
      if (r.size() != cols) throw Error("ragged matrix literal");
      std::size_t j = 0;
      for (long v : r) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  void set_row(std::size_t i, const Vector& v) {
    if (v.size() != cols_) throw Error("row length mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) m.set_row(i, row(idx[i]));
    return m;
  }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw Error("matrix-vector dimension mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn((*this)(i, j)) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return sgn(s) == 0; });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix sum dimension mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

  friend Matrix operator*(const Scalar& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error("vstack column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) m.set_row(i, a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) m.set_row(a.rows() + i, b.row(i));
  return m;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error("hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

inline Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error("dot product length mismatch");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

struct RowEchelon {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

// Gauss-Jordan elimination. The result keeps the input shape, zero rows last.
inline RowEchelon rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    const Scalar inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), r, std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  static Subspace zero(std::size_t n) { return Subspace(n); }
  static Subspace full(std::size_t n) { return span(Matrix::identity(n)); }

  // Row space of `rows`.
  static Subspace span(const Matrix& rows) {
    auto e = rref(rows);
    Subspace s(rows.cols());
    std::vector<std::size_t> keep(e.rank);
    for (std::size_t i = 0; i < e.rank; ++i) keep[i] = i;
    s.basis_ = e.reduced.select_rows(keep);
    s.pivots_ = std::move(e.pivots);
    return s;
  }

  static Subspace span(const std::vector<Vector>& vectors, std::size_t ambient_dim) {
    return span(Matrix::from_rows(vectors, ambient_dim));
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vector basis_vector(std::size_t i) const { return basis_.row(i); }

  // Coefficients of v on the basis, if v lies in the subspace.
  std::optional<Vector> coordinates(const Vector& v) const {
    if (v.size() != ambient_) throw Error("vector does not match ambient dimension");
    Vector c(dim());
    Vector rest = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      c[i] = v[pivots_[i]];
      if (sgn(c[i]) == 0) continue;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (sgn(basis_(i, j)) != 0) rest[j] -= c[i] * basis_(i, j);
    }
    if (!is_zero(rest)) return std::nullopt;
    return c;
  }

  bool contains(const Vector& v) const { return coordinates(v).has_value(); }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw Error("ambient dimension mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_vector(i))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

// {v : m v = 0}.
inline Subspace kernel(const Matrix& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> vectors;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.rank; ++i) v[e.pivots[i]] = -e.reduced(i, f);
    vectors.push_back(std::move(v));
  }
  return Subspace::span(vectors, m.cols());
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error("sum: ambient dimension mismatch");
  return Subspace::span(vstack(a.basis(), b.basis()));
}

// Kernel-of-concatenation: x = alpha.A = beta.B  <=>  (alpha, -beta) in leftker [A; B].
inline Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error("intersect: ambient dimension mismatch");
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient_dim());
  const Matrix stacked = vstack(a.basis(), b.basis());
  const Subspace left = kernel(stacked.transposed());
  std::vector<std::size_t> first(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) first[i] = i;
  const Matrix alpha = left.basis().select_columns(first);
  return Subspace::span(alpha * a.basis());
}

// Image of a subspace under the linear map x -> map x.
inline Subspace image(const Subspace& s, const Matrix& map) {
  if (map.cols() != s.ambient_dim()) throw Error("image: dimension mismatch");
  if (s.dim() == 0) return Subspace::zero(map.rows());
  return Subspace::span(s.basis() * map.transposed());
}

// Coordinate projection onto the listed coordinates.
inline Subspace project(const Subspace& s, const std::vector<std::size_t>& coords) {
  if (s.dim() == 0) return Subspace::zero(coords.size());
  return Subspace::span(s.basis().select_columns(coords));
}

struct QuotientSpace {
  std::size_t dim = 0;
  // dim x ambient_dim; its kernel restricted to the ambient subspace is exactly `sub`.
  Matrix projection;
  // dim x ambient_dim; row k is the representative mapped to the k-th basis vector.
  Matrix lift;
};

// ambient / sub with representatives spanned by the non-pivot coordinates of
// sub's echelon form, written in ambient's echelon coordinates.
inline QuotientSpace quotient(const Subspace& ambient, const Subspace& sub) {
  if (ambient.ambient_dim() != sub.ambient_dim()) throw Error("quotient: ambient dimension mismatch");
  if (!ambient.contains(sub)) throw Error("quotient: subspace is not contained in the ambient subspace");
  const std::size_t n = ambient.ambient_dim();
  const std::size_t a = ambient.dim();
  Matrix y(sub.dim(), a);
  for (std::size_t i = 0; i < sub.dim(); ++i) y.set_row(i, *ambient.coordinates(sub.basis_vector(i)));
  auto ye = rref(y);
  std::vector<bool> is_pivot(a, false);
  for (auto p : ye.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t k = 0; k < a; ++k)
    if (!is_pivot[k]) free.push_back(k);

  // v -> c = v[ambient pivots] -> c - sum_i c[pY_i] Y_i -> keep free entries.
  Matrix select(a, n);
  for (std::size_t k = 0; k < a; ++k) select(k, ambient.pivots()[k]) = 1;
  Matrix reduce = Matrix::identity(a);
  for (std::size_t i = 0; i < ye.rank; ++i)
    for (std::size_t k = 0; k < a; ++k) reduce(k, ye.pivots[i]) -= ye.reduced(i, k);
  Matrix keep(free.size(), a);
  for (std::size_t j = 0; j < free.size(); ++j) keep(j, free[j]) = 1;

  QuotientSpace q;
  q.dim = free.size();
  q.projection = keep * reduce * select;
  q.lift = ambient.basis().select_rows(free);
  return q;
}

// One solution of a x = b, if any.
inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw Error("solve: dimension mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols());
  for (std::size_t i = 0; i < e.rank; ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  auto e = rref(hstack(m, Matrix::identity(n)));
  if (e.rank < n || (n > 0 && e.pivots[n - 1] >= n)) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

// ---- JSON: exact "p/q" strings ------------------------------------------------

inline std::string to_string(const Scalar& s) {
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

inline Scalar parse_scalar(const nlohmann::json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw Error("exact scalar must be a \"p/q\" string, got " + j.dump());
  static const std::regex pattern(R"(-?[0-9]+(/[0-9]+)?)");
  const auto text = j.get<std::string>();
  if (!std::regex_match(text, pattern)) throw Error("malformed rational \"" + text + "\"");
  const auto slash = text.find('/');
  mpz_class num(text.substr(0, slash));
  mpz_class den(slash == std::string::npos ? std::string("1") : text.substr(slash + 1));
  if (den == 0) throw Error("zero denominator in \"" + text + "\"");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

inline nlohmann::json to_json(const Vector& v) {
  auto out = nlohmann::json::array();
  for (const auto& s : v) out.push_back(to_string(s));
  return out;
}

inline nlohmann::json to_json(const Matrix& m) {
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

inline Matrix matrix_from_json(const nlohmann::json& j, std::size_t cols) {
  if (!j.is_array()) throw Error("matrix must be an array of rows");
  Matrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& r = j[i];
    if (!r.is_array() || r.size() != cols)
      throw Error("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_scalar(r[k]);
  }
  return m;
}

}  // namespace rsg
