#ifndef GKM_LINALG_HPP
#define GKM_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gkm/rational.hpp"

namespace gkm {

class QVector {
public:
  QVector() = default;
  explicit QVector(std::size_t n) : v_(n) {}
  QVector(std::initializer_list<Rational> xs) : v_(xs) {}
  explicit QVector(std::vector<Rational> xs) : v_(std::move(xs)) {}

  static QVector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return v_.size(); }
  const Rational &operator[](std::size_t i) const { return v_[i]; }
  Rational &operator[](std::size_t i) { return v_[i]; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  const std::vector<Rational> &entries() const { return v_; }

  bool is_zero() const;
  // index of the first nonzero entry, or size() for the zero vector
  std::size_t leading_index() const;

  QVector operator-() const;
  QVector &operator+=(const QVector &o);
  QVector &operator-=(const QVector &o);
  QVector &operator*=(const Rational &s);
  friend QVector operator+(QVector a, const QVector &b) { return a += b; }
  friend QVector operator-(QVector a, const QVector &b) { return a -= b; }
  friend QVector operator*(const Rational &s, QVector a) { return a *= s; }
  friend QVector operator*(QVector a, const Rational &s) { return a *= s; }
  friend bool operator==(const QVector &, const QVector &) = default;
  friend auto operator<=>(const QVector &a, const QVector &b) {
    return a.v_ <=> b.v_;
  }

  Rational dot(const QVector &o) const;
  std::string str() const;

private:
  std::vector<Rational> v_;
};

class QMatrix {
public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  // Rows must share a length; cols is taken from `cols` when rows is empty.
  static QMatrix from_rows(std::span<const QVector> rows, std::size_t cols = 0);
  static QMatrix from_columns(std::span<const QVector> cols, std::size_t rows = 0);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational &operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }
  Rational &operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector column(std::size_t c) const;
  QMatrix transpose() const;

  QVector operator*(const QVector &x) const;
  QMatrix operator*(const QMatrix &o) const;
  friend bool operator==(const QMatrix &, const QMatrix &) = default;

  std::string str() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

// Rank over Q via fraction-free (Bareiss) elimination on integer-scaled rows.
std::size_t rank(const QMatrix &m);

// Reduced row echelon form; `pivots` receives the pivot column of each
// nonzero row.
QMatrix rref(const QMatrix &m, std::vector<std::size_t> *pivots = nullptr);

Rational determinant(const QMatrix &m);

// Basis of {x : m x = 0} in the echelon parametrization: one vector per free
// column f, with x_f = 1, other free coordinates 0.
std::vector<QVector> nullspace_basis(const QMatrix &m);

// Coefficients c with sum c_i generators_i = target, or nullopt when target is
// outside the span. Free coefficients are set to zero.
std::optional<std::vector<Rational>>
solve_in_span(const QVector &target, std::span<const QVector> generators);

// Rank of a set of vectors of common length.
std::size_t rank_of(std::span<const QVector> vectors);

// Incremental sparse row reduction used for the large constraint systems of
// the cohomology solver. Rows are kept in echelon form keyed by their leading
// column; `nullspace` back-substitutes to the reduced form.
class SparseEliminator {
public:
  using Entry = std::pair<std::size_t, Rational>;
  using Row = std::vector<Entry>; // strictly increasing columns

  explicit SparseEliminator(std::size_t cols);

  // Returns true when the row increased the rank.
  bool add_row(const Row &row);
  bool add_dense(const QVector &row);
  // Reduces a row against the current pivots without inserting it.
  Row reduce(const Row &row) const;

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rank_; }
  std::vector<QVector> nullspace() const;
  std::vector<std::size_t> pivot_columns() const;

private:
  Row reduce_dense(std::vector<Rational> &acc, std::size_t from) const;

  std::size_t cols_;
  std::size_t rank_ = 0;
  std::vector<std::optional<Row>> pivot_rows_; // indexed by leading column
};

// Z-lattice spanned by rational vectors, kept as a Hermite-style basis.
class Lattice {
public:
  explicit Lattice(std::span<const QVector> generators, std::size_t dim);

  const std::vector<QVector> &basis() const { return basis_; }
  std::size_t dim() const { return dim_; }
  bool contains(const QVector &v) const;

private:
  std::size_t dim_;
  mpz_class denom_;                          // common denominator
  std::vector<std::vector<mpz_class>> hnf_;  // integer rows, echelon
  std::vector<std::size_t> pivots_;
  std::vector<QVector> basis_;
};

} // namespace gkm

#endif
