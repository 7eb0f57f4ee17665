#include "gkm/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "gkm/error.hpp"

namespace gkm {

QVector QVector::unit(std::size_t n, std::size_t i) {
  QVector v(n);
  v[i] = 1;
  return v;
}

bool QVector::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const Rational &x) { return x.is_zero(); });
}

std::size_t QVector::leading_index() const {
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (!v_[i].is_zero())
      return i;
  return v_.size();
}

QVector QVector::operator-() const {
  QVector r(*this);
  for (auto &x : r.v_)
    x = -x;
  return r;
}

QVector &QVector::operator+=(const QVector &o) {
  if (o.size() != size())
    throw Error("DimensionMismatch", "vector addition");
  for (std::size_t i = 0; i < v_.size(); ++i)
    v_[i] += o.v_[i];
  return *this;
}

QVector &QVector::operator-=(const QVector &o) {
  if (o.size() != size())
    throw Error("DimensionMismatch", "vector subtraction");
  for (std::size_t i = 0; i < v_.size(); ++i)
    v_[i] -= o.v_[i];
  return *this;
}

QVector &QVector::operator*=(const Rational &s) {
  for (auto &x : v_)
    x *= s;
  return *this;
}

Rational QVector::dot(const QVector &o) const {
  if (o.size() != size())
    throw Error("DimensionMismatch", "dot product");
  Rational s;
  for (std::size_t i = 0; i < v_.size(); ++i)
    if (!v_[i].is_zero() && !o.v_[i].is_zero())
      s += v_[i] * o.v_[i];
  return s;
}

std::string QVector::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v_.size(); ++i)
    os << (i ? "," : "") << v_[i];
  os << ')';
  return os.str();
}

QMatrix QMatrix::from_rows(std::span<const QVector> rows, std::size_t cols) {
  if (!rows.empty())
    cols = rows[0].size();
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw Error("DimensionMismatch", "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = rows[r][c];
  }
  return m;
}

QMatrix QMatrix::from_columns(std::span<const QVector> cols, std::size_t rows) {
  if (!cols.empty())
    rows = cols[0].size();
  QMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows)
      throw Error("DimensionMismatch", "ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r)
      m(r, c) = cols[c][r];
  }
  return m;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  QVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c)
    v[c] = (*this)(r, c);
  return v;
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    v[r] = (*this)(r, c);
  return v;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

QVector QMatrix::operator*(const QVector &x) const {
  if (x.size() != cols_)
    throw Error("DimensionMismatch", "matrix-vector product");
  QVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational s;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!x[c].is_zero() && !(*this)(r, c).is_zero())
        s += (*this)(r, c) * x[c];
    y[r] = s;
  }
  return y;
}

QMatrix QMatrix::operator*(const QMatrix &o) const {
  if (o.rows_ != cols_)
    throw Error("DimensionMismatch", "matrix product");
  QMatrix p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational &a = (*this)(r, k);
      if (a.is_zero())
        continue;
      for (std::size_t c = 0; c < o.cols_; ++c)
        if (!o(k, c).is_zero())
          p(r, c) += a * o(k, c);
    }
  return p;
}

std::string QMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r)
    os << (r ? "," : "") << row(r).str();
  os << ']';
  return os.str();
}

std::size_t rank(const QMatrix &m) {
  // integer-scale every row, then Bareiss
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).denominator().get_mpz_t());
    for (std::size_t c = 0; c < m.cols(); ++c)
      a[r][c] = m(r, c).numerator() * (l / m(r, c).denominator());
  }
  mpz_class prev = 1;
  std::size_t rk = 0;
  for (std::size_t c = 0; c < m.cols() && rk < m.rows(); ++c) {
    std::size_t p = rk;
    while (p < m.rows() && a[p][c] == 0)
      ++p;
    if (p == m.rows())
      continue;
    std::swap(a[p], a[rk]);
    for (std::size_t i = rk + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        a[i][j] = a[rk][c] * a[i][j] - a[i][c] * a[rk][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[rk][c];
    ++rk;
  }
  return rk;
}

QMatrix rref(const QMatrix &m, std::vector<std::size_t> *pivots) {
  QMatrix a = m;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero())
      ++p;
    if (p == a.rows())
      continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j)
        std::swap(a(p, j), a(r, j));
    Rational inv = a(r, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j)
      a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero())
        continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(r, j).is_zero())
          a(i, j) -= f * a(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots)
    *pivots = std::move(piv);
  return a;
}

Rational determinant(const QMatrix &m) {
  if (m.rows() != m.cols())
    throw Error("DimensionMismatch", "determinant of a non-square matrix");
  QMatrix a = m;
  Rational det(1);
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero())
      ++p;
    if (p == n)
      return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    Rational inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero())
        continue;
      Rational f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j)
        a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::vector<QVector> nullspace_basis(const QMatrix &m) {
  std::vector<std::size_t> piv;
  QMatrix red = rref(m, &piv);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : piv)
    is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f])
      continue;
    QVector x(m.cols());
    x[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i)
      x[piv[i]] = -red(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<Rational>>
solve_in_span(const QVector &target, std::span<const QVector> generators) {
  const std::size_t n = target.size();
  const std::size_t g = generators.size();
  QMatrix aug(n, g + 1);
  for (std::size_t j = 0; j < g; ++j) {
    if (generators[j].size() != n)
      throw Error("DimensionMismatch", "solve_in_span generator length");
    for (std::size_t i = 0; i < n; ++i)
      aug(i, j) = generators[j][i];
  }
  for (std::size_t i = 0; i < n; ++i)
    aug(i, g) = target[i];
  std::vector<std::size_t> piv;
  QMatrix red = rref(aug, &piv);
  if (!piv.empty() && piv.back() == g)
    return std::nullopt;
  std::vector<Rational> coeff(g);
  for (std::size_t i = 0; i < piv.size(); ++i)
    coeff[piv[i]] = red(i, g);
  return coeff;
}

std::size_t rank_of(std::span<const QVector> vectors) {
  if (vectors.empty())
    return 0;
  return rank(QMatrix::from_rows(vectors));
}

SparseEliminator::SparseEliminator(std::size_t cols)
    : cols_(cols), pivot_rows_(cols) {}

SparseEliminator::Row SparseEliminator::reduce_dense(std::vector<Rational> &acc,
                                                     std::size_t from) const {
  for (std::size_t c = from; c < cols_; ++c) {
    if (acc[c].is_zero() || !pivot_rows_[c])
      continue;
    Rational f = acc[c];
    for (const auto &[j, v] : *pivot_rows_[c])
      acc[j] -= f * v;
  }
  Row out;
  for (std::size_t c = from; c < cols_; ++c)
    if (!acc[c].is_zero())
      out.emplace_back(c, acc[c]);
  return out;
}

SparseEliminator::Row SparseEliminator::reduce(const Row &row) const {
  if (row.empty())
    return {};
  std::vector<Rational> acc(cols_);
  for (const auto &[c, v] : row) {
    if (c >= cols_)
      throw Error("DimensionMismatch", "sparse row column out of range");
    acc[c] = v;
  }
  return reduce_dense(acc, row.front().first);
}

bool SparseEliminator::add_row(const Row &row) {
  Row r = reduce(row);
  if (r.empty())
    return false;
  Rational inv = r.front().second.inverse();
  for (auto &e : r)
    e.second *= inv;
  std::size_t lead = r.front().first;
  pivot_rows_[lead] = std::move(r);
  ++rank_;
  return true;
}

bool SparseEliminator::add_dense(const QVector &row) {
  Row r;
  for (std::size_t c = 0; c < row.size(); ++c)
    if (!row[c].is_zero())
      r.emplace_back(c, row[c]);
  return add_row(r);
}

std::vector<std::size_t> SparseEliminator::pivot_columns() const {
  std::vector<std::size_t> p;
  for (std::size_t c = 0; c < cols_; ++c)
    if (pivot_rows_[c])
      p.push_back(c);
  return p;
}

std::vector<QVector> SparseEliminator::nullspace() const {
  // back-substitute into reduced echelon form, highest pivot first
  std::vector<std::optional<Row>> red(cols_);
  for (std::size_t c = cols_; c-- > 0;) {
    if (!pivot_rows_[c])
      continue;
    std::vector<Rational> acc(cols_);
    for (const auto &[j, v] : *pivot_rows_[c])
      acc[j] = v;
    for (std::size_t j = c + 1; j < cols_; ++j) {
      if (acc[j].is_zero() || !red[j])
        continue;
      Rational f = acc[j];
      for (const auto &[k, v] : *red[j])
        acc[k] -= f * v;
    }
    Row r;
    for (std::size_t j = c; j < cols_; ++j)
      if (!acc[j].is_zero())
        r.emplace_back(j, acc[j]);
    red[c] = std::move(r);
  }
  std::vector<QVector> basis;
  std::vector<std::size_t> piv = pivot_columns();
  for (std::size_t f = 0; f < cols_; ++f) {
    if (pivot_rows_[f])
      continue;
    QVector x(cols_);
    x[f] = 1;
    basis.push_back(std::move(x));
  }
  // fill pivot coordinates: x_p = -R_p[f]
  std::vector<std::size_t> free_index(cols_, cols_);
  {
    std::size_t k = 0;
    for (std::size_t f = 0; f < cols_; ++f)
      if (!pivot_rows_[f])
        free_index[f] = k++;
  }
  for (auto p : piv)
    for (const auto &[j, v] : *red[p])
      if (j != p && free_index[j] != cols_)
        basis[free_index[j]][p] = -v;
  return basis;
}

Lattice::Lattice(std::span<const QVector> generators, std::size_t dim) : dim_(dim) {
  denom_ = 1;
  for (const auto &g : generators) {
    if (g.size() != dim)
      throw Error("DimensionMismatch", "lattice generator length");
    for (const auto &x : g)
      if (!x.is_zero())
        mpz_lcm(denom_.get_mpz_t(), denom_.get_mpz_t(), x.denominator().get_mpz_t());
  }
  std::vector<std::vector<mpz_class>> rows;
  for (const auto &g : generators) {
    std::vector<mpz_class> r(dim);
    bool nz = false;
    for (std::size_t i = 0; i < dim; ++i) {
      r[i] = g[i].numerator() * (denom_ / g[i].denominator());
      nz = nz || r[i] != 0;
    }
    if (nz)
      rows.push_back(std::move(r));
  }
  std::size_t top = 0;
  for (std::size_t c = 0; c < dim && top < rows.size(); ++c) {
    // Euclid on column c among rows[top..]
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][c] != 0 &&
            (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])))
          best = i;
      if (best == rows.size())
        break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0)
          continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[top][c].get_mpz_t());
        for (std::size_t j = c; j < dim; ++j)
          rows[i][j] -= q * rows[top][j];
        if (rows[i][c] != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (rows[top][c] == 0)
      continue;
    if (rows[top][c] < 0)
      for (auto &x : rows[top])
        x = -x;
    // reduce the rows above modulo the new pivot
    for (std::size_t i = 0; i < top; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[top][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = c; j < dim; ++j)
          rows[i][j] -= q * rows[top][j];
    }
    pivots_.push_back(c);
    ++top;
  }
  rows.resize(top);
  hnf_ = std::move(rows);
  for (const auto &r : hnf_) {
    QVector v(dim);
    for (std::size_t i = 0; i < dim; ++i)
      v[i] = Rational(mpq_class(r[i], denom_));
    basis_.push_back(std::move(v));
  }
}

bool Lattice::contains(const QVector &v) const {
  if (v.size() != dim_)
    return false;
  std::vector<mpz_class> x(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    mpq_class s = v[i].to_mpq() * denom_;
    s.canonicalize();
    if (s.get_den() != 1)
      return false;
    x[i] = s.get_num();
  }
  for (std::size_t k = 0; k < hnf_.size(); ++k) {
    std::size_t c = pivots_[k];
    if (!mpz_divisible_p(x[c].get_mpz_t(), hnf_[k][c].get_mpz_t()))
      return false;
    mpz_class q = x[c] / hnf_[k][c];
    for (std::size_t j = c; j < dim_; ++j)
      x[j] -= q * hnf_[k][j];
  }
  return std::all_of(x.begin(), x.end(), [](const mpz_class &z) { return z == 0; });
}

} // namespace gkm
