#include "gkm/poly.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

#include "gkm/error.hpp"

namespace gkm {

std::size_t graded_dim(std::size_t num_vars, std::size_t degree) {
  if (num_vars == 0)
    return degree == 0 ? 1 : 0;
  // C(k+d-1, k-1) computed incrementally; exact at every step
  std::size_t n = num_vars + degree - 1;
  std::size_t r = num_vars - 1;
  if (r > n - r)
    r = n - r;
  mpz_class c = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    c *= static_cast<unsigned long>(n - r + i);
    c /= static_cast<unsigned long>(i);
  }
  return c.get_ui();
}

namespace {

void enumerate(std::size_t var, std::size_t remaining, Exponent &cur,
               std::vector<Exponent> &out) {
  if (var + 1 == cur.size()) {
    cur[var] = static_cast<int>(remaining);
    out.push_back(cur);
    return;
  }
  for (std::size_t a = remaining + 1; a-- > 0;) {
    cur[var] = static_cast<int>(a);
    enumerate(var + 1, remaining - a, cur, out);
  }
}

} // namespace

MonomialBasis::MonomialBasis(std::size_t num_vars, std::size_t degree)
    : num_vars_(num_vars), degree_(degree) {
  if (num_vars == 0) {
    if (degree == 0)
      monomials_.emplace_back();
  } else {
    Exponent cur(num_vars, 0);
    enumerate(0, degree, cur, monomials_);
  }
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    index_.emplace(monomials_[i], i);
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(std::size_t num_vars,
                                                        std::size_t degree) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>,
                  std::shared_ptr<const MonomialBasis>>
      cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(num_vars, degree);
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;
  std::shared_ptr<const MonomialBasis> b(new MonomialBasis(num_vars, degree));
  cache.emplace(key, b);
  return b;
}

std::size_t MonomialBasis::index_of(const Exponent &e) const {
  auto it = index_.find(e);
  if (it == index_.end())
    throw Error("DimensionMismatch", "exponent not in monomial basis");
  return it->second;
}

HomogPoly::HomogPoly(std::size_t num_vars, std::size_t degree)
    : num_vars_(num_vars), degree_(degree) {}

HomogPoly HomogPoly::constant(std::size_t num_vars, const Rational &c) {
  HomogPoly p(num_vars, 0);
  p.add_term(Exponent(num_vars, 0), c);
  return p;
}

HomogPoly HomogPoly::linear(const QVector &form) {
  HomogPoly p(form.size(), 1);
  for (std::size_t i = 0; i < form.size(); ++i) {
    Exponent e(form.size(), 0);
    e[i] = 1;
    p.add_term(e, form[i]);
  }
  return p;
}

HomogPoly HomogPoly::monomial(const Exponent &e, const Rational &c) {
  std::size_t d = 0;
  for (int a : e) {
    if (a < 0)
      throw Error("DimensionMismatch", "negative exponent");
    d += static_cast<std::size_t>(a);
  }
  HomogPoly p(e.size(), d);
  p.add_term(e, c);
  return p;
}

HomogPoly HomogPoly::from_coefficients(std::size_t num_vars, std::size_t degree,
                                       const QVector &coeffs) {
  auto basis = MonomialBasis::get(num_vars, degree);
  if (coeffs.size() != basis->size())
    throw Error("DimensionMismatch", "coefficient vector length");
  HomogPoly p(num_vars, degree);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero())
      p.terms_.emplace((*basis)[i], coeffs[i]);
  return p;
}

Rational HomogPoly::coefficient(const Exponent &e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational() : it->second;
}

void HomogPoly::add_term(const Exponent &e, const Rational &c) {
  if (e.size() != num_vars_)
    throw Error("DimensionMismatch", "exponent length");
  std::size_t d = 0;
  for (int a : e)
    d += static_cast<std::size_t>(a);
  if (d != degree_)
    throw Error("DimensionMismatch", "term degree differs from polynomial degree");
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

QVector HomogPoly::coefficients() const {
  auto basis = MonomialBasis::get(num_vars_, degree_);
  QVector v(basis->size());
  for (const auto &[e, c] : terms_)
    v[basis->index_of(e)] = c;
  return v;
}

HomogPoly &HomogPoly::operator+=(const HomogPoly &o) {
  if (o.num_vars_ != num_vars_ || (o.degree_ != degree_ && !o.is_zero() && !is_zero()))
    throw Error("DimensionMismatch", "adding polynomials of different shape");
  if (is_zero())
    degree_ = o.degree_;
  for (const auto &[e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

HomogPoly &HomogPoly::operator-=(const HomogPoly &o) { return *this += o * Rational(-1); }

HomogPoly &HomogPoly::operator*=(const Rational &s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[e, c] : terms_)
    c *= s;
  return *this;
}

HomogPoly operator*(const HomogPoly &a, const HomogPoly &b) {
  if (a.num_vars_ != b.num_vars_)
    throw Error("DimensionMismatch", "multiplying polynomials in different rings");
  HomogPoly p(a.num_vars_, a.degree_ + b.degree_);
  Exponent e(a.num_vars_);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  return p;
}

HomogPoly HomogPoly::substitute(const QMatrix &sub) const {
  if (sub.rows() != num_vars_)
    throw Error("DimensionMismatch", "substitution matrix rows");
  const std::size_t m = sub.cols();
  std::vector<HomogPoly> lin;
  for (std::size_t i = 0; i < num_vars_; ++i) {
    HomogPoly l(m, 1);
    for (std::size_t j = 0; j < m; ++j) {
      Exponent e(m, 0);
      e[j] = 1;
      l.add_term(e, sub(i, j));
    }
    lin.push_back(std::move(l));
  }
  // powers[i][a] = lin[i]^a
  std::vector<std::vector<HomogPoly>> powers(num_vars_);
  HomogPoly out(m, degree_);
  for (const auto &[e, c] : terms_) {
    HomogPoly t = HomogPoly::constant(m, c);
    for (std::size_t i = 0; i < num_vars_; ++i) {
      auto &pw = powers[i];
      if (pw.empty())
        pw.push_back(HomogPoly::constant(m, 1));
      while (pw.size() <= static_cast<std::size_t>(e[i]))
        pw.push_back(pw.back() * lin[i]);
      if (e[i] > 0)
        t = t * pw[static_cast<std::size_t>(e[i])];
    }
    if (!t.is_zero())
      out += t;
  }
  return out;
}

std::string HomogPoly::str() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    bool is_const = true;
    for (int a : e)
      is_const = is_const && a == 0;
    Rational mag = c.abs();
    os << (c.sign() < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (is_const || !mag.is_one())
      os << mag;
    bool need_star = !is_const && !mag.is_one();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      os << (need_star ? "*" : "") << 'x' << (i + 1);
      if (e[i] > 1)
        os << '^' << e[i];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

QMatrix hyperplane_constraints(const QVector &alpha, std::size_t degree) {
  if (alpha.is_zero())
    throw Error("ZeroWeight", "hyperplane of the zero form");
  static std::mutex mu;
  static std::map<std::pair<std::vector<Rational>, std::size_t>, QMatrix> cache;
  auto key = std::make_pair(alpha.entries(), degree);
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end())
      return it->second;
  }
  const std::size_t k = alpha.size();
  QMatrix row = QMatrix::from_rows(std::span<const QVector>(&alpha, 1));
  std::vector<QVector> ker = nullspace_basis(row);
  QMatrix sub = QMatrix::from_columns(ker, k);
  auto src = MonomialBasis::get(k, degree);
  auto dst = MonomialBasis::get(k - 1, degree);
  QMatrix c(dst->size(), src->size());
  for (std::size_t m = 0; m < src->size(); ++m) {
    HomogPoly r = HomogPoly::monomial((*src)[m]).substitute(sub);
    for (const auto &[e, v] : r.terms())
      c(dst->index_of(e), m) = v;
  }
  std::lock_guard lock(mu);
  cache.emplace(std::move(key), c);
  return c;
}

QMatrix restrict_to_hyperplane(const HomogPoly &f, const QVector &alpha) {
  if (alpha.size() != f.num_vars())
    throw Error("DimensionMismatch", "form and polynomial ring differ");
  return hyperplane_constraints(alpha, f.degree());
}

bool vanishes_on_hyperplane(const HomogPoly &f, const QVector &alpha) {
  return (restrict_to_hyperplane(f, alpha) * f.coefficients()).is_zero();
}

} // namespace gkm
