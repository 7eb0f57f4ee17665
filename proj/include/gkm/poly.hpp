#ifndef GKM_POLY_HPP
#define GKM_POLY_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gkm/linalg.hpp"

namespace gkm {

using Exponent = std::vector<int>;

// C(k+d-1, k-1): number of monomials of degree d in k variables. For k = 0
// only the empty monomial of degree 0 exists.
std::size_t graded_dim(std::size_t num_vars, std::size_t degree);

// Monomials of one degree in graded lexicographic order (x1^d first).
class MonomialBasis {
public:
  static std::shared_ptr<const MonomialBasis> get(std::size_t num_vars,
                                                  std::size_t degree);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return monomials_.size(); }
  const Exponent &operator[](std::size_t i) const { return monomials_[i]; }
  // Throws if the exponent has the wrong length or degree.
  std::size_t index_of(const Exponent &e) const;

private:
  MonomialBasis(std::size_t num_vars, std::size_t degree);

  std::size_t num_vars_;
  std::size_t degree_;
  std::vector<Exponent> monomials_;
  std::map<Exponent, std::size_t> index_;
};

// Homogeneous polynomial with rational coefficients. Zero coefficients are
// never stored, so the zero polynomial has an empty term map.
class HomogPoly {
public:
  struct LexGreater {
    bool operator()(const Exponent &a, const Exponent &b) const { return a > b; }
  };
  using Terms = std::map<Exponent, Rational, LexGreater>;

  HomogPoly(std::size_t num_vars, std::size_t degree);

  static HomogPoly constant(std::size_t num_vars, const Rational &c);
  static HomogPoly linear(const QVector &form);
  static HomogPoly monomial(const Exponent &e, const Rational &c = 1);
  static HomogPoly from_coefficients(std::size_t num_vars, std::size_t degree,
                                     const QVector &coeffs);

  std::size_t num_vars() const { return num_vars_; }
  std::size_t degree() const { return degree_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Exponent &e) const;

  void add_term(const Exponent &e, const Rational &c);

  // Dense coefficient vector in MonomialBasis order.
  QVector coefficients() const;

  HomogPoly &operator+=(const HomogPoly &o);
  HomogPoly &operator-=(const HomogPoly &o);
  HomogPoly &operator*=(const Rational &s);
  friend HomogPoly operator+(HomogPoly a, const HomogPoly &b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly &b) { return a -= b; }
  friend HomogPoly operator*(HomogPoly a, const Rational &s) { return a *= s; }
  friend HomogPoly operator*(const HomogPoly &a, const HomogPoly &b);
  friend bool operator==(const HomogPoly &a, const HomogPoly &b) {
    return a.num_vars_ == b.num_vars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  // Substitute x_i = sum_j sub(i, j) t_j; result lives in sub.cols() variables.
  HomogPoly substitute(const QMatrix &sub) const;

  std::string str() const;

private:
  std::size_t num_vars_;
  std::size_t degree_;
  Terms terms_;
};

// Linear functionals (rows) on the coefficient space of degree-d polynomials
// in k = alpha.size() variables whose common kernel is exactly the set of f
// vanishing on ker(alpha), i.e. the multiples of the linear form alpha.
// Row r is the coefficient of the r-th monomial of f restricted to the
// echelon parametrization of ker(alpha). Throws on alpha = 0.
QMatrix hyperplane_constraints(const QVector &alpha, std::size_t degree);

// The constraints above, specialised to f's variable count and degree.
QMatrix restrict_to_hyperplane(const HomogPoly &f, const QVector &alpha);

// True when f vanishes on ker(alpha).
bool vanishes_on_hyperplane(const HomogPoly &f, const QVector &alpha);

} // namespace gkm

#endif
