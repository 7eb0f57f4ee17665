#ifndef GKM_RATIONAL_HPP
#define GKM_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gkm {

// Exact rational number in lowest terms with positive denominator.
//
// Values that fit in 64-bit numerator/denominator are kept inline; anything
// larger is promoted to a shared immutable GMP rational and demoted again as
// soon as a result fits. Zero is always 0/1.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t n); // NOLINT(google-explicit-constructor)
  Rational(int n) : Rational(static_cast<std::int64_t>(n)) {} // NOLINT
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpq_class &q);
  explicit Rational(const mpz_class &z);

  // Accepts "p", "p/q", with optional leading sign. Throws ParseError.
  static Rational parse(std::string_view text);

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  mpz_class numerator() const;
  mpz_class denominator() const;
  mpq_class to_mpq() const;
  // Only meaningful when the value fits; used for small exponents and sizes.
  bool fits_int64() const { return !big_ && den_ == 1; }
  std::int64_t to_int64() const { return num_; }

  std::string str() const;

  Rational operator-() const;
  Rational &operator+=(const Rational &o);
  Rational &operator-=(const Rational &o);
  Rational &operator*=(const Rational &o);
  Rational &operator/=(const Rational &o);

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

  friend bool operator==(const Rational &a, const Rational &b);
  friend std::strong_ordering operator<=>(const Rational &a,
                                          const Rational &b);

  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const;

private:
  void set_big(mpq_class q);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

} // namespace gkm

#endif
