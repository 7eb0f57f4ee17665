#include "gkm/rational.hpp"

#include <limits>
#include <ostream>

#include "gkm/error.hpp"

namespace gkm {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = -kMax; // keep |value| symmetric so negation never overflows

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

bool fits(i128 v) { return v >= kMin && v <= kMax; }

mpz_class to_mpz(std::int64_t v) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), v);
  return z;
}

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 m = uabs(v);
  auto hi = static_cast<std::uint64_t>(m >> 64);
  auto lo = static_cast<std::uint64_t>(m);
  mpz_class z = hi;
  z <<= 64;
  z += mpz_class(static_cast<unsigned long>(lo));
  return neg ? mpz_class(-z) : z;
}

} // namespace

Rational::Rational(std::int64_t n) {
  if (n < kMin) {
    set_big(mpq_class(to_mpz(n)));
  } else {
    num_ = n;
  }
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0)
    throw Error("DivisionByZero", "rational with zero denominator");
  i128 n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 g = gcd128(uabs(n), static_cast<u128>(d));
  if (g > 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  if (n == 0)
    d = 1;
  if (fits(n) && fits(d)) {
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  } else {
    mpq_class q(to_mpz(n), to_mpz(d));
    q.canonicalize();
    set_big(std::move(q));
  }
}

Rational::Rational(const mpq_class &q) {
  mpq_class c = q;
  c.canonicalize();
  set_big(std::move(c));
}

Rational::Rational(const mpz_class &z) { set_big(mpq_class(z)); }

void Rational::set_big(mpq_class q) {
  const mpz_class &n = q.get_num();
  const mpz_class &d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p()) {
    long nv = n.get_si();
    long dv = d.get_si();
    if (nv >= kMin && dv <= kMax) {
      num_ = nv;
      den_ = dv;
      big_.reset();
      return;
    }
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(std::move(q));
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  if (s.empty())
    throw ParseError("empty rational");
  auto valid_int = [](std::string_view t) {
    std::size_t i = 0;
    if (!t.empty() && (t[0] == '-' || t[0] == '+'))
      i = 1;
    if (i >= t.size())
      return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9')
        return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational '" + s + "'");
  if (num[0] == '+')
    num = num.substr(1);
  mpz_class n(num), d(den);
  if (d == 0)
    throw ParseError("zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  Rational r;
  r.set_big(std::move(q));
  return r;
}

bool Rational::is_integer() const {
  return big_ ? big_->get_den() == 1 : den_ == 1;
}

int Rational::sign() const {
  if (big_)
    return sgn(*big_);
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

mpz_class Rational::numerator() const {
  return big_ ? mpz_class(big_->get_num()) : to_mpz(num_);
}

mpz_class Rational::denominator() const {
  return big_ ? mpz_class(big_->get_den()) : to_mpz(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_)
    return *big_;
  return mpq_class(to_mpz(num_), to_mpz(den_));
}

std::string Rational::str() const {
  if (big_) {
    if (big_->get_den() == 1)
      return big_->get_num().get_str();
    return big_->get_str();
  }
  if (den_ == 1)
    return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  Rational r;
  if (big_)
    r.set_big(-*big_);
  else
    r.num_ = -num_, r.den_ = den_;
  return r;
}

Rational &Rational::operator+=(const Rational &o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      i128 s = static_cast<i128>(num_) + o.num_;
      if (fits(s)) {
        num_ = static_cast<std::int64_t>(s);
        return *this;
      }
    }
    i128 n = static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_;
    i128 d = static_cast<i128>(den_) * o.den_;
    u128 g = gcd128(uabs(n), static_cast<u128>(d));
    if (g > 1) {
      n /= static_cast<i128>(g);
      d /= static_cast<i128>(g);
    }
    if (n == 0)
      d = 1;
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    set_big(mpq_class(to_mpz(n), to_mpz(d)));
    return *this;
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational &Rational::operator-=(const Rational &o) { return *this += -o; }

Rational &Rational::operator*=(const Rational &o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    // cross-cancel first so that the products stay small
    u128 g1 = gcd128(uabs(num_), static_cast<u128>(o.den_));
    u128 g2 = gcd128(uabs(o.num_), static_cast<u128>(den_));
    i128 n = (static_cast<i128>(num_) / static_cast<i128>(g1)) *
             (static_cast<i128>(o.num_) / static_cast<i128>(g2));
    i128 d = (static_cast<i128>(den_) / static_cast<i128>(g2)) *
             (static_cast<i128>(o.den_) / static_cast<i128>(g1));
    if (fits(n) && fits(d)) {
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return *this;
    }
    set_big(mpq_class(to_mpz(n), to_mpz(d)));
    return *this;
  }
  set_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero())
    throw Error("DivisionByZero", "inverse of zero");
  if (!big_) {
    Rational r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
  }
  mpq_class q = 1 / *big_;
  Rational r;
  r.set_big(std::move(q));
  return r;
}

Rational &Rational::operator/=(const Rational &o) { return *this *= o.inverse(); }

bool operator==(const Rational &a, const Rational &b) {
  if (!a.big_ && !b.big_)
    return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_)
    return *a.big_ == *b.big_;
  return false; // canonical form: big values never fit inline
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater
                        : std::strong_ordering::equal);
}

std::ostream &operator<<(std::ostream &os, const Rational &r) {
  return os << r.str();
}

} // namespace gkm
