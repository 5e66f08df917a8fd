#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nilgrade {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact rational number, always kept in lowest terms with a positive denominator.
///
/// A thin value wrapper around GMP's mpq so that it can be used as an Eigen scalar
/// (gmpxx expression templates do not mix well with Eigen's own).
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long v) : q_(Integer(std::to_string(v))) {}  // NOLINT
  Rational(const Integer& v) : q_(v) {}  // NOLINT
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "a", "-a/b" or a finite decimal such as "0.25". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }
  std::string str() const { return q_.get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class q_{0};
};

Rational abs(const Rational& r);
/// Integer power, negative exponents allowed for nonzero bases.
Rational pow(const Rational& r, long exponent);
Integer floor(const Rational& r);
Integer ceil(const Rational& r);
Integer lcm_of_denominators(std::initializer_list<Rational> values);

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}
inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace nilgrade

namespace Eigen {

template <>
struct NumTraits<nilgrade::Rational> : GenericNumTraits<nilgrade::Rational> {
  using Real = nilgrade::Rational;
  using NonInteger = nilgrade::Rational;
  using Nested = nilgrade::Rational;
  using Literal = nilgrade::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 64
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace nilgrade {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

QMatrix identity(Eigen::Index n);
QMatrix zeros(Eigen::Index rows, Eigen::Index cols);
QVector zero_vector(Eigen::Index n);
QVector unit_vector(Eigen::Index n, Eigen::Index i);

/// Least common multiple of all entry denominators.
Integer common_denominator(const QMatrix& m);
Integer common_denominator(const QVector& v);

std::string to_string(const QMatrix& m);

}  // namespace nilgrade

template <>
struct std::hash<nilgrade::Rational> {
  std::size_t operator()(const nilgrade::Rational& r) const noexcept;
};
