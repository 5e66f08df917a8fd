#pragma once

#include "nilgrade/exactlin.hpp"

#include <string>
#include <utility>
#include <vector>

namespace nilgrade {

/// Univariate polynomial over Q, coefficients stored low degree first, no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational c);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs) : Polynomial(std::vector<Rational>(coeffs)) {}
  static Polynomial x();
  static Polynomial monomial(Rational c, int degree);
  /// Product of (X - r) over the given roots.
  static Polynomial from_roots(const std::vector<Rational>& roots);

  /// Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational operator[](int i) const;
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }
  const std::vector<Rational>& coefficients() const { return c_; }

  Polynomial monic() const;
  Polynomial derivative() const;
  Rational operator()(const Rational& x) const;
  QMatrix operator()(const QMatrix& m) const;

  /// True when every coefficient is an integer.
  bool is_integral() const;
  /// Positive rational multiple with coprime integer coefficients and positive leading coefficient.
  Polynomial primitive() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string str(const std::string& var = "X") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Euclidean division: a = q b + r with deg r < deg b.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial operator/(const Polynomial& a, const Polynomial& b);
Polynomial operator%(const Polynomial& a, const Polynomial& b);
/// Monic gcd (zero if both are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

struct Bezout {
  Polynomial g, u, v;  // u a + v b = g, g monic
};
Bezout extended_gcd(const Polynomial& a, const Polynomial& b);

/// Product of the distinct monic irreducible factors.
Polynomial squarefree_part(const Polynomial& p);
/// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const Polynomial& p);
/// Number of distinct real roots in the half-open interval (a, b].
int count_real_roots(const Polynomial& p, const Rational& a, const Rational& b);

/// Least-degree monic polynomial annihilating m.
Polynomial minimal_polynomial(const QMatrix& m);
Polynomial characteristic_polynomial(const QMatrix& m);

/// Semisimple part S of m = S + N (Jordan-Chevalley over Q). S is a polynomial in m.
QMatrix semisimple_part(const QMatrix& m);

bool is_nilpotent(const QMatrix& m);
/// Diagonalizable over Q: squarefree minimal polynomial with only rational roots.
bool is_split_semisimple(const QMatrix& m);

/// Distinct monic irreducible factors over Q of p, sorted by degree then coefficients.
///
/// Rational roots are removed exactly; the rest is factored by matching subsets of certified
/// complex root enclosures, refined with doubling working precision. Every factor is confirmed by
/// exact division. Throws PrecisionExhausted when `precision_budget` bits do not suffice.
std::vector<Polynomial> irreducible_factors(const Polynomial& p, int precision_budget = 4096);

/// Upper and lower rational bounds for sqrt(a), a >= 0, within 2^-bits relative slack.
Rational sqrt_upper(const Rational& a, int bits = 64);
Rational sqrt_lower(const Rational& a, int bits = 64);

}  // namespace nilgrade
