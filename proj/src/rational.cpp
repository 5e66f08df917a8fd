#include "nilgrade/rational.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nilgrade {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw std::invalid_argument("empty rational");
  s = s.substr(b, e - b + 1);

  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw std::invalid_argument("bad rational: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad rational: " + s);
    Integer n;
    if (n.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0)
      throw std::invalid_argument("bad rational: " + s);
    Integer d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, frac);
    return Rational(n, d);
  }
  mpq_class q;
  if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("bad rational (zero denominator): " + s);
  return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.q_.get_str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, long exponent) {
  if (exponent < 0) return pow(Rational(1) / r, -exponent);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return q;
}

Integer ceil(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return q;
}

Integer lcm_of_denominators(std::initializer_list<Rational> values) {
  Integer l = 1;
  for (const auto& v : values) l = lcm(l, v.den());
  return l;
}

QMatrix identity(Eigen::Index n) {
  QMatrix m = QMatrix::Constant(n, n, Rational(0));
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix zeros(Eigen::Index rows, Eigen::Index cols) { return QMatrix::Constant(rows, cols, Rational(0)); }

QVector zero_vector(Eigen::Index n) { return QVector::Constant(n, Rational(0)); }

QVector unit_vector(Eigen::Index n, Eigen::Index i) {
  QVector v = zero_vector(n);
  v(i) = 1;
  return v;
}

Integer common_denominator(const QMatrix& m) {
  Integer l = 1;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) l = lcm(l, m(i, j).den());
  return l;
}

Integer common_denominator(const QVector& v) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) l = lcm(l, v(i).den());
  return l;
}

std::string to_string(const QMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace nilgrade

std::size_t std::hash<nilgrade::Rational>::operator()(const nilgrade::Rational& r) const noexcept {
  return std::hash<std::string>{}(r.str());
}
