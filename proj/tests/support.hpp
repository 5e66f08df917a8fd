#pragma once

#include "nilgrade/exactlin.hpp"

#include <initializer_list>
#include <random>

namespace testing {

using nilgrade::Index;
using nilgrade::QMatrix;
using nilgrade::QVector;
using nilgrade::Rational;

inline QMatrix mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  const Index r = static_cast<Index>(rows.size());
  const Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
  QMatrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline QVector vec(std::initializer_list<Rational> v) {
  QVector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (const auto& x : v) out(i++) = x;
  return out;
}

inline Rational q(long n, long d = 1) { return Rational(nilgrade::Integer(n), nilgrade::Integer(d)); }

/// Small random rational in [-bound, bound] with denominators up to `den`.
inline Rational random_rational(std::mt19937_64& rng, int bound, int den = 1) {
  std::uniform_int_distribution<int> num(-bound * den, bound * den);
  std::uniform_int_distribution<int> d(1, den);
  return q(num(rng), d(rng));
}

inline QMatrix random_matrix(std::mt19937_64& rng, Index r, Index c, int bound, int den = 1) {
  QMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = random_rational(rng, bound, den);
  return m;
}

inline QMatrix random_invertible(std::mt19937_64& rng, Index n, int bound = 3, int den = 2) {
  while (true) {
    QMatrix m = random_matrix(rng, n, n, bound, den);
    if (!nilgrade::determinant(m).is_zero()) return m;
  }
}

}  // namespace testing

#include "nilgrade/algebra_io.hpp"

#include <string>

namespace testing {

inline nilgrade::Algebra catalog(const std::string& name) {
  return nilgrade::load_algebra(std::string(NILGRADE_CATALOG_DIR) + "/" + name + ".json");
}

}  // namespace testing

namespace testing {

/// Product of `steps` random elementary matrices: shears by small rationals, scalings by
/// +-1/2, +-2, -1, and transpositions. Keeps P and its inverse sparse with small entries.
inline QMatrix random_elementary_product(std::mt19937_64& rng, Index n, int steps) {
  QMatrix p = nilgrade::identity(n);
  std::uniform_int_distribution<Index> idx(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 5);
  const Rational scalings[] = {q(1, 2), q(-1, 2), q(2), q(-2), q(-1)};
  std::uniform_int_distribution<int> sc(0, 4);
  for (int s = 0; s < steps; ++s) {
    const Index i = idx(rng), j = idx(rng);
    const int k = kind(rng);
    if (k <= 3 && i != j) {
      Rational c = random_rational(rng, 2, 2);
      if (c.is_zero()) c = 1;
      p.col(j) += c * p.col(i);
    } else if (k == 4) {
      p.col(i) *= scalings[sc(rng)];
    } else if (i != j) {
      p.col(i).swap(p.col(j));
    }
  }
  return p;
}

}  // namespace testing
