#include "nilgrade/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace nilgrade {

Rational sqrt_upper(const Rational& a, int bits) {
  if (a.sign() < 0) throw DomainError("sqrt of a negative number");
  if (a.is_zero()) return 0;
  const Integer d = a.den();
  Integer s, x = a.num() * d;
  x <<= static_cast<mp_bitcnt_t>(2 * bits);
  mpz_sqrt(s.get_mpz_t(), x.get_mpz_t());
  return Rational(s + 1, d << static_cast<mp_bitcnt_t>(bits));
}

Rational sqrt_lower(const Rational& a, int bits) {
  if (a.sign() < 0) throw DomainError("sqrt of a negative number");
  if (a.is_zero()) return 0;
  const Integer d = a.den();
  Integer s, x = a.num() * d;
  x <<= static_cast<mp_bitcnt_t>(2 * bits);
  mpz_sqrt(s.get_mpz_t(), x.get_mpz_t());
  return Rational(s, d << static_cast<mp_bitcnt_t>(bits));
}

namespace {

struct Complex {
  Rational re, im;
};

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator/(const Complex& a, const Complex& b) {
  const Rational n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
Rational norm2(const Complex& a) { return a.re * a.re + a.im * a.im; }

Rational round_bits(const Rational& x, int bits) {
  Integer n = x.num();
  n <<= static_cast<mp_bitcnt_t>(bits);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), x.raw().get_den_mpz_t());
  return Rational(q, Integer(1) << static_cast<mp_bitcnt_t>(bits));
}

Complex round_bits(const Complex& z, int bits) { return {round_bits(z.re, bits), round_bits(z.im, bits)}; }

Complex eval(const Polynomial& p, const Complex& z) {
  Complex acc{0, 0};
  for (int i = p.degree(); i >= 0; --i) acc = acc * z + Complex{p[i], 0};
  return acc;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) return 0;
  mpq_class q(x);
  return Rational(q);
}

// Starting points for the roots of q(X) = c^n p(X / c), from the companion matrix of p.
std::vector<Complex> initial_roots(const Polynomial& p, const Integer& c) {
  const Polynomial q = p.monic();
  const int n = q.degree();
  const Rational cr(c);
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -q[i].to_double();
  std::vector<Complex> z;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  bool ok = es.info() == Eigen::Success;
  if (ok) {
    for (int i = 0; i < n; ++i) {
      const std::complex<double> e = es.eigenvalues()(i);
      if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) ok = false;
      z.push_back({from_double(e.real()) * cr, from_double(e.imag()) * cr});
    }
  }
  // Perturb coincident starts; Weierstrass iteration needs distinct points.
  for (int i = 0; i < n && ok; ++i)
    for (int j = 0; j < i; ++j)
      if (z[static_cast<std::size_t>(i)].re == z[static_cast<std::size_t>(j)].re &&
          z[static_cast<std::size_t>(i)].im == z[static_cast<std::size_t>(j)].im)
        z[static_cast<std::size_t>(i)].im += Rational(Integer(i + 1), Integer(1 << 20));
  if (!ok) {
    z.clear();
    double r = 1;
    for (int i = 0; i < n; ++i) r = std::max(r, std::abs(q[i].to_double()) + 1);
    for (int k = 0; k < n; ++k) {
      const double t = 2 * M_PI * k / n + 0.4;
      z.push_back({from_double(r * std::cos(t)) * cr, from_double(r * std::sin(t)) * cr});
    }
  }
  return z;
}

std::vector<Complex> weierstrass_corrections(const Polynomial& q, const std::vector<Complex>& z) {
  std::vector<Complex> w;
  for (std::size_t i = 0; i < z.size(); ++i) {
    Complex den{1, 0};
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) den = den * (z[i] - z[j]);
    if (norm2(den).is_zero()) return {};
    w.push_back(eval(q, z[i]) / den);
  }
  return w;
}

struct Disk {
  Complex c;
  Rational r;
};

Disk mul(const Disk& a, const Disk& b, int bits) {
  const Rational na = sqrt_upper(norm2(a.c), bits), nb = sqrt_upper(norm2(b.c), bits);
  return {a.c * b.c, na * b.r + nb * a.r + a.r * b.r};
}

enum class Verdict { reject, candidate, undecided };

/// Decides whether prod_{i in subset} (X - root_i) can have integer coefficients.
Verdict check_subset(const std::vector<Disk>& roots, const std::vector<int>& subset, int bits,
                     Polynomial& candidate) {
  std::vector<Disk> coeffs{{{1, 0}, 0}};
  for (int idx : subset) {
    const Disk& d = roots[static_cast<std::size_t>(idx)];
    std::vector<Disk> next(coeffs.size() + 1, Disk{{0, 0}, 0});
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1].c = next[k + 1].c + coeffs[k].c;
      next[k + 1].r += coeffs[k].r;
      const Disk m = mul(d, coeffs[k], bits);
      next[k].c = next[k].c - m.c;
      next[k].r += m.r;
    }
    coeffs = std::move(next);
  }
  std::vector<Rational> ints;
  bool undecided = false;
  for (const auto& c : coeffs) {
    if (c.c.im - c.r > 0 || c.c.im + c.r < 0) return Verdict::reject;
    const Integer lo = ceil(c.c.re - c.r), hi = floor(c.c.re + c.r);
    if (lo > hi) return Verdict::reject;
    if (lo != hi) undecided = true;
    ints.emplace_back(lo);
  }
  if (undecided) return Verdict::undecided;
  candidate = Polynomial(std::move(ints));
  return Verdict::candidate;
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] < n - k + i) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

/// Factors a monic integral squarefree polynomial with no rational roots.
std::optional<std::vector<Polynomial>> factor_with_enclosures(const Polynomial& q,
                                                              const std::vector<Disk>& disks, int bits) {
  std::vector<Polynomial> out;
  std::vector<int> alive(disks.size());
  for (std::size_t i = 0; i < disks.size(); ++i) alive[i] = static_cast<int>(i);
  Polynomial rest = q;
  for (int k = 2; 2 * k <= static_cast<int>(alive.size()); ++k) {
    bool restart = true;
    while (restart) {
      restart = false;
      const int m = static_cast<int>(alive.size());
      if (2 * k > m) break;
      std::vector<int> comb(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
      do {
        std::vector<int> subset;
        for (int i : comb) subset.push_back(alive[static_cast<std::size_t>(i)]);
        Polynomial cand;
        const Verdict v = check_subset(disks, subset, bits, cand);
        if (v == Verdict::undecided) return std::nullopt;
        if (v == Verdict::reject) continue;
        auto [quot, rem] = divmod(rest, cand);
        if (!rem.is_zero()) continue;
        out.push_back(cand);
        rest = quot;
        std::vector<int> keep;
        for (int a : alive)
          if (std::find(subset.begin(), subset.end(), a) == subset.end()) keep.push_back(a);
        alive = std::move(keep);
        restart = true;
        break;
      } while (next_combination(comb, m));
    }
  }
  if (rest.degree() > 0) out.push_back(rest);
  return out;
}

std::vector<Polynomial> factor_integral(const Polynomial& q, const Polynomial& p, const Integer& c, int budget) {
  const int n = q.degree();
  if (n <= 3) return {q};
  std::vector<Complex> z = initial_roots(p, c);
  for (int bits = 64;; bits *= 2) {
    if (bits > budget) throw PrecisionExhausted();
    std::vector<Complex> w;
    for (int it = 0; it < 200; ++it) {
      w = weierstrass_corrections(q, z);
      if (w.empty()) {
        // Collision: nudge and retry.
        for (std::size_t i = 0; i < z.size(); ++i) z[i].im += Rational(Integer(static_cast<long>(i + 1)), Integer(1) << 30);
        continue;
      }
      Rational worst = 0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        z[i] = round_bits(z[i] - w[i], bits);
        worst = std::max(worst, norm2(w[i]));
      }
      if (worst < Rational(Integer(1), Integer(1) << static_cast<mp_bitcnt_t>(2 * bits - 8))) break;
    }
    w = weierstrass_corrections(q, z);
    if (w.empty()) continue;
    std::vector<Disk> disks;
    for (std::size_t i = 0; i < z.size(); ++i)
      disks.push_back({z[i], Rational(n) * sqrt_upper(norm2(w[i]), bits)});
    bool disjoint = true;
    for (std::size_t i = 0; i < disks.size() && disjoint; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const Rational s = disks[i].r + disks[j].r;
        if (norm2(disks[i].c - disks[j].c) <= s * s) { disjoint = false; break; }
      }
    if (!disjoint) continue;
    if (auto f = factor_with_enclosures(q, disks, bits)) return *f;
  }
}

}  // namespace

std::vector<Polynomial> irreducible_factors(const Polynomial& poly, int precision_budget) {
  if (poly.degree() <= 0) return {};
  const Polynomial p = squarefree_part(poly);
  std::vector<Polynomial> out;
  const auto roots = rational_roots(p);
  Polynomial rest = p;
  for (const auto& r : roots) {
    const Polynomial lin({-r, Rational(1)});
    out.push_back(lin);
    rest = rest / lin;
  }
  if (rest.degree() >= 2) {
    // Monic integral rescaling q(X) = c^n rest(X / c).
    Integer c = 1;
    for (const auto& a : rest.coefficients()) c = lcm(c, a.den());
    const int n = rest.degree();
    std::vector<Rational> qc(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) qc[static_cast<std::size_t>(i)] = rest[i] * pow(Rational(c), n - i);
    const Polynomial q(std::move(qc));
    for (const auto& f : factor_integral(q, rest, c, precision_budget)) {
      const int d = f.degree();
      std::vector<Rational> fc(static_cast<std::size_t>(d + 1));
      for (int i = 0; i <= d; ++i) fc[static_cast<std::size_t>(i)] = f[i] / pow(Rational(c), d - i);
      out.push_back(Polynomial(std::move(fc)));
    }
  }
  std::sort(out.begin(), out.end(), [](const Polynomial& a, const Polynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coefficients().begin(), a.coefficients().end(),
                                        b.coefficients().begin(), b.coefficients().end());
  });
  return out;
}

}  // namespace nilgrade
