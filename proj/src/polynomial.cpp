#include "nilgrade/polynomial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace nilgrade {

Polynomial::Polynomial(Rational c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::x() { return Polynomial({Rational(0), Rational(1)}); }

Polynomial Polynomial::monomial(Rational c, int degree) {
  std::vector<Rational> v(static_cast<std::size_t>(degree + 1), Rational(0));
  v.back() = std::move(c);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(const std::vector<Rational>& roots) {
  Polynomial p(1);
  for (const auto& r : roots) p *= Polynomial({-r, Rational(1)});
  return p;
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Polynomial::operator[](int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<std::size_t>(i)];
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial p = *this;
  const Rational lc = leading();
  for (auto& c : p.c_) c /= lc;
  return p;
}

Polynomial Polynomial::derivative() const {
  if (degree() <= 0) return {};
  std::vector<Rational> d(static_cast<std::size_t>(degree()));
  for (int i = 1; i <= degree(); ++i) d[static_cast<std::size_t>(i - 1)] = c_[static_cast<std::size_t>(i)] * Rational(i);
  return Polynomial(std::move(d));
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QMatrix Polynomial::operator()(const QMatrix& m) const {
  if (m.rows() != m.cols()) throw DomainError("polynomial evaluated at a non-square matrix");
  QMatrix acc = zeros(m.rows(), m.cols());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = mul(acc, m);
    for (Index i = 0; i < m.rows(); ++i) acc(i, i) += *it;
  }
  return acc;
}

bool Polynomial::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& c) { return c.is_integer(); });
}

Polynomial Polynomial::primitive() const {
  if (is_zero()) return *this;
  Integer l = 1, g = 0;
  for (const auto& c : c_) l = lcm(l, c.den());
  std::vector<Rational> v;
  for (const auto& c : c_) {
    Rational s = c * Rational(l);
    g = gcd(g, s.num());
    v.push_back(s);
  }
  Rational f(Integer(c_.back().sign() < 0 ? -1 : 1), g);
  for (auto& c : v) c *= f;
  return Polynomial(std::move(v));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    const Rational a = abs(c);
    if (first) os << (c.sign() < 0 ? "-" : "");
    else os << (c.sign() < 0 ? " - " : " + ");
    first = false;
    if (i == 0 || a != 1) os << a;
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {Polynomial(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  const Rational lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    const Rational f = r[static_cast<std::size_t>(i)] / lb;
    if (f.is_zero()) continue;
    q[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b[j];
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }
Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

Bezout extended_gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b, s0(1), s1, t0, t1(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Polynomial s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.is_zero()) return {};
  const Polynomial inv(Rational(1) / r0.leading());
  return {r0 * inv, s0 * inv, t0 * inv};
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.degree() <= 0) return p.is_zero() ? p : Polynomial(1);
  return (p / gcd(p, p.derivative())).monic();
}

namespace {

std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
  std::vector<Polynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    Polynomial r = -(seq[seq.size() - 2] % seq.back());
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
  if (seq.back().is_zero()) seq.pop_back();
  return seq;
}

int sign_changes(const std::vector<Polynomial>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : seq) {
    const int s = q(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rational cauchy_bound(const Polynomial& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, abs(p[i] / p.leading()));
  return m + 1;
}

}  // namespace

int count_real_roots(const Polynomial& p, const Rational& a, const Rational& b) {
  if (p.degree() <= 0) return 0;
  const auto seq = sturm_sequence(squarefree_part(p));
  return sign_changes(seq, a) - sign_changes(seq, b);
}

namespace {

// Sturm count over the whole real line, from leading-coefficient signs only.
int real_root_count(const Polynomial& p) {
  const auto seq = sturm_sequence(p);
  int at_minus = 0, at_plus = 0, last_m = 0, last_p = 0;
  for (const auto& q : seq) {
    const int sp = q.leading().sign();
    const int sm = q.degree() % 2 ? -sp : sp;
    if (last_p != 0 && sp != last_p) ++at_plus;
    if (last_m != 0 && sm != last_m) ++at_minus;
    last_p = sp;
    last_m = sm;
  }
  return at_minus - at_plus;
}

// True when q has no root modulo some small prime, which rules out rational roots.
bool no_root_mod_small_prime(const Polynomial& q) {
  const Polynomial z = q.primitive();
  for (unsigned long l : {3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul, 41ul, 43ul, 47ul}) {
    if (mpz_fdiv_ui(z.leading().num().get_mpz_t(), l) == 0) continue;
    std::vector<unsigned long> c;
    for (const auto& x : z.coefficients()) c.push_back(mpz_fdiv_ui(x.num().get_mpz_t(), l));
    bool has_root = false;
    for (unsigned long x = 0; x < l && !has_root; ++x) {
      unsigned long acc = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % l;
      has_root = acc == 0;
    }
    if (!has_root) return true;
  }
  return false;
}

// Integer coefficients of the primitive multiple of p.
std::vector<Integer> integer_coefficients(const Polynomial& p) {
  const Polynomial q = p.primitive();
  std::vector<Integer> c;
  for (const auto& x : q.coefficients()) c.push_back(x.num());
  return c;
}

// Sign of p(a/b), from b^d p(a/b) computed over the integers.
int sign_at(const std::vector<Integer>& c, const Rational& x) {
  const Integer a = x.num(), b = x.den();
  Integer acc = c.back(), bp = 1;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    bp *= b;
    acc = acc * a + c[i] * bp;
  }
  return sgn(acc);
}

// Exact root test, after the rational root theorem filter.
bool is_root(const std::vector<Integer>& c, const Rational& x) {
  std::size_t low = 0;
  while (c[low] == 0) ++low;
  if (x.is_zero()) return low > 0;
  if (!mpz_divisible_p(c[low].get_mpz_t(), x.num().get_mpz_t())) return false;
  if (!mpz_divisible_p(c.back().get_mpz_t(), x.den().get_mpz_t())) return false;
  return sign_at(c, x) == 0;
}

// Continued-fraction convergents of x with denominators up to 10^12.
std::vector<Rational> convergents(double x) {
  std::vector<Rational> out;
  if (!std::isfinite(x) || std::abs(x) > 1e15) return out;
  Integer h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double r = x;
  for (int i = 0; i < 40; ++i) {
    const double a = std::floor(r);
    const Integer ai(a);
    const Integer h = ai * h0 + h1, k = ai * k0 + k1;
    if (k > Integer("1000000000000")) break;
    out.emplace_back(h, k);
    h1 = h0; h0 = h; k1 = k0; k0 = k;
    const double frac = r - a;
    if (frac < 1e-12) break;
    r = 1 / frac;
  }
  return out;
}

// Fraction with the least denominator in [lo, hi], lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi) {
  const Rational fl(floor(lo));
  if (fl == lo) return lo;
  if (fl + 1 <= hi) return fl + 1;
  return fl + Rational(1) / simplest_between(Rational(1) / (hi - fl), Rational(1) / (lo - fl));
}

// A root of p bracketed near x, narrowed by exact bisection until at most one fraction with
// denominator <= max_den fits; nullopt when no sign change brackets x.
std::optional<Rational> refine_rational_root(const Polynomial& p, double x, const Integer& max_den) {
  const std::vector<Integer> c = integer_coefficients(p);
  const double delta = 1e-6 * (1 + std::abs(x));
  Rational lo(mpq_class(x - delta)), hi(mpq_class(x + delta));
  int slo = sign_at(c, lo), shi = sign_at(c, hi);
  if (slo == 0) return lo;
  if (shi == 0) return hi;
  if (slo == shi) return std::nullopt;
  const Rational width(Integer(1), 2 * max_den * max_den);
  while (hi - lo >= width) {
    const Rational mid = (lo + hi) / 2;
    const int sm = sign_at(c, mid);
    if (sm == 0) return mid;
    if (sm == slo) lo = mid;
    else hi = mid;
  }
  return simplest_between(lo, hi);
}

// Candidate rational roots from floating-point eigenvalues of the companion matrix.
std::vector<Rational> numeric_candidates(const Polynomial& p) {
  const int d = p.degree();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) {
    const double c = (p[i] / p.leading()).to_double();
    if (!std::isfinite(c)) return {};
    comp(i, d - 1) = -c;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  if (es.info() != Eigen::Success) return {};
  const Integer max_den = abs(p.primitive().leading().num());
  std::vector<Rational> out;
  for (const auto& ev : es.eigenvalues()) {
    if (std::abs(ev.imag()) > 1e-6 * (1 + std::abs(ev.real()))) continue;
    for (auto& c : convergents(ev.real())) out.push_back(std::move(c));
    if (auto r = refine_rational_root(p, ev.real(), max_den)) out.push_back(std::move(*r));
  }
  return out;
}

std::vector<Rational> bisect_rational_roots(const Polynomial& poly);

}  // namespace

std::vector<Rational> rational_roots(const Polynomial& poly) {
  std::vector<Rational> roots;
  if (poly.degree() <= 0) return roots;
  Polynomial rest = squarefree_part(poly);
  std::vector<Integer> ic = integer_coefficients(rest);
  for (const auto& c : numeric_candidates(rest)) {
    if (rest.degree() <= 0) break;
    if (!is_root(ic, c)) continue;
    roots.push_back(c);
    rest = rest / Polynomial({-c, Rational(1)});
    ic = integer_coefficients(rest);
  }
  if (rest.degree() > 0 && real_root_count(rest) > 0 && !no_root_mod_small_prime(rest))
    for (auto& r : bisect_rational_roots(rest)) roots.push_back(std::move(r));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

namespace {

std::vector<Rational> bisect_rational_roots(const Polynomial& poly) {
  std::vector<Rational> roots;
  if (poly.degree() <= 0) return roots;
  Polynomial p = squarefree_part(poly).primitive();
  if (p[0].is_zero()) {
    roots.emplace_back(0);
    p = p / Polynomial::x();
  }
  if (p.degree() <= 0) return roots;
  const std::vector<Integer> ic = integer_coefficients(p);
  const Integer an = abs(p.leading().num());
  const auto seq = sturm_sequence(p);
  const Rational bound = cauchy_bound(p);
  const Rational grid(Integer(1), an);

  struct Interval { Rational lo, hi; int vlo, vhi; };
  std::vector<Interval> stack{{-bound, bound, sign_changes(seq, -bound), sign_changes(seq, bound)}};
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    if (iv.vlo - iv.vhi <= 0) continue;
    if (iv.hi - iv.lo < grid) {
      // At most one multiple of 1/an lies strictly inside; endpoints are never roots.
      const Integer k = floor(iv.hi * Rational(an));
      const Rational cand(k, an);
      if (cand > iv.lo && cand < iv.hi && is_root(ic, cand)) roots.push_back(cand);
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    for (int t = 3; sign_at(ic, mid) == 0; ++t) {
      roots.push_back(mid);
      mid = (iv.lo + iv.hi) / 2 + (iv.hi - iv.lo) / Rational(4 * t);
    }
    const int vm = sign_changes(seq, mid);
    stack.push_back({iv.lo, mid, iv.vlo, vm});
    stack.push_back({mid, iv.hi, vm, iv.vhi});
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace

namespace {

// Monic generator of {p : p(m) v = 0}, from the Krylov sequence of v.
Polynomial local_minimal_polynomial(const QMatrix& m, const QVector& v0) {
  struct Stored { QVector v; Index pivot; std::vector<Rational> comb; };
  std::vector<Stored> basis;
  QVector w = v0;
  for (Index k = 0; k <= m.rows(); ++k) {
    QVector v = w;
    std::vector<Rational> comb(static_cast<std::size_t>(k + 1), Rational(0));
    comb[static_cast<std::size_t>(k)] = 1;
    for (const auto& s : basis) {
      const Rational f = v(s.pivot);
      if (f.is_zero()) continue;
      for (Index j = 0; j < v.size(); ++j)
        if (!s.v(j).is_zero()) v(j) -= f * s.v(j);
      for (std::size_t j = 0; j < s.comb.size(); ++j) comb[j] -= f * s.comb[j];
    }
    Index pivot = -1;
    for (Index j = 0; j < v.size(); ++j)
      if (!v(j).is_zero()) { pivot = j; break; }
    if (pivot < 0) return Polynomial(std::move(comb)).monic();
    const Rational inv = Rational(1) / v(pivot);
    for (Index j = 0; j < v.size(); ++j) v(j) *= inv;
    for (auto& c : comb) c *= inv;
    basis.push_back({std::move(v), pivot, std::move(comb)});
    w = mul(m, w);
  }
  throw InvariantViolation("minimal_polynomial: Cayley-Hamilton bound exceeded");
}

// p(m) v by Horner's rule on vectors.
QVector apply(const Polynomial& p, const QMatrix& m, const QVector& v) {
  QVector acc = QVector::Constant(v.size(), Rational(0));
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mul(m, acc) + *it * v;
  return acc;
}

// f(g) reduced modulo mod.
Polynomial compose_mod(const Polynomial& f, const Polynomial& g, const Polynomial& mod) {
  Polynomial acc;
  const auto& c = f.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * g + Polynomial(*it)) % mod;
  return acc;
}

}  // namespace

Polynomial minimal_polynomial(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("minimal_polynomial: non-square matrix");
  const Index n = m.rows();
  // lcm of the Krylov polynomials of the standard basis vectors
  Polynomial mp(1);
  for (Index i = 0; i < n; ++i) {
    QVector e = QVector::Constant(n, Rational(0));
    e(i) = 1;
    if (is_zero(apply(mp, m, e))) continue;
    const Polynomial p = local_minimal_polynomial(m, e);
    mp = (mp * p / gcd(mp, p)).monic();
  }
  return mp;
}

Polynomial characteristic_polynomial(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("characteristic_polynomial: non-square matrix");
  const Index n = m.rows();
  // Faddeev-LeVerrier.
  std::vector<Rational> c(static_cast<std::size_t>(n + 1), Rational(0));
  c[static_cast<std::size_t>(n)] = 1;
  QMatrix mk = zeros(n, n);
  for (Index k = 1; k <= n; ++k) {
    mk = m * mk;
    for (Index i = 0; i < n; ++i) mk(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    const QMatrix amk = m * mk;
    Rational tr = 0;
    for (Index i = 0; i < n; ++i) tr += amk(i, i);
    c[static_cast<std::size_t>(n - k)] = -tr / Rational(static_cast<long>(k));
  }
  return Polynomial(std::move(c));
}

QMatrix semisimple_part(const QMatrix& m) {
  const Polynomial mp = minimal_polynomial(m);
  const Polynomial p = squarefree_part(mp);
  if (p == mp) return m;
  if (p == Polynomial::monomial(1, 1)) return zeros(m.rows(), m.cols());
  const Bezout b = extended_gcd(p.derivative(), p);  // u p' + v p = 1
  if (b.g != Polynomial(1)) throw InvariantViolation("semisimple_part: squarefree part not coprime to derivative");
  // Newton iteration on the polynomial h with S = h(m), carried out in Q[X] / (mp).
  Polynomial h = Polynomial::x();
  for (Index it = 0; it <= m.rows() + 1; ++it) {
    const Polynomial ph = compose_mod(p, h, mp);
    if (ph.is_zero()) return h(m);
    h = (h - ph * compose_mod(b.u, h, mp)) % mp;
  }
  throw InvariantViolation("semisimple_part: Newton iteration did not converge");
}

bool is_nilpotent(const QMatrix& m) {
  const Polynomial mp = minimal_polynomial(m);
  return mp == Polynomial::monomial(1, mp.degree());
}

bool is_split_semisimple(const QMatrix& m) {
  const Polynomial mp = minimal_polynomial(m);
  if (squarefree_part(mp) != mp) return false;
  return static_cast<int>(rational_roots(mp).size()) == mp.degree();
}

}  // namespace nilgrade
