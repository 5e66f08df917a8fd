#include "nilgrade/nilgroup.hpp"

#include "nilgrade/carnot.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace nilgrade {

namespace {

using Word = std::vector<std::uint8_t>;

Integer factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

using Poly = std::map<Word, Rational>;  // free associative algebra on x = 0, y = 1

Poly commutator(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      Word uv = u, vu = v;
      uv.insert(uv.end(), v.begin(), v.end());
      vu.insert(vu.end(), u.begin(), u.end());
      out[uv] += cu * cv;
      out[vu] -= cu * cv;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

// Right-nested [w1, [w2, ... wk]] expanded into words.
Poly expand_right_nested(const Word& w) {
  Poly p{{Word{w.back()}, Rational(1)}};
  for (std::size_t i = w.size() - 1; i-- > 0;) p = commutator(Poly{{Word{w[i]}, Rational(1)}}, p);
  return p;
}

// Standard factorization w = u v of a Lyndon word: v the longest proper Lyndon suffix.
std::size_t standard_split(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    const Word v(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    bool lyndon = true;
    for (std::size_t j = 1; j < v.size() && lyndon; ++j)
      lyndon = v < Word(v.begin() + static_cast<std::ptrdiff_t>(j), v.end());
    if (lyndon) return i;
  }
  return w.size();
}

Poly expand_lyndon(const Word& w) {
  if (w.size() == 1) return Poly{{w, Rational(1)}};
  const std::size_t i = standard_split(w);
  return commutator(expand_lyndon(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i))),
                    expand_lyndon(Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.end())));
}

// Dynkin: sum over n of (-1)^(n-1)/n, over pairs (r_i, s_i) != (0, 0), of
// [x^r1 y^s1 ... x^rn y^sn] / ((sum r_i + s_i) prod r_i! s_i!), right-nested.
// The sum is then rewritten in the Lyndon basis, whose expansions are unitriangular.
std::vector<BchTerm> dynkin(int degree) {
  Poly words;
  Word word;
  std::function<void(int, const Integer&)> rec = [&](int n, const Integer& denom) {
    if (n > 0) {
      const int len = static_cast<int>(word.size());
      Rational c(Integer(1), denom * len * n);
      if (n % 2 == 0) c = -c;
      words[word] += c;
    }
    const int room = degree - static_cast<int>(word.size());
    for (int r = 0; r <= room; ++r)
      for (int s = 0; r + s <= room; ++s) {
        if (r + s == 0) continue;
        word.insert(word.end(), static_cast<std::size_t>(r), 0);
        word.insert(word.end(), static_cast<std::size_t>(s), 1);
        rec(n + 1, denom * factorial(r) * factorial(s));
        word.resize(word.size() - static_cast<std::size_t>(r + s));
      }
  };
  rec(0, Integer(1));

  Poly assoc;
  for (const auto& [w, c] : words) {
    if (c.is_zero() || (w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2])) continue;
    for (const auto& [u, cu] : expand_right_nested(w)) assoc[u] += c * cu;
  }
  std::erase_if(assoc, [](const auto& kv) { return kv.second.is_zero(); });

  std::vector<BchTerm> out;
  while (!assoc.empty()) {
    const Word w = assoc.begin()->first;
    const Rational c = assoc.begin()->second;
    for (const auto& [u, cu] : expand_lyndon(w)) assoc[u] -= c * cu;
    if (assoc.count(w) && !assoc[w].is_zero()) throw InvariantViolation("bch: leading word is not Lyndon");
    std::erase_if(assoc, [](const auto& kv) { return kv.second.is_zero(); });
    out.push_back({w, c});
  }
  std::sort(out.begin(), out.end(), [](const BchTerm& a, const BchTerm& b) {
    return a.word.size() != b.word.size() ? a.word.size() < b.word.size() : a.word < b.word;
  });
  return out;
}

std::mutex bch_mutex;

QVector solve_row(const QMatrix& basis_rows, const QVector& v) {
  // v^T = c^T basis_rows, basis square invertible
  return inverse(QMatrix(basis_rows.transpose())) * v;
}

Integer denominator_lcm(const QVector& v) {
  Integer l = 1;
  for (Index i = 0; i < v.size(); ++i) l = lcm(l, v(i).den());
  return l;
}

void require_degree_grading(const Grading& gr) {
  if (gr.rank() != 1 || !gr.is_nonnegative()) throw NotNonnegativeGrading();
}

Rational max_abs(const QVector& y, const std::vector<Index>& cols) {
  Rational m = 0;
  for (Index j : cols) {
    const Rational a = abs(y(j));
    if (a > m) m = a;
  }
  return m;
}

// Columns of the adapted coordinates, grouped by degree.
std::map<long, std::vector<Index>> columns_by_degree(const Grading& gr) {
  std::map<long, std::vector<Index>> out;
  const auto deg = gr.adapted_degrees();
  for (std::size_t j = 0; j < deg.size(); ++j) out[deg[j]].push_back(static_cast<Index>(j));
  return out;
}

RootValue length_in_adapted(const std::map<long, std::vector<Index>>& cols, const QVector& y) {
  RootValue best{0, 1};
  for (const auto& [d, js] : cols) {
    const RootValue r{max_abs(y, js), d == 0 ? 1 : static_cast<int>(d)};
    if (best < r) best = r;
  }
  return best;
}

// Depth-first walk over the points of a full lattice (rows of an upper triangular basis) with
// |y_j| <= bound_j. Calls visit on every nonzero point.
void enumerate_box(const QMatrix& rows, const std::vector<Rational>& bound, std::size_t budget,
                   std::size_t& visited, const std::function<void(const QVector&)>& visit) {
  const Index n = rows.rows();
  QVector partial = zero_vector(n);
  bool nonzero = false;
  std::function<void(Index)> rec = [&](Index j) {
    if (++visited > budget) throw BoxTooLarge();
    if (j == n) {
      if (nonzero) visit(partial);
      return;
    }
    const Rational h = rows(j, j);
    const Rational lo_v = (-bound[static_cast<std::size_t>(j)] - partial(j)) / h;
    const Rational hi_v = (bound[static_cast<std::size_t>(j)] - partial(j)) / h;
    const Integer lo = ceil(h.sign() > 0 ? lo_v : hi_v);
    const Integer hi = floor(h.sign() > 0 ? hi_v : lo_v);
    const QVector row = rows.row(j).transpose();
    const bool was = nonzero;
    for (Integer z = lo; z <= hi; ++z) {
      const QVector saved = partial;
      if (z != 0) {
        partial += Rational(z) * row;
        nonzero = true;
      }
      rec(j + 1);
      partial = saved;
      nonzero = was;
    }
  };
  rec(0);
}

QMatrix triangular_basis(const ZLattice& l) {
  if (!l.is_full()) throw DomainError("expected a full lattice");
  return l.basis();
}

Subspace degree_at_least(const Grading& gr, long n) {
  Subspace s(gr.algebra().dim());
  for (const auto& c : gr.components())
    if (c.weight[0] >= n) s = s + c.space;
  return s;
}

// Smallest nonzero max-norm over a full lattice, by doubling a cube.
Rational shortest_max_norm(const ZLattice& l, std::size_t budget) {
  const QMatrix rows = triangular_basis(l);
  const Index n = rows.rows();
  for (Rational r = 1;; r *= 2) {
    std::optional<Rational> best;
    std::size_t visited = 0;
    enumerate_box(rows, std::vector<Rational>(static_cast<std::size_t>(n), r), budget, visited, [&](const QVector& y) {
      Rational m = 0;
      for (Index j = 0; j < n; ++j)
        if (abs(y(j)) > m) m = abs(y(j));
      if (!best || m < *best) best = m;
    });
    if (best) return *best;
  }
}

// Right-nested brackets [l_1, [l_2, ... l_k]] with all l_i in L span the returned lattice.
ZLattice bracket_span(const NilGroup& g, const ZLattice& l, const ZLattice& inner) {
  std::vector<QVector> gens;
  for (Index i = 0; i < l.rank(); ++i)
    for (Index j = 0; j < inner.rank(); ++j) gens.push_back(g.bracket(l.basis_vector(i), inner.basis_vector(j)));
  return ZLattice::from_generators(gens, g.dim());
}

std::vector<Integer> bch_degree_denominators(int c) {
  std::vector<Integer> d(static_cast<std::size_t>(c) + 1, Integer(1));
  for (const auto& t : bch_table(c)) {
    auto& x = d[t.word.size()];
    x = lcm(x, t.coeff.den());
  }
  return d;
}

// Sum over k >= 2 of (1 / D_k) M_k, the lattice the BCH terms of degree >= 2 can reach.
ZLattice bch_reach(const NilGroup& g, const ZLattice& l) {
  const int c = g.nilpotency_class();
  const auto den = bch_degree_denominators(c);
  ZLattice reach(g.dim());
  ZLattice level = l;
  for (int k = 2; k <= c; ++k) {
    level = bracket_span(g, l, level);
    if (level.rank() == 0) break;
    reach = reach + level.image(identity(g.dim()) / Rational(den[static_cast<std::size_t>(k)]));
  }
  return reach;
}

}  // namespace

const std::vector<BchTerm>& bch_table(int degree) {
  static std::map<int, std::vector<BchTerm>> cache;
  std::lock_guard<std::mutex> lock(bch_mutex);
  auto it = cache.find(degree);
  if (it == cache.end()) it = cache.emplace(degree, dynkin(degree)).first;
  return it->second;
}

Integer bch_denominator(int degree) {
  Integer l = 1;
  for (const auto& t : bch_table(degree)) l = lcm(l, t.coeff.den());
  return l;
}

NilGroup::NilGroup(Algebra a, int class_cap) : a_(std::move(a)) {
  require_lie(a_);
  const LowerSeries ls = lower_series(a_);
  if (!ls.nilpotent()) throw NotNilpotent();
  class_ = *ls.nilpotency_class;
  if (class_ > class_cap) throw ClassTooLarge(class_);
  const Index n = a_.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        if (!a_.sc(i, j, k).is_zero()) sc_.push_back({i, j, k, a_.sc(i, j, k)});
}

QVector NilGroup::bracket(const QVector& x, const QVector& y) const {
  QVector r = zero_vector(a_.dim());
  for (const auto& e : sc_) {
    const Rational f = x(e.i) * y(e.j) - x(e.j) * y(e.i);
    if (!f.is_zero()) r(e.k) += f * e.c;
  }
  return r;
}

QVector NilGroup::multiply(const QVector& x, const QVector& y) const {
  if (x.size() != dim() || y.size() != dim()) throw DomainError("multiply: dimension mismatch");
  std::map<Word, QVector> memo;
  std::function<QVector(const Word&)> value = [&](const Word& w) -> QVector {
    if (w.size() == 1) return w[0] == 0 ? x : y;
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    const auto i = static_cast<std::ptrdiff_t>(standard_split(w));
    QVector v = bracket(value(Word(w.begin(), w.begin() + i)), value(Word(w.begin() + i, w.end())));
    memo.emplace(w, v);
    return v;
  };
  QVector out = zero_vector(dim());
  for (const auto& t : bch_table(std::max(class_, 1))) {
    const QVector v = value(t.word);
    if (!v.isZero()) out += t.coeff * v;
  }
  return out;
}

QVector bch_multiply(const NilGroup& g, const QVector& x, const QVector& y) { return g.multiply(x, y); }

long growth_degree(const Algebra& a) {
  const LowerSeries ls = lower_series(a);
  if (!ls.nilpotent()) throw NotNilpotent();
  long d = 0;
  for (int i = 1; i <= *ls.nilpotency_class; ++i) d += i * (ls.term(i).dim() - ls.term(i + 1).dim());
  return d;
}

long graded_degree(const Grading& gr) {
  if (gr.rank() != 1) throw BadGrading("expected a grading in Z");
  long d = 0;
  for (const auto& c : gr.components()) d += c.weight[0] * c.space.dim();
  return d;
}

QMatrix dilation(const Grading& gr, const Rational& t) {
  if (gr.rank() != 1) throw BadGrading("dilation needs a grading in Z");
  if (!gr.is_nonnegative()) throw BadGrading("dilation needs non-negative degrees");
  const QMatrix p = gr.adapted_basis();
  const auto deg = gr.adapted_degrees();
  QMatrix d = p;
  for (Index j = 0; j < p.cols(); ++j) d.col(j) *= pow(t, deg[static_cast<std::size_t>(j)]);
  const QMatrix m = mul(d, inverse(p));
  const Algebra& a = gr.algebra();
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j)
      if (m * a.product(i, j) != a.product(QVector(m.col(i)), QVector(m.col(j))))
        throw InvariantViolation("dilation is not an endomorphism");
  return m;
}

LatticeSubgroup make_lattice_subgroup(const NilGroup& g, const ZLattice& log_lattice) {
  if (log_lattice.ambient_dim() != g.dim()) throw DomainError("lattice lives in the wrong dimension");
  return {log_lattice, log_lattice.contains(bch_reach(g, log_lattice))};
}

LatticeSubgroup standard_lattice(const NilGroup& g) {
  ZLattice l = ZLattice::standard(g.dim());
  for (int round = 0; round <= 2 * g.nilpotency_class() + 2; ++round) {
    const ZLattice next = l + bch_reach(g, l);
    if (next == l) return {l, true};
    l = next;
  }
  throw InvariantViolation("standard_lattice: closure did not stabilize");
}

DefendoCertificate defendo_modulus(const NilGroup& g, const Grading& gr, const LatticeSubgroup& lattice) {
  require_degree_grading(gr);
  if (!lattice.verified) throw DomainError("defendo_modulus: lattice closure is not certified");
  const ZLattice& l = lattice.log_lattice;
  if (!l.is_full()) throw DomainError("defendo_modulus: lattice is not full");
  const Index d = g.dim();

  DefendoCertificate cert;
  cert.d = d;
  const QMatrix p = gr.adapted_basis();
  const Algebra ap = base_change(g.algebra(), p);
  Integer scale = 1;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k) scale = lcm(scale, ap.sc(i, j, k).den());
  cert.basis = Rational(scale) * p;

  const ZLattice lb = l.image(inverse(cert.basis));
  const QMatrix rows = lb.basis();
  cert.k = 1;
  for (Index i = 0; i < rows.rows(); ++i) cert.k = lcm(cert.k, denominator_lcm(QVector(rows.row(i).transpose())));
  cert.k_prime = 1;
  for (Index i = 0; i < d; ++i) cert.k_prime = lcm(cert.k_prime, denominator_lcm(solve_row(rows, unit_vector(d, i))));
  cert.s = bch_denominator(std::max(g.nilpotency_class(), 1));
  Integer kd = 1;
  for (Index i = 0; i < d; ++i) kd *= cert.k;
  cert.k0 = cert.s * kd * cert.k_prime;

  for (const Integer& m : {Integer(cert.k0 + 1), Integer(2 * cert.k0 + 1)}) {
    if (!l.contains(l.image(dilation(gr, Rational(m)))))
      throw InvariantViolation("defendo_modulus: dilation by " + m.get_str() + " leaves the lattice");
    cert.certified_m.push_back(m);
  }
  return cert;
}

double RootValue::value() const {
  if (radicand.is_zero()) return 0;
  long en = 0, ed = 0;
  const double mn = mpz_get_d_2exp(&en, radicand.num().get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, radicand.den().get_mpz_t());
  const double lg = std::log(std::fabs(mn) / md) + static_cast<double>(en - ed) * std::log(2.0);
  return std::exp(lg / index);
}

std::string RootValue::str() const {
  // strip perfect powers from the index
  Rational r = radicand;
  int idx = index;
  for (int k = idx; k >= 2; --k) {
    if (idx % k != 0) continue;
    Integer rn, rd;
    const bool en = mpz_root(rn.get_mpz_t(), r.num().get_mpz_t(), static_cast<unsigned long>(k)) != 0;
    const bool ed = mpz_root(rd.get_mpz_t(), r.den().get_mpz_t(), static_cast<unsigned long>(k)) != 0;
    if (en && ed) {
      r = Rational(rn, rd);
      idx /= k;
      k = idx + 1;
    }
  }
  if (idx == 1) return r.str();
  return "(" + r.str() + ")^(1/" + std::to_string(idx) + ")";
}

int compare(const RootValue& a, const RootValue& b) {
  const Rational l = pow(a.radicand, b.index);
  const Rational r = pow(b.radicand, a.index);
  return l < r ? -1 : (l > r ? 1 : 0);
}

RootValue scale(const RootValue& r, const Rational& t) { return {pow(abs(t), r.index) * r.radicand, r.index}; }

RootValue guivarch_length(const Grading& gr, const QVector& x) {
  require_degree_grading(gr);
  const QVector y = inverse(gr.adapted_basis()) * x;
  return length_in_adapted(columns_by_degree(gr), y);
}

SystoleEstimate systole_estimate(const Grading& gr, const ZLattice& lattice, const Rational& radius,
                                 std::size_t budget) {
  require_degree_grading(gr);
  const QMatrix p = gr.adapted_basis();
  const QMatrix rows = triangular_basis(lattice.image(inverse(p)));
  const auto deg = gr.adapted_degrees();
  const auto cols = columns_by_degree(gr);
  std::vector<Rational> bound;
  for (long dg : deg) bound.push_back(pow(radius, std::max(dg, 1L)));

  SystoleEstimate est;
  const RootValue cap{radius, 1};
  enumerate_box(rows, bound, budget, est.visited, [&](const QVector& y) {
    const RootValue len = length_in_adapted(cols, y);
    if (cap < len) return;
    if (!est.found || len < est.systole) {
      est.found = true;
      est.systole = len;
      est.witness = p * y;
    }
  });
  return est;
}

SystoleEstimate systole(const Grading& gr, const ZLattice& lattice, std::size_t budget) {
  for (Rational r = 1;; r *= 2) {
    SystoleEstimate est = systole_estimate(gr, lattice, r, budget);
    if (est.found) return est;
  }
}

RootValue normal_systole_lower_bound(const Grading& gr, const ZLattice& lattice, std::size_t budget) {
  require_degree_grading(gr);
  if (!gr.is_positive()) throw BadGrading("normal systole bound needs a positive grading");
  const QMatrix pinv = inverse(gr.adapted_basis());
  const auto cols = columns_by_degree(gr);
  std::optional<RootValue> best;
  for (const auto& [n, js] : cols) {
    const ZLattice deep = lattice.intersect(degree_at_least(gr, n));
    std::vector<QVector> proj;
    for (Index i = 0; i < deep.rank(); ++i) {
      const QVector y = pinv * deep.basis_vector(i);
      QVector v(static_cast<Index>(js.size()));
      for (std::size_t t = 0; t < js.size(); ++t) v(static_cast<Index>(t)) = y(js[t]);
      proj.push_back(v);
    }
    const ZLattice pl = ZLattice::from_generators(proj, static_cast<Index>(js.size()));
    const RootValue r{shortest_max_norm(pl, budget), static_cast<int>(n)};
    if (!best || r < *best) best = r;
  }
  return best.value_or(RootValue{});
}

long uppersys_exponent(const Algebra& a) {
  const LowerSeries ls = lower_series(a);
  if (!ls.nilpotent()) throw NotNilpotent();
  const long derived = ls.term(2).dim();
  return *ls.nilpotency_class * derived + (a.dim() - derived);
}

LatticeSubgroup uppersys_family(const NilGroup& g, const Integer& n) {
  const Algebra& a = g.algebra();
  const Index d = a.dim();
  const int c = std::max(g.nilpotency_class(), 1);
  const Subspace derived = lower_series(a).term(2);

  std::vector<QVector> cols;
  Subspace acc = derived;
  for (Index k = 0; k < d && acc.dim() < d; ++k) {
    const QVector e = unit_vector(d, k);
    if (acc.contains(e)) continue;
    cols.push_back(e);
    acc = acc + Subspace::span({e}, d);
  }
  const std::size_t top = cols.size();
  for (Index i = 0; i < derived.dim(); ++i) cols.push_back(derived.vector(i));

  QMatrix p(d, d);
  for (Index j = 0; j < d; ++j) p.col(j) = cols[static_cast<std::size_t>(j)];
  const Algebra ap = base_change(a, p);
  Integer den = 1;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k) den = lcm(den, ap.sc(i, j, k).den());
  const Rational scale(Integer(factorial(c) * den));

  Integer nc = 1;
  for (int i = 0; i < c; ++i) nc *= n;
  std::vector<QVector> gens;
  for (std::size_t j = 0; j < cols.size(); ++j)
    gens.push_back(Rational(j < top ? n : nc) * scale * cols[j]);
  return make_lattice_subgroup(g, ZLattice::from_generators(gens, d));
}

SystolicExperiment systolic_experiment(const Grading& gr, const ZLattice& lattice, const std::vector<Integer>& ms,
                                       std::size_t budget) {
  require_degree_grading(gr);
  SystolicExperiment ex;
  const Rational base = lattice.covolume();
  std::vector<double> xs, ys;
  for (const Integer& m : ms) {
    const ZLattice lm = lattice.image(dilation(gr, Rational(m)));
    SystolicRow row;
    row.m = m;
    row.covolume = lm.covolume();
    row.index = row.covolume / base;
    row.systole = systole(gr, lm, budget).systole;
    row.normal_lower_bound = gr.is_positive() ? normal_systole_lower_bound(gr, lm, budget) : RootValue{};
    xs.push_back(std::log(row.systole.value()));
    ys.push_back(std::log(row.index.to_double()));
    ex.rows.push_back(std::move(row));
  }
  const double k = static_cast<double>(xs.size());
  if (k >= 2) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    ex.slope = sxx > 0 ? sxy / sxx : 0;
  }
  return ex;
}

}  // namespace nilgrade
