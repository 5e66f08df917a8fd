// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "nilgrade/carnot.hpp"
#include "nilgrade/cohopf.hpp"
#include "nilgrade/nilgroup.hpp"
#include "free_assoc.hpp"
#include "support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <iostream>
#include <sstream>

using namespace nilgrade;
using namespace testing;

namespace {

struct Outcome {
  std::vector<std::string> failures;
  std::string detail;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

const std::vector<std::string> kFixtures = {"assoc4", "cn7",         "freenil23", "g14", "g7102", "h14", "heisenberg3",
                                            "l53",    "l55",         "l56",       "l57", "nilder4", "remdl5"};
const std::vector<std::string> kLieFixtures = {"cn7", "freenil23", "g14", "g7102", "h14", "heisenberg3",
                                               "l53", "l55",       "l56", "l57",   "remdl5"};

std::vector<Index> quotient_dims(const Algebra& a) {
  const auto ls = lower_series(a);
  std::vector<Index> d;
  for (int i = 1; i <= *ls.nilpotency_class; ++i) d.push_back(ls.term(i).dim() - ls.term(i + 1).dim());
  return d;
}

QVector random_vec(std::mt19937_64& rng, Index n, int bound = 3, int den = 2) {
  QVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = random_rational(rng, bound, den);
  return v;
}

Integer ipow(const Integer& b, long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return out;
}

// ---------------------------------------------------------------------------------------------
// Random Carnot algebras: graded quotients of free nilpotent Lie algebras, built as Lie
// polynomials in the free associative algebra.

struct GradedAlgebra {
  Algebra algebra;
  std::vector<int> degree;  // of each basis vector
};

QVector word_coords(const Assoc& p, int r, int k) {
  Index size = 1;
  for (int i = 0; i < k; ++i) size *= r;
  QVector v = zero_vector(size);
  for (const auto& [w, c] : p) {
    if (static_cast<int>(w.size()) != k) throw std::logic_error("inhomogeneous Lie polynomial");
    Index idx = 0;
    for (char ch : w) idx = idx * r + (ch - 'a');
    v(idx) = c;
  }
  return v;
}

GradedAlgebra free_nilpotent(int r, int c) {
  std::vector<Assoc> basis;
  std::vector<int> deg;
  for (int i = 0; i < r; ++i) {
    basis.push_back({{std::string(1, static_cast<char>('a' + i)), 1}});
    deg.push_back(1);
  }
  std::vector<std::vector<std::size_t>> by_degree(static_cast<std::size_t>(c) + 1);
  for (int i = 0; i < r; ++i) by_degree[1].push_back(static_cast<std::size_t>(i));
  for (int k = 2; k <= c; ++k) {
    std::vector<QVector> kept;
    for (int i = 0; i < r; ++i)
      for (std::size_t b : by_degree[static_cast<std::size_t>(k) - 1]) {
        const Assoc p = comm(basis[static_cast<std::size_t>(i)], basis[b]);
        const QVector v = word_coords(p, r, k);
        if (Subspace::span(kept, v.size()).contains(v)) continue;
        kept.push_back(v);
        by_degree[static_cast<std::size_t>(k)].push_back(basis.size());
        basis.push_back(p);
        deg.push_back(k);
      }
  }
  const Index n = static_cast<Index>(basis.size());
  Algebra a(n, AlgebraKind::lie);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const int d = deg[static_cast<std::size_t>(i)] + deg[static_cast<std::size_t>(j)];
      if (d > c) continue;
      const auto& target = by_degree[static_cast<std::size_t>(d)];
      QMatrix m(word_coords(basis[target[0]], r, d).size(), static_cast<Index>(target.size()));
      for (std::size_t t = 0; t < target.size(); ++t) m.col(static_cast<Index>(t)) = word_coords(basis[target[t]], r, d);
      const QVector x =
          solve_affine(m, word_coords(comm(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]), r, d))
              .particular;
      QVector value = zero_vector(n);
      for (std::size_t t = 0; t < target.size(); ++t) value(static_cast<Index>(target[t])) = x(static_cast<Index>(t));
      a.set_product(i, j, value);
    }
  return {a, deg};
}

Subspace generated_ideal(const Algebra& a, Subspace s) {
  while (true) {
    const Subspace next = s + product_subspace(a, Subspace::full(a.dim()), s);
    if (next.dim() == s.dim()) return s;
    s = next;
  }
}

// Quotient by a graded ideal on the complementary standard basis vectors.
GradedAlgebra graded_quotient(const GradedAlgebra& g, const Subspace& ideal) {
  const Algebra& a = g.algebra;
  std::vector<Index> keep;
  for (Index k = 0; k < a.dim(); ++k)
    if (std::find(ideal.pivots().begin(), ideal.pivots().end(), k) == ideal.pivots().end()) keep.push_back(k);
  const Index m = static_cast<Index>(keep.size());
  GradedAlgebra out{Algebra(m, AlgebraKind::lie), {}};
  for (Index i = 0; i < m; ++i) {
    out.degree.push_back(g.degree[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])]);
    for (Index j = 0; j < m; ++j) {
      const QVector z =
          ideal.reduce(a.product(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]));
      for (Index k = 0; k < m; ++k) out.algebra.set_sc(i, j, k, z(keep[static_cast<std::size_t>(k)]));
    }
  }
  return out;
}

// Random homogeneous element of degree d (zero vector if g_d = 0).
QVector random_homogeneous(std::mt19937_64& rng, const GradedAlgebra& g, int d) {
  QVector v = zero_vector(g.algebra.dim());
  for (Index i = 0; i < g.algebra.dim(); ++i)
    if (g.degree[static_cast<std::size_t>(i)] == d) v(i) = random_rational(rng, 2);
  return v;
}

GradedAlgebra with_abelian(const GradedAlgebra& g, Index k) {
  GradedAlgebra out{direct_product(g.algebra, Algebra::abelian(k)), g.degree};
  for (Index i = 0; i < k; ++i) out.degree.push_back(1);
  return out;
}

// Carnot algebra of dim 4..8 and class in [min_class, 4].
GradedAlgebra random_carnot(std::mt19937_64& rng, int min_class = 2) {
  static const std::vector<GradedAlgebra> free = {free_nilpotent(2, 2), free_nilpotent(2, 3), free_nilpotent(2, 4),
                                                  free_nilpotent(3, 2), free_nilpotent(3, 3), free_nilpotent(4, 2)};
  std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
  std::uniform_int_distribution<int> kills(0, 3), coin(0, 3);
  while (true) {
    GradedAlgebra g = free[pick(rng)];
    const int top = *std::max_element(g.degree.begin(), g.degree.end());
    std::vector<QVector> gens;
    const int k = kills(rng);
    for (int t = 0; t < k; ++t) {
      std::uniform_int_distribution<int> d(2, top);
      gens.push_back(random_homogeneous(rng, g, d(rng)));
    }
    Subspace ideal = generated_ideal(g.algebra, Subspace::span(gens, g.algebra.dim()));
    while (g.algebra.dim() - ideal.dim() > 8) {
      std::uniform_int_distribution<int> d(std::max(2, top - 1), top);
      ideal = generated_ideal(g.algebra, ideal + Subspace::span({random_homogeneous(rng, g, d(rng))}, g.algebra.dim()));
    }
    GradedAlgebra q = graded_quotient(g, ideal);
    if (q.algebra.dim() < 8 && coin(rng) == 0) q = with_abelian(q, 1);
    const auto ls = lower_series(q.algebra);
    if (q.algebra.dim() < 4 || q.algebra.dim() > 8 || !ls.nilpotent()) continue;
    if (*ls.nilpotency_class < min_class || *ls.nilpotency_class > 4) continue;
    return q;
  }
}

// l55-type non-example: a Carnot algebra g of class >= 3 times a line z, with [x, z] for some
// degree-one x sent into the central top degree, outside [x, g_(top-1)] so that z -> z - y cannot
// undo it.
Algebra break_lower_series(std::mt19937_64& rng) {
  while (true) {
    GradedAlgebra g = random_carnot(rng, 3);
    if (g.algebra.dim() >= 8) continue;
    g = with_abelian(g, 1);
    Algebra a = g.algebra;
    const Index z = a.dim() - 1;
    const int top = *std::max_element(g.degree.begin(), g.degree.end());
    std::vector<Index> ones, below;
    for (Index i = 0; i < z; ++i) {
      if (g.degree[static_cast<std::size_t>(i)] == 1) ones.push_back(i);
      if (g.degree[static_cast<std::size_t>(i)] == top - 1) below.push_back(i);
    }
    std::uniform_int_distribution<std::size_t> pick(0, ones.size() - 1);
    const Index x = ones[pick(rng)];
    std::vector<QVector> absorbable, top_basis;
    for (Index y : below) absorbable.push_back(a.product(x, y));
    for (Index i = 0; i < z; ++i)
      if (g.degree[static_cast<std::size_t>(i)] == top) top_basis.push_back(unit_vector(a.dim(), i));
    const Subspace ab = Subspace::span(absorbable, a.dim());
    if (ab.contains(Subspace::span(top_basis, a.dim()))) continue;
    QVector extra = zero_vector(a.dim());
    while (ab.contains(extra)) extra = random_homogeneous(rng, g, top);
    a.set_product(x, z, extra);
    return a;
  }
}

// ---------------------------------------------------------------------------------------------
// Dynkin's formula in the free associative algebra on x, y.

Assoc right_nested(const std::string& w) {
  Assoc out{{std::string(1, w.back()), 1}};
  for (std::size_t i = w.size() - 1; i-- > 0;) out = comm(Assoc{{std::string(1, w[i]), 1}}, out);
  return out;
}

Assoc dynkin_series(std::size_t degree) {
  Assoc out;
  // blocks (p_i, q_i) with p_i + q_i > 0 and total length at most `degree`
  std::function<void(std::vector<std::pair<int, int>>&, std::size_t)> rec = [&](auto& blocks, std::size_t used) {
    if (!blocks.empty()) {
      std::string w;
      Rational denom = static_cast<long>(used);
      for (const auto& [p, q] : blocks) {
        w += std::string(static_cast<std::size_t>(p), 'x') + std::string(static_cast<std::size_t>(q), 'y');
        for (int f = 2; f <= p; ++f) denom *= f;
        for (int f = 2; f <= q; ++f) denom *= f;
      }
      const long n = static_cast<long>(blocks.size());
      const Rational sign = n % 2 == 1 ? Rational(1) : Rational(-1);
      out = add(out, right_nested(w), sign / (Rational(n) * denom));
    }
    for (std::size_t p = 0; used + p <= degree; ++p)
      for (std::size_t q = 0; used + p + q <= degree; ++q) {
        if (p + q == 0) continue;
        blocks.emplace_back(static_cast<int>(p), static_cast<int>(q));
        rec(blocks, used + p + q);
        blocks.pop_back();
      }
  };
  std::vector<std::pair<int, int>> blocks;
  rec(blocks, 0);
  return out;
}

std::string letters(const std::vector<std::uint8_t>& w) {
  std::string s;
  for (auto c : w) s += c == 0 ? 'x' : 'y';
  return s;
}

std::optional<ZLattice> saturate(const QMatrix& xi, int cap = 50) {
  ZLattice m = ZLattice::standard(xi.rows());
  for (int round = 0; round < cap; ++round) {
    const ZLattice next = m + m.image(xi);
    if (next == m) return m;
    m = next;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------------

Outcome catalog_regression() {
  Outcome o;
  const Algebra l55 = catalog("l55");
  const auto s55 = lower_series(l55);
  o.expect(!carnot_test(l55).carnot, "l55 is Carnot");
  o.expect(s55.nilpotency_class == 3, "l55 class");
  o.expect(center(l55).dim() == 1, "l55 center");
  o.expect(center(car(l55).algebra).dim() == 2, "l55 Car center");
  o.expect(growth_degree(l55) == 8, "l55 growth degree");

  const Algebra l56 = catalog("l56");
  o.expect(lower_series(l56).nilpotency_class == 4, "l56 class");
  o.expect(growth_degree(l56) == 11, "l56 growth degree");
  o.expect(car(l56).algebra == catalog("l57"), "Car(l56) differs from the [X2,X3]=0 companion");

  const Algebra h3 = catalog("heisenberg3");
  o.expect(carnot_test(h3).carnot, "Heisenberg not Carnot");
  o.expect(growth_degree(h3) == 4, "Heisenberg growth degree");
  o.expect(!carnot_test(catalog("assoc4")).carnot, "assoc4 is Carnot");

  const Algebra g14 = catalog("g14");
  const SplitTorus tg = maximal_split_torus(g14);
  o.expect(tg.rank() == 1 && tg.certificate == Certificate::proven, "g14 torus rank");
  const Grading gg = weight_decomposition(tg);
  o.expect(cone_flags(gg).flexible_split, "g14 has no invertible grading");
  const auto pos = positive_weights(gg.weights());
  o.expect(std::none_of(pos.begin(), pos.end(), [](bool b) { return b; }), "g14 has a positive weight");
  const CohopfReport cg = classify(g14);
  o.expect(cg.cni_plus.is_full(), "g14 cni+ is not everything");
  o.expect(cg.classification.cohopfian, "g14 not cohopfian");

  const Algebra h14 = catalog("h14");
  const SplitTorus th = maximal_split_torus(h14);
  o.expect(th.rank() == 0 && th.certificate == Certificate::proven, "h14 torus rank");
  o.expect(classify(h14).classification.cohopfian, "h14 not cohopfian");

  const Algebra w = catalog("g7102");
  const SplitTorus tw = maximal_split_torus(w);
  std::vector<std::pair<long, Index>> wm;
  for (std::size_t i = 0; i < tw.weights.size(); ++i) wm.emplace_back(tw.weights[i].at(0), tw.weight_spaces[i].dim());
  const std::vector<std::pair<long, Index>> expected_wm{{0, 1}, {1, 3}, {2, 2}, {3, 1}};
  o.expect(tw.rank() == 1 && wm == expected_wm, "g7102 Cartan weights");
  const CohopfReport cw = classify(w);
  o.expect(cw.uncontracted_dim == 1, "g7102 uncontracted dim");
  o.expect(cw.cni_plus.is_zero(), "g7102 cni+");
  o.expect(cw.classification.weakly_dis_cohopfian && !cw.classification.dis_cohopfian, "g7102 classification");

  const Algebra r = catalog("remdl5");
  const Subspace v1 = Subspace::span({unit_vector(5, 0), unit_vector(5, 1), QVector(unit_vector(5, 4) + unit_vector(5, 2))}, 5);
  o.expect(!carnot_with_prescribed_v1(r, v1).carnot, "remdl5 prescribed degree-one part accepted");
  o.detail = "g12/h12 facts checked on the g14/h14 fixtures";
  return o;
}

Outcome carnot_round_trip() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int yes = 0;
  std::map<int, int> by_class;
  for (int t = 0; t < 200; ++t) {
    const GradedAlgebra g = random_carnot(rng);
    ++by_class[*lower_series(g.algebra).nilpotency_class];
    if (!validate(g.algebra).ok()) {
      o.failures.push_back("generator produced a non-Lie algebra");
      continue;
    }
    const Algebra b = base_change(g.algebra, random_invertible(rng, g.algebra.dim(), 2, 2));
    const CarnotVerdict v = carnot_test(b);
    if (!v.carnot) {
      o.failures.push_back("Carnot sample " + std::to_string(t) + " rejected");
      continue;
    }
    std::vector<Index> dims;
    for (const auto& c : v.grading->components()) dims.push_back(c.space.dim());
    o.expect(dims == quotient_dims(b), "component dims differ from series quotients");
    o.expect(generated_subalgebra(b, v.grading->component({1})).is_full(), "degree one does not generate");
    ++yes;
  }
  int no = 0, reverified = 0;
  for (int t = 0; t < 200; ++t) {
    const Algebra a = break_lower_series(rng);
    if (!validate(a).ok()) {
      o.failures.push_back("non-example is not Lie");
      continue;
    }
    const Algebra b = base_change(a, random_invertible(rng, a.dim(), 2, 2));
    const CarnotVerdict v = carnot_test(b);
    if (!v.carnot) {
      ++no;
      continue;
    }
    std::vector<Index> dims;
    for (const auto& c : v.grading->components()) dims.push_back(c.space.dim());
    const bool ok = generated_subalgebra(b, v.grading->component({1})).is_full() && dims == quotient_dims(b);
    o.expect(ok, "non-example accepted without a valid certificate");
    reverified += ok;
  }
  o.expect(no > 0, "every non-example accepted");
  o.expect(no >= 180, "fewer than 90% of non-examples rejected");
  std::ostringstream s;
  s << yes << "/200 Carnot accepted (classes";
  for (const auto& [c, k] : by_class) s << " " << c << ":" << k;
  s << "), " << no << "/200 non-examples rejected, " << reverified << " accepted with certificate";
  o.detail = s.str();
  return o;
}

struct Signature {
  std::vector<Index> series;
  bool nilpotent = false, carnot = false;
  int torus_rank = 0;
  bool contractable = false, semicontractable = false, flexible = false, carnot_weights = false;
  Index uncontracted = 0, center_dim = 0;
  bool cohopfian = false, dis = false, weakly = false;
  friend bool operator==(const Signature&, const Signature&) = default;
};

Signature signature(const Algebra& a) {
  Signature s;
  const auto ls = lower_series(a);
  s.series = ls.dims();
  s.nilpotent = ls.nilpotent();
  s.center_dim = center(a).dim();
  if (s.nilpotent) s.carnot = carnot_test(a).carnot;
  const SplitTorus t = maximal_split_torus(a);
  s.torus_rank = t.rank();
  const Grading gr = weight_decomposition(t);
  const ConeFlags f = cone_flags(gr);
  s.contractable = f.contractable;
  s.semicontractable = f.semicontractable;
  s.flexible = f.flexible_split;
  s.carnot_weights = f.carnot_by_weights;
  s.uncontracted = contractive_decomposition(gr).uncontracted_dim;
  if (a.is_lie() && s.nilpotent) {
    const auto c = classify(a).classification;
    s.cohopfian = c.cohopfian;
    s.dis = c.dis_cohopfian;
    s.weakly = c.weakly_dis_cohopfian;
  }
  return s;
}

Outcome base_change_invariance() {
  Outcome o;
  std::mt19937_64 rng(33);
  int runs = 0;
  for (const auto& name : kFixtures) {
    const Algebra a = catalog(name);
    const Signature ref = signature(a);
    for (int t = 0; t < 20; ++t) {
      const QMatrix p = a.dim() > 8 ? random_elementary_product(rng, a.dim(), 3 * a.dim())
                                    : random_invertible(rng, a.dim(), 2, 2);
      o.expect(signature(base_change(a, p)) == ref, name + " changed under conjugation " + std::to_string(t));
      ++runs;
    }
  }
  o.detail = std::to_string(runs) + " conjugations over " + std::to_string(kFixtures.size()) + " fixtures";
  return o;
}

Outcome cone_oracle() {
  Outcome o;
  std::mt19937_64 rng(44);
  int with_positive = 0;
  for (int t = 0; t < 500; ++t) {
    std::uniform_int_distribution<int> rank(1, 4), count(1, 10), coord(-3, 3);
    const int r = rank(rng);
    std::vector<Weight> ws(static_cast<std::size_t>(count(rng)), Weight(static_cast<std::size_t>(r)));
    for (auto& w : ws)
      for (auto& c : w) c = coord(rng);
    const auto lin = positive_weights(ws);
    o.expect(lin == positive_weights_lp(ws), "disagreement on weight set " + std::to_string(t));
    with_positive += std::any_of(lin.begin(), lin.end(), [](bool b) { return b; });
  }
  o.detail = "500 weight sets, " + std::to_string(with_positive) + " with positive weights";
  return o;
}

Outcome lattice_criteria() {
  Outcome o;
  std::mt19937_64 rng(55);
  std::vector<QMatrix> cases;
  const QMatrix companion = mat({{0, -1}, {1, q(-1, 2)}});
  QMatrix embedded = zeros(3, 3);
  embedded.topLeftCorner(2, 2) = companion;
  embedded(2, 2) = 1;
  cases.push_back(companion);
  cases.push_back(embedded);
  while (cases.size() < 302) {
    QMatrix xi;
    switch (cases.size() % 3) {
      case 0:  // integral up to conjugation
        xi = random_matrix(rng, 3, 3, 2);
        if (determinant(xi).is_zero()) continue;
        {
          const QMatrix p = random_invertible(rng, 3, 2, 2);
          xi = p * xi * inverse(p);
        }
        break;
      case 1:
        xi = random_matrix(rng, 3, 3, 2, 2);
        break;
      default:
        xi = random_matrix(rng, 3, 3, 2);
        xi(0, 2) += q(1, 2);
        break;
    }
    if (determinant(xi).is_zero()) continue;
    cases.push_back(xi);
  }
  int stab = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const bool s = stabilizes_some_lattice(cases[i]);
    o.expect(s == saturate(cases[i]).has_value(), "disagreement on " + to_string(cases[i]));
    stab += s;
  }
  o.expect(!stabilizes_some_lattice(companion), "companion matrix stabilizes a lattice");
  o.detail = std::to_string(cases.size()) + " matrices incl. the companion of X^2+X/2+1, " + std::to_string(stab) +
             " stabilize";
  return o;
}

Outcome bch() {
  Outcome o;
  Assoc table;
  for (const auto& t : bch_table(3)) table = add(table, bracketing(letters(t.word)), t.coeff);
  o.expect(table == dynkin_series(3), "BCH table differs from the Dynkin series up to degree 3");
  for (const auto& t : bch_table(3)) {
    if (t.word.size() == 2) o.expect(t.coeff == q(1, 2), "class-2 coefficient");
    if (t.word.size() == 3) o.expect(abs(t.coeff) == q(1, 12), "class-3 coefficient");
  }
  std::mt19937_64 rng(66);
  int triples = 0;
  for (const auto& name : kLieFixtures) {
    const NilGroup g(catalog(name));
    const Index n = g.dim();
    for (int t = 0; t < 100; ++t) {
      const QVector x = random_vec(rng, n), y = random_vec(rng, n), z = random_vec(rng, n);
      o.expect(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)), name + " associativity");
      o.expect(g.multiply(x, zero_vector(n)) == x && g.multiply(zero_vector(n), x) == x, name + " identity");
      o.expect(g.multiply(x, g.inverse(x)).isZero(), name + " inverse");
      o.expect(g.multiply(g.multiply(x, x), x) == g.power(x, 3), name + " power");
      ++triples;
    }
  }
  o.detail = std::to_string(triples) + " triples; degree <= 3 table equals Dynkin's formula";
  return o;
}

Outcome defendo() {
  Outcome o;
  const Algebra h3 = catalog("heisenberg3"), l56 = catalog("l56");
  const std::vector<std::pair<Algebra, Grading>> cases = {
      {h3, *carnot_test(h3).grading}, {l56, Grading::from_degrees(l56, {1, 2, 3, 4, 5})}};
  std::ostringstream s;
  for (const auto& [a, gr] : cases) {
    const NilGroup g(a);
    const LatticeSubgroup lat = standard_lattice(g);
    const DefendoCertificate cert = defendo_modulus(g, gr, lat);
    const long delta = graded_degree(gr);
    const std::vector<Integer> ms{cert.k0 + 1, 2 * cert.k0 + 1};
    o.expect(cert.certified_m == ms, "certified m values");
    for (const Integer& m : ms) {
      const ZLattice image = lat.log_lattice.image(dilation(gr, Rational(m)));
      o.expect(lat.log_lattice.contains(image), "delta(m) L not inside L");
      o.expect(lattice_index(lat.log_lattice, image) == Rational(ipow(m, delta)), "index is not m^delta");
    }
    s << "k0=" << cert.k0 << " delta=" << delta << "; ";
  }
  o.detail = s.str() + "delta is the graded degree of the grading used";
  return o;
}

Outcome systolic() {
  Outcome o;
  std::vector<Integer> ms;
  for (long m = 2; m <= 12; ++m) ms.emplace_back(m);
  const Algebra h3 = catalog("heisenberg3");
  const NilGroup g(h3);
  const SystolicExperiment eh = systolic_experiment(*carnot_test(h3).grading, standard_lattice(g).log_lattice, ms);
  const Algebra z3 = Algebra::abelian(3);
  const SystolicExperiment ez = systolic_experiment(Grading::from_degrees(z3, {1, 1, 1}), ZLattice::standard(3), ms);
  o.expect(std::abs(eh.slope - 4.0) <= 0.3, "Heisenberg slope");
  o.expect(std::abs(ez.slope - 3.0) <= 0.1, "Z^3 slope");
  std::ostringstream s;
  s << "Heisenberg slope " << eh.slope << ", Z^3 slope " << ez.slope;
  o.detail = s.str();
  return o;
}

Outcome uppersys() {
  Outcome o;
  std::ostringstream s;
  for (const char* name : {"heisenberg3", "l55"}) {
    const Algebra a = catalog(name);
    const NilGroup g(a);
    const long d = uppersys_exponent(a);
    const ZLattice l1 = uppersys_family(g, 1).log_lattice;
    for (long n : {2L, 3L, 5L})
      o.expect(lattice_index(l1, uppersys_family(g, n).log_lattice) == Rational(ipow(Integer(n), d)),
               std::string(name) + " index at n=" + std::to_string(n));
    s << (s.tellp() > 0 ? ", " : "") << name << " D=" << d;
  }
  o.detail = s.str();
  return o;
}

Outcome radicals() {
  Outcome o;
  for (const auto& name : kFixtures) {
    const Algebra a = catalog(name);
    if (a.is_lie()) o.expect(cni_plus(a).contains(cni(a)), name + ": cni not inside cni+");
    const Grading gr = weight_decomposition(maximal_split_torus(a));
    o.expect(cone_flags(gr).contractable == (contractive_decomposition(gr).uncontracted_dim == 0),
             name + ": contractable vs uncontracted dim");
    if (!a.is_lie() || !lower_series(a).nilpotent()) continue;
    const CohopfReport r = classify(a);
    o.expect(r.cni_plus.is_zero() == r.classification.weakly_dis_cohopfian, name + ": cni+ vs weakly flag");
    o.expect(r.contractable == (r.uncontracted_dim == 0), name + ": contractable vs uncontracted");
    o.expect(r.contractable == r.classification.dis_cohopfian, name + ": contractable vs dis flag");
  }
  o.detail = std::to_string(kFixtures.size()) + " fixtures, cni on the Lie ones";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // optional arguments: criterion numbers to run
  std::vector<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.push_back(static_cast<std::size_t>(std::stoul(argv[i])));
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"catalog regression", catalog_regression},
      {"Carnot round trip", carnot_round_trip},
      {"base-change invariance", base_change_invariance},
      {"cone oracle equivalence", cone_oracle},
      {"lattice criteria oracle", lattice_criteria},
      {"BCH correctness", bch},
      {"defendo certificate", defendo},
      {"systolic experiment", systolic},
      {"uppersys index law", uppersys},
      {"radical consistency", radicals},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && std::find(only.begin(), only.end(), i + 1) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.failures.empty();
    failed += !pass;
    std::cout << "criterion " << i + 1 << " " << (pass ? "PASS" : "FAIL") << " " << criteria[i].first << " ("
              << o.detail << (o.detail.empty() ? "" : ", ") << std::fixed << std::setprecision(1) << secs << "s)";
    std::cout.unsetf(std::ios::fixed);
    std::cout << std::setprecision(6);
    if (!pass) std::cout << ": " << o.failures.size() << " failure(s), first: " << o.failures.front();
    std::cout << "\n";
  }
  return failed == 0 ? 0 : 1;
}
