#include <doctest.h>

#include "nilgrade/carnot.hpp"
#include "nilgrade/cones.hpp"
#include "support.hpp"

using namespace nilgrade;
using namespace testing;

namespace {

Algebra h3() { return catalog("heisenberg3"); }

// Free 2-step nilpotent Lie algebra on three generators: x1 x2 x3 y12 y13 y23.
Algebra free_step2_rank3() {
  Algebra a(6, AlgebraKind::lie, {"x1", "x2", "x3", "y12", "y13", "y23"});
  a.set_product(0, 1, unit_vector(6, 3));
  a.set_product(0, 2, unit_vector(6, 4));
  a.set_product(1, 2, unit_vector(6, 5));
  return a;
}

// Quotient by an ideal, using the non-pivot coordinates of its RREF basis as the new basis.
Algebra quotient(const Algebra& a, const Subspace& ideal) {
  const Index n = a.dim();
  std::vector<Index> keep;
  for (Index k = 0; k < n; ++k)
    if (std::find(ideal.pivots().begin(), ideal.pivots().end(), k) == ideal.pivots().end()) keep.push_back(k);
  const Index m = static_cast<Index>(keep.size());
  Algebra q(m, a.kind());
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) {
      const QVector z = ideal.reduce(a.product(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]));
      for (Index k = 0; k < m; ++k) q.set_sc(i, j, k, z(keep[static_cast<std::size_t>(k)]));
    }
  return q;
}

std::vector<Index> component_dims(const Grading& g) {
  std::vector<Index> d;
  for (const auto& c : g.components()) d.push_back(c.space.dim());
  return d;
}

std::vector<Index> quotient_dims(const Algebra& a) {
  const auto ls = lower_series(a);
  std::vector<Index> d;
  for (int i = 1; i <= *ls.nilpotency_class; ++i) d.push_back(ls.term(i).dim() - ls.term(i + 1).dim());
  return d;
}

// Brute force: alpha is positive when a small integer functional, non-negative on all weights,
// is positive on alpha.
std::vector<bool> brute_positive(const std::vector<Weight>& w, int bound) {
  const std::size_t r = w.front().size();
  std::vector<bool> out(w.size(), false);
  std::vector<long> f(r, -bound);
  for (;;) {
    bool ok = true;
    for (const auto& x : w) {
      long s = 0;
      for (std::size_t j = 0; j < r; ++j) s += f[j] * x[j];
      if (s < 0) { ok = false; break; }
    }
    if (ok)
      for (std::size_t i = 0; i < w.size(); ++i) {
        long s = 0;
        for (std::size_t j = 0; j < r; ++j) s += f[j] * w[i][j];
        if (s > 0) out[i] = true;
      }
    std::size_t j = 0;
    while (j < r && f[j] == bound) f[j++] = -bound;
    if (j == r) break;
    ++f[j];
  }
  return out;
}

long evaluate(const std::vector<long>& f, const Weight& w) {
  long s = 0;
  for (std::size_t j = 0; j < f.size(); ++j) s += f[j] * w[j];
  return s;
}

bool stable(const Grading& g, const QMatrix& s) {
  for (const auto& c : g.components())
    for (Index i = 0; i < c.space.dim(); ++i)
      if (!c.space.contains(QVector(s * c.space.vector(i)))) return false;
  return true;
}

}  // namespace

TEST_CASE("associated graded algebra") {
  const Algebra ab = Algebra::abelian(3);
  const auto ca = car(ab);
  CHECK(ca.algebra == ab);
  CHECK(ca.grading.weights() == std::vector<Weight>{{1}});

  const auto c55 = car(catalog("l55"));
  CHECK(c55.algebra == catalog("l53"));
  CHECK(c55.algebra.names() == catalog("l55").names());
  CHECK(c55.algebra.product(1, 2).isZero());
  CHECK(center(c55.algebra).dim() == 2);
  CHECK(c55.grading.is_carnot_grading());
  CHECK(car(catalog("l56")).algebra == catalog("l57"));

  for (const char* name : {"l55", "l56", "g7102", "g14", "h14", "assoc4", "nilder4"}) {
    CAPTURE(std::string(name));
    const auto c = car(catalog(name));
    CHECK(c.grading.is_carnot_grading());
    CHECK(car(c.algebra).algebra == c.algebra);
    CHECK(quotient_dims(c.algebra) == quotient_dims(catalog(name)));
  }

  Algebra solvable(2, AlgebraKind::lie);
  solvable.set_product(0, 1, unit_vector(2, 1));
  CHECK_THROWS_AS(car(solvable), NotNilpotent);
}

TEST_CASE("carnot decision") {
  const auto v = carnot_test(h3());
  REQUIRE(v.carnot);
  CHECK(component_dims(*v.grading) == std::vector<Index>{2, 1});
  CHECK(is_derivation(h3(), *v.witness));

  for (const char* name : {"l55", "l56", "assoc4", "g7102", "nilder4"}) {
    CAPTURE(std::string(name));
    const Algebra a = catalog(name);
    const auto no = carnot_test(a);
    CHECK_FALSE(no.carnot);
    CHECK_FALSE(no.grading.has_value());
    CHECK_FALSE(no.certificate.isZero());
  }
  for (const char* name : {"l53", "l57", "freenil23", "remdl5"}) {
    CAPTURE(std::string(name));
    const Algebra a = catalog(name);
    const auto yes = carnot_test(a);
    REQUIRE(yes.carnot);
    CHECK(yes.grading->is_carnot_grading());
    CHECK(component_dims(*yes.grading) == quotient_dims(a));
  }

  Algebra solvable(2, AlgebraKind::lie);
  solvable.set_product(0, 1, unit_vector(2, 1));
  CHECK_THROWS_AS(carnot_test(solvable), NotNilpotent);
}

TEST_CASE("carnot with prescribed degree-one part") {
  const Index n = 5;
  const Algebra a = catalog("remdl5");
  auto e = [&](Index i) { return unit_vector(n, i); };

  CHECK(carnot_with_prescribed_v1(h3(), Subspace::coordinate(3, {0, 1})).carnot);
  CHECK_FALSE(carnot_with_prescribed_v1(a, Subspace::span({e(0), e(1), QVector(e(4) + e(2))}, n)).carnot);

  const auto yes = carnot_with_prescribed_v1(a, Subspace::span({e(0), e(1), e(4)}, n));
  REQUIRE(yes.carnot);
  const Grading expected = Grading::from_degrees(a, {1, 1, 2, 3, 1});
  CHECK(yes.grading->components().size() == expected.components().size());
  for (std::size_t i = 0; i < expected.components().size(); ++i) {
    CHECK(yes.grading->components()[i].weight == expected.components()[i].weight);
    CHECK(yes.grading->components()[i].space == expected.components()[i].space);
  }

  CHECK_THROWS_AS(carnot_with_prescribed_v1(a, Subspace::span({e(0), e(1)}, n)), BadComplement);
  CHECK_THROWS_AS(carnot_with_prescribed_v1(a, Subspace::span({e(0), e(1), e(2)}, n)), BadComplement);
}

TEST_CASE("invariant carnot gradings") {
  const Algebra h = h3();
  CHECK(invariant_carnot(h, {identity(3)}).has_value());

  const QMatrix flip = mat({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
  const auto g = invariant_carnot(h, {flip});
  REQUIRE(g.has_value());
  CHECK(stable(*g, flip));

  // Order-four automorphism X1 -> X2, X2 -> -X1.
  const QMatrix rot = mat({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}});
  const auto gr = invariant_carnot(h, {rot, flip});
  REQUIRE(gr.has_value());
  CHECK(stable(*gr, rot));

  // X1 -> X1 + X3 moves every complement of the center.
  const QMatrix shear = mat({{1, 0, 0}, {0, 1, 0}, {1, 0, 1}});
  REQUIRE(is_automorphism(h, shear));
  CHECK_FALSE(invariant_carnot(h, {shear}).has_value());

  CHECK_FALSE(invariant_carnot(catalog("l55"), {identity(5)}).has_value());
  CHECK_THROWS_AS(invariant_carnot(h, {mat({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}})}), NotAutomorphism);
}

TEST_CASE("carnot round trip on scrambled graded algebras") {
  std::mt19937_64 rng(7);
  std::vector<Algebra> pool;
  for (const char* name : {"heisenberg3", "l53", "l57", "freenil23", "remdl5"}) pool.push_back(catalog(name));
  pool.push_back(direct_product(catalog("l57"), h3()));
  const Algebra f = free_step2_rank3();
  const Algebra fn = catalog("freenil23");
  for (int trial = 0; trial < 6; ++trial) {
    // Random central graded quotients stay Carnot.
    const QMatrix r1 = random_matrix(rng, 1, 3, 2);
    pool.push_back(quotient(f, Subspace(6, QMatrix((QMatrix(1, 6) << QMatrix::Zero(1, 3), r1).finished()))));
    const QMatrix r2 = random_matrix(rng, 1, 2, 2);
    pool.push_back(quotient(fn, Subspace(5, QMatrix((QMatrix(1, 5) << QMatrix::Zero(1, 3), r2).finished()))));
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    CAPTURE(i);
    const Algebra& a = pool[i];
    REQUIRE(validate(a).ok());
    const Algebra b = base_change(a, random_invertible(rng, a.dim()));
    const auto v = carnot_test(b);
    REQUIRE(v.carnot);
    CHECK(component_dims(*v.grading) == quotient_dims(a));
    CHECK(generated_subalgebra(b, v.grading->component({1})).is_full());
  }
}

TEST_CASE("inequality solver") {
  // x >= 1, y >= x + 1, x + y <= 10
  const std::vector<std::vector<Rational>> a{{1, 0}, {-1, 1}, {-1, -1}};
  const auto x = solve_inequalities(a, {1, 1, -10});
  REQUIRE(x.has_value());
  CHECK((*x)[0] >= 1);
  CHECK((*x)[1] >= (*x)[0] + 1);
  CHECK((*x)[0] + (*x)[1] <= 10);
  CHECK_FALSE(solve_inequalities(a, {1, 1, -2}).has_value());
  CHECK(solve_inequalities({}, {}).has_value());
  CHECK_FALSE(solve_inequalities({{0}}, {1}).has_value());
}

TEST_CASE("positive weights and fine cocharacters") {
  CHECK(fine_cocharacter(std::vector<Weight>{{1}, {2}}) == std::vector<long>{1});
  CHECK(fine_cocharacter(std::vector<Weight>{{1}, {-1}}) == std::vector<long>{0});
  CHECK(positive_weights({{1}, {-1}}) == std::vector<bool>{false, false});

  const std::vector<Weight> w{{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
  const auto f = fine_cocharacter(w);
  for (const auto& x : w) CHECK(evaluate(f, x) > 0);

  // Half-plane with a line: (1,0) and (-1,0) span the lineality space.
  const std::vector<Weight> half{{1, 0}, {-1, 0}, {0, 1}, {1, 1}, {0, 0}};
  CHECK(positive_weights(half) == std::vector<bool>{false, false, true, true, false});
  const auto fh = fine_cocharacter(half);
  CHECK(evaluate(fh, {1, 0}) == 0);
  CHECK(evaluate(fh, {0, 1}) > 0);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t r = trial % 2 ? 2 : 3;
    const long e = r == 2 ? 2 : 1;
    std::uniform_int_distribution<long> coord(-e, e), count(1, 6);
    std::vector<Weight> ws;
    const long k = count(rng);
    for (long i = 0; i < k; ++i) {
      Weight x(r);
      for (auto& c : x) c = coord(rng);
      ws.push_back(x);
    }
    CAPTURE(trial);
    const auto lin = positive_weights(ws);
    CHECK(lin == positive_weights_lp(ws));
    CHECK(lin == brute_positive(ws, r == 2 ? 8 : 2));
    const auto fc = fine_cocharacter(ws);
    for (std::size_t i = 0; i < ws.size(); ++i) {
      CHECK(evaluate(fc, ws[i]) >= 0);
      CHECK((evaluate(fc, ws[i]) > 0) == lin[i]);
    }
  }
}

TEST_CASE("cone flags of torus gradings") {
  const auto one_two = cone_flags(Grading::from_degrees(h3(), {1, 1, 2}));
  CHECK(one_two.contractable);
  CHECK(one_two.semicontractable);
  CHECK(one_two.flexible_split);
  CHECK(one_two.carnot_by_weights);

  const Grading g14 = weight_decomposition(maximal_split_torus(catalog("g14")));
  const auto f14 = cone_flags(g14);
  CHECK_FALSE(f14.contractable);
  CHECK_FALSE(f14.semicontractable);
  CHECK(f14.flexible_split);
  CHECK_FALSE(f14.carnot_by_weights);
  const auto cd14 = contractive_decomposition(g14);
  CHECK(cd14.zero_part.is_full());
  CHECK(cd14.contracted_dim == 0);
  CHECK(fine_nonneg_grading(g14).weights() == std::vector<Weight>{{0}});

  const Algebra g7 = catalog("g7102");
  const Grading gr7 = weight_decomposition(maximal_split_torus(g7));
  const auto f7 = cone_flags(gr7);
  CHECK(f7.semicontractable);
  CHECK_FALSE(f7.contractable);
  CHECK_FALSE(f7.flexible_split);
  const auto cd7 = contractive_decomposition(gr7);
  CHECK(cd7.uncontracted_dim == 1);
  CHECK(cd7.contracted_dim == 6);
  const Grading fine7 = fine_nonneg_grading(g7);
  CHECK(fine7.is_nonnegative());
  CHECK(fine7.component({0}) == Subspace::coordinate(7, {0}));

  const Grading fh = fine_nonneg_grading(h3());
  CHECK(fh.is_positive());
  CHECK(fh.component({0}).is_zero());
}

TEST_CASE("cone flags agree with the carnot test and survive base change") {
  std::mt19937_64 rng(5);
  for (const char* name : {"heisenberg3", "l53", "l55", "l56", "l57", "remdl5", "freenil23", "assoc4", "nilder4",
                           "g7102", "h14"}) {
    CAPTURE(std::string(name));
    const Algebra a = catalog(name);
    const Grading g = weight_decomposition(maximal_split_torus(a));
    const auto f = cone_flags(g);
    CHECK(f.carnot_by_weights == carnot_test(a).carnot);
    const auto cd = contractive_decomposition(g);
    CHECK(f.semicontractable == (cd.contracted_dim > 0));
    if (f.contractable) CHECK(fine_nonneg_grading(g).component({0}).is_zero());
    CHECK(positive_weights(g.weights()) == positive_weights_lp(g.weights()));

    const QMatrix p = a.dim() > 8 ? random_elementary_product(rng, a.dim(), 3 * static_cast<int>(a.dim()))
                                   : random_invertible(rng, a.dim());
    const Algebra b = base_change(a, p);
    const auto fb = cone_flags(weight_decomposition(maximal_split_torus(b)));
    CHECK(fb.contractable == f.contractable);
    CHECK(fb.semicontractable == f.semicontractable);
    CHECK(fb.flexible_split == f.flexible_split);
    CHECK(fb.carnot_by_weights == f.carnot_by_weights);
  }
}
