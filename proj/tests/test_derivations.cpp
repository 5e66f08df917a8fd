#include <doctest.h>

#include "nilgrade/derivations.hpp"
#include "nilgrade/polynomial.hpp"
#include "support.hpp"

using namespace nilgrade;
using namespace testing;

namespace {

// Leibniz checked entrywise on basis pairs, independently of the solver's equation layout.
bool leibniz_oracle(const Algebra& a, const QMatrix& d) {
  const Index n = a.dim();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index m = 0; m < n; ++m) {
        Rational lhs = 0, rhs = 0;
        for (Index l = 0; l < n; ++l) {
          lhs += a.sc(i, j, l) * d(m, l);
          rhs += d(l, i) * a.sc(l, j, m) + d(l, j) * a.sc(i, l, m);
        }
        if (lhs != rhs) return false;
      }
  return true;
}

std::vector<long> flat_weights(const SplitTorus& t) {
  std::vector<long> w;
  for (std::size_t i = 0; i < t.weights.size(); ++i)
    for (Index k = 0; k < t.weight_spaces[i].dim(); ++k) w.push_back(t.weights[i].at(0));
  return w;
}

}  // namespace

TEST_CASE("derivation spaces") {
  CHECK(derivations(Algebra::abelian(3)).dim() == 9);
  const Algebra h = catalog("heisenberg3");
  const auto dh = derivations(h);
  CHECK(dh.dim() == 6);
  for (const auto& d : dh.basis) CHECK(leibniz_oracle(h, d));

  const Algebra nd = catalog("nilder4");
  const auto dn = derivations(nd);
  for (const auto& d : dn.basis) {
    CHECK(leibniz_oracle(nd, d));
    CHECK(is_nilpotent(d));
  }
  CHECK(MatrixSpace::generates_nilpotent_algebra(dn.basis, 4));

  for (const char* name : {"l55", "g7102", "assoc4", "g14"}) {
    const Algebra a = catalog(name);
    const auto da = derivations(a);
    for (const auto& d : da.basis) CHECK(leibniz_oracle(a, d));
    // Closed under commutators.
    for (std::size_t i = 0; i < da.basis.size(); i += 3)
      for (std::size_t j = i + 1; j < da.basis.size(); j += 5)
        CHECK(da.space.contains(commutator(da.basis[i], da.basis[j])));
  }
}

TEST_CASE("explicit tori") {
  const Algebra h = catalog("heisenberg3");
  QMatrix d = zeros(3, 3);
  d(0, 0) = d(1, 1) = 1;
  d(2, 2) = 2;
  const SplitTorus t = make_torus(h, {d});
  CHECK(t.rank() == 1);
  CHECK(t.weights == std::vector<Weight>{{1}, {2}});
  CHECK(t.weight_spaces[0].dim() == 2);
  CHECK(t.weight_spaces[1].dim() == 1);
  // Scaling the generator leaves the canonical weights unchanged.
  CHECK(make_torus(h, {QMatrix(d * Rational(-6))}).weights == t.weights);
  const Grading g = weight_decomposition(t);
  CHECK(g.is_positive());
  CHECK(g.is_carnot_grading());

  const SplitTorus t0 = make_torus(h, {});
  CHECK(t0.rank() == 0);
  CHECK(weight_decomposition(t0).components().size() == 1);
}

TEST_CASE("maximal split tori of catalog algebras") {
  const auto nd = maximal_split_torus(catalog("nilder4"));
  CHECK(nd.rank() == 0);
  CHECK(nd.certificate == Certificate::proven);

  const auto h = maximal_split_torus(catalog("heisenberg3"));
  CHECK(h.rank() == 2);
  CHECK(h.certificate == Certificate::proven);

  const auto g = maximal_split_torus(catalog("g14"));
  CHECK(g.rank() == 1);
  CHECK(g.certificate == Certificate::proven);
  CHECK(flat_weights(g) == std::vector<long>{-5, -4, -3, -3, -2, -1, -1, 1, 1, 2, 3, 3, 4, 5});

  const auto hq = maximal_split_torus(catalog("h14"));
  CHECK(hq.rank() == 0);
  CHECK(hq.certificate == Certificate::proven);

  const auto w = maximal_split_torus(catalog("g7102"));
  CHECK(w.rank() == 1);
  CHECK(w.certificate == Certificate::proven);
  CHECK(flat_weights(w) == std::vector<long>{0, 1, 1, 1, 2, 2, 3});
  const Grading gw = weight_decomposition(w);
  CHECK(gw.component({0}).contains(unit_vector(7, 0)));
}

TEST_CASE("torus rank is invariant under base change") {
  std::mt19937_64 rng(17);
  for (const char* name : {"l55", "l56", "g7102", "remdl5"}) {
    const Algebra a = catalog(name);
    const int r = maximal_split_torus(a).rank();
    for (int t = 0; t < 3; ++t) {
      const QMatrix p = random_invertible(rng, a.dim());
      const auto tb = maximal_split_torus(base_change(a, p));
      CHECK(tb.rank() == r);
      for (const auto& x : tb.generators) CHECK(leibniz_oracle(tb.algebra, x));
    }
  }
}
