#include "nilgrade/cohopf.hpp"

#include <cmath>

namespace nilgrade {

namespace {

struct Radicals {
  SplitTorus torus;
  Grading grading;
  ContractiveDecomposition decomposition;
  DerivationSpace der;
};

Radicals radicals(const Algebra& a, const TorusOptions& opts) {
  SplitTorus t = maximal_split_torus(a, opts);
  Grading gr = weight_decomposition(t);
  ContractiveDecomposition dec = contractive_decomposition(gr);
  return {std::move(t), std::move(gr), std::move(dec), derivations(a)};
}

Subspace zero_weight_space(const Radicals& r) {
  return r.grading.component(Weight(static_cast<std::size_t>(r.grading.rank()), 0));
}

Subspace cni_of(const Algebra& a, const Radicals& r) {
  return largest_invariant_subideal(a, zero_weight_space(r), r.der.basis);
}

Subspace cni_plus_of(const Algebra& a, const Radicals& r) {
  return largest_invariant_subideal(a, r.decomposition.zero_part, r.der.basis);
}

void require_invertible(const QMatrix& xi) {
  if (xi.rows() != xi.cols()) throw DomainError("expected a square matrix");
  if (determinant(xi).is_zero()) throw SingularMatrix();
}

double log_abs(const Integer& z) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

Polynomial power(const Polynomial& p, int k) {
  Polynomial out(Rational(1));
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

int multiplicity(Polynomial m, const Polynomial& p) {
  int k = 0;
  while (true) {
    auto [q, r] = divmod(m, p);
    if (!r.is_zero()) return k;
    m = q;
    ++k;
  }
}

}  // namespace

Subspace cni_plus(const Algebra& a, const TorusOptions& opts) { return cni_plus_of(a, radicals(a, opts)); }

Subspace cni(const Algebra& a, const TorusOptions& opts) {
  require_lie(a);
  return cni_of(a, radicals(a, opts));
}

CohopfReport classify(const Algebra& a, const TorusOptions& opts) {
  require_lie(a);
  if (!lower_series(a).nilpotent()) throw NotNilpotent();
  const Radicals r = radicals(a, opts);
  const ConeFlags flags = cone_flags(r.grading);

  CohopfReport rep;
  rep.semicontractable = flags.semicontractable;
  rep.contractable = flags.contractable;
  rep.uncontracted_dim = r.decomposition.uncontracted_dim;
  rep.cni_plus = cni_plus_of(a, r);
  rep.cni = cni_of(a, r);
  rep.essentially_contractable = rep.cni_plus.is_zero();
  rep.certificate_level = r.torus.certificate;
  rep.certificate_note = r.torus.certificate_note;
  rep.torus_rank = r.torus.rank();
  rep.witness = r.decomposition.witness;
  rep.cni_caveat =
      "upper bound: computed from the maximal split torus; anisotropic semisimple derivations are not searched";

  auto& c = rep.classification;
  if (a.dim() == 0) {
    c.cohopfian = true;
  } else {
    c.non_cohopfian = rep.semicontractable;
    c.cohopfian = !c.non_cohopfian;
    c.dis_cohopfian = rep.contractable;
    c.weakly_dis_cohopfian = rep.essentially_contractable;
  }
  if ((c.dis_cohopfian && !c.weakly_dis_cohopfian) || (c.weakly_dis_cohopfian && !c.non_cohopfian) ||
      (rep.contractable && rep.uncontracted_dim != 0) || !rep.cni_plus.contains(rep.cni))
    throw InvariantViolation("classify: inconsistent cohopfian flags");
  return rep;
}

bool stabilizes_some_lattice(const QMatrix& xi) {
  require_invertible(xi);
  return minimal_polynomial(xi).is_integral();
}

bool preserves_some_lattice(const QMatrix& xi) {
  require_invertible(xi);
  const Polynomial mp = minimal_polynomial(xi);
  return mp.is_integral() && abs(mp[0]) == Rational(1);
}

double AbsoluteWeight::value() const { return (log_abs(base.num()) - log_abs(base.den())) / root; }

int AbsoluteWeight::sign() const { return base > Rational(1) ? 1 : (base < Rational(1) ? -1 : 0); }

int compare(const AbsoluteWeight& a, const AbsoluteWeight& b) {
  const Rational l = pow(a.base, b.root);
  const Rational r = pow(b.base, a.root);
  return l < r ? -1 : (l > r ? 1 : 0);
}

bool AbsoluteGrading::nonnegative() const {
  for (const auto& c : components)
    if (c.weight.sign() < 0) return false;
  return true;
}

AbsoluteGrading absolute_grading(const QMatrix& xi, int precision_budget) {
  require_invertible(xi);
  const Index n = xi.rows();
  const Polynomial mp = minimal_polynomial(xi);
  AbsoluteGrading g{xi, {}, Subspace(n)};
  for (const auto& p : irreducible_factors(mp, precision_budget)) {
    const AbsoluteWeight w{abs(p[0]), p.degree()};
    const QMatrix k = power(p, multiplicity(mp, p))(xi);
    const Subspace space(n, kernel(k));
    auto it = g.components.begin();
    while (it != g.components.end() && compare(it->weight, w) < 0) ++it;
    if (it != g.components.end() && compare(it->weight, w) == 0) {
      it->factors.push_back(p);
      it->space = it->space + space;
    } else {
      g.components.insert(it, AbsoluteComponent{w, {p}, space});
    }
  }
  Index total = 0;
  for (const auto& c : g.components) {
    total += c.space.dim();
    if (c.weight.sign() == 0) g.zero_part = c.space;
  }
  if (total != n) throw InvariantViolation("absolute_grading: components do not fill the space");
  return g;
}

ZLattice intersection_lattice(const QMatrix& xi, const ZLattice& lambda, int precision_budget) {
  require_invertible(xi);
  if (!lambda.contains(lambda.image(xi))) throw DoesNotStabilize();
  const AbsoluteGrading g = absolute_grading(xi, precision_budget);
  if (lambda.is_full() && !g.nonnegative())
    throw InvariantViolation("intersection_lattice: negative weight for a lattice-stabilizing map");
  ZLattice out = lambda.intersect(g.zero_part);
  if (!(out.image(xi) == out)) throw InvariantViolation("intersection_lattice: result is not preserved");
  return out;
}

}  // namespace nilgrade
