#include "nilgrade/derivations.hpp"

#include "nilgrade/polynomial.hpp"
#include "nilgrade/zlattice.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace nilgrade {

QMatrix commutator(const QMatrix& x, const QMatrix& y) { return mul(x, y) - mul(y, x); }

std::string to_string(Certificate c) { return c == Certificate::proven ? "proven" : "heuristic"; }

MatrixSpace::MatrixSpace(Index n, const std::vector<QMatrix>& generators) : n_(n), flat_(n * n) {
  std::vector<QVector> rows;
  for (const auto& g : generators) rows.push_back(flatten(g));
  flat_ = Subspace::span(rows, n * n);
}

std::vector<QMatrix> MatrixSpace::basis() const {
  std::vector<QMatrix> b;
  for (Index i = 0; i < dim(); ++i) b.push_back(element(i));
  return b;
}

MatrixSpace MatrixSpace::centralizer(const std::vector<QMatrix>& family) const {
  if (family.empty() || dim() == 0) return *this;
  const auto b = basis();
  const Index d = dim();
  SparseSystem sys(d);
  for (const auto& f : family) {
    std::vector<QVector> cols;
    for (const auto& x : b) cols.push_back(flatten(commutator(x, f)));
    for (Index e = 0; e < n_ * n_; ++e) {
      SparseRow row;
      for (Index k = 0; k < d; ++k)
        if (!cols[static_cast<std::size_t>(k)](e).is_zero()) row.emplace_back(k, cols[static_cast<std::size_t>(k)](e));
      if (!row.empty()) sys.rows.push_back(std::move(row));
    }
  }
  const QMatrix coeffs = kernel(sys);
  std::vector<QMatrix> out;
  for (Index r = 0; r < coeffs.rows(); ++r) {
    QMatrix m = zeros(n_, n_);
    for (Index k = 0; k < d; ++k)
      if (!coeffs(r, k).is_zero()) m += coeffs(r, k) * b[static_cast<std::size_t>(k)];
    out.push_back(std::move(m));
  }
  return MatrixSpace(n_, out);
}

MatrixSpace MatrixSpace::derived() const {
  const auto b = basis();
  std::vector<QMatrix> c;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) c.push_back(commutator(b[i], b[j]));
  return MatrixSpace(n_, c);
}

bool MatrixSpace::is_solvable() const {
  MatrixSpace s = *this;
  while (s.dim() > 0) {
    MatrixSpace d = s.derived();
    if (d.dim() == s.dim()) return false;
    s = std::move(d);
  }
  return true;
}

bool MatrixSpace::generates_nilpotent_algebra(const std::vector<QMatrix>& ms, Index n) {
  Subspace v = Subspace::full(n);
  while (!v.is_zero()) {
    std::vector<QVector> imgs;
    for (const auto& m : ms)
      for (Index i = 0; i < v.dim(); ++i) imgs.push_back(m * v.vector(i));
    Subspace next = Subspace::span(imgs, n);
    if (next.dim() == v.dim()) return false;
    v = std::move(next);
  }
  return true;
}

SparseSystem leibniz_system(const Algebra& a) {
  const Index n = a.dim();
  SparseSystem sys(n * n);
  auto u = [n](Index r, Index c) { return r * n + c; };
  for (Index i = 0; i < n; ++i)
    for (Index j = a.is_lie() ? i + 1 : 0; j < n; ++j)
      for (Index m = 0; m < n; ++m) {
        // D(e_i e_j) - D(e_i) e_j - e_i D(e_j), coordinate m.
        std::map<Index, Rational> acc;
        for (Index l = 0; l < n; ++l) {
          if (!a.sc(i, j, l).is_zero()) acc[u(m, l)] += a.sc(i, j, l);
          if (!a.sc(l, j, m).is_zero()) acc[u(l, i)] -= a.sc(l, j, m);
          if (!a.sc(i, l, m).is_zero()) acc[u(l, j)] -= a.sc(i, l, m);
        }
        SparseRow row;
        for (auto& [col, v] : acc)
          if (!v.is_zero()) row.emplace_back(col, v);
        if (!row.empty()) sys.rows.push_back(std::move(row));
      }
  return sys;
}

DerivationSpace derivations(const Algebra& a) {
  const Index n = a.dim();
  const QMatrix k = kernel(leibniz_system(a));
  DerivationSpace d;
  d.n = n;
  for (Index r = 0; r < k.rows(); ++r) d.basis.push_back(unflatten(k.row(r).transpose(), n, n));
  d.space = MatrixSpace(n, d.basis);
  return d;
}

bool is_derivation(const Algebra& a, const QMatrix& d) {
  const Index n = a.dim();
  if (d.rows() != n || d.cols() != n) return false;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const QVector ei = unit_vector(n, i), ej = unit_vector(n, j);
      if (d * a.product(i, j) != a.product(QVector(d.col(i)), ej) + a.product(ei, QVector(d.col(j)))) return false;
    }
  return true;
}

namespace {

void require_split_commuting(const std::vector<QMatrix>& family) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!is_split_semisimple(family[i])) throw DomainError("torus generator is not diagonalizable over Q");
    for (std::size_t j = 0; j < i; ++j)
      if (!is_zero(commutator(family[i], family[j]))) throw DomainError("torus generators do not commute");
  }
}

Subspace eigenspace(const QMatrix& t, const Rational& lambda, const Subspace& within) {
  const Index n = t.rows();
  return within.intersect(Subspace(n, kernel(QMatrix(t - lambda * identity(n)))));
}

// Flip an axis when the dimension-weighted sum is negative; on a tie, when the negated multiset
// of coordinates is lexicographically larger.
bool should_flip(const std::vector<std::vector<Rational>>& w, const std::vector<Index>& dims, std::size_t axis) {
  Rational sum = 0;
  std::vector<Rational> coords, negated;
  for (std::size_t i = 0; i < w.size(); ++i) {
    sum += Rational(dims[i]) * w[i][axis];
    for (Index k = 0; k < dims[i]; ++k) {
      coords.push_back(w[i][axis]);
      negated.push_back(-w[i][axis]);
    }
  }
  if (sum.sign() != 0) return sum.sign() < 0;
  std::sort(coords.begin(), coords.end());
  std::sort(negated.begin(), negated.end());
  return negated > coords;
}

}  // namespace

SplitTorus make_torus(const Algebra& a, const std::vector<QMatrix>& family) {
  require_split_commuting(family);
  const Index n = a.dim();
  const std::size_t r = family.size();
  struct Piece {
    std::vector<Rational> w;
    Subspace space;
  };
  std::vector<Piece> pieces{{{}, Subspace::full(n)}};
  for (const auto& t : family) {
    const auto roots = rational_roots(minimal_polynomial(t));
    std::vector<Piece> next;
    for (const auto& p : pieces)
      for (const auto& lambda : roots) {
        Subspace e = eigenspace(t, lambda, p.space);
        if (e.is_zero()) continue;
        auto w = p.w;
        w.push_back(lambda);
        next.push_back({std::move(w), std::move(e)});
      }
    pieces = std::move(next);
  }

  SplitTorus out;
  out.algebra = a;
  if (r == 0) {
    out.weights = {Weight{}};
    out.weight_spaces = {Subspace::full(n)};
    return out;
  }

  // Canonical Z-basis B of the weight lattice; new weights are w B^-1.
  std::vector<QVector> gens;
  for (const auto& p : pieces) {
    QVector v(static_cast<Index>(r));
    for (std::size_t i = 0; i < r; ++i) v(static_cast<Index>(i)) = p.w[i];
    gens.push_back(v);
  }
  const ZLattice lat = ZLattice::from_generators(gens, static_cast<Index>(r));
  if (lat.rank() != static_cast<Index>(r)) throw DomainError("torus generators are linearly dependent");
  const QMatrix binv = inverse(lat.basis());
  std::vector<std::vector<Rational>> w;
  std::vector<Index> dims;
  for (const auto& g : gens) {
    const QVector c = binv.transpose() * g;
    w.emplace_back(c.data(), c.data() + c.size());
    dims.push_back(0);
  }
  for (std::size_t i = 0; i < pieces.size(); ++i) dims[i] = pieces[i].space.dim();
  std::vector<QMatrix> tnew(r, zeros(n, n));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < r; ++i)
      if (!binv(static_cast<Index>(i), static_cast<Index>(j)).is_zero())
        tnew[j] += binv(static_cast<Index>(i), static_cast<Index>(j)) * family[i];

  // The HNF basis can be badly skewed. Re-express in the echelon basis V with V W^T = HNF(W^T),
  // weights taken largest weight space first, so coordinates stay small.
  std::vector<std::size_t> order(pieces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return dims[x] > dims[y]; });
  IntMatrix aug(r, IntRow(pieces.size() + r, Integer(0)));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t c = 0; c < order.size(); ++c) aug[j][c] = w[order[c]][j].num();
    aug[j][pieces.size() + j] = 1;
  }
  const IntMatrix h = hermite_normal_form(std::move(aug));
  if (h.size() != r) throw InvariantViolation("weight lattice lost rank");
  std::vector<std::vector<Rational>> w2(w.size(), std::vector<Rational>(r, Rational(0)));
  std::vector<QMatrix> t2(r, zeros(n, n));
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t c = 0; c < order.size(); ++c) w2[order[c]][k] = Rational(h[k][c]);
    for (std::size_t j = 0; j < r; ++j)
      if (h[k][pieces.size() + j] != 0) t2[k] += Rational(h[k][pieces.size() + j]) * tnew[j];
  }
  w = std::move(w2);
  tnew = std::move(t2);
  for (std::size_t j = 0; j < r; ++j)
    if (should_flip(w, dims, j)) {
      for (auto& wi : w) wi[j] = -wi[j];
      tnew[j] = -tnew[j];
    }

  std::vector<std::pair<Weight, Subspace>> sorted;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    Weight iw;
    for (const auto& x : w[i]) {
      if (!x.is_integer()) throw InvariantViolation("non-integral weight after HNF rebasing");
      iw.push_back(x.num().get_si());
    }
    sorted.emplace_back(std::move(iw), pieces[i].space);
  }
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  out.generators = std::move(tnew);
  for (auto& [wt, sp] : sorted) {
    out.weights.push_back(wt);
    out.weight_spaces.push_back(sp);
  }
  return out;
}

namespace {

class TorusSearch {
 public:
  TorusSearch(const Algebra& a, std::mt19937_64& rng, const TorusOptions& opts)
      : n_(a.dim()), der_(derivations(a)), rng_(rng), opts_(opts) {}

  SplitTorus run(const Algebra& a) {
    std::vector<QMatrix> f;
    while (true) {
      const MatrixSpace c = der_.space.centralizer(f);
      if (auto s = find_semisimple(c, MatrixSpace(n_, f), true)) {
        f.push_back(*s);
        continue;
      }
      if (torus_is_maximal(c, MatrixSpace(n_, f)))
        return finish(a, f, Certificate::proven, "centralizer is the torus plus nilpotent derivations");
      const auto big = maximal_torus_containing(f);
      if (!big) return finish(a, f, Certificate::heuristic, "no certified maximal torus found in the centralizer");
      std::optional<MatrixSpace> split;
      try {
        split = split_part(*big);
      } catch (const BudgetExhausted&) {
        return finish(a, f, Certificate::heuristic, "precision budget exhausted while splitting a maximal torus");
      }
      if (!split) return finish(a, f, Certificate::heuristic, "no generic element found in a maximal torus");
      if (split->dim() > static_cast<Index>(f.size())) {
        MatrixSpace span(n_, f);
        for (const auto& x : split->basis())
          if (!span.contains(x)) {
            f.push_back(x);
            span = MatrixSpace(n_, f);
          }
        continue;
      }
      if (c.is_solvable())
        return finish(a, f, Certificate::proven,
                      "torus is the split part of a maximal torus of a solvable centralizer");
      return finish(a, f, Certificate::heuristic, "centralizer is not solvable and contains non-split tori");
    }
  }

 private:
  SplitTorus finish(const Algebra& a, const std::vector<QMatrix>& f, Certificate c, std::string note) {
    SplitTorus t = make_torus(a, f);
    t.certificate = c;
    t.certificate_note = std::move(note);
    return t;
  }

  std::vector<QMatrix> candidates(const MatrixSpace& c) {
    std::vector<QMatrix> out = c.basis();
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int k = 0; k < opts_.draws && c.dim() > 1; ++k) {
      QMatrix m = zeros(n_, n_);
      for (const auto& b : c.basis()) m += Rational(coeff(rng_)) * b;
      out.push_back(std::move(m));
    }
    return out;
  }

  std::optional<QMatrix> find_semisimple(const MatrixSpace& c, const MatrixSpace& torus, bool split_only) {
    for (const auto& x : candidates(c)) {
      QMatrix s = semisimple_part(x);
      if (is_zero(s) || torus.contains(s)) continue;
      if (split_only && !is_split_semisimple(s)) continue;
      return s;
    }
    return std::nullopt;
  }

  /// Every element of c has its semisimple part in the torus.
  bool torus_is_maximal(const MatrixSpace& c, const MatrixSpace& torus) const {
    std::vector<QMatrix> nil;
    for (const auto& b : c.basis()) {
      const QMatrix s = semisimple_part(b);
      if (!torus.contains(s)) return false;
      nil.push_back(b - s);
    }
    return MatrixSpace::generates_nilpotent_algebra(nil, n_);
  }

  std::optional<std::vector<QMatrix>> maximal_torus_containing(std::vector<QMatrix> t) {
    for (Index step = 0; step <= n_; ++step) {
      const MatrixSpace c = der_.space.centralizer(t);
      const MatrixSpace span(n_, t);
      if (torus_is_maximal(c, span)) return t;
      auto s = find_semisimple(c, span, false);
      if (!s) return std::nullopt;
      t.push_back(*s);
    }
    return std::nullopt;
  }

  /// {x in T : x has rational eigenvalues}, via a generic element g with Q[g] = Q[T].
  std::optional<MatrixSpace> split_part(const std::vector<QMatrix>& t) {
    const MatrixSpace span(n_, t);
    const auto tb = span.basis();
    const Index algebra_dim = associative_hull_dim(tb);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int attempt = 0; attempt < 20; ++attempt) {
      QMatrix g = zeros(n_, n_);
      for (std::size_t k = 0; k < tb.size(); ++k) {
        int c = coeff(rng_);
        if (attempt == 0) c = static_cast<int>(k) + 1;
        g += Rational(c) * tb[k];
      }
      const Polynomial mp = minimal_polynomial(g);
      if (mp.degree() != algebra_dim) continue;
      const auto factors = irreducible_factors(mp, opts_.precision_budget);
      // Unknowns: coefficients a_k, then one scalar per factor.
      const Index m = static_cast<Index>(tb.size()), nf = static_cast<Index>(factors.size());
      SparseSystem sys(m + nf);
      for (Index j = 0; j < nf; ++j) {
        const Subspace comp(n_, kernel(factors[static_cast<std::size_t>(j)](g)));
        for (Index v = 0; v < comp.dim(); ++v) {
          const QVector x = comp.vector(v);
          std::vector<QVector> images;
          for (const auto& b : tb) images.push_back(mul(b, x));
          for (Index e = 0; e < n_; ++e) {
            SparseRow row;
            for (Index k = 0; k < m; ++k)
              if (!images[static_cast<std::size_t>(k)](e).is_zero()) row.emplace_back(k, images[static_cast<std::size_t>(k)](e));
            if (!x(e).is_zero()) row.emplace_back(m + j, -x(e));
            if (!row.empty()) sys.rows.push_back(std::move(row));
          }
        }
      }
      const QMatrix sol = kernel(sys);
      std::vector<QMatrix> xs;
      for (Index r = 0; r < sol.rows(); ++r) {
        QMatrix x = zeros(n_, n_);
        for (Index k = 0; k < m; ++k) x += sol(r, k) * tb[static_cast<std::size_t>(k)];
        xs.push_back(std::move(x));
      }
      return MatrixSpace(n_, xs);
    }
    return std::nullopt;
  }

  Index associative_hull_dim(const std::vector<QMatrix>& t) const {
    std::vector<QMatrix> gens = t;
    gens.push_back(identity(n_));
    MatrixSpace hull(n_, gens);
    while (true) {
      std::vector<QMatrix> prods = hull.basis();
      for (const auto& x : hull.basis())
        for (const auto& y : t) prods.push_back(mul(x, y));
      MatrixSpace next(n_, prods);
      if (next.dim() == hull.dim()) return hull.dim();
      hull = std::move(next);
    }
  }

  Index n_;
  DerivationSpace der_;
  std::mt19937_64& rng_;
  TorusOptions opts_;
};

}  // namespace

SplitTorus maximal_split_torus(const Algebra& a, std::mt19937_64& rng, const TorusOptions& opts) {
  return TorusSearch(a, rng, opts).run(a);
}

SplitTorus maximal_split_torus(const Algebra& a, const TorusOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  return maximal_split_torus(a, rng, opts);
}

Grading weight_decomposition(const SplitTorus& t) {
  std::vector<GradedComponent> comps;
  for (std::size_t i = 0; i < t.weights.size(); ++i) comps.push_back({t.weights[i], t.weight_spaces[i]});
  return Grading(t.algebra, t.rank(), std::move(comps));
}

}  // namespace nilgrade
