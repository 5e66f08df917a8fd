#include "nilgrade/grading.hpp"

#include <algorithm>

namespace nilgrade {

namespace {

std::string weight_str(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

Weight add(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

void check_grading_axioms(const Algebra& a, const std::vector<GradedComponent>& comps) {
  const Index n = a.dim();
  Index total = 0;
  Subspace sum(n);
  for (const auto& c : comps) {
    if (c.space.ambient_dim() != n) throw BadGrading("component of wrong ambient dimension");
    total += c.space.dim();
    sum = sum + c.space;
  }
  if (total != n || !sum.is_full()) throw BadGrading("components do not form a direct sum decomposition");
  std::map<Weight, const Subspace*> by_weight;
  for (const auto& c : comps)
    if (!by_weight.emplace(c.weight, &c.space).second) throw BadGrading("repeated weight " + weight_str(c.weight));
  for (const auto& u : comps)
    for (const auto& v : comps) {
      const Subspace p = product_subspace(a, u.space, v.space);
      if (p.is_zero()) continue;
      const auto it = by_weight.find(add(u.weight, v.weight));
      if (it == by_weight.end() || !it->second->contains(p))
        throw BadGrading("product of weights " + weight_str(u.weight) + " and " + weight_str(v.weight) +
                         " leaves weight " + weight_str(add(u.weight, v.weight)));
    }
}

Grading::Grading(Algebra a, int rank, std::vector<GradedComponent> components)
    : a_(std::move(a)), rank_(rank) {
  for (auto& c : components) {
    if (static_cast<int>(c.weight.size()) != rank) throw BadGrading("weight of wrong rank");
    if (!c.space.is_zero()) comps_.push_back(std::move(c));
  }
  std::sort(comps_.begin(), comps_.end(),
            [](const GradedComponent& x, const GradedComponent& y) { return x.weight < y.weight; });
  check_grading_axioms(a_, comps_);
}

Grading Grading::trivial(const Algebra& a, int rank) {
  return Grading(a, rank, {{Weight(static_cast<std::size_t>(rank), 0), Subspace::full(a.dim())}});
}

Grading Grading::from_degrees(const Algebra& a, const std::vector<long>& degrees) {
  if (static_cast<Index>(degrees.size()) != a.dim()) throw BadGrading("one degree per basis vector expected");
  std::map<long, std::vector<Index>> groups;
  for (std::size_t i = 0; i < degrees.size(); ++i) groups[degrees[i]].push_back(static_cast<Index>(i));
  std::vector<GradedComponent> comps;
  for (const auto& [d, idx] : groups) comps.push_back({{d}, Subspace::coordinate(a.dim(), idx)});
  return Grading(a, 1, std::move(comps));
}

std::vector<Weight> Grading::weights() const {
  std::vector<Weight> w;
  for (const auto& c : comps_) w.push_back(c.weight);
  return w;
}

Subspace Grading::component(const Weight& w) const {
  for (const auto& c : comps_)
    if (c.weight == w) return c.space;
  return Subspace(a_.dim());
}

QMatrix Grading::adapted_basis() const {
  const Index n = a_.dim();
  QMatrix p(n, n);
  Index col = 0;
  for (const auto& c : comps_)
    for (Index i = 0; i < c.space.dim(); ++i) p.col(col++) = c.space.vector(i);
  return p;
}

std::vector<long> Grading::adapted_degrees() const {
  if (rank_ != 1) throw DomainError("adapted degrees need a rank-one grading");
  std::vector<long> d;
  for (const auto& c : comps_)
    for (Index i = 0; i < c.space.dim(); ++i) d.push_back(c.weight[0]);
  return d;
}

bool Grading::is_nonnegative() const {
  if (rank_ != 1) throw DomainError("sign flags need a rank-one grading");
  return std::all_of(comps_.begin(), comps_.end(), [](const GradedComponent& c) { return c.weight[0] >= 0; });
}

bool Grading::is_positive() const {
  if (rank_ != 1) throw DomainError("sign flags need a rank-one grading");
  return std::all_of(comps_.begin(), comps_.end(), [](const GradedComponent& c) { return c.weight[0] > 0; });
}

bool Grading::is_invertible() const {
  for (const auto& c : comps_)
    if (std::all_of(c.weight.begin(), c.weight.end(), [](long x) { return x == 0; })) return false;
  return true;
}

bool Grading::is_carnot_grading() const {
  if (!is_positive()) return false;
  return generated_subalgebra(a_, component({1})).is_full();
}

Grading Grading::push_forward(const std::vector<Weight>& rows) const {
  const int s = static_cast<int>(rows.size());
  std::map<Weight, Subspace> merged;
  for (const auto& c : comps_) {
    Weight w(static_cast<std::size_t>(s), 0);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < rank_; ++j)
        w[static_cast<std::size_t>(i)] += rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                          c.weight[static_cast<std::size_t>(j)];
    auto it = merged.find(w);
    if (it == merged.end()) merged.emplace(w, c.space);
    else it->second = it->second + c.space;
  }
  std::vector<GradedComponent> comps;
  for (auto& [w, sp] : merged) comps.push_back({w, sp});
  return Grading(a_, s, std::move(comps));
}

QMatrix Grading::derivation(const std::vector<Rational>& f) const {
  if (static_cast<int>(f.size()) != rank_) throw DomainError("linear form of wrong rank");
  const Index n = a_.dim();
  const QMatrix p = adapted_basis();
  QMatrix d = zeros(n, n);
  Index col = 0;
  for (const auto& c : comps_) {
    Rational v = 0;
    for (int j = 0; j < rank_; ++j) v += f[static_cast<std::size_t>(j)] * Rational(c.weight[static_cast<std::size_t>(j)]);
    for (Index i = 0; i < c.space.dim(); ++i, ++col) d(col, col) = v;
  }
  return p * d * inverse(p);
}

}  // namespace nilgrade
