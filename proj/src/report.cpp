#include "nilgrade/report.hpp"

#include "nilgrade/algebra_io.hpp"
#include "nilgrade/carnot.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

namespace nilgrade {

using nlohmann::json;

namespace {

json not_applicable(const std::string& reason) { return {{"applicable", false}, {"reason", reason}}; }

json weight_json(const Weight& w) {
  json out = json::array();
  for (long x : w) out.push_back(x);
  return out;
}

json vector_json(const QVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
  return out;
}

json rows_json(const QMatrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

json root_json(const RootValue& r) {
  return {{"exact", r.str()}, {"approx", r.value()}};
}

std::string label(const CohopfClassification& c) {
  if (c.dis_cohopfian) return "dis-cohopfian";
  if (c.weakly_dis_cohopfian) return "weakly-dis-cohopfian";
  if (c.non_cohopfian) return "non-cohopfian";
  return "cohopfian";
}

// Runs a section builder, turning domain errors into a not-applicable record.
json guarded(const std::function<json()>& build) {
  try {
    return build();
  } catch (const DomainError& e) {
    return not_applicable(e.what());
  }
}

}  // namespace

std::string algebra_digest(const Algebra& a) {
  const std::string text = algebra_to_json(a);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InvariantViolation("sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

json input_section(const Algebra& a, const std::string& name) {
  return {{"name", name},
          {"dim", a.dim()},
          {"kind", to_string(a.kind())},
          {"basis", a.names()},
          {"sha256", algebra_digest(a)}};
}

json carnot_section(const Algebra& a) {
  return guarded([&] {
    const CarnotVerdict v = carnot_test(a);
    json out = {{"carnot", v.carnot}};
    if (v.carnot) {
      json dims = json::array();
      for (const auto& c : v.grading->components()) dims.push_back(c.space.dim());
      out["degree_dims"] = dims;
      out["degree_one_basis"] = rows_json(v.grading->components().front().space.basis());
    } else {
      Index support = 0;
      for (Index i = 0; i < v.certificate.size(); ++i) support += !v.certificate(i).is_zero();
      out["obstruction_support"] = support;
    }
    return out;
  });
}

json torus_section(const Algebra& a, const ReportOptions& opts) {
  return guarded([&] {
    const SplitTorus t = maximal_split_torus(a, opts.torus);
    json weights = json::array();
    for (std::size_t i = 0; i < t.weights.size(); ++i)
      weights.push_back({{"weight", weight_json(t.weights[i])}, {"dim", t.weight_spaces[i].dim()}});
    json out = {{"rank", t.rank()},
                {"weights", weights},
                {"certificate", to_string(t.certificate)},
                {"certificate_note", t.certificate_note}};
    const Grading gr = weight_decomposition(t);
    const ConeFlags f = cone_flags(gr);
    out["cones"] = {{"contractable", f.contractable},
                    {"semicontractable", f.semicontractable},
                    {"flexible_split", f.flexible_split},
                    {"carnot_by_weights", f.carnot_by_weights}};
    const ContractiveDecomposition cd = contractive_decomposition(gr);
    out["contractive"] = {{"uncontracted_dim", cd.uncontracted_dim},
                          {"contracted_dim", cd.contracted_dim},
                          {"cocharacter", cd.witness}};
    return out;
  });
}

json cohopf_section(const Algebra& a, const ReportOptions& opts) {
  return guarded([&] {
    const CohopfReport r = classify(a, opts.torus);
    const auto& c = r.classification;
    return json{{"classification", label(c)},
                {"cohopfian", c.cohopfian},
                {"non_cohopfian", c.non_cohopfian},
                {"dis_cohopfian", c.dis_cohopfian},
                {"weakly_dis_cohopfian", c.weakly_dis_cohopfian},
                {"semicontractable", r.semicontractable},
                {"contractable", r.contractable},
                {"essentially_contractable", r.essentially_contractable},
                {"uncontracted_dim", r.uncontracted_dim},
                {"min_intersection_hirsch_length", r.uncontracted_dim},
                {"cni_dim", r.cni.dim()},
                {"cni_plus_dim", r.cni_plus.dim()},
                {"cni_caveat", r.cni_caveat},
                {"certificate_level", to_string(r.certificate_level)},
                {"certificate_note", r.certificate_note},
                {"real_field", "flags over R agree with the rational ones by field-extension invariance"}};
  });
}

json growth_section(const Algebra& a) {
  return guarded([&] {
    require_lie(a);
    return json{{"degree", growth_degree(a)}, {"uppersys_exponent", uppersys_exponent(a)}};
  });
}

Grading default_grading(const Algebra& a, const ReportOptions& opts) {
  const CarnotVerdict v = carnot_test(a);
  if (v.carnot) return *v.grading;
  return fine_nonneg_grading(a, opts.torus);
}

json defendo_section(const Algebra& a, const Grading& gr, const ReportOptions& opts) {
  const NilGroup g(a, opts.class_cap);
  const LatticeSubgroup lat = standard_lattice(g);
  const DefendoCertificate cert = defendo_modulus(g, gr, lat);
  const long delta = graded_degree(gr);
  json checks = json::array();
  for (const Integer& m : cert.certified_m) {
    const ZLattice image = lat.log_lattice.image(dilation(gr, Rational(m)));
    Integer expected;
    mpz_pow_ui(expected.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(delta));
    const Rational index = lattice_index(lat.log_lattice, image);
    checks.push_back({{"m", m.get_str()}, {"index", index.str()}, {"index_is_m_to_delta", index == Rational(expected)}});
  }
  return {{"degrees", gr.adapted_degrees()},
          {"graded_degree", delta},
          {"lattice_basis", rows_json(lat.log_lattice.basis())},
          {"lattice_verified", lat.verified},
          {"s", cert.s.get_str()},
          {"k", cert.k.get_str()},
          {"k_prime", cert.k_prime.get_str()},
          {"d", cert.d},
          {"k0", cert.k0.get_str()},
          {"certified", checks}};
}

json systole_section(const Algebra& a, const Grading& gr, const std::vector<Integer>& ms, const ReportOptions& opts) {
  const NilGroup g(a, opts.class_cap);
  const LatticeSubgroup lat = standard_lattice(g);
  const SystolicExperiment ex = systolic_experiment(gr, lat.log_lattice, ms, opts.enum_budget);
  json rows = json::array();
  for (const SystolicRow& r : ex.rows)
    rows.push_back({{"m", r.m.get_str()},
                    {"index", r.index.str()},
                    {"covolume", r.covolume.str()},
                    {"systole", root_json(r.systole)},
                    {"normal_lower_bound", root_json(r.normal_lower_bound)}});
  return {{"degrees", gr.adapted_degrees()},
          {"graded_degree", graded_degree(gr)},
          {"lattice_basis", rows_json(lat.log_lattice.basis())},
          {"rows", rows},
          {"slope", ex.slope},
          {"note", "lengths use the Guivarc'h quasi-norm; slopes are meaningful up to quasi-isometry"}};
}

json algebra_report(const Algebra& a, const std::string& name, const ReportOptions& opts) {
  json timings = json::object();
  auto timed = [&](const char* key, const std::function<json()>& build) {
    const auto t0 = std::chrono::steady_clock::now();
    json out = build();
    timings[key] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
  };

  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["options"] = {{"seed", opts.torus.seed}, {"precision_budget", opts.torus.precision_budget}};
  doc["input"] = input_section(a, name);

  const ValidationReport val = validate(a);
  json violations = json::array();
  for (std::size_t i = 0; i < val.violations.size() && i < 20; ++i) violations.push_back(val.violations[i].str());
  doc["validation"] = {{"ok", val.ok()}, {"violation_count", val.violations.size()}, {"violations", violations}};
  if (!val.ok()) {
    const json skip = not_applicable("validation failed");
    for (const char* key : {"series", "carnot", "torus", "cohopf", "growth"}) doc[key] = skip;
    doc["certificate_level"] = nullptr;
    return doc;
  }

  doc["series"] = timed("series", [&] {
    const LowerSeries ls = lower_series(a);
    json out = {{"lower_dims", ls.dims()}, {"nilpotent", ls.nilpotent()}, {"center_dim", center(a).dim()}};
    out["class"] = ls.nilpotent() ? json(*ls.nilpotency_class) : json(nullptr);
    if (ls.nilpotent()) out["car_center_dim"] = center(car(a).algebra).dim();
    return out;
  });
  doc["carnot"] = timed("carnot", [&] { return carnot_section(a); });
  doc["torus"] = timed("torus", [&] { return torus_section(a, opts); });
  doc["cohopf"] = timed("cohopf", [&] { return cohopf_section(a, opts); });
  doc["growth"] = timed("growth", [&] { return growth_section(a); });
  doc["certificate_level"] = doc["torus"].contains("certificate") ? doc["torus"]["certificate"] : json(nullptr);
  if (opts.timings) doc["timings_ms"] = timings;
  return doc;
}

namespace {

bool scalar_array(const json& j) {
  for (const auto& x : j)
    if (x.is_structured()) {
      if (!x.is_array()) return false;
      for (const auto& y : x)
        if (y.is_structured()) return false;
    }
  return true;
}

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
    return s + "]";
  }
  return j.dump();
}

void render(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !scalar_array(value))) {
        os << pad << key << ":\n";
        render(os, value, indent + 2);
      } else {
        os << pad << key << ": " << scalar_text(value) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) {
      if (item.is_object() && std::none_of(item.begin(), item.end(), [](const json& x) {
            return x.is_object() || (x.is_array() && !scalar_array(x));
          })) {
        std::string line;
        for (const auto& [key, value] : item.items()) line += (line.empty() ? "" : ", ") + key + ": " + scalar_text(value);
        os << pad << "- " << line << "\n";
      } else if (item.is_structured() && !(item.is_array() && scalar_array(item))) {
        os << pad << "-\n";
        render(os, item, indent + 2);
      } else {
        os << pad << "- " << scalar_text(item) << "\n";
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

}  // namespace

std::string render_text(const json& doc) {
  std::ostringstream os;
  render(os, doc, 0);
  return os.str();
}

}  // namespace nilgrade
