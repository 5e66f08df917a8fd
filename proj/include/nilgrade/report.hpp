#pragma once

#include "nilgrade/cohopf.hpp"
#include "nilgrade/nilgroup.hpp"

#include <json.hpp>

#include <string>

namespace nilgrade {

inline constexpr int kReportSchemaVersion = 1;

struct ReportOptions {
  TorusOptions torus;
  std::size_t enum_budget = 10'000'000;
  int class_cap = 10;
  bool timings = false;
};

/// SHA-256 of the canonical JSON serialization of the algebra.
std::string algebra_digest(const Algebra& a);

/// Full document: validation, series, Carnot test, torus, cones, radicals, cohopfian flags,
/// growth. Sections that do not apply carry {"applicable": false, "reason": ...}.
nlohmann::json algebra_report(const Algebra& a, const std::string& name, const ReportOptions& opts = {});

nlohmann::json input_section(const Algebra& a, const std::string& name);
nlohmann::json carnot_section(const Algebra& a);
nlohmann::json torus_section(const Algebra& a, const ReportOptions& opts);
nlohmann::json cohopf_section(const Algebra& a, const ReportOptions& opts);
nlohmann::json growth_section(const Algebra& a);

/// Carnot grading when there is one, otherwise the fine non-negative grading.
Grading default_grading(const Algebra& a, const ReportOptions& opts);

nlohmann::json defendo_section(const Algebra& a, const Grading& gr, const ReportOptions& opts);
nlohmann::json systole_section(const Algebra& a, const Grading& gr, const std::vector<Integer>& ms,
                               const ReportOptions& opts);

/// Indented key: value rendering for terminals.
std::string render_text(const nlohmann::json& doc);

}  // namespace nilgrade
