// nilgrade: command-line front end for the grading and cohopfian analyses.

#include "nilgrade/algebra_io.hpp"
#include "nilgrade/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nilgrade;

namespace {

enum Exit { kOk = 0, kInput = 2, kBudget = 3, kInternal = 4 };

struct Flags {
  bool json = false;
  ReportOptions report;
};

std::vector<long> parse_longs(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw ParseError("not an integer list: " + text);
    }
  }
  return out;
}

Algebra load_valid(const std::string& path) {
  Algebra a = load_algebra(path);
  const ValidationReport v = validate(a);
  if (!v.ok())
    throw ValidationError(path + ": " + std::to_string(v.violations.size()) + " violation(s), first: " +
                          v.violations.front().str());
  return a;
}

json header(const char* command, const Flags& f) {
  return {{"schema_version", kReportSchemaVersion},
          {"command", command},
          {"options", {{"seed", f.report.torus.seed}, {"precision_budget", f.report.torus.precision_budget}}}};
}

void emit(const json& doc, const Flags& f) {
  if (f.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << render_text(doc);
}

Grading chosen_grading(const Algebra& a, const std::string& degrees, const Flags& f) {
  if (degrees.empty()) return default_grading(a, f.report);
  return Grading::from_degrees(a, parse_longs(degrees));
}

std::string cell(const json& j) {
  if (j.is_null()) return "-";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string field(const json& doc, const char* section, const char* key) {
  if (!doc.contains(section) || !doc[section].contains(key)) return "-";
  return cell(doc[section][key]);
}

void print_table(const std::vector<json>& reports) {
  const std::vector<std::string> heads = {"name", "dim", "kind", "class", "carnot", "torus", "uncontracted",
                                          "delta", "classification"};
  std::vector<std::vector<std::string>> rows;
  for (const json& r : reports) {
    if (r.contains("error")) {
      rows.push_back({r["input"]["name"].get<std::string>(), "error: " + r["error"].get<std::string>()});
      continue;
    }
    rows.push_back({cell(r["input"]["name"]), cell(r["input"]["dim"]), cell(r["input"]["kind"]),
                    field(r, "series", "class"), field(r, "carnot", "carnot"), field(r, "torus", "rank"),
                    r["torus"].contains("contractive") ? cell(r["torus"]["contractive"]["uncontracted_dim"]) : "-",
                    field(r, "growth", "degree"), field(r, "cohopf", "classification")});
  }
  std::vector<std::size_t> width(heads.size());
  for (std::size_t c = 0; c < heads.size(); ++c) width[c] = heads[c].size();
  for (const auto& row : rows)
    if (row.size() == heads.size())
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c)
      std::cout << std::left << std::setw(static_cast<int>(width[c]) + 2) << row[c];
    std::cout << "\n";
  };
  line(heads);
  for (const auto& row : rows) line(row);
}

int run_batch(const std::string& dir, const Flags& f) {
  if (!fs::is_directory(dir)) throw ParseError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  int status = kOk;
  std::vector<json> reports;
  for (const fs::path& p : files) {
    const std::string name = p.stem().string();
    try {
      reports.push_back(algebra_report(load_algebra(p.string()), name, f.report));
      if (!reports.back()["validation"]["ok"].get<bool>()) status = std::max<int>(status, kInput);
    } catch (const ParseError& e) {
      reports.push_back({{"input", {{"name", name}}}, {"error", e.what()}});
      status = std::max<int>(status, kInput);
    }
  }
  if (f.json) {
    json doc = header("batch", f);
    doc["reports"] = reports;
    std::cout << doc.dump(2) << "\n";
  } else {
    print_table(reports);
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grading-theoretic analysis of finite-dimensional algebras over Q"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags f;
  app.add_flag("--json", f.json, "Emit the JSON document instead of text");
  app.add_option("--seed", f.report.torus.seed, "Seed for randomized torus search");
  app.add_option("--precision-budget", f.report.torus.precision_budget, "Bit budget for root isolation");
  app.add_option("--enum-budget", f.report.enum_budget, "Node budget for lattice enumeration");
  app.add_option("--class-cap", f.report.class_cap, "Largest nilpotency class for BCH");
  app.add_flag("--timings", f.report.timings, "Add wall-clock timings to reports");

  std::string path, degrees, ms_text = "2,3,4,5,6,7,8";
  auto file_cmd = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("path", path, "Algebra file")->required();
    return sub;
  };
  CLI::App* report = file_cmd("report", "Full report");
  CLI::App* carnot = file_cmd("carnot", "Carnot test");
  CLI::App* torus = file_cmd("torus", "Maximal split torus, weights, cones, contractive decomposition");
  CLI::App* cohopf = file_cmd("cohopf", "Cohopfian classification and radicals");
  CLI::App* growth = file_cmd("growth", "Lower central series and growth degree");
  CLI::App* defendo = file_cmd("defendo", "Dilation-stable lattice modulus");
  defendo->add_option("--degrees", degrees, "Comma-separated degrees of the basis vectors");
  CLI::App* systole = file_cmd("systole", "Systolic growth experiment over dilations");
  systole->add_option("--degrees", degrees, "Comma-separated degrees of the basis vectors");
  systole->add_option("--m", ms_text, "Comma-separated dilation factors");
  CLI::App* batch = app.add_subcommand("batch", "Report every .json file of a directory");
  batch->add_option("dir", path, "Directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (batch->parsed()) return run_batch(path, f);

    const Algebra a = load_valid(path);
    const std::string name = fs::path(path).stem().string();
    json doc;
    if (report->parsed()) {
      doc = algebra_report(a, name, f.report);
    } else {
      const char* cmd = app.get_subcommands().front()->get_name().c_str();
      doc = header(cmd, f);
      doc["input"] = input_section(a, name);
      if (carnot->parsed()) {
        doc["carnot"] = carnot_section(a);
      } else if (torus->parsed()) {
        doc["torus"] = torus_section(a, f.report);
      } else if (cohopf->parsed()) {
        doc["cohopf"] = cohopf_section(a, f.report);
      } else if (growth->parsed()) {
        const LowerSeries ls = lower_series(a);
        doc["series"] = {{"lower_dims", ls.dims()}, {"nilpotent", ls.nilpotent()}};
        doc["series"]["class"] = ls.nilpotent() ? json(*ls.nilpotency_class) : json(nullptr);
        doc["growth"] = growth_section(a);
      } else if (defendo->parsed()) {
        doc["defendo"] = defendo_section(a, chosen_grading(a, degrees, f), f.report);
      } else if (systole->parsed()) {
        std::vector<Integer> ms;
        for (long m : parse_longs(ms_text)) ms.emplace_back(m);
        doc["systole"] = systole_section(a, chosen_grading(a, degrees, f), ms, f.report);
      }
    }
    emit(doc, f);
    return kOk;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
