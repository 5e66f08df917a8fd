#include "nilgrade/algebra_io.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nilgrade {

using nlohmann::json;

namespace {

Index resolve_index(const json& v, const std::map<std::string, Index>& names, Index dim,
                    const std::string& where) {
  if (v.is_number_integer()) {
    const long long i = v.get<long long>();
    if (i < 1 || i > dim) throw ParseError(where + ": index " + std::to_string(i) + " out of range 1.." + std::to_string(dim));
    return static_cast<Index>(i - 1);
  }
  if (v.is_string()) {
    const auto it = names.find(v.get<std::string>());
    if (it == names.end()) throw ParseError(where + ": unknown basis name '" + v.get<std::string>() + "'");
    return it->second;
  }
  throw ParseError(where + ": index must be an integer or a basis name");
}

Rational parse_value(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  } catch (const std::invalid_argument& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": value must be a rational string such as \"-3/2\"");
}

}  // namespace

Algebra parse_algebra(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("algebra file must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) throw ParseError("missing integer field 'dim'");
  const long long dim = doc["dim"].get<long long>();
  if (dim < 0 || dim > 64) throw ParseError("'dim' must be between 0 and 64");
  const Index n = static_cast<Index>(dim);

  AlgebraKind kind = AlgebraKind::lie;
  if (doc.contains("kind")) {
    const std::string k = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
    if (k == "lie") kind = AlgebraKind::lie;
    else if (k == "general") kind = AlgebraKind::general;
    else throw ParseError("'kind' must be \"lie\" or \"general\"");
  }

  std::vector<std::string> basis;
  if (doc.contains("basis")) {
    if (!doc["basis"].is_array()) throw ParseError("'basis' must be an array of strings");
    for (const auto& b : doc["basis"]) {
      if (!b.is_string()) throw ParseError("'basis' must be an array of strings");
      basis.push_back(b.get<std::string>());
    }
    if (static_cast<Index>(basis.size()) != n) throw ParseError("'basis' has " + std::to_string(basis.size()) + " names but dim is " + std::to_string(n));
  }
  std::map<std::string, Index> names;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!names.emplace(basis[i], static_cast<Index>(i)).second) throw ParseError("duplicate basis name '" + basis[i] + "'");

  Algebra a(n, kind, basis);
  if (!doc.contains("entries")) return a;
  if (!doc["entries"].is_array()) throw ParseError("'entries' must be an array");

  std::set<std::pair<Index, Index>> explicit_pairs;
  struct Entry { Index i, j, k; Rational v; };
  std::vector<Entry> entries;
  std::set<std::tuple<Index, Index, Index>> seen;
  std::size_t pos = 0;
  for (const auto& e : doc["entries"]) {
    ++pos;
    const std::string where = "entry " + std::to_string(pos);
    if (!e.is_array() || e.size() != 4) throw ParseError(where + ": expected [i, j, k, \"value\"]");
    const Index i = resolve_index(e[0], names, n, where);
    const Index j = resolve_index(e[1], names, n, where);
    const Index k = resolve_index(e[2], names, n, where);
    if (!seen.emplace(i, j, k).second) throw ParseError(where + ": duplicate entry");
    entries.push_back({i, j, k, parse_value(e[3], where)});
    explicit_pairs.emplace(i, j);
  }
  for (const auto& e : entries) {
    a.set_sc(e.i, e.j, e.k, e.v);
    if (kind == AlgebraKind::lie && e.i != e.j && !explicit_pairs.count({e.j, e.i})) a.set_sc(e.j, e.i, e.k, -e.v);
  }
  return a;
}

Algebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

std::string algebra_to_json(const Algebra& a, const std::string& name) {
  json doc = json::object();
  if (!name.empty()) doc["name"] = name;
  doc["dim"] = a.dim();
  doc["kind"] = to_string(a.kind());
  doc["basis"] = a.names();
  json entries = json::array();
  for (Index i = 0; i < a.dim(); ++i)
    for (Index j = 0; j < a.dim(); ++j) {
      if (a.is_lie() && j <= i) continue;
      for (Index k = 0; k < a.dim(); ++k)
        if (!a.sc(i, j, k).is_zero()) entries.push_back({a.name(i), a.name(j), a.name(k), a.sc(i, j, k).str()});
    }
  doc["entries"] = entries;
  return doc.dump(1);
}

}  // namespace nilgrade
