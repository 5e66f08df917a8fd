#pragma once

#include "nilgrade/algebra.hpp"

#include <string>

namespace nilgrade {

/// Algebra file (JSON):
///   {"dim": 3, "kind": "lie", "basis": ["X1","X2","X3"], "entries": [[1, 2, 3, "1"]]}
/// Entry indices are 1-based integers or basis names; values are exact rational strings.
/// For kind "lie" only i < j entries are needed; the antisymmetric partner is filled in unless
/// given explicitly. Optional "name" and "description" strings are ignored.
/// Throws ParseError with an entry diagnostic.
Algebra parse_algebra(const std::string& json_text);
/// Throws ParseError when the file cannot be read or parsed.
Algebra load_algebra(const std::string& path);

/// Serializes with i < j entries only for Lie algebras; deterministic.
std::string algebra_to_json(const Algebra& a, const std::string& name = "");

}  // namespace nilgrade
