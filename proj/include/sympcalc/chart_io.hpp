// Chart files: JSON with expression-string entries.
//
//   {
//     "name": "...", "n": 2,
//     "coords": ["x1","y1","x2","y2"],
//     "J": [["0","1",...], ...],                       2n x 2n expressions
//     "connection": {"christoffel": [{"upper": c, "lower1": a,
//                                     "lower2": b, "expr": "..."}]}
//                   or {"metric": [["...", ...], ...]} (Levi-Civita derived),
//     "base_point": ["0", "0", ...]
//   }
//
// Indices are 0-based.  Expressions follow the scalar grammar.

#pragma once

#include <string>

#include "sympcalc/geometry.hpp"

namespace sympcalc {

ChartBundle load_chart_file(const std::string& path);
ChartBundle load_chart_json(const std::string& json_text);

// Serialization; metric charts carry the metric, others the sparse
// Christoffel list.
std::string chart_to_json(const ChartBundle& cb);

// Resolve "builtin:flat" / "builtin:fubini_study" (with n) or a file path.
ChartBundle resolve_chart(const std::string& spec, int n);

}  // namespace sympcalc
