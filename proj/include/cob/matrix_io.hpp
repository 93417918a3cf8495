#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cob/linalg.hpp"

namespace cob {

// Plain-text matrix format shared by symbols, Choi matrices and the CLI:
//
//   <rows> <cols>
//   <row> <col> <re> <im>     one line per nonzero entry, 0-based indices
//
// Lines starting with '#' are comments. Absent entries are zero.

void write_matrix_text(std::ostream& os, const CMatrix& a);
CMatrix read_matrix_text(std::istream& is);

/// {"rows": r, "cols": c, "entries": [[row, col, re, im], ...]}
nlohmann::json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const nlohmann::json& j);

/// Loads a matrix file; `.json` selects the JSON layout, anything else text.
CMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const CMatrix& a);

}  // namespace cob
