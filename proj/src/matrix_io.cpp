#include "cob/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace cob {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void set_entry(CMatrix& a, long r, long c, double re, double im) {
  if (r < 0 || c < 0 || r >= a.rows() || c >= a.cols()) {
    throw ShapeError("matrix entry (" + std::to_string(r) + "," + std::to_string(c) + ") out of range");
  }
  a(r, c) = Complex(re, im);
}

}  // namespace

void write_matrix_text(std::ostream& os, const CMatrix& a) {
  const auto old_precision = os.precision();
  os << a.rows() << ' ' << a.cols() << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == Complex(0.0)) continue;
      os << i << ' ' << j << ' ' << a(i, j).real() << ' ' << a(i, j).imag() << '\n';
    }
  }
  os.precision(old_precision);
}

CMatrix read_matrix_text(std::istream& is) {
  std::string line;
  long rows = -1;
  long cols = -1;
  CMatrix a;
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (rows < 0) {
      if (!(ls >> rows >> cols) || rows < 1 || cols < 1) {
        throw DomainError("matrix text: bad header '" + line + "'");
      }
      a = CMatrix::Zero(rows, cols);
      continue;
    }
    long r = 0;
    long c = 0;
    double re = 0;
    double im = 0;
    if (!(ls >> r >> c >> re >> im)) throw DomainError("matrix text: bad entry line '" + line + "'");
    set_entry(a, r, c, re, im);
  }
  if (rows < 0) throw DomainError("matrix text: missing header");
  require_finite(a, "loaded matrix");
  return a;
}

nlohmann::json matrix_to_json(const CMatrix& a) {
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) == Complex(0.0)) continue;
      entries.push_back({i, j, a(i, j).real(), a(i, j).imag()});
    }
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"entries", entries}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  const long rows = j.at("rows").get<long>();
  const long cols = j.at("cols").get<long>();
  if (rows < 1 || cols < 1) throw DomainError("matrix json: non-positive shape");
  CMatrix a = CMatrix::Zero(rows, cols);
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 4) throw DomainError("matrix json: entries must be [row, col, re, im]");
    set_entry(a, e[0].get<long>(), e[1].get<long>(), e[2].get<double>(), e[3].get<double>());
  }
  require_finite(a, "loaded matrix");
  return a;
}

CMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file '" + path + "'");
  if (ends_with(path, ".json")) return matrix_from_json(nlohmann::json::parse(in));
  return read_matrix_text(in);
}

void save_matrix(const std::string& path, const CMatrix& a) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write matrix file '" + path + "'");
  if (ends_with(path, ".json")) {
    out << matrix_to_json(a).dump(2) << '\n';
  } else {
    write_matrix_text(out, a);
  }
}

}  // namespace cob
