#include "cob/groups.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cob/schur.hpp"

namespace cob::groups {

namespace {

constexpr double kExactTol = 1e-12;
constexpr double kCharacterTol = 1e-10;

double max_dev(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  for (int s = 0; s < n; ++s) out.push_back(std::to_string(s));
  return out;
}

Irrep scalar_irrep(const std::vector<Complex>& values) {
  Irrep r;
  r.dim = 1;
  for (const auto& v : values) r.matrices.push_back(CMatrix::Constant(1, 1, v));
  return r;
}

CMatrix rotation(double angle) {
  CMatrix r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

IrrepCatalog make_cyclic(int k) {
  std::vector<std::vector<int>> mult(k, std::vector<int>(k));
  std::vector<std::string> labels;
  for (int a = 0; a < k; ++a) {
    labels.push_back(a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a)));
    for (int b = 0; b < k; ++b) mult[a][b] = (a + b) % k;
  }
  std::vector<Irrep> irreps;
  for (int m = 0; m < k; ++m) {
    std::vector<Complex> chi;
    for (int a = 0; a < k; ++a) {
      // Reduce the exponent first so quarter turns come out exact.
      const int e = (m * a) % k;
      if (4 * e % k == 0) {
        static const Complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        chi.push_back(quarter[(4 * e / k) % 4]);
      } else {
        chi.push_back(std::polar(1.0, 2.0 * std::numbers::pi * e / k));
      }
    }
    irreps.push_back(scalar_irrep(chi));
  }
  return IrrepCatalog(FiniteGroup(mult, labels), irreps);
}

// D_k = ⟨r, s | r^k = s² = 1, s r s = r⁻¹⟩, element r^a s^b stored at a + k·b.
IrrepCatalog make_dihedral(int k) {
  const int n = 2 * k;
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    const int a1 = x % k;
    const int b1 = x / k;
    std::string lab = a1 == 0 ? "" : (a1 == 1 ? "r" : "r^" + std::to_string(a1));
    if (b1) lab += "s";
    labels[x] = lab.empty() ? "e" : lab;
    for (int y = 0; y < n; ++y) {
      const int a2 = y % k;
      const int b2 = y / k;
      const int a = ((a1 + (b1 ? -a2 : a2)) % k + k) % k;
      mult[x][y] = a + k * (b1 ^ b2);
    }
  }
  std::vector<Irrep> irreps;
  auto one_dim = [&](int rot_sign, int ref_sign) {
    std::vector<Complex> chi(n);
    for (int x = 0; x < n; ++x) {
      const int a = x % k;
      const int b = x / k;
      chi[x] = ((a % 2 && rot_sign < 0) ? -1.0 : 1.0) * ((b && ref_sign < 0) ? -1.0 : 1.0);
    }
    irreps.push_back(scalar_irrep(chi));
  };
  one_dim(+1, +1);
  one_dim(+1, -1);
  if (k % 2 == 0) {
    one_dim(-1, +1);
    one_dim(-1, -1);
  }
  CMatrix refl(2, 2);
  refl << 1, 0, 0, -1;
  for (int h = 1; 2 * h < k; ++h) {
    Irrep r;
    r.dim = 2;
    for (int x = 0; x < n; ++x) {
      CMatrix m = rotation(2.0 * std::numbers::pi * h * (x % k) / k);
      if (x / k) m = m * refl;
      r.matrices.push_back(m);
    }
    irreps.push_back(r);
  }
  return IrrepCatalog(FiniteGroup(mult, labels), irreps);
}

// Q8 element i^a j^b stored at a + 4b, with j i = i⁻¹ j and j² = i².
IrrepCatalog make_quaternion() {
  const int n = 8;
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  const std::vector<std::string> labels = {"1", "i", "-1", "-i", "j", "k", "-j", "-k"};
  for (int x = 0; x < n; ++x) {
    const int a1 = x % 4;
    const int b1 = x / 4;
    for (int y = 0; y < n; ++y) {
      const int a2 = y % 4;
      const int b2 = y / 4;
      int a = a1 + (b1 ? -a2 : a2) + ((b1 && b2) ? 2 : 0);
      a = ((a % 4) + 4) % 4;
      mult[x][y] = a + 4 * (b1 ^ b2);
    }
  }
  std::vector<Irrep> irreps;
  for (int ei : {1, -1}) {
    for (int ej : {1, -1}) {
      std::vector<Complex> chi(n);
      for (int x = 0; x < n; ++x) {
        const int a = x % 4;
        const int b = x / 4;
        chi[x] = ((a % 2 && ei < 0) ? -1.0 : 1.0) * ((b && ej < 0) ? -1.0 : 1.0);
      }
      irreps.push_back(scalar_irrep(chi));
    }
  }
  CMatrix qi(2, 2);
  qi << Complex(0, 1), 0, 0, Complex(0, -1);
  CMatrix qj(2, 2);
  qj << 0, 1, -1, 0;
  Irrep two;
  two.dim = 2;
  for (int x = 0; x < n; ++x) {
    CMatrix m = CMatrix::Identity(2, 2);
    for (int s = 0; s < x % 4; ++s) m = m * qi;
    if (x / 4) m = m * qj;
    two.matrices.push_back(m);
  }
  irreps.push_back(two);
  return IrrepCatalog(FiniteGroup(mult, labels), irreps);
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> mult, std::vector<std::string> labels)
    : mult_(std::move(mult)), labels_(std::move(labels)) {
  const int n = order();
  if (n < 1) throw DomainError("group: empty multiplication table");
  if (labels_.empty()) labels_ = default_labels(n);
  if (static_cast<int>(labels_.size()) != n) throw DomainError("group: label count differs from order");
  for (const auto& row : mult_) {
    if (static_cast<int>(row.size()) != n) throw DomainError("group: table is not square");
  }
  for (int s = 0; s < n; ++s) {
    std::vector<bool> seen_row(n, false);
    std::vector<bool> seen_col(n, false);
    for (int t = 0; t < n; ++t) {
      const int r = mult_[s][t];
      const int c = mult_[t][s];
      if (r < 0 || r >= n || c < 0 || c >= n) throw DomainError("group: table entry out of range");
      if (seen_row[r] || seen_col[c]) throw DomainError("group: table is not a Latin square");
      seen_row[r] = true;
      seen_col[c] = true;
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (mult_[mult_[a][b]][c] != mult_[a][mult_[b][c]]) throw DomainError("group: multiplication is not associative");
      }
    }
  }
  id_ = -1;
  for (int e = 0; e < n && id_ < 0; ++e) {
    bool ok = true;
    for (int s = 0; s < n && ok; ++s) ok = mult_[e][s] == s && mult_[s][e] == s;
    if (ok) id_ = e;
  }
  if (id_ < 0) throw DomainError("group: no identity element");
  inv_.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (mult_[s][t] == id_) inv_[s] = t;
    }
    if (inv_[s] < 0 || mult_[inv_[s]][s] != id_) throw DomainError("group: inverse missing");
  }
}

CatalogValidation validate(const FiniteGroup& g, const std::vector<Irrep>& irreps) {
  CatalogValidation v;
  const int n = g.order();
  std::vector<std::vector<Complex>> chars;
  for (const auto& pi : irreps) {
    if (pi.dim < 1 || static_cast<int>(pi.matrices.size()) != n) throw DomainError("irrep: needs one matrix per element");
    for (const auto& m : pi.matrices) {
      if (m.rows() != pi.dim || m.cols() != pi.dim) throw DomainError("irrep: matrix has the wrong size");
      require_finite(m, "irrep matrix");
    }
    v.dimension_sum += pi.dim * pi.dim;
    for (int s = 0; s < n; ++s) {
      const CMatrix& ps = pi.matrices[s];
      v.unitarity_err = std::max(v.unitarity_err, max_dev(ps.adjoint() * ps, CMatrix::Identity(pi.dim, pi.dim)));
      for (int t = 0; t < n; ++t) {
        v.homomorphism_err = std::max(v.homomorphism_err, max_dev(pi.matrices[g.mul(s, t)], ps * pi.matrices[t]));
      }
    }
    std::vector<Complex> chi(n);
    for (int t = 0; t < n; ++t) chi[t] = pi.character(t);
    chars.push_back(chi);
  }
  for (std::size_t a = 0; a < chars.size(); ++a) {
    for (std::size_t b = a; b < chars.size(); ++b) {
      Complex acc = 0.0;
      for (int t = 0; t < n; ++t) acc += chars[a][t] * std::conj(chars[b][t]);
      acc /= static_cast<double>(n);
      if (a == b) {
        v.irreducibility_err = std::max(v.irreducibility_err, std::abs(acc - 1.0));
      } else {
        v.orthogonality_err = std::max(v.orthogonality_err, std::abs(acc));
      }
    }
  }
  v.pass = v.homomorphism_err <= kExactTol && v.unitarity_err <= kExactTol &&
           v.irreducibility_err <= kCharacterTol && v.orthogonality_err <= kCharacterTol && v.dimension_sum == n;
  return v;
}

IrrepCatalog::IrrepCatalog(FiniteGroup group, std::vector<Irrep> irreps)
    : group_(std::move(group)), irreps_(std::move(irreps)) {
  const CatalogValidation v = validate(group_, irreps_);
  if (!v.pass) {
    std::ostringstream os;
    os << "irrep catalog failed validation (homomorphism " << v.homomorphism_err << ", unitarity "
       << v.unitarity_err << ", irreducibility " << v.irreducibility_err << ", orthogonality "
       << v.orthogonality_err << ", sum d^2 = " << v.dimension_sum << " vs N = " << group_.order() << ")";
    throw DomainError(os.str());
  }
}

std::vector<int> IrrepCatalog::dimensions() const {
  std::vector<int> out;
  for (const auto& pi : irreps_) out.push_back(pi.dim);
  return out;
}

IrrepCatalog catalog(const std::string& name) {
  if (name.rfind("cyclic:", 0) == 0) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(name.substr(7), &used);
      if (used != name.size() - 7) k = 0;
    } catch (const std::exception&) {
      k = 0;
    }
    if (k < 1 || k > 12) throw DomainError("catalog: cyclic order must be between 1 and 12");
    return make_cyclic(k);
  }
  if (name == "S3") return make_dihedral(3);
  if (name == "D4") return make_dihedral(4);
  if (name == "Q8") return make_quaternion();
  throw DomainError("catalog: unknown group '" + name + "'");
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (int k = 1; k <= 12; ++k) out.push_back("cyclic:" + std::to_string(k));
  out.insert(out.end(), {"S3", "D4", "Q8"});
  return out;
}

IrrepCatalog relabel(const IrrepCatalog& cat, const std::vector<int>& perm) {
  const FiniteGroup& g = cat.group();
  const int n = g.order();
  if (static_cast<int>(perm.size()) != n) throw DomainError("relabel: permutation length differs from order");
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int s = 0; s < n; ++s) {
    labels[perm[s]] = g.label(s);
    for (int t = 0; t < n; ++t) mult[perm[s]][perm[t]] = perm[g.mul(s, t)];
  }
  std::vector<Irrep> irreps;
  for (const auto& pi : cat.irreps()) {
    Irrep r;
    r.dim = pi.dim;
    r.matrices.resize(n);
    for (int s = 0; s < n; ++s) r.matrices[perm[s]] = pi.matrices[s];
    irreps.push_back(r);
  }
  return IrrepCatalog(FiniteGroup(mult, labels), irreps);
}

IrrepCatalog read_catalog(std::istream& is) {
  std::stringstream clean;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    clean << (hash == std::string::npos ? line : line.substr(0, hash)) << '\n';
  }
  std::string word;
  int n = 0;
  if (!(clean >> word) || word != "order" || !(clean >> n) || n < 1) throw DomainError("group file: expected 'order N'");
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (auto& row : mult) {
    for (auto& v : row) {
      if (!(clean >> v)) throw DomainError("group file: truncated multiplication table");
    }
  }
  FiniteGroup g(mult);
  std::vector<Irrep> irreps;
  while (clean >> word) {
    if (word != "irrep") throw DomainError("group file: expected 'irrep d'");
    Irrep r;
    if (!(clean >> r.dim) || r.dim < 1) throw DomainError("group file: bad irrep dimension");
    for (int t = 0; t < n; ++t) {
      CMatrix m(r.dim, r.dim);
      for (int i = 0; i < r.dim; ++i) {
        for (int j = 0; j < r.dim; ++j) {
          double re = 0;
          double im = 0;
          if (!(clean >> re >> im)) throw DomainError("group file: truncated irrep matrix");
          m(i, j) = Complex(re, im);
        }
      }
      r.matrices.push_back(m);
    }
    irreps.push_back(std::move(r));
  }
  return IrrepCatalog(std::move(g), std::move(irreps));
}

void write_catalog(std::ostream& os, const IrrepCatalog& cat) {
  const FiniteGroup& g = cat.group();
  const int n = g.order();
  const auto old_precision = os.precision();
  os << std::setprecision(17) << "order " << n << '\n';
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) os << (t ? " " : "") << g.mul(s, t);
    os << '\n';
  }
  for (const auto& pi : cat.irreps()) {
    os << "irrep " << pi.dim << '\n';
    for (const auto& m : pi.matrices) {
      for (int i = 0; i < pi.dim; ++i) {
        for (int j = 0; j < pi.dim; ++j) os << (j ? "  " : "") << m(i, j).real() << ' ' << m(i, j).imag();
        os << '\n';
      }
    }
  }
  os.precision(old_precision);
}

GroupFunction delta(const FiniteGroup& g, int t, Complex scale) {
  GroupFunction f(g.order(), 0.0);
  f.at(t) = scale;
  return f;
}

GroupFunction constant(const FiniteGroup& g, Complex value) { return GroupFunction(g.order(), value); }

CMatrix fourier(const GroupFunction& f, const Irrep& pi) {
  if (f.size() != pi.matrices.size()) throw ShapeError("fourier: function and irrep live on different groups");
  const double n = static_cast<double>(f.size());
  CMatrix out = CMatrix::Zero(pi.dim, pi.dim);
  for (std::size_t t = 0; t < f.size(); ++t) {
    if (f[t] != Complex(0.0)) out += (f[t] / n) * pi.matrices[t].adjoint();
  }
  return out;
}

GroupFunction convolve(const FiniteGroup& g, const GroupFunction& f, const GroupFunction& h) {
  const int n = g.order();
  if (static_cast<int>(f.size()) != n || static_cast<int>(h.size()) != n) throw ShapeError("convolve: group mismatch");
  GroupFunction out(n, 0.0);
  for (int s = 0; s < n; ++s) {
    Complex acc = 0.0;
    for (int t = 0; t < n; ++t) acc += f[t] * h[g.mul(g.inv(t), s)];
    out[s] = acc / static_cast<double>(n);
  }
  return out;
}

Convolutors convolutor_matrices(const FiniteGroup& g, const GroupFunction& f, const GroupFunction& h) {
  const int n = g.order();
  if (static_cast<int>(f.size()) != n || static_cast<int>(h.size()) != n) {
    throw ShapeError("convolutor_matrices: group mismatch");
  }
  Convolutors c{CMatrix(n, n), CMatrix(n, n)};
  for (int s = 0; s < n; ++s) {
    for (int u = 0; u < n; ++u) {
      c.left(s, u) = f[g.mul(s, g.inv(u))] / static_cast<double>(n);
      c.right(s, u) = h[g.mul(g.inv(u), s)] / static_cast<double>(n);
    }
  }
  return c;
}

CMatrix peter_weyl_unitary(const IrrepCatalog& cat) {
  const int n = cat.group().order();
  int total = 0;
  for (const auto& pi : cat.irreps()) total += pi.dim * pi.dim;
  if (total != n) throw DomainError("peter_weyl_unitary: catalog is incomplete");
  CMatrix u(n, n);
  int col = 0;
  for (const auto& pi : cat.irreps()) {
    const double w = std::sqrt(static_cast<double>(pi.dim) / n);
    for (int c = 0; c < pi.dim; ++c) {
      for (int k = 0; k < pi.dim; ++k) {
        for (int t = 0; t < n; ++t) u(t, col) = w * std::conj(pi.matrices[t](k, c));
        ++col;
      }
    }
  }
  return u;
}

namespace {

CMatrix block_diagonal(const std::vector<CMatrix>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  CMatrix out = CMatrix::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    out.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return out;
}

}  // namespace

double peter_weyl_pattern_error(const IrrepCatalog& cat) {
  const FiniteGroup& g = cat.group();
  const int n = g.order();
  const CMatrix u = peter_weyl_unitary(cat);
  double err = 0.0;
  for (int t = 0; t < n; ++t) {
    const CMatrix shift = convolutor_matrices(g, delta(g, t, static_cast<double>(n)), constant(g, 0.0)).left;
    std::vector<CMatrix> blocks;
    for (const auto& pi : cat.irreps()) {
      blocks.push_back(kron(CMatrix::Identity(pi.dim, pi.dim), pi.matrices[t]));
    }
    err = std::max(err, max_dev(u.adjoint() * shift * u, block_diagonal(blocks)));
  }
  return err;
}

GroupMultiplierReport group_multiplier_cob(const GroupFunction& f, const GroupFunction& h, const IrrepCatalog& cat,
                                           bool with_sdp, double tol) {
  const FiniteGroup& g = cat.group();
  const int n = g.order();
  GroupMultiplierReport r;

  const Convolutors conv = convolutor_matrices(g, f, h);
  const CMatrix u = peter_weyl_unitary(cat);
  std::vector<CMatrix> expected;
  for (const auto& pi : cat.irreps()) {
    CMatrix a = CMatrix::Zero(pi.dim, pi.dim);
    CMatrix b = CMatrix::Zero(pi.dim, pi.dim);
    for (int t = 0; t < n; ++t) {
      a += (f[t] / static_cast<double>(n)) * pi.matrices[t];
      b += (h[t] / static_cast<double>(n)) * pi.matrices[t].transpose();
    }
    expected.push_back(kron(b, a));
  }
  r.block_structure_err = max_dev(u.adjoint() * conv.left * conv.right * u, block_diagonal(expected));

  const auto& irreps = cat.irreps();
  for (std::size_t k = 0; k < irreps.size(); ++k) {
    BlockReport b;
    b.irrep = static_cast<int>(k);
    b.dim = irreps[k].dim;
    const CMatrix fa = fourier(f, irreps[k]);
    const CMatrix gb = fourier(h, irreps[k]);
    // √(‖f̂‖₂² ‖ĝ‖₂²): the same product, exact when both are identities.
    b.formula = std::sqrt(hs_inner(fa, fa).real() * hs_inner(gb, gb).real());
    if (with_sdp) {
      b.sdp = cob_norm(sandwich(fa, gb), tol);
      r.max_block_discrepancy = std::max(r.max_block_discrepancy, std::abs(b.sdp - b.formula));
    }
    r.formula_value = std::max(r.formula_value, b.formula);
    r.per_block.push_back(b);
  }
  r.pass = r.block_structure_err <= 1e-10 && (!with_sdp || r.max_block_discrepancy <= 1e-4);
  return r;
}

double identity_cob(const IrrepCatalog& cat) {
  int best = 0;
  for (const auto& pi : cat.irreps()) best = std::max(best, pi.dim);
  return static_cast<double>(best);
}

CMatrix translation_modulus_matrix(const FiniteGroup& g, const GroupFunction& f) {
  const int n = g.order();
  if (static_cast<int>(f.size()) != n) throw ShapeError("kesten: function lives on a different group");
  CMatrix a(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) a(s, t) = std::abs(f[g.mul(s, g.inv(t))]);
  }
  return a;
}

KestenReport kesten_check(const FiniteGroup& g, const GroupFunction& f) {
  KestenReport r;
  for (const auto& v : f) r.l1_value += std::abs(v);
  r.matrix_norm = operator_norm(translation_modulus_matrix(g, f));
  r.ratio = r.matrix_norm > 0.0 ? r.l1_value / r.matrix_norm : (r.l1_value == 0.0 ? 1.0 : 0.0);
  r.pass = std::abs(r.l1_value - r.matrix_norm) <= 1e-10 * std::max(r.l1_value, r.matrix_norm);
  return r;
}

HerzSchurComparison herz_schur_vs_schur_report(const IrrepCatalog& cat) {
  const int n = cat.group().order();
  HerzSchurComparison c;
  c.schur_cob = cob_norm_formula(SchurSymbol(CMatrix::Ones(n, n)));
  c.herz_schur_cob = identity_cob(cat);
  c.ratio = c.schur_cob / c.herz_schur_cob;
  return c;
}

}  // namespace cob::groups
