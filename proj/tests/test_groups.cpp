#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cob/groups.hpp"
#include "support.hpp"

using namespace cob;
using namespace cob::groups;

namespace {

GroupFunction random_function(Rng& rng, int n) {
  GroupFunction f(n);
  for (auto& v : f) v = rng.complex_normal();
  return f;
}

std::vector<int> sorted_dims(const IrrepCatalog& cat) {
  auto d = cat.dimensions();
  std::sort(d.begin(), d.end());
  return d;
}

// (f*g)(s) by the double sum over pairs t·u = s.
GroupFunction convolve_by_pairs(const FiniteGroup& g, const GroupFunction& f, const GroupFunction& h) {
  GroupFunction out(g.order(), 0.0);
  for (int t = 0; t < g.order(); ++t)
    for (int u = 0; u < g.order(); ++u) out[g.mul(t, u)] += f[t] * h[u] / static_cast<double>(g.order());
  return out;
}

}  // namespace

TEST_CASE("every catalog entry validates") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const IrrepCatalog cat = catalog(name);
    const auto v = validate(cat.group(), cat.irreps());
    CHECK(v.pass);
    CHECK(v.homomorphism_err <= 1e-12);
    CHECK(v.unitarity_err <= 1e-12);
    CHECK(v.irreducibility_err <= 1e-10);
    CHECK(v.orthogonality_err <= 1e-10);
    CHECK(v.dimension_sum == cat.group().order());
  }
}

TEST_CASE("catalog shapes") {
  CHECK(sorted_dims(catalog("cyclic:4")) == std::vector<int>{1, 1, 1, 1});
  CHECK(sorted_dims(catalog("S3")) == std::vector<int>{1, 1, 2});
  CHECK(sorted_dims(catalog("D4")) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(sorted_dims(catalog("Q8")) == std::vector<int>{1, 1, 1, 1, 2});
  CHECK(catalog("cyclic:12").group().order() == 12);

  const IrrepCatalog c4 = catalog("cyclic:4");
  const Complex i(0.0, 1.0);
  for (int k = 0; k < 4; ++k) {
    for (int t = 0; t < 4; ++t) CHECK(c4.irreps()[k].matrices[t](0, 0) == std::pow(i, k * t));
  }

  // Q8 and D4 share their dimensions but not their structure: count the
  // elements of order 2.
  auto involutions = [](const FiniteGroup& g) {
    int count = 0;
    for (int s = 0; s < g.order(); ++s) count += (s != g.identity() && g.mul(s, s) == g.identity()) ? 1 : 0;
    return count;
  };
  CHECK(involutions(catalog("Q8").group()) == 1);
  CHECK(involutions(catalog("D4").group()) == 5);
  CHECK(involutions(catalog("S3").group()) == 3);

  for (const char* bad : {"cyclic:0", "cyclic:13", "cyclic:x", "S4", ""}) CHECK_THROWS_AS(catalog(bad), DomainError);
}

TEST_CASE("group and catalog construction errors") {
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {0, 1}}), DomainError);
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 2}}), DomainError);
  CHECK_THROWS_AS(FiniteGroup({}), DomainError);
  // A Latin square that is not associative.
  CHECK_THROWS_AS(FiniteGroup({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}), DomainError);
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 0}}, {"e"}), DomainError);

  const IrrepCatalog s3 = catalog("S3");
  std::vector<Irrep> missing(s3.irreps().begin(), s3.irreps().end() - 1);
  CHECK_THROWS_AS(IrrepCatalog(s3.group(), missing), DomainError);
  std::vector<Irrep> doubled = s3.irreps();
  doubled[2] = doubled[0];
  CHECK_FALSE(validate(s3.group(), doubled).pass);
  std::vector<Irrep> scaled = s3.irreps();
  for (auto& m : scaled[2].matrices) m *= 1.01;
  CHECK(validate(s3.group(), scaled).unitarity_err > 1e-3);
}

TEST_CASE("Fourier transform") {
  for (const auto& name : catalog_names()) {
    const IrrepCatalog cat = catalog(name);
    const auto& g = cat.group();
    const GroupFunction e = delta(g, g.identity(), static_cast<double>(g.order()));
    for (const auto& pi : cat.irreps()) CHECK((fourier(e, pi) - CMatrix::Identity(pi.dim, pi.dim)).norm() == 0.0);
  }
  const IrrepCatalog c2 = catalog("cyclic:2");
  const GroupFunction a = delta(c2.group(), 1);
  CHECK(fourier(a, c2.irreps()[0])(0, 0) == Complex(0.5));
  CHECK(fourier(a, c2.irreps()[1])(0, 0) == Complex(-0.5));
  CHECK_THROWS_AS(fourier(GroupFunction(3), c2.irreps()[0]), ShapeError);
}

TEST_CASE("convolution and the reversal law") {
  Rng rng(1);
  for (const auto& name : catalog_names()) {
    const IrrepCatalog cat = catalog(name);
    const auto& g = cat.group();
    const GroupFunction f = random_function(rng, g.order());
    const GroupFunction h = random_function(rng, g.order());
    const GroupFunction fh = convolve(g, f, h);
    const GroupFunction oracle = convolve_by_pairs(g, f, h);
    for (int s = 0; s < g.order(); ++s) CHECK(std::abs(fh[s] - oracle[s]) <= 1e-12);
    for (const auto& pi : cat.irreps()) {
      CHECK((fourier(fh, pi) - fourier(h, pi) * fourier(f, pi)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("convolutor matrices") {
  Rng rng(2);
  SUBCASE("identity and shifts") {
    const IrrepCatalog c3 = catalog("cyclic:3");
    const auto& g = c3.group();
    CHECK((convolutor_matrices(g, delta(g, 0, 3.0), delta(g, 0, 3.0)).left - CMatrix::Identity(3, 3)).norm() == 0.0);
    const CMatrix shift = convolutor_matrices(g, delta(g, 1, 3.0), constant(g, 0.0)).left;
    CMatrix expected = CMatrix::Zero(3, 3);
    for (int s = 0; s < 3; ++s) expected((s + 1) % 3, s) = 1.0;
    CHECK((shift - expected).norm() == 0.0);
  }
  SUBCASE("left and right convolutions commute and act as convolution") {
    for (const char* name : {"S3", "D4", "Q8", "cyclic:6"}) {
      const IrrepCatalog cat = catalog(name);
      const auto& g = cat.group();
      const GroupFunction f = random_function(rng, g.order());
      const GroupFunction h = random_function(rng, g.order());
      const GroupFunction x = random_function(rng, g.order());
      const Convolutors c = convolutor_matrices(g, f, h);
      CHECK((c.left * c.right - c.right * c.left).cwiseAbs().maxCoeff() <= 1e-12);
      const CVector xv = Eigen::Map<const CVector>(x.data(), g.order());
      const GroupFunction fx = convolve(g, f, x);
      const GroupFunction xh = convolve(g, x, h);
      const CVector lx = c.left * xv;
      const CVector rx = c.right * xv;
      for (int s = 0; s < g.order(); ++s) {
        CHECK(std::abs(lx(s) - fx[s]) <= 1e-12);
        CHECK(std::abs(rx(s) - xh[s]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("Peter-Weyl decomposition") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const IrrepCatalog cat = catalog(name);
    const CMatrix u = peter_weyl_unitary(cat);
    const int n = cat.group().order();
    CHECK((u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(peter_weyl_pattern_error(cat) <= 1e-10);
  }
  SUBCASE("cyclic groups give a Fourier matrix") {
    const IrrepCatalog c5 = catalog("cyclic:5");
    const CMatrix u = peter_weyl_unitary(c5);
    for (int t = 0; t < 5; ++t)
      for (int k = 0; k < 5; ++k) CHECK(std::abs(u(t, k) - std::polar(1.0 / std::sqrt(5.0), -2.0 * M_PI * k * t / 5.0)) <= 1e-12);
  }
  SUBCASE("S3 pattern has the 2-dim block twice") {
    const IrrepCatalog s3 = catalog("S3");
    const auto& g = s3.group();
    const CMatrix u = peter_weyl_unitary(s3);
    for (int t = 0; t < 6; ++t) {
      const CMatrix shift = convolutor_matrices(g, delta(g, t, 6.0), constant(g, 0.0)).left;
      const CMatrix b = u.adjoint() * shift * u;
      const CMatrix& two = s3.irreps()[2].matrices[t];
      CHECK((b.block(2, 2, 2, 2) - two).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((b.block(4, 4, 2, 2) - two).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(b.block(2, 4, 2, 2).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("group multiplier norms") {
  Rng rng(3);
  SUBCASE("identity multiplier gives the largest dimension") {
    for (const auto& name : catalog_names()) {
      const IrrepCatalog cat = catalog(name);
      const auto& g = cat.group();
      const GroupFunction e = delta(g, g.identity(), static_cast<double>(g.order()));
      const auto r = group_multiplier_cob(e, e, cat, false);
      CHECK(r.formula_value == identity_cob(cat));
      CHECK(r.block_structure_err <= 1e-12);
    }
    CHECK(identity_cob(catalog("cyclic:7")) == 1.0);
    CHECK(identity_cob(catalog("S3")) == 2.0);
    CHECK(identity_cob(catalog("D4")) == 2.0);
    CHECK(identity_cob(catalog("Q8")) == 2.0);
  }
  SUBCASE("abelian case reduces to Fourier coefficients") {
    const IrrepCatalog c6 = catalog("cyclic:6");
    const GroupFunction f = random_function(rng, 6);
    const GroupFunction h = random_function(rng, 6);
    double expected = 0.0;
    for (const auto& pi : c6.irreps()) expected = std::max(expected, std::abs(fourier(f, pi)(0, 0) * fourier(h, pi)(0, 0)));
    CHECK(group_multiplier_cob(f, h, c6, false).formula_value == doctest::Approx(expected).epsilon(1e-13));
  }
  SUBCASE("formula against the per-block SDP") {
    for (const char* name : {"S3", "cyclic:4", "Q8"}) {
      const IrrepCatalog cat = catalog(name);
      for (int rep = 0; rep < 3; ++rep) {
        const GroupFunction f = random_function(rng, cat.group().order());
        const GroupFunction h = random_function(rng, cat.group().order());
        const auto r = group_multiplier_cob(f, h, cat);
        CHECK(r.pass);
        CHECK(r.block_structure_err <= 1e-10);
        CHECK(r.max_block_discrepancy <= 1e-4);
        REQUIRE(r.per_block.size() == cat.irreps().size());
        double best = 0.0;
        for (const auto& b : r.per_block) {
          const auto& pi = cat.irreps()[b.irrep];
          CHECK(b.formula == doctest::Approx(hs_norm(fourier(f, pi)) * hs_norm(fourier(h, pi))).epsilon(1e-12));
          best = std::max(best, b.formula);
        }
        CHECK(r.formula_value == best);
      }
    }
  }
  SUBCASE("sandwich engine on small blocks") {
    for (int d = 1; d <= 3; ++d) {
      const CMatrix a = rng.gaussian(d, d);
      const CMatrix b = rng.gaussian(d, d);
      CHECK(std::abs(cob_norm(sandwich(a, b)) - hs_norm(a) * hs_norm(b)) <= 1e-4);
    }
  }
}

TEST_CASE("relabelling and representative choice do not change the norms") {
  Rng rng(4);
  for (const char* name : {"S3", "D4", "Q8", "cyclic:5"}) {
    const IrrepCatalog cat = catalog(name);
    const int n = cat.group().order();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::reverse(perm.begin(), perm.end());
    std::rotate(perm.begin(), perm.begin() + 1, perm.end());
    const IrrepCatalog moved = relabel(cat, perm);
    CHECK(identity_cob(moved) == identity_cob(cat));
    CHECK(moved.group().identity() == perm[cat.group().identity()]);

    const GroupFunction f = random_function(rng, n);
    const GroupFunction h = random_function(rng, n);
    GroupFunction f2(n);
    GroupFunction h2(n);
    for (int s = 0; s < n; ++s) {
      f2[perm[s]] = f[s];
      h2[perm[s]] = h[s];
    }
    const double base = group_multiplier_cob(f, h, cat, false).formula_value;
    CHECK(group_multiplier_cob(f2, h2, moved, false).formula_value == doctest::Approx(base).epsilon(1e-12));

    std::vector<Irrep> conj;
    for (const auto& pi : cat.irreps()) {
      const CMatrix u = rng.unitary(pi.dim);
      Irrep q{pi.dim, {}};
      for (const auto& m : pi.matrices) q.matrices.push_back(u * m * u.adjoint());
      conj.push_back(q);
    }
    const IrrepCatalog rotated(cat.group(), conj);
    CHECK(group_multiplier_cob(f, h, rotated, false).formula_value == doctest::Approx(base).epsilon(1e-12));
    CHECK(peter_weyl_pattern_error(rotated) <= 1e-10);
  }
  CHECK_THROWS_AS(relabel(catalog("S3"), {0, 1}), DomainError);
}

TEST_CASE("catalog files round-trip") {
  for (const char* name : {"S3", "Q8", "cyclic:3"}) {
    const IrrepCatalog cat = catalog(name);
    std::stringstream ss;
    write_catalog(ss, cat);
    const IrrepCatalog back = read_catalog(ss);
    CHECK(back.group().table() == cat.group().table());
    REQUIRE(back.irreps().size() == cat.irreps().size());
    for (std::size_t k = 0; k < cat.irreps().size(); ++k)
      for (int t = 0; t < cat.group().order(); ++t)
        CHECK((back.irreps()[k].matrices[t] - cat.irreps()[k].matrices[t]).norm() == 0.0);
  }
  std::stringstream bad("order 2\n0 1\n1 0\nirrep 1\n1 0\n");
  CHECK_THROWS_AS(read_catalog(bad), DomainError);
  std::stringstream no_header("2\n");
  CHECK_THROWS_AS(read_catalog(no_header), DomainError);
}

TEST_CASE("Kesten equality") {
  for (const auto& name : catalog_names()) {
    const IrrepCatalog cat = catalog(name);
    const auto& g = cat.group();
    const auto id = kesten_check(g, delta(g, g.identity()));
    CHECK(id.l1_value == 1.0);
    CHECK(id.matrix_norm == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((translation_modulus_matrix(g, delta(g, g.identity())) - CMatrix::Identity(g.order(), g.order())).norm() == 0.0);
    const auto ones = kesten_check(g, constant(g, 1.0));
    CHECK(ones.l1_value == g.order());
    CHECK(ones.matrix_norm == doctest::Approx(g.order()).epsilon(1e-14));
    CHECK(ones.pass);
  }
  Rng rng(5);
  const IrrepCatalog s3 = catalog("S3");
  for (int rep = 0; rep < 20; ++rep) {
    const GroupFunction f = random_function(rng, 6);
    const auto k = kesten_check(s3.group(), f);
    CHECK(k.pass);
    CHECK(k.matrix_norm == doctest::Approx(testing::eigen_operator_norm(translation_modulus_matrix(s3.group(), f))).epsilon(1e-10));
  }
  CHECK_THROWS_AS(kesten_check(s3.group(), GroupFunction(4)), ShapeError);
}

TEST_CASE("constant symbol: Schur against Herz-Schur") {
  const std::pair<const char*, std::pair<double, double>> cases[] = {
      {"cyclic:4", {4.0, 1.0}}, {"S3", {6.0, 2.0}}, {"Q8", {8.0, 2.0}}, {"D4", {8.0, 2.0}}};
  for (const auto& [name, expected] : cases) {
    const auto r = herz_schur_vs_schur_report(catalog(name));
    CHECK(r.schur_cob == expected.first);
    CHECK(r.herz_schur_cob == expected.second);
    CHECK(r.ratio == expected.first / expected.second);
  }
}
