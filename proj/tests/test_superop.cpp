#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cob/superop.hpp"
#include "support.hpp"

using namespace cob;

namespace {

double choi_distance(const SuperOp& a, const SuperOp& b) { return (a.choi() - b.choi()).cwiseAbs().maxCoeff(); }

SuperOp random_map(std::uint64_t seed, int in, int out) {
  return SuperOp(in, out, testing::gaussian(seed, in * out, in * out));
}

}  // namespace

TEST_CASE("Choi matrix read-back") {
  const SuperOp phi = random_map(1, 3, 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK((phi.apply(matrix_unit(3, i, j)) - phi.choi().block(i * 2, j * 2, 2, 2)).norm() == 0.0);
      CHECK((phi.image_of_unit(i, j) - phi.choi().block(i * 2, j * 2, 2, 2)).norm() == 0.0);
    }
  }
  CHECK_THROWS_AS(SuperOp(2, 2, CMatrix::Zero(3, 3)), ShapeError);
  CHECK_THROWS_AS(SuperOp(0, 2, CMatrix::Zero(0, 0)), DomainError);
  CHECK_THROWS_AS(phi.apply(CMatrix::Zero(2, 2)), ShapeError);
}

TEST_CASE("basic maps act as expected") {
  const CMatrix x = testing::gaussian(2, 3, 3);
  CHECK((identity_map(3).apply(x) - x).norm() == 0.0);

  CMatrix m(2, 2);
  m << 1, 2, 3, 4;
  CMatrix mt(2, 2);
  mt << 1, 3, 2, 4;
  CHECK((transpose_map(2).apply(m) - mt).norm() == 0.0);

  const CMatrix phi = testing::gaussian(3, 3, 3);
  CHECK((from_schur(phi).apply(x) - phi.cwiseProduct(x)).norm() == 0.0);

  const CMatrix a = testing::gaussian(4, 3, 3);
  const CMatrix b = testing::gaussian(5, 3, 3);
  CHECK((sandwich(a, b).apply(x) - a * x * b).norm() <= 1e-12);
  CHECK(choi_distance(sandwich(identity(3), identity(3)), identity_map(3)) == 0.0);
  CHECK_THROWS_AS(sandwich(a, CMatrix::Zero(2, 2)), ShapeError);
  CHECK_THROWS_AS(from_schur(CMatrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("amplification acts blockwise") {
  const SuperOp phi = random_map(6, 2, 2);
  const CMatrix x = testing::gaussian(7, 6, 6);
  const CMatrix y = phi.apply_amplified(x, 3);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      CHECK((y.block(a * 2, b * 2, 2, 2) - phi.apply(x.block(a * 2, b * 2, 2, 2))).norm() <= 1e-13);
    }
  }
  CHECK_THROWS_AS(phi.apply_amplified(x, 2), ShapeError);
}

TEST_CASE("composition, direct sums and adjoints") {
  CHECK(choi_distance(compose(transpose_map(3), transpose_map(3)), identity_map(3)) == 0.0);

  const SuperOp f = random_map(8, 2, 3);
  const SuperOp g = random_map(9, 3, 2);
  const CMatrix x = testing::gaussian(10, 2, 2);
  CHECK((compose(g, f).apply(x) - g.apply(f.apply(x))).norm() <= 1e-12);
  CHECK_THROWS_AS(compose(f, f), ShapeError);

  SUBCASE("hs_adjoint satisfies the defining identity") {
    const SuperOp adj = hs_adjoint(f);
    CHECK(adj.in_dim() == 3);
    CHECK(adj.out_dim() == 2);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const CMatrix p = testing::gaussian(20 + s, 2, 2);
      const CMatrix q = testing::gaussian(30 + s, 3, 3);
      CHECK(std::abs(hs_inner(q, f.apply(p)) - hs_inner(adj.apply(q), p)) <= 1e-12);
    }
    CHECK(choi_distance(hs_adjoint(adj), f) == 0.0);
  }
  SUBCASE("adjoint of a sandwich") {
    const CMatrix a = testing::gaussian(11, 3, 3);
    const CMatrix b = testing::gaussian(12, 3, 3);
    CHECK(choi_distance(hs_adjoint(sandwich(a, b)), sandwich(a.adjoint(), b.adjoint())) <= 1e-14);
  }
  SUBCASE("direct sum acts on diagonal blocks") {
    const SuperOp s = direct_sum({f, transpose_map(1), identity_map(2)});
    CHECK(s.in_dim() == 5);
    CHECK(s.out_dim() == 6);
    const CMatrix big = testing::gaussian(13, 5, 5);
    const CMatrix y = s.apply(big);
    CHECK((y.block(0, 0, 3, 3) - f.apply(big.block(0, 0, 2, 2))).norm() <= 1e-12);
    CHECK(y(3, 3) == big(2, 2));
    CHECK((y.block(4, 4, 2, 2) - big.block(3, 3, 2, 2)).norm() == 0.0);
    CHECK(y.block(0, 3, 3, 3).norm() == 0.0);
    CHECK_THROWS_AS(direct_sum({}), DomainError);
  }
}

TEST_CASE("cb norms of standard maps") {
  CHECK(cb_norm(identity_map(3)) == doctest::Approx(1.0).epsilon(1e-6));
  for (int n : {2, 3, 4}) CHECK(cb_norm(transpose_map(n)) == doctest::Approx(n).epsilon(1e-6));
  CHECK(cb_norm(from_schur(CMatrix::Ones(3, 3))) == doctest::Approx(1.0).epsilon(1e-6));
  const NormCertificate c = cb_norm_certified(transpose_map(2));
  CHECK(c.lower <= c.value + 1e-12);
  CHECK(c.value <= c.upper + 1e-12);
  CHECK(c.upper - c.lower <= 1e-6);
}

TEST_CASE("cob norms of standard maps") {
  for (int n : {2, 3}) {
    CHECK(cob_norm(transpose_map(n)) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(cob_norm(identity_map(n)) == doctest::Approx(n).epsilon(1e-6));
  }
  Rng rng(14);
  for (int rep = 0; rep < 3; ++rep) {
    const CMatrix a = rng.gaussian(3, 3);
    const CMatrix b = rng.gaussian(3, 3);
    CHECK(std::abs(cob_norm(sandwich(a, b)) - hs_norm(a) * hs_norm(b)) <= 1e-4);
  }
}

TEST_CASE("adjoint invariance through the trace-class formulation") {
  Rng rng(15);
  for (int rep = 0; rep < 4; ++rep) {
    const SuperOp maps[] = {from_schur(rng.gaussian(3, 3)), sandwich(rng.gaussian(2, 2), rng.gaussian(2, 2))};
    for (const auto& m : maps) CHECK(std::abs(cob_norm(m) - cob_norm_trace_class(hs_adjoint(m))) <= 1e-4);
  }
}

TEST_CASE("submultiplicativity of the cb norm") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const SuperOp f = random_map(40 + s, 2, 2);
    const SuperOp g = random_map(50 + s, 2, 2);
    CHECK(cb_norm(compose(f, g)) <= cb_norm(f) * cb_norm(g) + 1e-6);
  }
}

TEST_CASE("direct sums take the largest norm") {
  Rng rng(16);
  const SuperOp a = from_schur(rng.gaussian(2, 2));
  const SuperOp b = sandwich(rng.gaussian(2, 2), rng.gaussian(2, 2));
  const SuperOp c = transpose_map(1);
  const SuperOp s = direct_sum({a, b, c});
  CHECK(cb_norm(s) == doctest::Approx(std::max({cb_norm(a), cb_norm(b), cb_norm(c)})).epsilon(1e-6));
  CHECK(cob_norm(s) == doctest::Approx(std::max({cob_norm(a), cob_norm(b), cob_norm(c)})).epsilon(1e-6));
}

TEST_CASE("amplified ratios and the sampler") {
  SUBCASE("identity") {
    Rng rng(17);
    for (int k : {1, 2, 3}) {
      CHECK(amplified_ratio(identity_map(2), rng.gaussian(2 * k, 2 * k), k) == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(amplified_ratio(identity_map(2), CMatrix::Zero(4, 4), 2) == 0.0);
  }
  SUBCASE("transposition witness") {
    for (int n : {2, 3}) {
      CMatrix swap = CMatrix::Zero(n * n, n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) swap.block(i * n, j * n, n, n) = matrix_unit(n, j, i);
      CHECK(amplified_ratio(transpose_map(n), swap, n) >= n - 1e-9);
    }
  }
  SUBCASE("sampler stays below the SDP value") {
    Rng rng(18);
    SamplerOptions o;
    o.trials = 10;
    o.ascent_steps = 100;
    for (int n : {2, 3}) {
      for (int rep = 0; rep < 3; ++rep) {
        o.seed = 100 * n + rep;
        const SuperOp maps[] = {from_schur(rng.gaussian(n, n)), sandwich(rng.gaussian(n, n), rng.gaussian(n, n)),
                                transpose_map(n)};
        for (const auto& m : maps) {
          const double lower = cb_lower_bound_sampler(m, n, o);
          const double sdp = cb_norm(m);
          CHECK(lower <= sdp + 1e-6);
          CHECK(lower >= 0.5 * sdp);
        }
      }
    }
    CHECK(cb_lower_bound_sampler(transpose_map(2), 2, o) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(cb_lower_bound_sampler(transpose_map(2), 0, o), DomainError);
  }
}

TEST_CASE("diamond SDP for the transposition on M2") {
  const auto prob = diamond_sdp(hs_adjoint(transpose_map(2)));
  CHECK(prob.blocks == std::vector<int>{8, 2, 2});
  CHECK(-sdp::solve(prob, 1e-8).value() == doctest::Approx(2.0).epsilon(1e-7));
}
