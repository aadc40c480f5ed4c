#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <utility>
#include <vector>

#include "forminv/errors.hpp"
#include "forminv/inversion.hpp"
#include "forminv/parallel.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace forminv;
using namespace forminv::testing;

namespace {

FormalMap univariate_square(int trunc) {
  return make_map(trunc, {{{{2}, "1"}}});
}

}  // namespace

TEST_CASE("expansion terms of the squaring deformation") {
  InverseExpansion e = expand_inverse(univariate_square(12), 4);
  CHECK(e.window() == 12);
  CHECK(e.torder() == 4);
  CHECK(e.term(1)[0].poly() == make_poly(1, {{{2}, "1"}}));
  CHECK(e.term(2)[0].poly() == make_poly(1, {{{3}, "2"}}));
  CHECK(e.term(3)[0].poly() == make_poly(1, {{{4}, "5"}}));
  CHECK(e.term(4)[0].poly() == make_poly(1, {{{5}, "14"}}));
  CHECK_THROWS_AS(e.term(0), DomainError);
  CHECK_THROWS_AS(e.term(5), DomainError);
  CHECK(e.as_tmap().slice(2) == e.term(3));
  CHECK(e.source() == univariate_square(12));
}

TEST_CASE("assembled inverse matches the fixed-point oracle") {
  InverseExpansion e = expand_inverse(univariate_square(8), 8);
  FormalMap g = assemble_inverse(e, q("1"));
  DensePoly h(3, GaussianRational());
  h[2] = q("1");
  DensePoly want = univariate_inverse_oracle(h, 8);
  CHECK(dense_from(g[0]) == want);

  FormalMap g_half = assemble_inverse(e, q("1/2"));
  DensePoly h_half(3, GaussianRational());
  h_half[2] = q("1/2");
  CHECK(dense_from(g_half[0]) == univariate_inverse_oracle(h_half, 8));
}

TEST_CASE("random univariate deformations against the oracle") {
  std::mt19937 rng(41001u);
  for (int it = 0; it < 8; ++it) {
    FormalMap h = random_map(rng, 1, 9, 2, 5, 4);
    InverseExpansion e = expand_inverse(h, 9);
    FormalMap g = assemble_inverse(e, q("1"));
    CHECK(dense_from(g[0]) == univariate_inverse_oracle(dense_from(h[0]), 9));
  }
}

TEST_CASE("a shear in two variables inverts in one step") {
  FormalMap h = make_map(6, {{{{0, 2}, "1"}}, {}});
  InverseExpansion e = expand_inverse(h, 6);
  CHECK(e.term(1) == h);
  for (int m = 2; m <= 6; ++m) CHECK(e.term(m).is_zero());
  CHECK(e.tail_order() == 8);
  FormalMap g = assemble_inverse(e, q("1"));
  CHECK(g == make_map(6, {{{{1, 0}, "1"}, {{0, 2}, "1"}}, {{{0, 1}, "1"}}}));
  FormalMap f = make_map(6, {{{{1, 0}, "1"}, {{0, 2}, "-1"}}, {{{0, 1}, "1"}}});
  CHECK(verify_inverse(f, g));
}

TEST_CASE("the zero deformation stays the identity") {
  FormalMap h = FormalMap::zero(2, 5);
  InverseExpansion e = expand_inverse(h, 3);
  for (int m = 1; m <= 3; ++m) CHECK(e.term(m).is_zero());
  CHECK(e.tail_order() == kInfiniteOrder);
  CHECK(e.eval(q("7")) == FormalMap::zero(2, 5));
  CHECK(assemble_inverse(e, q("7")) == FormalMap::identity(2, 5));
}

TEST_CASE("expansion preconditions") {
  CHECK_THROWS_AS(expand_inverse(univariate_square(8), 0), DomainError);
  FormalMap with_const = make_map(5, {{{{0, 0}, "1"}}, {}});
  CHECK_THROWS_AS(expand_inverse(with_const, 2), DomainError);
}

TEST_CASE("numeric evaluation needs order two and enough t-orders") {
  FormalMap linear = make_map(8, {{{{1}, "1"}}});
  InverseExpansion e = expand_inverse(linear, 3);
  CHECK(e.tail_order() == 1);
  CHECK_THROWS_AS(e.eval(q("1")), DomainError);
  CHECK_THROWS_AS(assemble_inverse(e, q("1")), DomainError);
  CHECK(assemble_inverse(e, q("0")) == FormalMap::identity(1, 8));

  InverseExpansion shallow = expand_inverse(univariate_square(12), 2);
  CHECK(shallow.tail_order() == 4);
  CHECK_THROWS_AS(shallow.eval(q("1")), DomainError);

  InverseExpansion deep = expand_inverse(univariate_square(12), 12);
  CHECK(deep.tail_order() == 14);
  FormalMap n1 = deep.eval(q("0"));
  CHECK(n1 == deep.term(1));
}

TEST_CASE("assembled truncation never exceeds what the t-orders support") {
  InverseExpansion e = expand_inverse(univariate_square(12), 5);
  CHECK(e.tail_order() == 7);
  FormalMap g = assemble_inverse(e, q("1"));
  CHECK(g.trunc() == 6);
  CHECK(g[0].poly() ==
        make_poly(1, {{{1}, "1"}, {{2}, "1"}, {{3}, "2"}, {{4}, "5"},
                      {{5}, "14"}, {{6}, "42"}}));
}

TEST_CASE("verification accepts the inverse and rejects an impostor") {
  InverseExpansion e = expand_inverse(univariate_square(8), 8);
  FormalMap g = assemble_inverse(e, q("1"));
  FormalMap f = make_map(8, {{{{1}, "1"}, {{2}, "-1"}}});
  CHECK(verify_inverse(f, g));
  FormalMap wrong = make_map(8, {{{{1}, "1"}, {{2}, "1"}}});
  CHECK(!verify_inverse(f, wrong));
  FormalMap with_const = make_map(8, {{{{0}, "1"}}});
  CHECK_THROWS_AS(verify_inverse(f, with_const), DomainError);
  CHECK_THROWS_AS(verify_inverse(f, FormalMap::identity(2, 8)), DomainError);
}

TEST_CASE("nilpotency evidence for a strictly triangular jacobian") {
  FormalMap h = make_map(8, {{{{0, 2}, "1"}}, {}});
  InverseExpansion e = expand_inverse(h, 4);
  NilpotencyReport r = nilpotency_report(e, 2);
  CHECK(r.source_power_zero);
  REQUIRE(r.trace_zero.size() == 4);
  REQUIRE(r.power_slice_zero.size() == 4);
  CHECK(r.all());
}

TEST_CASE("nilpotency evidence fails for the squaring deformation") {
  InverseExpansion e = expand_inverse(univariate_square(8), 3);
  NilpotencyReport r = nilpotency_report(e, 2);
  CHECK(!r.source_power_zero);
  CHECK(!r.trace_zero[0]);
  CHECK(!r.all());
}

TEST_CASE("order and degree bounds on the expansion terms") {
  std::mt19937 rng(41002u);
  for (int it = 0; it < 6; ++it) {
    int nvars = 1 + static_cast<int>(rng() % 3);
    FormalMap h = random_map(rng, nvars, 10, 2, 4, 3);
    int d = 0;
    for (int i = 0; i < nvars; ++i)
      d = std::max(d, h[i].poly().degree());
    if (d < 2) continue;
    InverseExpansion e = expand_inverse(h, 5);
    for (int m = 1; m <= 5; ++m) {
      const FormalMap& nm = e.term(m);
      CHECK(nm.order() >= m + 1);
      for (int i = 0; i < nvars; ++i) {
        CHECK(nm[i].poly().degree() <= (d - 1) * m + 1);
      }
    }
  }
}

TEST_CASE("homogeneous sources give homogeneous terms") {
  std::mt19937 rng(41003u);
  for (int it = 0; it < 6; ++it) {
    int nvars = 2;
    int d = 2 + static_cast<int>(rng() % 2);
    FormalMap h = random_map(rng, nvars, 12, d, d, 3);
    InverseExpansion e = expand_inverse(h, 4);
    for (int m = 1; m <= 4; ++m) {
      for (int i = 0; i < nvars; ++i) {
        const Poly& p = e.term(m)[i].poly();
        if (!p.is_zero()) CHECK(p.homogeneous_degree() == (d - 1) * m + 1);
      }
    }
  }
}

TEST_CASE("the deformation field composed with its source recovers it") {
  std::mt19937 rng(41004u);
  for (int it = 0; it < 4; ++it) {
    int nvars = 1 + static_cast<int>(rng() % 2);
    FormalMap h = random_map(rng, nvars, 8, 2, 4, 3);
    int M = 5;
    InverseExpansion e = expand_inverse(h, M);
    TMap n = e.as_tmap();
    TMap ft(std::vector<FormalMap>{FormalMap::identity(nvars, 8),
                                   q("-1") * h});
    TMap back = compose(n, ft, M - 1);
    CHECK(back.slice(0) == h);
    for (int j = 1; j < M; ++j) CHECK(back.slice(j).is_zero());
  }
}

TEST_CASE("the composed jacobian is the geometric series of the source") {
  std::mt19937 rng(41005u);
  FormalMap h = random_map(rng, 2, 8, 2, 3, 3);
  int M = 5;
  InverseExpansion e = expand_inverse(h, M);
  TMap ft(std::vector<FormalMap>{FormalMap::identity(2, 8), q("-1") * h});
  TMatrix jn = jacobian(e.as_tmap());
  TMatrix composed = compose(jn, ft, M - 1);
  SeriesMatrix jh = jacobian(h);
  SeriesMatrix jh_power = jh;
  for (int j = 0; j < M; ++j) {
    const SeriesMatrix& s = composed.slice(j);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        int depth = std::min(s.at(r, c).trunc(), jh_power.at(r, c).trunc());
        CHECK(equal_through_degree(s.at(r, c), jh_power.at(r, c), depth));
      }
    if (j + 1 < M) jh_power = jh_power * jh;
  }
}

TEST_CASE("the recurrence residual vanishes under the pessimistic operations") {
  std::mt19937 rng(41006u);
  for (int it = 0; it < 3; ++it) {
    int nvars = 2;
    FormalMap h = random_map(rng, nvars, 8, 2, 4, 3);
    InverseExpansion e = expand_inverse(h, 5);
    for (int m = 2; m <= 5; ++m) {
      FormalMap lhs = GaussianRational(m - 1) * e.term(m);
      FormalMap rhs = FormalMap::zero(nvars, 7);
      for (int k = 1; k < m; ++k)
        rhs = rhs + jacobian(e.term(k)).apply(e.term(m - k));
      for (int i = 0; i < nvars; ++i)
        CHECK(equal_through_degree(lhs[i], rhs[i], 7));
    }
  }
}

TEST_CASE("shifted pairs are mutually inverse") {
  InverseExpansion e = expand_inverse(univariate_square(10), 10);
  SUBCASE("step one from the base point") {
    auto [u, v] = shifted_inverse_pair(e, q("1"), q("0"));
    CHECK(u == make_map(10, {{{{1}, "1"}, {{2}, "-1"}}}));
    CHECK(verify_inverse(u, v));
  }
  SUBCASE("fractional step from a moved base point") {
    auto [u, v] = shifted_inverse_pair(e, q("1/2"), q("1/2"));
    CHECK(verify_inverse(u, v));
  }
  SUBCASE("negative step") {
    auto [u, v] = shifted_inverse_pair(e, q("-1/2"), q("1"));
    CHECK(verify_inverse(u, v));
  }
  SUBCASE("zero step gives two identities") {
    auto [u, v] = shifted_inverse_pair(e, q("0"), q("1"));
    CHECK(u == FormalMap::identity(1, 10));
    CHECK(v == FormalMap::identity(1, 10));
  }
}

TEST_CASE("shifted pairs refuse to overstate their precision") {
  InverseExpansion shallow = expand_inverse(univariate_square(10), 4);
  CHECK_THROWS_AS(shifted_inverse_pair(shallow, q("1"), q("0")), DomainError);
  FormalMap linear = make_map(8, {{{{1}, "1"}}});
  InverseExpansion e = expand_inverse(linear, 3);
  CHECK_THROWS_AS(shifted_inverse_pair(e, q("1"), q("0")), DomainError);
}

TEST_CASE("transported observables expand along the inverse flow") {
  InverseExpansion e = expand_inverse(univariate_square(8), 3);
  TruncatedSeries u = make_series(1, 8, {{{3}, "1"}});
  std::vector<TruncatedSeries> slices = transport(u, e, 3);
  REQUIRE(slices.size() == 4);
  CHECK(slices[0] == u);
  CHECK(slices[1].poly() == make_poly(1, {{{4}, "3"}}));
  CHECK(slices[2].poly() == make_poly(1, {{{5}, "9"}}));
  CHECK(slices[3].poly() == make_poly(1, {{{6}, "28"}}));

  TMap ft(std::vector<FormalMap>{FormalMap::identity(1, 8),
                                 make_map(8, {{{{2}, "-1"}}})});
  TSeries round = compose(TSeries(slices), ft, 3);
  CHECK(round.slice(0).poly() == u.poly());
  for (int j = 1; j <= 3; ++j) CHECK(round.slice(j).is_zero());

  CHECK(transport(u, e, 0).size() == 1);
  CHECK_THROWS_AS(transport(u, e, 4), DomainError);
  CHECK_THROWS_AS(transport(u, e, -1), DomainError);
}

TEST_CASE("the recurrence is deterministic across worker counts") {
  std::mt19937 rng(41007u);
  FormalMap h = random_map(rng, 3, 8, 2, 4, 4);
  InverseExpansion serial = expand_inverse(h, 5);
  set_parallelism(4);
  InverseExpansion threaded = expand_inverse(h, 5);
  set_parallelism(1);
  for (int m = 1; m <= 5; ++m) CHECK(serial.term(m) == threaded.term(m));
}
