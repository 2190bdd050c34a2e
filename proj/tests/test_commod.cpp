#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace metabelian;
using th::cst;
using th::var;

namespace {

CollectedPart part_of(int rank, std::initializer_list<std::pair<CommIndex, LaurentPoly>> fs) {
  CollectedPart p(rank);
  for (const auto &[c, q] : fs) p.accumulate(c, q);
  return p;
}

} // namespace

TEST_CASE("commutator index invariant") {
  CHECK_THROWS_AS(CommIndex(1, 1), Error);
  CHECK_THROWS_AS(CommIndex(1, 2), Error);
  CHECK(comm_pair_count(4) == 6);
  CHECK(comm_pair_position(CommIndex(2, 1)) == 0);
  CHECK(comm_pair_position(CommIndex(3, 1)) == 1);
  CHECK(comm_pair_position(CommIndex(3, 2)) == 2);
  CHECK(comm_pair_position(CommIndex(4, 3)) == 5);
}

TEST_CASE("jacobi_step base case") {
  const int n = 3;
  RawModuleExpr r = jacobi_step(n, 2, 1, 3, 1);
  REQUIRE(r.factors().size() == 2);
  CHECK(r.factors()[0].first == CommIndex(3, 1));
  CHECK(r.factors()[0].second == var(n, 2) - cst(n, 1));
  CHECK(r.factors()[1].first == CommIndex(3, 2));
  CHECK(r.factors()[1].second == cst(n, 1) - var(n, 1));
}

TEST_CASE("jacobi_step zero and negative exponents") {
  const int n = 3;
  CHECK(jacobi_step(n, 2, 1, 3, 0).empty());
  RawModuleExpr r = jacobi_step(n, 2, 1, 3, -1);
  REQUIRE(r.factors().size() == 2);
  LaurentPoly eps = -var(n, 3, -1);
  CHECK(r.factors()[0].second == (var(n, 2) - cst(n, 1)) * eps);
  CHECK(r.factors()[1].second == (cst(n, 1) - var(n, 1)) * eps);
  CHECK_THROWS_AS(jacobi_step(n, 3, 1, 2, 1), Error);
  CHECK_THROWS_AS(jacobi_step(n, 2, 1, 4, 1), Error);
}

TEST_CASE("collect a single high-variable action") {
  const int n = 3;
  RawModuleExpr e(n);
  e.push(CommIndex(2, 1), var(n, 3));
  CollectedPart got = collect(e);
  CollectedPart want = part_of(n, {{CommIndex(2, 1), cst(n, 1)},
                                   {CommIndex(3, 1), var(n, 2) - cst(n, 1)},
                                   {CommIndex(3, 2), cst(n, 1) - var(n, 1)}});
  CHECK(got == want);
  CHECK(got.satisfies_support_constraint());
}

TEST_CASE("collect is idempotent on collected input") {
  Rng rng(201);
  for (int s = 0; s < 100; ++s) {
    int n = static_cast<int>(rng.uniform(2, 4));
    CollectedPart u = random_part(rng, n, 4, 3, 2, 5);
    CHECK(u.satisfies_support_constraint());
    CHECK(collect(to_raw(u)) == u);
  }
}

TEST_CASE("jacobi relators collect to zero") {
  for (int n = 3; n <= 4; ++n)
    for (int k = 3; k <= n; ++k)
      for (int i = 2; i < k; ++i)
        for (int j = 1; j < i; ++j)
          for (long long delta = -4; delta <= 4; ++delta) {
            // [x_i,x_j]^(a_k^delta - 1) * (jacobi rhs)^-1 must vanish.
            RawModuleExpr e(n);
            LaurentPoly lhs =
                LaurentPoly::monomial(Monomial::variable(n, k, delta)) - cst(n, 1);
            e.push(CommIndex(i, j), lhs);
            e.append(jacobi_step(n, i, j, k, delta).negated());
            CHECK(collect(e).empty());
          }
}

TEST_CASE("module addition and negation") {
  const int n = 2;
  CollectedPart u = part_of(n, {{CommIndex(2, 1), cst(n, 1)}});
  CollectedPart v = part_of(n, {{CommIndex(2, 1), var(n, 1)}});
  CHECK(madd(u, mneg(u)).empty());
  CHECK(madd(u, v) == part_of(n, {{CommIndex(2, 1), cst(n, 1) + var(n, 1)}}));
  CHECK(madd(u, CollectedPart(n)) == u);
}

TEST_CASE("module action") {
  const int n = 3;
  CollectedPart u = part_of(n, {{CommIndex(2, 1), cst(n, 1)}});
  RawModuleExpr raw(n);
  raw.push(CommIndex(2, 1), var(n, 3));
  CHECK(mact(u, var(n, 3)) == collect(raw));
  Rng rng(202);
  for (int s = 0; s < 60; ++s) {
    CollectedPart w = random_part(rng, n, 3, 2, 2, 5);
    CHECK(mact(w, cst(n, 1)) == w);
    CHECK(mact(w, LaurentPoly::zero(n)).empty());
    LaurentPoly p = random_poly(rng, n, 3, 2, 5);
    LaurentPoly q = random_poly(rng, n, 3, 2, 5);
    CHECK(mact(mact(w, p), q) == mact(w, p * q));
    CollectedPart w2 = random_part(rng, n, 3, 2, 2, 5);
    CHECK(mact(madd(w, w2), q) == madd(mact(w, q), mact(w2, q)));
  }
}

TEST_CASE("retraction of parts") {
  const int n = 3;
  CollectedPart u = part_of(n, {{CommIndex(2, 1), var(n, 1)}, {CommIndex(3, 1), var(n, 2)}});
  CHECK(retract_part(u, IndexSet{1, 2}) == part_of(n, {{CommIndex(2, 1), var(n, 1)}}));
  CHECK(retract_part(u, full_index_set(n)) == u);
  CHECK(retract_part(u, IndexSet{}).empty());
}
