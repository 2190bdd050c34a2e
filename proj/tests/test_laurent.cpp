#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace metabelian;
using th::cst;
using th::var;

TEST_CASE("addition") {
  const int n = 2;
  CHECK((var(n, 1) + (-var(n, 1))).is_zero());
  CHECK(var(n, 1) - cst(n, 1) + cst(n, 1) == var(n, 1));
  LaurentPoly t = LaurentPoly::monomial(Monomial::variable(n, 1) * Monomial::variable(n, 2, -1), 2);
  LaurentPoly u = LaurentPoly::monomial(Monomial::variable(n, 1) * Monomial::variable(n, 2, -1), 3);
  LaurentPoly expect = LaurentPoly::monomial(Monomial::variable(n, 1) * Monomial::variable(n, 2, -1), 5);
  CHECK(t + u == expect);
}

TEST_CASE("multiplication") {
  const int n = 2;
  CHECK((var(n, 1) - cst(n, 1)) * (var(n, 1) + cst(n, 1)) == var(n, 1, 2) - cst(n, 1));
  LaurentPoly p = var(n, 1, 3) - cst(n, 7) * var(n, 2, -2);
  CHECK(p * cst(n, 1) == p);
  CHECK(var(n, 1, -1) * var(n, 1) == cst(n, 1));
}

TEST_CASE("rank mismatch is a hard error") {
  CHECK_THROWS_AS(var(2, 1) + var(3, 1), Error);
  CHECK_THROWS_AS(var(2, 1) * var(3, 1), Error);
}

TEST_CASE("geometric sums") {
  const int n = 2;
  Monomial a1 = Monomial::variable(n, 1);
  CHECK(geometric_sum(a1, 3) == cst(n, 1) + var(n, 1) + var(n, 1, 2));
  CHECK(geometric_sum(a1, 0).is_zero());
  CHECK(geometric_sum(a1, 1) == cst(n, 1));
  // delta = -2: multiplying back by (a1 - 1) must give a1^-2 - 1.
  LaurentPoly g = geometric_sum(a1, -2);
  CHECK(g * (var(n, 1) - cst(n, 1)) == var(n, 1, -2) - cst(n, 1));
  CHECK(g == -var(n, 1, -1) - var(n, 1, -2));
  CHECK_THROWS_AS(geometric_sum(Monomial(n), 3), Error);
}

TEST_CASE("geometric sum defining identity on random bases") {
  Rng rng(101);
  for (int s = 0; s < 200; ++s) {
    int n = static_cast<int>(rng.uniform(1, 4));
    Monomial g = random_monomial(rng, n, 3);
    if (g.is_identity()) continue;
    long long d = rng.uniform(-8, 8);
    LaurentPoly lhs = geometric_sum(g, d) * (LaurentPoly::monomial(g) - cst(n, 1));
    LaurentPoly rhs = LaurentPoly::monomial(g.pow(d)) - cst(n, 1);
    CHECK(lhs == rhs);
    if (d >= 0)
      CHECK(geometric_sum(g, d + 1) == geometric_sum(g, d) + LaurentPoly::monomial(g.pow(d)));
  }
}

TEST_CASE("exact division") {
  const int n = 2;
  CHECK(divide_exact(var(n, 1, 2) - cst(n, 1), var(n, 1) - cst(n, 1)) == var(n, 1) + cst(n, 1));
  // monomials are units
  CHECK(divide_exact(var(n, 1), var(n, 2)) ==
        LaurentPoly::monomial(Monomial::variable(n, 1) * Monomial::variable(n, 2, -1)));
  // a1 + 1 is not divisible by a1 - 1 (evaluation at a1 = 1 gives 2 != 0)
  CHECK_THROWS_AS(divide_exact(var(n, 1) + cst(n, 1), var(n, 1) - cst(n, 1)), Error);
  CHECK_THROWS_AS(divide_exact(var(n, 1), LaurentPoly::zero(n)), Error);
  CHECK(divide_exact(LaurentPoly::zero(n), var(n, 1)).is_zero());
}

TEST_CASE("divide_exact inverts multiplication on random pairs") {
  Rng rng(102);
  for (int s = 0; s < 200; ++s) {
    int n = static_cast<int>(rng.uniform(1, 4));
    LaurentPoly p = random_poly(rng, n, 4, 3, 9);
    LaurentPoly d = random_nonzero_poly(rng, n, 4, 3, 9);
    CHECK(divide_exact(p * d, d) == p);
  }
}

TEST_CASE("involution") {
  const int n = 2;
  CHECK(involute(var(n, 1)) == var(n, 1, -1));
  CHECK(involute(var(n, 1) + cst(n, 2) * var(n, 2, -1)) == var(n, 1, -1) + cst(n, 2) * var(n, 2));
  Rng rng(103);
  for (int s = 0; s < 100; ++s) {
    LaurentPoly p = random_poly(rng, 3, 5, 3, 9);
    LaurentPoly q = random_poly(rng, 3, 5, 3, 9);
    CHECK(involute(involute(p)) == p);
    CHECK(involute(p + q) == involute(p) + involute(q));
    CHECK(involute(p * q) == involute(p) * involute(q));
  }
}

TEST_CASE("retraction") {
  const int n = 3;
  CHECK(retract(var(n, 1) * var(n, 3), IndexSet{1, 2}) == var(n, 1));
  CHECK(retract(var(n, 1) - cst(n, 1), IndexSet{}).is_zero());
  Rng rng(104);
  for (int s = 0; s < 100; ++s) {
    LaurentPoly p = random_poly(rng, n, 5, 3, 9);
    LaurentPoly q = random_poly(rng, n, 5, 3, 9);
    CHECK(retract(p, full_index_set(n)) == p);
    IndexSet I, J;
    for (int i = 1; i <= n; ++i) {
      if (rng.flip()) I.insert(i);
      if (rng.flip()) J.insert(i);
    }
    CHECK(retract(p + q, I) == retract(p, I) + retract(q, I));
    CHECK(retract(p * q, I) == retract(p, I) * retract(q, I));
    IndexSet meet;
    for (int i : I)
      if (J.count(i)) meet.insert(i);
    CHECK(retract(retract(p, I), J) == retract(p, meet));
  }
}

TEST_CASE("evaluation") {
  const int n = 2;
  CHECK(eval_at(var(n, 1) - var(n, 2), {Int(1), Int(2)}) == Rat(-1));
  CHECK(eval_at(LaurentPoly::zero(n), {Int(3), Int(5)}) == Rat(0));
  CHECK(eval_at(var(n, 1, -1), {Int(2), Int(9)}) == Rat(1) / Rat(2));
  CHECK_THROWS_AS(eval_at(var(n, 1), {Int(0), Int(1)}), Error);
  Rng rng(105);
  for (int s = 0; s < 100; ++s) {
    LaurentPoly p = random_poly(rng, n, 5, 3, 9);
    LaurentPoly q = random_poly(rng, n, 5, 3, 9);
    std::vector<Int> point{Int(rng.nonzero(5)), Int(rng.nonzero(5))};
    CHECK(eval_at(p + q, point) == eval_at(p, point) + eval_at(q, point));
    CHECK(eval_at(p * q, point) == eval_at(p, point) * eval_at(q, point));
  }
}

TEST_CASE("canonical fractions") {
  const int n = 2;
  {
    auto cf = canonical_fraction(var(n, 1, -1) + cst(n, 1));
    CHECK(cf.numerator == cst(n, 1) + var(n, 1));
    CHECK(cf.denominator == Monomial::variable(n, 1));
  }
  {
    auto cf = canonical_fraction(var(n, 1));
    CHECK(cf.numerator == var(n, 1));
    CHECK(cf.denominator.is_identity());
  }
  {
    auto cf = canonical_fraction(LaurentPoly::monomial(
        Monomial::variable(n, 1, -2) * Monomial::variable(n, 2)));
    CHECK(cf.numerator == var(n, 2));
    CHECK(cf.denominator == Monomial::variable(n, 1, 2));
  }
  Rng rng(106);
  for (int s = 0; s < 200; ++s) {
    int rank = static_cast<int>(rng.uniform(1, 4));
    LaurentPoly q = random_poly(rng, rank, 6, 4, 9);
    auto cf = canonical_fraction(q);
    CHECK(cf.numerator.shifted(cf.denominator.inverse()) == q);
    for (int i = 1; i <= rank; ++i) {
      CHECK(cf.numerator.min_exponent(i) >= 0);
      if (cf.denominator.exponent(i) > 0)
        CHECK((!q.is_zero() && cf.numerator.min_exponent(i) == 0));
    }
  }
}

TEST_CASE("support") {
  const int n = 3;
  CHECK(support(var(n, 1) * var(n, 3, -1)) == IndexSet{1, 3});
  CHECK(support(cst(n, 7)).empty());
  CHECK(support(var(n, 2) - var(n, 2)).empty());
}

TEST_CASE("ring axioms on random triples") {
  Rng rng(107);
  for (int s = 0; s < 150; ++s) {
    int n = static_cast<int>(rng.uniform(1, 4));
    LaurentPoly p = random_poly(rng, n, 4, 3, 9);
    LaurentPoly q = random_poly(rng, n, 4, 3, 9);
    LaurentPoly r = random_poly(rng, n, 4, 3, 9);
    CHECK((p + q) + r == p + (q + r));
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * q == q * p);
    CHECK(p * (q + r) == p * q + p * r);
  }
}

TEST_CASE("canonical form prunes zeros and equality is structural") {
  const int n = 2;
  LaurentPoly p(n);
  p.add_term(Monomial::variable(n, 1), 2);
  p.add_term(Monomial::variable(n, 1), -2);
  CHECK(p.is_zero());
  CHECK(p.term_count() == 0);
}
