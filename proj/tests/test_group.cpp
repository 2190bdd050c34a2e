#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace metabelian;
using th::cst;
using th::var;

namespace {

Element gen(int n, int i, long long e = 1) { return Element::generator(n, i, e); }

CollectedPart part_of(int rank, std::initializer_list<std::pair<CommIndex, LaurentPoly>> fs) {
  CollectedPart p(rank);
  for (const auto &[c, q] : fs) p.accumulate(c, q);
  return p;
}

GroupWord word_of(int rank, std::initializer_list<std::pair<int, long long>> letters) {
  GroupWord w(rank);
  for (const auto &[i, e] : letters) w.push(i, e);
  return w;
}

} // namespace

TEST_CASE("rank mixing is rejected") {
  CHECK_THROWS_AS(mul(Element::identity(2), Element::identity(3)), Error);
  CHECK_THROWS_AS(commutator(Element::identity(2), Element::identity(3)), Error);
  CHECK_THROWS_AS(madd(CollectedPart(2), CollectedPart(3)), Error);
  CHECK_THROWS_AS(eval_at(LaurentPoly::variable(3, 1), {Int(1), Int(2)}), Error);
}

TEST_CASE("identity and generators") {
  const int n = 3;
  Element e = Element::identity(n);
  CHECK(e.is_identity());
  Element x1 = gen(n, 1);
  CHECK(x1.gamma() == std::vector<long long>({1, 0, 0}));
  CHECK(x1.part().empty());
  CHECK_THROWS_AS(Element::generator(n, n + 1), Error);
  CHECK_THROWS_AS(Element::generator(n, 0), Error);
}

TEST_CASE("defining relation x2 x1 = x1 x2 [x2,x1]") {
  const int n = 2;
  Element g = mul(gen(n, 2), gen(n, 1));
  CHECK(g.gamma() == std::vector<long long>({1, 1}));
  CHECK(g.part() == part_of(n, {{CommIndex(2, 1), cst(n, 1)}}));
  // and the ascending product picks up no correction
  Element h = mul(gen(n, 1), gen(n, 2));
  CHECK(h.gamma() == std::vector<long long>({1, 1}));
  CHECK(h.part().empty());
  // identity absorbs
  CHECK(mul(g, Element::identity(n)) == g);
  CHECK(mul(Element::identity(n), g) == g);
}

TEST_CASE("generator block product against word evaluation") {
  // x^gamma * x^delta computed through the closed-form corrections must
  // agree with letter-by-letter evaluation of the concatenated word.
  Rng rng(301);
  for (int s = 0; s < 300; ++s) {
    int n = static_cast<int>(rng.uniform(2, 4));
    std::vector<long long> gamma, delta;
    GroupWord w(n);
    for (int i = 1; i <= n; ++i) gamma.push_back(rng.uniform(-4, 4));
    for (int i = 1; i <= n; ++i) delta.push_back(rng.uniform(-4, 4));
    for (int i = 1; i <= n; ++i) w.push(i, gamma[static_cast<std::size_t>(i - 1)]);
    for (int i = 1; i <= n; ++i) w.push(i, delta[static_cast<std::size_t>(i - 1)]);
    std::vector<long long> sum(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      sum[static_cast<std::size_t>(i)] = gamma[static_cast<std::size_t>(i)] +
                                         delta[static_cast<std::size_t>(i)];
    Element closed(sum, collect(block_product_part(gamma, delta)));
    CHECK(closed == evaluate_word(w));
  }
}

TEST_CASE("inverses") {
  const int n = 2;
  CHECK(inv(Element::identity(n)) == Element::identity(n));
  Element g = mul(gen(n, 1), gen(n, 2));
  Element gi = inv(g);
  CHECK(gi.gamma() == std::vector<long long>({-1, -1}));
  CHECK(gi.part() ==
        part_of(n, {{CommIndex(2, 1),
                     LaurentPoly::monomial(Monomial::variable(n, 1, -1) *
                                           Monomial::variable(n, 2, -1))}}));
  CHECK(mul(g, gi).is_identity());
  CHECK(mul(gi, g).is_identity());

  Rng rng(302);
  for (int s = 0; s < 150; ++s) {
    int rank = static_cast<int>(rng.uniform(2, 4));
    Element h = random_element(rng, rank, 10, 4);
    CHECK(inv(inv(h)) == h);
    CHECK(mul(h, inv(h)).is_identity());
    CHECK(mul(inv(h), h).is_identity());
  }
}

TEST_CASE("powers") {
  const int n = 2;
  Element g = mul(gen(n, 1), Element::from_part(part_of(n, {{CommIndex(2, 1), cst(n, 1)}})));
  CHECK(pow(g, 0) == Element::identity(n));
  CHECK(pow(g, 2) == mul(g, g));
  for (long long m = -4; m <= 4; ++m) {
    Element c = Element::from_part(part_of(n, {{CommIndex(2, 1), cst(n, m)}}));
    CHECK(pow(Element::from_part(part_of(n, {{CommIndex(2, 1), cst(n, 1)}})), m) == c);
  }
  Rng rng(303);
  for (int s = 0; s < 40; ++s) {
    int rank = static_cast<int>(rng.uniform(2, 4));
    Element h = random_element(rng, rank, 6, 3);
    Element it = Element::identity(rank);
    for (long long m = 0; m <= 12; ++m) {
      CHECK(pow(h, m) == it);
      CHECK(pow(h, -m) == inv(it));
      it = mul(it, h);
    }
  }
}

TEST_CASE("commutators and conjugation") {
  const int n = 2;
  Element x1 = gen(n, 1), x2 = gen(n, 2);
  CHECK(commutator(x2, x2).is_identity());
  Element c = commutator(x2, x1);
  CHECK(c.in_commutant());
  CHECK(c.part() == part_of(n, {{CommIndex(2, 1), cst(n, 1)}}));
  // [x1,x2] = [x2,x1]^-1
  CHECK(commutator(x1, x2) == inv(c));
  // conjugation identity g^h = g [g,h]
  Rng rng(304);
  for (int s = 0; s < 60; ++s) {
    int rank = static_cast<int>(rng.uniform(2, 4));
    Element g = random_element(rng, rank, 6, 3);
    Element h = random_element(rng, rank, 6, 3);
    CHECK(conjugate(g, h) == mul(g, commutator(g, h)));
  }
}

TEST_CASE("powers inside commutators") {
  // [z^gamma, g^delta] = [z,g]^(eps_zbar(gamma) eps_gbar(delta))
  Rng rng(305);
  for (int s = 0; s < 40; ++s) {
    int n = static_cast<int>(rng.uniform(2, 4));
    Element z = evaluate_word(random_noncommutant_word(rng, n, 4, 2));
    Element g = evaluate_word(random_noncommutant_word(rng, n, 4, 2));
    Element zg = commutator(z, g);
    for (long long d : {-6LL, -2LL, 1LL, 3LL, 6LL}) {
      Element lhs = commutator(z, pow(g, d));
      Element rhs = Element::from_part(mact(zg.part(), geometric_sum(g.abelianization(), d)));
      CHECK(lhs == rhs);
    }
    long long gamma = rng.uniform(-6, 6), delta = rng.uniform(-6, 6);
    Element lhs = commutator(pow(z, gamma), pow(g, delta));
    LaurentPoly e = geometric_sum(z.abelianization(), gamma) *
                    geometric_sum(g.abelianization(), delta);
    CHECK(lhs == Element::from_part(mact(zg.part(), e)));
  }
}

TEST_CASE("commutator with a power of a product expands coordinatewise") {
  // [x1, (x2 x3)^d] factors as [x1,x2x3]^d [x1,x2x3,x3]^S3 [x1,x2x3,x2]^S2
  // with S3 = sum_{0<=t<d} a2^t (a3^t-1)/(a3-1) and S2 = sum_{0<=t<d} (a2^t-1)/(a2-1);
  // equivalently the acting polynomial is the geometric sum of a2 a3.
  const int n = 3;
  Element x1 = gen(n, 1);
  Element prod = mul(gen(n, 2), gen(n, 3));
  Element z = commutator(x1, prod);
  Monomial ab = Monomial::variable(n, 2) * Monomial::variable(n, 3);
  for (long long d = 0; d <= 6; ++d) {
    LaurentPoly s3(n), s2(n);
    for (long long t = 0; t < d; ++t) {
      s3 += geometric_sum(Monomial::variable(n, 3), t).shifted(Monomial::variable(n, 2, t));
      s2 += geometric_sum(Monomial::variable(n, 2), t);
    }
    LaurentPoly a3_minus_1 = var(n, 3) - cst(n, 1);
    LaurentPoly a2_minus_1 = var(n, 2) - cst(n, 1);
    LaurentPoly acting = cst(n, d) + a3_minus_1 * s3 + a2_minus_1 * s2;
    CHECK(acting == geometric_sum(ab, d));
    CHECK(commutator(x1, pow(prod, d)) == Element::from_part(mact(z.part(), acting)));
  }
}

TEST_CASE("only the identity is a universal commutator value") {
  // if d in G' satisfies d = [c,v] for every v outside G', then d = 1; at
  // rank 2 the module is free on [x2,x1], so d = [c,v] for some c means
  // (vbar - 1) divides the coordinate of d, and a nonzero coordinate fails
  // against a1^s - 1 once s outruns its degree span.
  const int n = 2;
  Rng rng(313);
  for (int s = 0; s < 60; ++s) {
    CollectedPart d(n);
    while (d.empty()) d = random_part(rng, n, 2, 3, 3, 5);
    const LaurentPoly &beta = d.beta().begin()->second;
    bool found_witness = false;
    for (long long t = 1; t <= 20 && !found_witness; ++t) {
      LaurentPoly divisor = var(n, 1, t) - cst(n, 1);
      try {
        divide_exact(beta, divisor);
      } catch (const Error &) {
        found_witness = true; // v = x1^t admits no c with d = [c, v]
      }
    }
    CHECK(found_witness);
  }
}

TEST_CASE("jacobi identity") {
  Rng rng(306);
  for (int s = 0; s < 40; ++s) {
    int n = static_cast<int>(rng.uniform(2, 4));
    Element u = random_element(rng, n, 5, 3);
    Element v = random_element(rng, n, 5, 3);
    Element w = random_element(rng, n, 5, 3);
    Element lhs = mul(mul(commutator(commutator(u, v), w), commutator(commutator(v, w), u)),
                      commutator(commutator(w, u), v));
    CHECK(lhs.is_identity());
  }
}

TEST_CASE("conjugation map is a homomorphism on the commutant") {
  Rng rng(307);
  for (int s = 0; s < 60; ++s) {
    int n = static_cast<int>(rng.uniform(2, 4));
    Element v = evaluate_word(random_noncommutant_word(rng, n, 5, 3));
    Element c1 = Element::from_part(random_part(rng, n, 3, 2, 2, 4));
    Element c2 = Element::from_part(random_part(rng, n, 3, 2, 2, 4));
    CHECK(commutator(v, mul(c1, c2)) == mul(commutator(v, c1), commutator(v, c2)));
  }
}

TEST_CASE("word evaluation") {
  const int n = 2;
  CHECK(evaluate_word(word_of(n, {{1, 1}, {1, -1}})).is_identity());
  CHECK(evaluate_word(word_of(n, {{2, 1}, {1, 1}})) == mul(gen(n, 2), gen(n, 1)));
  Rng rng(308);
  for (int s = 0; s < 80; ++s) {
    int rank = static_cast<int>(rng.uniform(2, 4));
    GroupWord w1 = random_word(rng, rank, 8, 4);
    GroupWord w2 = random_word(rng, rank, 8, 4);
    CHECK(evaluate_word(w1 * w2) == mul(evaluate_word(w1), evaluate_word(w2)));
  }
}

TEST_CASE("power residue lies in the commutant") {
  const int n = 2;
  Element w = gen(n, 1);
  Element g = Element::from_part(part_of(n, {{CommIndex(2, 1), cst(n, 1)}}));
  CHECK(power_residue(w, Element::identity(n), 5).is_identity());
  CHECK(power_residue(w, g, 1).is_identity());
  CHECK(power_residue(w, g, 0).is_identity());
  Element r = power_residue(w, g, 2);
  CHECK(r.in_commutant());
  CHECK_THROWS_AS(power_residue(w, gen(n, 2), 2), Error);
  Rng rng(309);
  for (int s = 0; s < 60; ++s) {
    int rank = static_cast<int>(rng.uniform(2, 4));
    Element ww = random_element(rng, rank, 6, 3);
    Element gg = Element::from_part(random_part(rng, rank, 2, 2, 2, 3));
    long long m = rng.uniform(-8, 8);
    CHECK(power_residue(ww, gg, m).in_commutant());
  }
}

TEST_CASE("delta commutator polynomial") {
  const int n = 2;
  Monomial a = Monomial::variable(n, 1), b = Monomial::variable(n, 2);
  CHECK(delta_comm_poly(a, b, 1).is_zero());
  CHECK(delta_comm_poly(a, b, 0).is_zero());
  CHECK(delta_comm_poly(a, b, 2) == var(n, 2));
  CHECK(delta_comm_poly(a, b, 3) == var(n, 2, 2) * (var(n, 1) + cst(n, 1)) + var(n, 2));
  // (a-1) f = eps_ab(d) - eps_b(d), including negative d
  for (long long d = -5; d <= 5; ++d) {
    LaurentPoly f = delta_comm_poly(a, b, d);
    CHECK(f * (var(n, 1) - cst(n, 1)) == geometric_sum(a * b, d) - geometric_sum(b, d));
  }
  CHECK_THROWS_AS(delta_comm_poly(Monomial(n), b, 2), Error);
  CHECK_THROWS_AS(delta_comm_poly(a, a.inverse(), 2), Error);
}

TEST_CASE("delta commutator identity") {
  const int n = 2;
  Element x1 = gen(n, 1), x2 = gen(n, 2);
  CHECK(delta_commutator_check(x1, x2, 2));
  CHECK(delta_commutator_check(x1, x2, 1));
  CHECK(delta_commutator_check(x1, x2, 0));
  // hand expansion: y^-2 x^-2 (xy)^2 = [x2,x1]^(a2) for x = x1, y = x2
  Element lhs = mul(mul(pow(x2, -2), pow(x1, -2)), pow(mul(x1, x2), 2));
  CHECK(lhs == Element::from_part(part_of(n, {{CommIndex(2, 1), var(n, 2)}})));
  Rng rng(310);
  for (int s = 0; s < 40; ++s) {
    int rank = static_cast<int>(rng.uniform(2, 4));
    Element x = evaluate_word(random_noncommutant_word(rng, rank, 4, 3));
    Element y = evaluate_word(random_noncommutant_word(rng, rank, 4, 3));
    if ((x.abelianization() * y.abelianization()).is_identity()) continue;
    long long d = rng.uniform(-5, 5);
    CHECK(delta_commutator_check(x, y, d));
  }
}

TEST_CASE("exponential axioms") {
  const int n = 3;
  Element g = mul(gen(n, 1), Element::from_part(part_of(n, {{CommIndex(2, 1), var(n, 1)}})));
  Element h = mul(gen(n, 2), gen(n, 3));
  CHECK(check_exp_axioms(g, h, 0, 0));
  CHECK(check_exp_axioms(g, h, 3, -2));
  // commuting pair: h = g^2 makes the distributivity clause bite
  CHECK(check_exp_axioms(g, pow(g, 2), 4, 3));
  Rng rng(311);
  for (int s = 0; s < 60; ++s) {
    int rank = static_cast<int>(rng.uniform(2, 4));
    Element a = random_element(rng, rank, 6, 3);
    Element b = random_element(rng, rank, 6, 3);
    CHECK(check_exp_axioms(a, b, rng.uniform(-5, 5), rng.uniform(-5, 5)));
  }
}

TEST_CASE("associativity on random triples") {
  Rng rng(312);
  for (int s = 0; s < 120; ++s) {
    int n = static_cast<int>(rng.uniform(2, 4));
    Element a = random_element(rng, n, 8, 4);
    Element b = random_element(rng, n, 8, 4);
    Element c = random_element(rng, n, 8, 4);
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
  }
}

TEST_CASE("basis certificates") {
  const int n = 2;
  // the standard basis
  std::vector<GroupWord> id_basis{word_of(n, {{1, 1}}), word_of(n, {{2, 1}})};
  CHECK(basis_certificate(id_basis) == BasisCertificate::PassNecessary);
  // (x1 x2, x2): Fox matrix [[1, a1], [0, 1]]
  std::vector<GroupWord> nielsen{word_of(n, {{1, 1}, {2, 1}}), word_of(n, {{2, 1}})};
  CHECK(basis_certificate(nielsen) == BasisCertificate::PassNecessary);
  // (x1^2, x2): abelianization determinant 2
  std::vector<GroupWord> squares{word_of(n, {{1, 2}}), word_of(n, {{2, 1}})};
  CHECK(basis_certificate(squares) == BasisCertificate::FailAbelianization);
  // (x1 [x2,x1], x2): unimodular abelianization, non-unit Fox determinant
  GroupWord w1 = word_of(n, {{1, 1}});
  w1.append(commutator_word(word_of(n, {{2, 1}}), word_of(n, {{1, 1}})));
  std::vector<GroupWord> skew{w1, word_of(n, {{2, 1}})};
  CHECK(basis_certificate(skew) == BasisCertificate::FailJacobianUnit);
  // a conjugated basis passes
  GroupWord c1 = word_of(n, {{2, -1}, {1, 1}, {2, 1}});
  std::vector<GroupWord> conj{c1, word_of(n, {{2, 1}})};
  CHECK(basis_certificate(conj) == BasisCertificate::PassNecessary);
  CHECK_THROWS_AS(basis_certificate(std::vector<GroupWord>{word_of(n, {{1, 1}})}), Error);
}
