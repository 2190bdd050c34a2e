#pragma once

// Deterministic sample generation for the property harness, the CLI
// check-axioms command, and the test suites. mt19937_64 is fully specified
// by the standard and values are drawn by modulo, so a fixed seed yields the
// same samples on every platform.

#include <cstdint>
#include <random>
#include <vector>

#include "metabelian/commod.hpp"
#include "metabelian/group.hpp"
#include "metabelian/laurent.hpp"
#include "metabelian/word.hpp"

namespace metabelian {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  long long uniform(long long lo, long long hi) {
    if (lo > hi) fail(Errc::bad_input, "empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long long>(next() % span);
  }

  long long nonzero(long long bound) {
    for (;;) {
      long long v = uniform(-bound, bound);
      if (v != 0) return v;
    }
  }

  bool flip() { return (next() & 1) != 0; }

private:
  std::mt19937_64 eng_;
};

inline Monomial random_monomial(Rng &rng, int rank, long long max_exp) {
  Monomial m(rank);
  for (int i = 1; i <= rank; ++i) m.set_exponent(i, rng.uniform(-max_exp, max_exp));
  return m;
}

inline LaurentPoly random_poly(Rng &rng, int rank, int max_terms, long long max_exp,
                               long long max_coef) {
  LaurentPoly p(rank);
  int terms = static_cast<int>(rng.uniform(0, max_terms));
  for (int t = 0; t < terms; ++t)
    p.add_term(random_monomial(rng, rank, max_exp), Int(rng.uniform(-max_coef, max_coef)));
  return p;
}

inline LaurentPoly random_nonzero_poly(Rng &rng, int rank, int max_terms,
                                       long long max_exp, long long max_coef) {
  for (;;) {
    LaurentPoly p = random_poly(rng, rank, max_terms, max_exp, max_coef);
    if (!p.is_zero()) return p;
  }
}

inline GroupWord random_word(Rng &rng, int rank, int max_letters, long long max_exp) {
  GroupWord w(rank);
  int letters = static_cast<int>(rng.uniform(0, max_letters));
  for (int t = 0; t < letters; ++t)
    w.push(static_cast<int>(rng.uniform(1, rank)), rng.nonzero(max_exp));
  return w;
}

inline RawModuleExpr random_raw_expr(Rng &rng, int rank, int max_factors, int max_terms,
                                     long long max_exp, long long max_coef) {
  RawModuleExpr e(rank);
  if (rank < 2) return e;
  int factors = static_cast<int>(rng.uniform(0, max_factors));
  for (int t = 0; t < factors; ++t) {
    int i = static_cast<int>(rng.uniform(2, rank));
    int j = static_cast<int>(rng.uniform(1, i - 1));
    e.push(CommIndex(i, j), random_poly(rng, rank, max_terms, max_exp, max_coef));
  }
  return e;
}

inline CollectedPart random_part(Rng &rng, int rank, int max_factors, int max_terms,
                                 long long max_exp, long long max_coef) {
  return collect(random_raw_expr(rng, rank, max_factors, max_terms, max_exp, max_coef));
}

inline Element random_element(Rng &rng, int rank, int max_letters, long long max_exp) {
  return evaluate_word(random_word(rng, rank, max_letters, max_exp));
}

// A word whose abelianization is nontrivial (needed wherever geometric sums
// over the image appear).
inline GroupWord random_noncommutant_word(Rng &rng, int rank, int max_letters,
                                          long long max_exp) {
  for (;;) {
    GroupWord w = random_word(rng, rank, max_letters, max_exp);
    if (!abelianization(w).is_identity()) return w;
  }
}

} // namespace metabelian
