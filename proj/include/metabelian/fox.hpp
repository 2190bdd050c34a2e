#pragma once

// Fox calculus on normal forms, and the coordinate-recovery procedure that
// reads a collected form off the Fox derivatives of a word. Together with
// collect() this gives two independent routes from raw input to collected
// coordinates; the test suite insists they agree.

#include <vector>

#include "metabelian/commod.hpp"
#include "metabelian/foxword.hpp"
#include "metabelian/group.hpp"
#include "metabelian/laurent.hpp"
#include "metabelian/word.hpp"

namespace metabelian {

// d_t([x_i,x_j]): a_i^-1 a_j^-1 (1 - a_j) at t = i, a_i^-1 a_j^-1 (a_i - 1)
// at t = j, zero otherwise.
inline LaurentPoly fox_of_commutator(int rank, const CommIndex &c, int t) {
  LaurentPoly r(rank);
  if (t != c.i && t != c.j) return r;
  Monomial unit = Monomial::variable(rank, c.i, -1) * Monomial::variable(rank, c.j, -1);
  if (t == c.i) {
    r.add_term(unit, 1);
    r.add_term(unit * Monomial::variable(rank, c.j), -1);
  } else {
    r.add_term(unit * Monomial::variable(rank, c.i), 1);
    r.add_term(unit, -1);
  }
  return r;
}

// Fox vector of an element of G' given by its collected part, using
// d_t(u^Q) = Q_inv d_t(u) and additivity on the commutant.
inline FoxVector fox_of_part(const CollectedPart &u) {
  const int n = u.rank();
  FoxVector v;
  v.entries.reserve(static_cast<std::size_t>(n));
  for (int t = 1; t <= n; ++t) v.entries.push_back(LaurentPoly(n));
  for (const auto &[c, q] : u.beta()) {
    LaurentPoly qi = involute(q);
    v.entries[static_cast<std::size_t>(c.i - 1)] += qi * fox_of_commutator(n, c, c.i);
    v.entries[static_cast<std::size_t>(c.j - 1)] += qi * fox_of_commutator(n, c, c.j);
  }
  return v;
}

// d_i(g) computed directly from the normal form: the generator block
// contributes prefix * eps_{a_i}(gamma_i), the part contributes through the
// involuted coefficients, conjugated by the block's abelianization.
inline LaurentPoly fox_of_element(const Element &g, int i) {
  const int n = g.rank();
  if (i < 1 || i > n) fail(Errc::bad_index, "fox derivative index out of range");
  LaurentPoly d(n);
  Monomial prefix(n);
  for (int t = 1; t < i; ++t) prefix = prefix * Monomial::variable(n, t, g.gamma_at(t));
  if (g.gamma_at(i) != 0)
    d += geometric_sum(Monomial::variable(n, i), g.gamma_at(i)).shifted(prefix);
  FoxVector pv = fox_of_part(g.part());
  d += pv.entries[static_cast<std::size_t>(i - 1)].shifted(g.abelianization());
  return d;
}

// Recovers the unique collected form of a word with trivial abelianization.
// Stage t retracts the still-unexplained Fox vector to {1..t}; there
//   d_j(residual) = involute(beta_tj) * a_t^-1 a_j^-1 (a_t - 1),
// so beta_tj comes out of one exact division. A failed division or a
// leftover at the end indicates a bug, not bad input.
inline CollectedPart recover_collected(const GroupWord &w) {
  const int n = w.rank();
  if (!abelianization(w).is_identity())
    fail(Errc::not_in_commutant, "word has nontrivial abelianization");
  FoxVector target = fox_all(w);
  CollectedPart out(n);
  for (int t = 2; t <= n; ++t) {
    FoxVector known = fox_of_part(out);
    IndexSet I;
    for (int v = 1; v <= t; ++v) I.insert(v);
    LaurentPoly at_minus_1 =
        LaurentPoly::variable(n, t) - LaurentPoly::constant(n, 1);
    for (int j = 1; j < t; ++j) {
      LaurentPoly residual =
          retract(target.entries[static_cast<std::size_t>(j - 1)] -
                      known.entries[static_cast<std::size_t>(j - 1)],
                  I);
      if (residual.is_zero()) continue;
      Monomial clear_unit = Monomial::variable(n, t) * Monomial::variable(n, j);
      LaurentPoly beta_inv(n);
      try {
        beta_inv = divide_exact(residual.shifted(clear_unit), at_minus_1);
      } catch (const Error &e) {
        if (e.kind() == Errc::not_divisible)
          fail(Errc::internal_inconsistency, "coordinate recovery division failed");
        throw;
      }
      out.accumulate(CommIndex(t, j), involute(beta_inv));
    }
  }
  FoxVector final_check = fox_of_part(out);
  for (int i = 1; i <= n; ++i) {
    if (final_check.entries[static_cast<std::size_t>(i - 1)] !=
        target.entries[static_cast<std::size_t>(i - 1)])
      fail(Errc::internal_inconsistency, "recovered part does not reproduce the Fox vector");
  }
  if (!out.satisfies_support_constraint())
    fail(Errc::internal_inconsistency, "recovered part violates the support constraint");
  return out;
}

} // namespace metabelian
