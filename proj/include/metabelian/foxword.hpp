#pragma once

// Fox derivatives d_i : ZG -> Z(G/G') on words, the main identity
//   sum_i d_i(w) (a_i - 1) = wbar - 1,
// and the Magnus-style equality oracle built from them: two words define the
// same element of the free metabelian group iff their abelianizations agree
// and all Fox derivatives of w1 w2^-1 vanish. The oracle never touches the
// normal-form code paths, which is the point of keeping it here.

#include <vector>

#include "metabelian/laurent.hpp"
#include "metabelian/word.hpp"

namespace metabelian {

// d_i(w) by left-to-right accumulation: the letter x_k^e contributes
// prefix * (a_k^e - 1)/(a_k - 1) when k = i and multiplies the running
// prefix by a_k^e.
inline LaurentPoly fox(const GroupWord &w, int i) {
  if (i < 1 || i > w.rank()) fail(Errc::bad_index, "fox derivative index out of range");
  LaurentPoly d(w.rank());
  Monomial prefix(w.rank());
  for (const Letter &l : w.letters()) {
    if (l.index == i) {
      d += geometric_sum(Monomial::variable(w.rank(), l.index), l.exponent).shifted(prefix);
    }
    prefix = prefix * Monomial::variable(w.rank(), l.index, l.exponent);
  }
  return d;
}

struct FoxVector {
  std::vector<LaurentPoly> entries; // entries[i-1] = d_i(w)
};

inline FoxVector fox_all(const GroupWord &w) {
  FoxVector v;
  v.entries.reserve(static_cast<std::size_t>(w.rank()));
  for (int i = 1; i <= w.rank(); ++i) v.entries.push_back(LaurentPoly(w.rank()));
  Monomial prefix(w.rank());
  for (const Letter &l : w.letters()) {
    v.entries[static_cast<std::size_t>(l.index - 1)] +=
        geometric_sum(Monomial::variable(w.rank(), l.index), l.exponent).shifted(prefix);
    prefix = prefix * Monomial::variable(w.rank(), l.index, l.exponent);
  }
  return v;
}

inline bool main_identity_holds(const GroupWord &w) {
  FoxVector v = fox_all(w);
  LaurentPoly sum(w.rank());
  for (int i = 1; i <= w.rank(); ++i) {
    LaurentPoly ai_minus_1 =
        LaurentPoly::variable(w.rank(), i) - LaurentPoly::constant(w.rank(), 1);
    sum += v.entries[static_cast<std::size_t>(i - 1)] * ai_minus_1;
  }
  LaurentPoly rhs = LaurentPoly::monomial(abelianization(w)) - LaurentPoly::constant(w.rank(), 1);
  return sum == rhs;
}

// The independent equality oracle (Magnus embedding).
inline bool magnus_equal(const GroupWord &w1, const GroupWord &w2) {
  if (w1.rank() != w2.rank()) fail(Errc::rank_mismatch, "word ranks differ");
  if (abelianization(w1) != abelianization(w2)) return false;
  GroupWord diff = w1 * w2.inverse();
  FoxVector v = fox_all(diff);
  for (const LaurentPoly &p : v.entries)
    if (!p.is_zero()) return false;
  return true;
}

} // namespace metabelian
