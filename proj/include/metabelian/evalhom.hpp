#pragma once

// Evaluation homomorphisms at integer points, the discrimination search
// (find a point where finitely many nonzero polynomials stay nonzero and
// distinct polynomials stay distinct), and congruence of module elements
// modulo the evaluated relation lattice. The quotient of G' at a fully
// evaluated point is presented over Z[1/N], N = |prod alpha_i|, by the
// evaluated Jacobi relators; membership is decided through the Smith normal
// form after saturating the invariants at the primes of N.

#include <utility>
#include <vector>

#include "metabelian/commod.hpp"
#include "metabelian/laurent.hpp"
#include "metabelian/numeric.hpp"

namespace metabelian {
namespace evalhom {

struct EvalPoint {
  std::vector<Int> alphas;

  explicit EvalPoint(std::vector<Int> a) : alphas(std::move(a)) {
    for (const Int &v : alphas)
      if (v == 0) fail(Errc::zero_evaluation_point, "evaluation point has a zero entry");
  }

  int rank() const { return static_cast<int>(alphas.size()); }

  Int denominator_base() const {
    Int n = 1;
    for (const Int &v : alphas) n *= v;
    return n < 0 ? Int(-n) : n;
  }
};

// ---- discrimination ----

namespace detail {

// Substitutes a_v = value and clears the variable's negative exponents by a
// unit shift first, so nonzero-ness is preserved exactly.
inline LaurentPoly substitute_var(const LaurentPoly &p, int v, const Int &value) {
  const int n = p.rank();
  long long shift = -p.min_exponent(v);
  LaurentPoly out(n);
  for (const auto &[m, c] : p.terms()) {
    long long e = m.exponent(v) + shift;
    Monomial rest = m;
    rest.set_exponent(v, 0);
    out.add_term(rest, c * int_pow(value, static_cast<unsigned long long>(e)));
  }
  return out;
}

} // namespace detail

// Returns a point with every alpha_i nonzero at which every input polynomial
// is nonzero and distinct inputs take distinct values. Variables are fixed
// one at a time, last to first; each step substitutes the smallest integer
// from 1, -1, 2, -2, ... that keeps every polynomial (and every pairwise
// difference) nonzero. A substitution a_v = c kills a nonzero polynomial only
// when (a_v - c) divides it, so the search at each level is finite.
inline EvalPoint separating_point(const std::vector<LaurentPoly> &ps) {
  if (ps.empty()) fail(Errc::bad_input, "need at least one polynomial");
  const int n = ps[0].rank();
  std::vector<LaurentPoly> live;
  for (const LaurentPoly &p : ps) {
    if (p.rank() != n) fail(Errc::rank_mismatch, "polynomial ranks differ");
    if (p.is_zero()) fail(Errc::zero_polynomial, "cannot separate the zero polynomial");
    live.push_back(p);
  }
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t b = a + 1; b < ps.size(); ++b) {
      LaurentPoly diff = ps[a] - ps[b];
      if (!diff.is_zero()) live.push_back(diff);
    }
  std::vector<Int> alphas(static_cast<std::size_t>(n), 1);
  for (int v = n; v >= 1; --v) {
    for (long long step = 1;; ++step) {
      Int cand = (step % 2 == 1) ? Int((step + 1) / 2) : Int(-step / 2);
      std::vector<LaurentPoly> next;
      next.reserve(live.size());
      bool good = true;
      for (const LaurentPoly &p : live) {
        LaurentPoly q = detail::substitute_var(p, v, cand);
        if (q.is_zero()) {
          good = false;
          break;
        }
        next.push_back(std::move(q));
      }
      if (good) {
        alphas[static_cast<std::size_t>(v - 1)] = cand;
        live = std::move(next);
        break;
      }
    }
  }
  EvalPoint point(std::move(alphas));
  for (const LaurentPoly &p : ps) {
    if (eval_at(p, point.alphas) == 0)
      fail(Errc::internal_inconsistency, "separating point failed its contract");
  }
  return point;
}

// ---- Smith normal form over Z ----

using IntMatrix = std::vector<std::vector<Int>>;

inline IntMatrix identity_matrix(int n) {
  IntMatrix m(static_cast<std::size_t>(n), std::vector<Int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return m;
}

struct SmithForm {
  IntMatrix U;            // rows x rows, unimodular
  IntMatrix V;            // cols x cols, unimodular
  std::vector<Int> diag;  // invariant factors, d1 | d2 | ..., zeros trailing
  int rows = 0;
  int cols = 0;
};

// U * A * V = diag. Dimensions are passed explicitly so empty relator sets
// (rank 2) still carry the column count.
inline SmithForm smith_normal_form(IntMatrix a, int rows, int cols) {
  SmithForm s;
  s.rows = rows;
  s.cols = cols;
  s.U = identity_matrix(rows);
  s.V = identity_matrix(cols);
  auto row_sub = [&](int dst, int src, const Int &q) {
    for (int j = 0; j < cols; ++j) a[dst][j] -= q * a[src][j];
    for (int j = 0; j < rows; ++j) s.U[dst][j] -= q * s.U[src][j];
  };
  auto col_sub = [&](int dst, int src, const Int &q) {
    for (int i = 0; i < rows; ++i) a[i][dst] -= q * a[i][src];
    for (int i = 0; i < cols; ++i) s.V[i][dst] -= q * s.V[i][src];
  };
  auto row_swap = [&](int x, int y) {
    std::swap(a[x], a[y]);
    std::swap(s.U[x], s.U[y]);
  };
  auto col_swap = [&](int x, int y) {
    for (int i = 0; i < rows; ++i) std::swap(a[i][x], a[i][y]);
    for (int i = 0; i < cols; ++i) std::swap(s.V[i][x], s.V[i][y]);
  };
  auto row_negate = [&](int x) {
    for (int j = 0; j < cols; ++j) a[x][j] = -a[x][j];
    for (int j = 0; j < rows; ++j) s.U[x][j] = -s.U[x][j];
  };

  const int steps = rows < cols ? rows : cols;
  int t = 0;
  for (; t < steps; ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows && pi < 0; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != t) row_swap(pi, t);
    if (pj != t) col_swap(pj, t);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        while (a[i][t] != 0) {
          Int q = a[i][t] / a[t][t];
          if (q != 0) row_sub(i, t, q);
          if (a[i][t] == 0) break;
          row_swap(i, t);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        while (a[t][j] != 0) {
          Int q = a[t][j] / a[t][t];
          if (q != 0) col_sub(j, t, q);
          if (a[t][j] == 0) break;
          col_swap(j, t);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility chain: fold in any offending row and reduce again.
      bool fixed = true;
      for (int i = t + 1; i < rows && fixed; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_sub(t, i, Int(-1));
            fixed = false;
            break;
          }
      if (fixed) break;
    }
    if (a[t][t] < 0) row_negate(t);
    s.diag.push_back(a[t][t]);
  }
  while (static_cast<int>(s.diag.size()) < steps) s.diag.push_back(Int(0));
  return s;
}

// ---- the evaluated quotient of G' ----

struct QuotientPresentation {
  EvalPoint point;
  int rank;               // group rank n
  IntMatrix relators;     // C(n,3) x n(n-1)/2 evaluated Jacobi relators
  SmithForm smith;
  Int denominator_base;   // N

  int module_dim() const { return comm_pair_count(rank); }
  int free_rank() const {
    int nonzero = 0;
    for (const Int &d : smith.diag)
      if (d != 0) ++nonzero;
    return module_dim() - nonzero;
  }
};

inline QuotientPresentation quotient_presentation(int rank, EvalPoint point) {
  if (point.rank() != rank) fail(Errc::rank_mismatch, "point length differs from rank");
  const int d = comm_pair_count(rank);
  IntMatrix relators;
  for (int k = 3; k <= rank; ++k)
    for (int i = 2; i < k; ++i)
      for (int j = 1; j < i; ++j) {
        std::vector<Int> row(static_cast<std::size_t>(d), 0);
        auto at = [&](const CommIndex &c) -> Int & {
          return row[static_cast<std::size_t>(comm_pair_position(c))];
        };
        at(CommIndex(i, j)) = point.alphas[static_cast<std::size_t>(k - 1)] - 1;
        at(CommIndex(k, j)) = -(point.alphas[static_cast<std::size_t>(i - 1)] - 1);
        at(CommIndex(k, i)) = point.alphas[static_cast<std::size_t>(j - 1)] - 1;
        relators.push_back(std::move(row));
      }
  const int r = static_cast<int>(relators.size());
  SmithForm smith = smith_normal_form(relators, r, d);
  Int base = point.denominator_base();
  return QuotientPresentation{std::move(point), rank, std::move(relators),
                              std::move(smith), std::move(base)};
}

// Coefficientwise evaluation of a collected part, indexed in the canonical
// commutator order.
inline std::vector<Rat> module_image(const CollectedPart &u, const EvalPoint &point) {
  if (u.rank() != point.rank()) fail(Errc::rank_mismatch, "point length differs from rank");
  std::vector<Rat> img(static_cast<std::size_t>(comm_pair_count(u.rank())), Rat(0));
  for (const auto &[c, q] : u.beta())
    img[static_cast<std::size_t>(comm_pair_position(c))] = eval_at(q, point.alphas);
  return img;
}

inline std::vector<Rat> module_image(const RawModuleExpr &e, const EvalPoint &point) {
  if (e.rank() != point.rank()) fail(Errc::rank_mismatch, "point length differs from rank");
  std::vector<Rat> img(static_cast<std::size_t>(comm_pair_count(e.rank())), Rat(0));
  for (const auto &[c, q] : e.factors())
    img[static_cast<std::size_t>(comm_pair_position(c))] += eval_at(q, point.alphas);
  return img;
}

namespace detail {

// Strips from d every prime factor it shares with n (localization at n
// inverts exactly those primes).
inline Int strip_primes_of(Int d, const Int &n) {
  if (d == 0) return d;
  if (d < 0) d = -d;
  Int g = boost::multiprecision::gcd(d, n);
  while (g > 1) {
    d /= g;
    g = boost::multiprecision::gcd(d, n);
  }
  return d;
}

} // namespace detail

// Decides whether the difference of the two images lies in the Z[1/N]-span
// of the relator rows: clear denominators (the scale is a unit in Z[1/N]),
// change basis by V, then test divisibility by the N-saturated invariants.
inline bool congruent_mod(const CollectedPart &u, const CollectedPart &v,
                          const QuotientPresentation &qp) {
  u.same_rank(v);
  if (u.rank() != qp.rank) fail(Errc::rank_mismatch, "parts do not match presentation rank");
  std::vector<Rat> iu = module_image(u, qp.point);
  std::vector<Rat> iv = module_image(v, qp.point);
  const int d = qp.module_dim();
  Int scale = 1;
  for (int k = 0; k < d; ++k) {
    Rat diff = iu[static_cast<std::size_t>(k)] - iv[static_cast<std::size_t>(k)];
    scale = boost::multiprecision::lcm(scale, Int(boost::multiprecision::denominator(diff)));
  }
  std::vector<Int> w(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    Rat scaled = (iu[static_cast<std::size_t>(k)] - iv[static_cast<std::size_t>(k)]) * Rat(scale);
    if (boost::multiprecision::denominator(scaled) != 1)
      fail(Errc::internal_inconsistency, "denominator clearing failed");
    w[static_cast<std::size_t>(k)] = boost::multiprecision::numerator(scaled);
  }
  // w' = w * V, then w in span iff d_i | w'_i (after N-saturation) and the
  // coordinates beyond the invariants vanish.
  for (int j = 0; j < d; ++j) {
    Int wj = 0;
    for (int k = 0; k < d; ++k) wj += w[static_cast<std::size_t>(k)] * qp.smith.V[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
    Int divisor = j < static_cast<int>(qp.smith.diag.size()) ? qp.smith.diag[static_cast<std::size_t>(j)] : Int(0);
    divisor = detail::strip_primes_of(divisor, qp.denominator_base);
    if (divisor == 0) {
      if (wj != 0) return false;
    } else if (wj % divisor != 0) {
      return false;
    }
  }
  return true;
}

inline bool congruent_mod(const CollectedPart &u, const CollectedPart &v,
                          const EvalPoint &point) {
  return congruent_mod(u, v, quotient_presentation(u.rank(), point));
}

inline CollectedPart scaled_part(const CollectedPart &g, const Int &scalar) {
  CollectedPart r(g.rank());
  for (const auto &[c, q] : g.beta()) r.accumulate(c, q * scalar);
  return r;
}

// Forward direction of the evaluated action test: if g^P = h in the module,
// then g^(P(alpha)) is congruent to h modulo the evaluated relation lattice.
// P must evaluate to an integer at the point; otherwise the caller is
// directed to the two-sided form below.
inline bool evaluated_action_check(const CollectedPart &g, const LaurentPoly &P,
                          const CollectedPart &h, const QuotientPresentation &qp) {
  Rat value = eval_at(P, qp.point.alphas);
  if (boost::multiprecision::denominator(value) != 1)
    fail(Errc::non_integer_exponent,
         "P has a non-integer value at the point; use the two-sided form");
  return congruent_mod(scaled_part(g, Int(boost::multiprecision::numerator(value))), h, qp);
}

inline bool evaluated_action_check(const CollectedPart &g, const LaurentPoly &P,
                          const CollectedPart &h, const EvalPoint &point) {
  return evaluated_action_check(g, P, h, quotient_presentation(g.rank(), point));
}

// Two-sided form for Laurent P = P0 / a^kbar with candidate witness f:
// g^(P0(alpha)) and h^(alpha^kbar) must both be congruent to f.
inline bool evaluated_action_check_two_sided(const CollectedPart &g, const LaurentPoly &P,
                                    const CollectedPart &h, const CollectedPart &f,
                                    const QuotientPresentation &qp) {
  CanonicalFraction cf = canonical_fraction(P);
  Rat v0 = eval_at(cf.numerator, qp.point.alphas);
  if (boost::multiprecision::denominator(v0) != 1)
    fail(Errc::internal_inconsistency, "cleared numerator must evaluate to an integer");
  Int e0 = boost::multiprecision::numerator(v0);
  Int m = 1;
  for (int i = 1; i <= qp.rank; ++i) {
    long long k = cf.denominator.exponent(i);
    for (long long s = 0; s < k; ++s) m *= qp.point.alphas[static_cast<std::size_t>(i - 1)];
  }
  return congruent_mod(scaled_part(g, e0), f, qp) &&
         congruent_mod(scaled_part(h, m), f, qp);
}

} // namespace evalhom
} // namespace metabelian
