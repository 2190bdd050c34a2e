#pragma once

// Group arithmetic on normal forms. An element of the free metabelian group
// of rank n is stored as
//   g = x_1^g1 ... x_n^gn * prod_{j<i} [x_i,x_j]^beta_ij(a_1..a_i)
// with the exponent vector gamma and the collected part beta. Multiplication
// moves the second factor's generator powers to the left; the commutator
// corrections picked up along the way form block_product_part below, and the
// first factor's part is conjugated by the second factor's abelianization.

#include <cstdlib>
#include <vector>

#include "metabelian/commod.hpp"
#include "metabelian/foxword.hpp"
#include "metabelian/laurent.hpp"
#include "metabelian/word.hpp"

namespace metabelian {

class Element {
public:
  explicit Element(int rank)
      : gamma_(static_cast<std::size_t>(rank), 0), part_(rank) {
    if (rank < 1) fail(Errc::bad_input, "rank must be >= 1");
  }

  Element(std::vector<long long> gamma, CollectedPart part)
      : gamma_(std::move(gamma)), part_(std::move(part)) {
    if (gamma_.size() != static_cast<std::size_t>(part_.rank()))
      fail(Errc::rank_mismatch, "gamma length differs from part rank");
  }

  static Element identity(int rank) { return Element(rank); }

  static Element generator(int rank, int i, long long e = 1) {
    Element g(rank);
    if (i < 1 || i > rank)
      fail(Errc::bad_index, "generator index " + std::to_string(i) +
                                " out of range 1.." + std::to_string(rank));
    g.gamma_[static_cast<std::size_t>(i - 1)] = e;
    return g;
  }

  static Element from_part(CollectedPart part) {
    std::vector<long long> gamma(static_cast<std::size_t>(part.rank()), 0);
    return Element(std::move(gamma), std::move(part));
  }

  int rank() const { return part_.rank(); }
  const std::vector<long long> &gamma() const { return gamma_; }
  long long gamma_at(int i) const { return gamma_.at(static_cast<std::size_t>(i - 1)); }
  const CollectedPart &part() const { return part_; }

  bool is_identity() const { return in_commutant() && part_.empty(); }
  bool in_commutant() const {
    for (long long v : gamma_)
      if (v != 0) return false;
    return true;
  }

  // Image in the abelianization as a monomial in a_1..a_n.
  Monomial abelianization() const { return Monomial(gamma_); }

  bool operator==(const Element &o) const {
    return gamma_ == o.gamma_ && part_ == o.part_;
  }
  bool operator!=(const Element &o) const { return !(*this == o); }

private:
  std::vector<long long> gamma_;
  CollectedPart part_;
};

// Commutator corrections of the block product
//   x^gamma * x^delta = x^(gamma+delta) * (this product).
// The factor at (i,j) is [x_i,x_j] raised to
//   eps_{a_i}(gamma_i) * eps_{a_j}(delta_j) * prod_{l>i} a_l^gamma_l * prod_{l>j} a_l^delta_l,
// where eps_a(z) = (a^z - 1)/(a - 1). The two trailing monomials account for
// the generator blocks each commutator still has to cross on its way to the
// right end of the normal form.
inline RawModuleExpr block_product_part(const std::vector<long long> &gamma,
                                        const std::vector<long long> &delta) {
  if (gamma.size() != delta.size()) fail(Errc::rank_mismatch, "exponent blocks of different rank");
  const int n = static_cast<int>(gamma.size());
  RawModuleExpr out(n);
  for (int i = 2; i <= n; ++i) {
    const long long gi = gamma[static_cast<std::size_t>(i - 1)];
    if (gi == 0) continue;
    LaurentPoly eps_i = geometric_sum(Monomial::variable(n, i), gi);
    for (int j = 1; j < i; ++j) {
      const long long dj = delta[static_cast<std::size_t>(j - 1)];
      if (dj == 0) continue;
      LaurentPoly eps_j = geometric_sum(Monomial::variable(n, j), dj);
      Monomial tail(n);
      for (int l = 1; l <= n; ++l) {
        long long e = 0;
        if (l > i) e += gamma[static_cast<std::size_t>(l - 1)];
        if (l > j) e += delta[static_cast<std::size_t>(l - 1)];
        tail.set_exponent(l, e);
      }
      out.push(CommIndex(i, j), (eps_i * eps_j).shifted(tail));
    }
  }
  return out;
}

inline Element mul(const Element &g, const Element &h) {
  if (g.rank() != h.rank()) fail(Errc::rank_mismatch, "elements of different rank");
  const int n = g.rank();
  std::vector<long long> gamma(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    gamma[static_cast<std::size_t>(i)] =
        g.gamma()[static_cast<std::size_t>(i)] + h.gamma()[static_cast<std::size_t>(i)];

  RawModuleExpr raw = block_product_part(g.gamma(), h.gamma());
  const Monomial shift(h.gamma());
  for (const auto &[c, q] : g.part().beta()) raw.push(c, q.shifted(shift));
  raw.append(to_raw(h.part()));
  return Element(std::move(gamma), collect(raw));
}

// Closed-form inverse: with delta = -gamma, solving g * g^-1 = 1 for the
// part gives nu = -(block corrections + conjugated beta), collected.
inline Element inv(const Element &g) {
  const int n = g.rank();
  std::vector<long long> delta(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) delta[static_cast<std::size_t>(i)] = -g.gamma()[static_cast<std::size_t>(i)];
  RawModuleExpr raw = block_product_part(g.gamma(), delta);
  const Monomial shift{std::vector<long long>(delta)};
  for (const auto &[c, q] : g.part().beta()) raw.push(c, q.shifted(shift));
  return Element(std::move(delta), mneg(collect(raw)));
}

inline Element pow(const Element &g, long long m) {
  if (m < 0) return inv(pow(g, -m));
  Element acc = Element::identity(g.rank());
  Element base = g;
  unsigned long long e = static_cast<unsigned long long>(m);
  while (e != 0) {
    if (e & 1) acc = mul(acc, base);
    if (e >>= 1) base = mul(base, base);
  }
  return acc;
}

inline Element conjugate(const Element &g, const Element &h) {
  return mul(mul(inv(h), g), h);
}

inline Element commutator(const Element &g, const Element &h) {
  return mul(mul(inv(g), inv(h)), mul(g, h));
}

inline Element evaluate_word(const GroupWord &w) {
  Element acc = Element::identity(w.rank());
  for (const Letter &l : w.letters())
    acc = mul(acc, Element::generator(w.rank(), l.index, l.exponent));
  return acc;
}

// The residue c-part of (wg)^m = w^m g^m [c,w] for g in G': returns
// (w^m g^m)^-1 (wg)^m, which always lies in the commutant.
inline Element power_residue(const Element &w, const Element &g, long long m) {
  if (w.rank() != g.rank()) fail(Errc::rank_mismatch, "elements of different rank");
  if (!g.in_commutant()) fail(Errc::not_in_commutant, "second operand must lie in G'");
  Element u = mul(inv(mul(pow(w, m), pow(g, m))), pow(mul(w, g), m));
  if (!u.in_commutant())
    fail(Errc::internal_inconsistency, "power residue fell outside the commutant");
  return u;
}

// f(a, b) with (a-1) f = (a^d b^d - 1)/(ab - 1) + (1 - b^d)/(b - 1); for
// d >= 1 this expands to sum_{t=1}^{d-1} b^t (a^t - 1)/(a - 1).
inline LaurentPoly delta_comm_poly(const Monomial &a, const Monomial &b, long long delta) {
  a.same_rank(b);
  if (a.is_identity() || b.is_identity() || (a * b).is_identity())
    fail(Errc::trivial_base, "delta commutator polynomial needs a, b, ab nontrivial");
  LaurentPoly numerator = geometric_sum(a * b, delta) - geometric_sum(b, delta);
  LaurentPoly a_minus_1 =
      LaurentPoly::monomial(a) - LaurentPoly::constant(a.rank(), 1);
  return divide_exact(numerator, a_minus_1);
}

// Checks y^-d x^-d (xy)^d = [x,y]^(-f(xbar, ybar)) as a structural Element
// equality.
inline bool delta_commutator_check(const Element &x, const Element &y, long long delta) {
  if (x.rank() != y.rank()) fail(Errc::rank_mismatch, "elements of different rank");
  const Monomial a = x.abelianization();
  const Monomial b = y.abelianization();
  if (a.is_identity() || b.is_identity() || (a * b).is_identity())
    fail(Errc::trivial_base, "delta commutator check needs nondegenerate abelianizations");
  Element lhs = mul(mul(pow(y, -delta), pow(x, -delta)), pow(mul(x, y), delta));
  LaurentPoly f = delta_comm_poly(a, b, delta);
  Element rhs = Element::from_part(mact(commutator(x, y).part(), -f));
  return lhs == rhs;
}

// The exponential-group axioms with integer exponents, checked with pow:
// g^1 = g, g^0 = 1, 1^a = 1, g^(a+b) = g^a g^b, g^(ab) = (g^a)^b,
// (h^-1 g h)^a = h^-1 g^a h, and distributivity on commuting pairs.
inline bool check_exp_axioms(const Element &g, const Element &h, long long alpha,
                             long long beta) {
  if (g.rank() != h.rank()) fail(Errc::rank_mismatch, "elements of different rank");
  const Element one = Element::identity(g.rank());
  if (pow(g, 1) != g) return false;
  if (pow(g, 0) != one) return false;
  if (pow(one, alpha) != one) return false;
  if (pow(g, alpha + beta) != mul(pow(g, alpha), pow(g, beta))) return false;
  if (pow(g, alpha * beta) != pow(pow(g, alpha), beta)) return false;
  if (pow(conjugate(g, h), alpha) != conjugate(pow(g, alpha), h)) return false;
  if (commutator(g, h) == one) {
    if (pow(mul(g, h), alpha) != mul(pow(g, alpha), pow(h, alpha))) return false;
  }
  return true;
}

enum class BasisCertificate {
  FailAbelianization,
  FailJacobianUnit,
  PassNecessary,
};

inline const char *to_string(BasisCertificate c) {
  switch (c) {
  case BasisCertificate::FailAbelianization: return "FailAbelianization";
  case BasisCertificate::FailJacobianUnit: return "FailJacobianUnit";
  case BasisCertificate::PassNecessary: return "PassNecessary";
  }
  return "?";
}

namespace detail {

inline Int int_matrix_det(std::vector<std::vector<Int>> m) {
  const std::size_t n = m.size();
  // Fraction-free Gaussian elimination (Bareiss).
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline LaurentPoly poly_matrix_det(const std::vector<std::vector<LaurentPoly>> &m,
                                   std::vector<std::size_t> cols, std::size_t row) {
  const int rank = m[0][0].rank();
  if (cols.empty()) return LaurentPoly::constant(rank, 1);
  LaurentPoly det(rank);
  for (std::size_t t = 0; t < cols.size(); ++t) {
    std::vector<std::size_t> rest;
    for (std::size_t s = 0; s < cols.size(); ++s)
      if (s != t) rest.push_back(cols[s]);
    LaurentPoly minor = poly_matrix_det(m, rest, row + 1);
    LaurentPoly term = m[row][cols[t]] * minor;
    if (t % 2 == 0) det += term;
    else det -= term;
  }
  return det;
}

} // namespace detail

// Necessary conditions for a tuple of words to form a basis: the
// abelianization exponent matrix must be unimodular and the Fox matrix
// (d_j(z_i)) must have unit determinant (plus or minus one monomial). This
// never claims sufficiency.
inline BasisCertificate basis_certificate(const std::vector<GroupWord> &z) {
  if (z.empty()) fail(Errc::bad_input, "empty word tuple");
  const int n = z[0].rank();
  if (static_cast<int>(z.size()) != n)
    fail(Errc::rank_mismatch, "need exactly rank-many words");
  std::vector<std::vector<Int>> ab(static_cast<std::size_t>(n),
                                   std::vector<Int>(static_cast<std::size_t>(n), 0));
  for (int i = 1; i <= n; ++i) {
    if (z[static_cast<std::size_t>(i - 1)].rank() != n)
      fail(Errc::rank_mismatch, "word ranks differ");
    Monomial m = abelianization(z[static_cast<std::size_t>(i - 1)]);
    for (int j = 1; j <= n; ++j)
      ab[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = m.exponent(j);
  }
  Int det = detail::int_matrix_det(ab);
  if (det != 1 && det != -1) return BasisCertificate::FailAbelianization;

  std::vector<std::vector<LaurentPoly>> fx;
  fx.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    std::vector<LaurentPoly> row;
    row.reserve(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) row.push_back(fox(z[static_cast<std::size_t>(i - 1)], j));
    fx.push_back(std::move(row));
  }
  std::vector<std::size_t> cols(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = j;
  LaurentPoly jac = detail::poly_matrix_det(fx, cols, 0);
  if (!jac.is_unit_monomial()) return BasisCertificate::FailJacobianUnit;
  return BasisCertificate::PassNecessary;
}

} // namespace metabelian
