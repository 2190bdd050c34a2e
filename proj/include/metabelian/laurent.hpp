#pragma once

// Exact arithmetic in the Laurent polynomial ring Z[a1^+-1, ..., an^+-1]:
// sparse canonical representation, geometric sums, exact division, the
// involution a -> a^-1, retractions a_i -> 1, integer-point evaluation and
// the canonical fraction P / a^beta with gcd(P, a^beta) = 1.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "metabelian/errors.hpp"
#include "metabelian/numeric.hpp"

namespace metabelian {

// Exponent vector of a Laurent monomial a1^e1 ... an^en. Variable indices
// are 1-based throughout the library. The rank is the vector length and is
// fixed at construction; mixing ranks is a hard error in every operation.
class Monomial {
public:
  explicit Monomial(int rank) : e_(check_rank(rank), 0) {}
  explicit Monomial(std::vector<long long> exponents) : e_(std::move(exponents)) {
    check_rank(static_cast<int>(e_.size()));
  }

  static Monomial variable(int rank, int i, long long e = 1) {
    Monomial m(rank);
    m.set_exponent(i, e);
    return m;
  }

  int rank() const { return static_cast<int>(e_.size()); }

  long long exponent(int i) const {
    check_index(i);
    return e_[static_cast<std::size_t>(i - 1)];
  }
  void set_exponent(int i, long long e) {
    check_index(i);
    e_[static_cast<std::size_t>(i - 1)] = e;
  }

  const std::vector<long long> &exponents() const { return e_; }

  bool is_identity() const {
    return std::all_of(e_.begin(), e_.end(), [](long long v) { return v == 0; });
  }

  long long degree() const {
    long long d = 0;
    for (long long v : e_) d += v;
    return d;
  }

  Monomial operator*(const Monomial &o) const {
    same_rank(o);
    Monomial r(*this);
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
    return r;
  }

  Monomial inverse() const {
    Monomial r(*this);
    for (auto &v : r.e_) v = -v;
    return r;
  }

  Monomial pow(long long k) const {
    Monomial r(*this);
    for (auto &v : r.e_) v *= k;
    return r;
  }

  bool operator==(const Monomial &o) const { return e_ == o.e_; }
  bool operator!=(const Monomial &o) const { return !(*this == o); }

  void same_rank(const Monomial &o) const {
    if (rank() != o.rank())
      fail(Errc::rank_mismatch, "monomials of rank " + std::to_string(rank()) +
                                    " and " + std::to_string(o.rank()));
  }

private:
  static int check_rank(int n) {
    if (n < 1) fail(Errc::bad_input, "rank must be >= 1");
    return n;
  }
  void check_index(int i) const {
    if (i < 1 || i > rank())
      fail(Errc::bad_index, "variable index " + std::to_string(i) +
                                " out of range 1.." + std::to_string(rank()));
  }

  std::vector<long long> e_;
};

// Canonical monomial order: graded lexicographic, total degree first, then
// plain integer comparison entrywise. This order fixes term iteration,
// printing, and the nu-coding of polynomials.
struct MonomialLess {
  bool operator()(const Monomial &a, const Monomial &b) const {
    long long da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exponents() < b.exponents();
  }
};

class LaurentPoly {
public:
  // Terms are kept sorted in the canonical order with no zero coefficients;
  // a flat vector beats a node container by a wide margin here.
  using TermList = std::vector<std::pair<Monomial, Int>>;

  explicit LaurentPoly(int rank) : rank_(rank) {
    if (rank < 1) fail(Errc::bad_input, "rank must be >= 1");
  }

  static LaurentPoly zero(int rank) { return LaurentPoly(rank); }

  static LaurentPoly constant(int rank, Int c) {
    LaurentPoly p(rank);
    p.add_term(Monomial(rank), std::move(c));
    return p;
  }

  static LaurentPoly monomial(Monomial m, Int c = 1) {
    LaurentPoly p(m.rank());
    p.add_term(std::move(m), std::move(c));
    return p;
  }

  static LaurentPoly variable(int rank, int i, long long e = 1) {
    return monomial(Monomial::variable(rank, i, e));
  }

  int rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermList &terms() const { return terms_; }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.is_identity());
  }
  // Value of the constant term (zero if absent).
  Int constant_term() const {
    auto it = locate(Monomial(rank_));
    return it == terms_.end() ? Int(0) : it->second;
  }

  // True when the poly is a single term with coefficient +-1, i.e. a unit.
  bool is_unit_monomial() const {
    return terms_.size() == 1 &&
           (terms_.begin()->second == 1 || terms_.begin()->second == -1);
  }

  void add_term(Monomial m, Int c) {
    if (m.rank() != rank_) fail(Errc::rank_mismatch, "term rank differs from polynomial rank");
    if (c == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, term_less);
    if (it != terms_.end() && it->first == m) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    } else {
      terms_.insert(it, {std::move(m), std::move(c)});
    }
  }

  LaurentPoly &operator+=(const LaurentPoly &o) { return merge_in(o, false); }
  LaurentPoly &operator-=(const LaurentPoly &o) { return merge_in(o, true); }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b) { return a -= b; }

  LaurentPoly operator-() const {
    LaurentPoly r(rank_);
    r.terms_.reserve(terms_.size());
    for (const auto &[m, c] : terms_) r.terms_.emplace_back(m, -c);
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b) {
    a.same_rank(b);
    LaurentPoly r(a.rank_);
    if (a.is_zero() || b.is_zero()) return r;
    if (b.terms_.size() == 1) return a.scaled_by_term(b.terms_.front());
    if (a.terms_.size() == 1) return b.scaled_by_term(a.terms_.front());
    TermList prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto &[ma, ca] : a.terms_)
      for (const auto &[mb, cb] : b.terms_) prod.emplace_back(ma * mb, ca * cb);
    std::sort(prod.begin(), prod.end(), term_less_pair);
    r.terms_.reserve(prod.size());
    for (auto &term : prod) {
      if (!r.terms_.empty() && r.terms_.back().first == term.first) {
        r.terms_.back().second += term.second;
        if (r.terms_.back().second == 0) r.terms_.pop_back();
      } else {
        r.terms_.push_back(std::move(term));
      }
    }
    return r;
  }

  LaurentPoly &operator*=(const LaurentPoly &o) { return *this = *this * o; }

  LaurentPoly &operator*=(const Int &c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto &[m, coef] : terms_) coef *= c;
    }
    return *this;
  }
  friend LaurentPoly operator*(LaurentPoly a, const Int &c) { return a *= c; }
  friend LaurentPoly operator*(const Int &c, LaurentPoly a) { return a *= c; }

  // Multiplication by a unit monomial: shifts every exponent vector, which
  // preserves the canonical order.
  LaurentPoly shifted(const Monomial &m) const {
    if (m.rank() != rank_) fail(Errc::rank_mismatch, "shift monomial rank differs");
    LaurentPoly r(rank_);
    r.terms_.reserve(terms_.size());
    for (const auto &[mm, c] : terms_) r.terms_.emplace_back(mm * m, c);
    return r;
  }

  bool operator==(const LaurentPoly &o) const {
    return rank_ == o.rank_ && terms_ == o.terms_;
  }
  bool operator!=(const LaurentPoly &o) const { return !(*this == o); }

  void same_rank(const LaurentPoly &o) const {
    if (rank_ != o.rank_)
      fail(Errc::rank_mismatch, "polynomials of rank " + std::to_string(rank_) +
                                    " and " + std::to_string(o.rank_));
  }

  // Smallest a_i-exponent over all terms; 0 for the zero polynomial.
  long long min_exponent(int i) const {
    long long m = 0;
    bool first = true;
    for (const auto &[mono, c] : terms_) {
      (void)c;
      long long e = mono.exponent(i);
      if (first || e < m) m = e;
      first = false;
    }
    return m;
  }

private:
  static bool term_less(const std::pair<Monomial, Int> &a, const Monomial &b) {
    return MonomialLess{}(a.first, b);
  }
  static bool term_less_pair(const std::pair<Monomial, Int> &a,
                             const std::pair<Monomial, Int> &b) {
    return MonomialLess{}(a.first, b.first);
  }

  TermList::const_iterator locate(const Monomial &m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, term_less);
    if (it != terms_.end() && it->first == m) return it;
    return terms_.end();
  }

  LaurentPoly scaled_by_term(const std::pair<Monomial, Int> &t) const {
    LaurentPoly r(rank_);
    r.terms_.reserve(terms_.size());
    for (const auto &[m, c] : terms_) r.terms_.emplace_back(m * t.first, c * t.second);
    return r;
  }

  LaurentPoly &merge_in(const LaurentPoly &o, bool negate) {
    same_rank(o);
    if (o.terms_.empty()) return *this;
    TermList merged;
    merged.reserve(terms_.size() + o.terms_.size());
    MonomialLess less;
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() ||
          (i < terms_.size() && less(terms_[i].first, o.terms_[j].first))) {
        merged.push_back(std::move(terms_[i++]));
      } else if (i == terms_.size() || less(o.terms_[j].first, terms_[i].first)) {
        merged.emplace_back(o.terms_[j].first,
                            negate ? Int(-o.terms_[j].second) : o.terms_[j].second);
        ++j;
      } else {
        Int c = negate ? Int(terms_[i].second - o.terms_[j].second)
                       : Int(terms_[i].second + o.terms_[j].second);
        if (c != 0) merged.emplace_back(std::move(terms_[i].first), std::move(c));
        ++i;
        ++j;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }

  int rank_;
  TermList terms_;
};

// (g^delta - 1) / (g - 1) for a nontrivial monomial g: the polynomial
// governing powers inside commutators. For delta >= 0 this is
// 1 + g + ... + g^(delta-1); for delta < 0 it is -(g^delta + ... + g^-1).
inline LaurentPoly geometric_sum(const Monomial &g, long long delta) {
  if (g.is_identity())
    fail(Errc::trivial_base, "geometric sum over the identity monomial");
  LaurentPoly r(g.rank());
  if (delta >= 0) {
    for (long long k = 0; k < delta; ++k) r.add_term(g.pow(k), 1);
  } else {
    for (long long k = delta; k < 0; ++k) r.add_term(g.pow(k), -1);
  }
  return r;
}

namespace detail {

// Divide polynomials with nonnegative exponents by leading-term reduction in
// the canonical order. Exactness is decided, not assumed.
inline bool poly_divide_nonneg(const LaurentPoly &p, const LaurentPoly &d,
                               LaurentPoly &quotient) {
  LaurentPoly r = p;
  LaurentPoly q(p.rank());
  const auto &dlead = *d.terms().rbegin();
  while (!r.is_zero()) {
    const auto &rlead = *r.terms().rbegin();
    std::vector<long long> diff(static_cast<std::size_t>(p.rank()));
    for (int i = 1; i <= p.rank(); ++i) {
      long long e = rlead.first.exponent(i) - dlead.first.exponent(i);
      if (e < 0) return false;
      diff[static_cast<std::size_t>(i - 1)] = e;
    }
    if (rlead.second % dlead.second != 0) return false;
    Monomial qm{std::move(diff)};
    Int qc = rlead.second / dlead.second;
    q.add_term(qm, qc);
    r -= LaurentPoly::monomial(qm, qc) * d;
  }
  quotient = q;
  return true;
}

} // namespace detail

// Exact division in the Laurent ring: returns q with q * d = p, or raises
// NotDivisible. Both operands are shifted to nonnegative exponents by unit
// monomials first; divisibility is invariant under such shifts.
inline LaurentPoly divide_exact(const LaurentPoly &p, const LaurentPoly &d) {
  p.same_rank(d);
  if (d.is_zero()) fail(Errc::division_by_zero, "division by the zero polynomial");
  if (p.is_zero()) return LaurentPoly::zero(p.rank());
  const int n = p.rank();
  Monomial shift_p(n), shift_d(n);
  for (int i = 1; i <= n; ++i) {
    shift_p.set_exponent(i, -p.min_exponent(i));
    shift_d.set_exponent(i, -d.min_exponent(i));
  }
  LaurentPoly q(n);
  if (!detail::poly_divide_nonneg(p.shifted(shift_p), d.shifted(shift_d), q))
    fail(Errc::not_divisible, "polynomial is not divisible");
  return q.shifted(shift_d * shift_p.inverse());
}

// The ring automorphism sending every monomial to its inverse (a_inv).
inline LaurentPoly involute(const LaurentPoly &p) {
  LaurentPoly r(p.rank());
  for (const auto &[m, c] : p.terms()) r.add_term(m.inverse(), c);
  return r;
}

using IndexSet = std::set<int>;

inline IndexSet full_index_set(int n) {
  IndexSet s;
  for (int i = 1; i <= n; ++i) s.insert(i);
  return s;
}

// Ring homomorphism a_i -> 1 for i not in I.
inline LaurentPoly retract(const LaurentPoly &p, const IndexSet &I) {
  LaurentPoly r(p.rank());
  for (const auto &[m, c] : p.terms()) {
    Monomial rm(p.rank());
    for (int i : I)
      if (i >= 1 && i <= p.rank()) rm.set_exponent(i, m.exponent(i));
    r.add_term(rm, c);
  }
  return r;
}

// Indices of the variables actually occurring in p.
inline IndexSet support(const LaurentPoly &p) {
  IndexSet s;
  for (const auto &[m, c] : p.terms()) {
    (void)c;
    for (int i = 1; i <= p.rank(); ++i)
      if (m.exponent(i) != 0) s.insert(i);
  }
  return s;
}

// Substitution a_i -> alpha_i, all alpha_i nonzero; exact rational value.
inline Rat eval_at(const LaurentPoly &p, const std::vector<Int> &alphas) {
  if (static_cast<int>(alphas.size()) != p.rank())
    fail(Errc::rank_mismatch, "evaluation point length differs from rank");
  for (const Int &a : alphas)
    if (a == 0) fail(Errc::zero_evaluation_point, "evaluation point has a zero entry");
  Rat value = 0;
  for (const auto &[m, c] : p.terms()) {
    Rat term(c);
    for (int i = 1; i <= p.rank(); ++i) {
      long long e = m.exponent(i);
      if (e != 0) term *= rat_pow(alphas[static_cast<std::size_t>(i - 1)], e);
    }
    value += term;
  }
  return value;
}

struct CanonicalFraction {
  LaurentPoly numerator;   // nonnegative exponents
  Monomial denominator;    // nonnegative exponents, gcd(numerator, a^den) = 1
};

// q = numerator / a^denominator with the denominator minimal: beta_i is the
// defect of the smallest a_i-exponent below zero.
inline CanonicalFraction canonical_fraction(const LaurentPoly &q) {
  const int n = q.rank();
  Monomial beta(n);
  for (int i = 1; i <= n; ++i) beta.set_exponent(i, std::max(0LL, -q.min_exponent(i)));
  return CanonicalFraction{q.shifted(beta), beta};
}

// Integer power in the ring; negative exponents require a unit monomial base.
inline LaurentPoly poly_pow(const LaurentPoly &p, long long k) {
  if (k < 0) {
    if (p.term_count() != 1)
      fail(Errc::not_divisible, "negative power of a non-monomial polynomial");
    const auto &[m, c] = *p.terms().begin();
    if (c != 1 && c != -1)
      fail(Errc::not_divisible, "negative power of a non-unit coefficient");
    Int coef = (c == -1 && (k % 2) != 0) ? -1 : 1;
    return LaurentPoly::monomial(m.pow(k), coef);
  }
  LaurentPoly r = LaurentPoly::constant(p.rank(), 1);
  LaurentPoly b = p;
  unsigned long long e = static_cast<unsigned long long>(k);
  while (e != 0) {
    if (e & 1) r *= b;
    if (e >>= 1) b *= b;
  }
  return r;
}

} // namespace metabelian
