#pragma once

// The commutant G' in collected coordinates. Elements of G' are products of
// commutators [x_i, x_j] (j < i) with Laurent polynomial exponents; the
// collected form restricts the exponent of [x_i, x_j] to the variables
// a_1..a_i, and the collection algorithm enforces that constraint through
// the generalized Jacobi rewriting
//   [x_i,x_j]^(a_k^d - 1) = [x_k,x_j]^((a_i-1)e) [x_k,x_i]^((1-a_j)e),
// e = (a_k^d - 1)/(a_k - 1), for j < i < k.

#include <map>
#include <utility>
#include <vector>

#include "metabelian/laurent.hpp"

namespace metabelian {

// Index (i, j) of the module generator [x_i, x_j], 1 <= j < i <= n.
struct CommIndex {
  int i;
  int j;

  CommIndex(int i_, int j_) : i(i_), j(j_) {
    if (!(1 <= j && j < i))
      fail(Errc::bad_index, "commutator index requires 1 <= j < i, got (" +
                                std::to_string(i_) + "," + std::to_string(j_) + ")");
  }

  bool operator==(const CommIndex &o) const { return i == o.i && j == o.j; }
  bool operator<(const CommIndex &o) const {
    return i != o.i ? i < o.i : j < o.j;
  }
};

inline int comm_pair_count(int n) { return n * (n - 1) / 2; }

// Position of (i, j) in the canonical generator tuple
// ([x_2,x_1], [x_3,x_1], [x_3,x_2], ..., [x_n,x_{n-1}]), 0-based.
inline int comm_pair_position(const CommIndex &c) {
  return comm_pair_count(c.i - 1) + (c.j - 1);
}

inline std::vector<CommIndex> comm_pairs(int n) {
  std::vector<CommIndex> v;
  v.reserve(static_cast<std::size_t>(comm_pair_count(n)));
  for (int i = 2; i <= n; ++i)
    for (int j = 1; j < i; ++j) v.emplace_back(i, j);
  return v;
}

// An uncollected product of factors [x_i,x_j]^Q; the Q may use all n
// variables and factors may repeat.
class RawModuleExpr {
public:
  using Factor = std::pair<CommIndex, LaurentPoly>;

  explicit RawModuleExpr(int rank) : rank_(rank) {
    if (rank < 1) fail(Errc::bad_input, "rank must be >= 1");
  }

  int rank() const { return rank_; }
  const std::vector<Factor> &factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }

  void push(CommIndex c, LaurentPoly q) {
    if (q.rank() != rank_) fail(Errc::rank_mismatch, "factor exponent rank differs");
    if (c.i > rank_)
      fail(Errc::bad_index, "commutator index exceeds rank " + std::to_string(rank_));
    if (q.is_zero()) return;
    factors_.emplace_back(c, std::move(q));
  }

  void append(const RawModuleExpr &o) {
    if (o.rank_ != rank_) fail(Errc::rank_mismatch, "module expression ranks differ");
    for (const auto &[c, q] : o.factors_) push(c, q);
  }

  RawModuleExpr negated() const {
    RawModuleExpr r(rank_);
    for (const auto &[c, q] : factors_) r.push(c, -q);
    return r;
  }

private:
  int rank_;
  std::vector<Factor> factors_;
};

// Collected coordinates of an element of G': a map (i,j) -> beta_ij with
// support(beta_ij) within {1..i} and no zero polynomials stored. Structural
// equality decides element equality (uniqueness of collected forms).
class CollectedPart {
public:
  using Map = std::map<CommIndex, LaurentPoly>;

  explicit CollectedPart(int rank) : rank_(rank) {
    if (rank < 1) fail(Errc::bad_input, "rank must be >= 1");
  }

  int rank() const { return rank_; }
  const Map &beta() const { return beta_; }
  bool empty() const { return beta_.empty(); }

  const LaurentPoly *find(const CommIndex &c) const {
    auto it = beta_.find(c);
    return it == beta_.end() ? nullptr : &it->second;
  }

  // Adds q to the coefficient at c. The caller is responsible for the
  // support constraint; collect() is the public route for arbitrary input.
  void accumulate(const CommIndex &c, const LaurentPoly &q) {
    if (q.rank() != rank_) fail(Errc::rank_mismatch, "coefficient rank differs");
    if (c.i > rank_) fail(Errc::bad_index, "commutator index exceeds rank");
    if (q.is_zero()) return;
    auto it = beta_.find(c);
    if (it == beta_.end()) {
      beta_.emplace(c, q);
    } else {
      it->second += q;
      if (it->second.is_zero()) beta_.erase(it);
    }
  }

  bool operator==(const CollectedPart &o) const {
    return rank_ == o.rank_ && beta_ == o.beta_;
  }
  bool operator!=(const CollectedPart &o) const { return !(*this == o); }

  void same_rank(const CollectedPart &o) const {
    if (rank_ != o.rank_) fail(Errc::rank_mismatch, "collected parts of different rank");
  }

  bool satisfies_support_constraint() const {
    for (const auto &[c, q] : beta_) {
      for (int v : support(q))
        if (v > c.i) return false;
    }
    return true;
  }

private:
  int rank_;
  Map beta_;
};

// Right-hand side of the generalized Jacobi identity for [x_i,x_j]^(a_k^delta - 1),
// j < i < k: two factors with first index k and exponents built from the
// geometric sum e = (a_k^delta - 1)/(a_k - 1).
inline RawModuleExpr jacobi_step(int rank, int i, int j, int k, long long delta) {
  if (!(1 <= j && j < i && i < k && k <= rank))
    fail(Errc::bad_index, "jacobi_step requires 1 <= j < i < k <= rank");
  RawModuleExpr r(rank);
  LaurentPoly eps = geometric_sum(Monomial::variable(rank, k), delta);
  if (eps.is_zero()) return r;
  LaurentPoly ai_minus_1 = LaurentPoly::variable(rank, i) - LaurentPoly::constant(rank, 1);
  LaurentPoly one_minus_aj = LaurentPoly::constant(rank, 1) - LaurentPoly::variable(rank, j);
  r.push(CommIndex(k, j), ai_minus_1 * eps);
  r.push(CommIndex(k, i), one_minus_aj * eps);
  return r;
}

namespace detail {

inline void collect_factor(CollectedPart &out, const CommIndex &c, const LaurentPoly &q);

// Collected form of [x_i,x_j]^(a^high) for a monomial supported strictly
// above i. Eliminates the least offending variable k through the Jacobi
// identity; recursion terminates because each step raises the first
// commutator index or shrinks the set of offending variables. Results are
// memoized: the same high pattern recurs for every term of a coefficient.
inline CollectedPart collect_monomial_high(int rank, const CommIndex &c, const Monomial &high) {
  thread_local std::map<std::pair<std::pair<int, int>, std::vector<long long>>, CollectedPart>
      cache;
  auto key = std::make_pair(std::make_pair(c.i, c.j), high.exponents());
  auto hit = cache.find(key);
  if (hit != cache.end() && hit->second.rank() == rank) return hit->second;

  int k = 0;
  for (int v = c.i + 1; v <= rank; ++v) {
    if (high.exponent(v) != 0) {
      k = v;
      break;
    }
  }
  CollectedPart out(rank);
  if (k == 0) {
    out.accumulate(c, LaurentPoly::constant(rank, 1));
    return out;
  }
  const long long delta = high.exponent(k);
  Monomial rest = high;
  rest.set_exponent(k, 0);
  // [x_i,x_j]^(a_k^delta) = [x_k,x_j]^((a_i-1)e) [x_k,x_i]^((1-a_j)e) [x_i,x_j],
  // e = (a_k^delta - 1)/(a_k - 1); raise everything to a^rest.
  LaurentPoly eps = geometric_sum(Monomial::variable(rank, k), delta).shifted(rest);
  LaurentPoly ai_minus_1 =
      LaurentPoly::variable(rank, c.i) - LaurentPoly::constant(rank, 1);
  LaurentPoly one_minus_aj =
      LaurentPoly::constant(rank, 1) - LaurentPoly::variable(rank, c.j);
  collect_factor(out, CommIndex(k, c.j), ai_minus_1 * eps);
  collect_factor(out, CommIndex(k, c.i), one_minus_aj * eps);
  collect_factor(out, c, LaurentPoly::monomial(rest));
  if (cache.size() < 100000) cache.emplace(std::move(key), out);
  return out;
}

// Adds the collected form of [c]^q to out. Terms are grouped by their
// exponent pattern above c.i: the Jacobi cascade runs once per pattern and
// the low part of the coefficient multiplies straight into the result
// (the cascade output at (p, *) uses variables <= p, and low parts use
// variables <= c.i <= p, so no re-collection is needed).
inline void collect_factor(CollectedPart &out, const CommIndex &c, const LaurentPoly &q) {
  const int rank = out.rank();
  std::map<std::vector<long long>, LaurentPoly> groups;
  for (const auto &[m, coef] : q.terms()) {
    std::vector<long long> high(static_cast<std::size_t>(rank), 0);
    Monomial low = m;
    for (int v = c.i + 1; v <= rank; ++v) {
      high[static_cast<std::size_t>(v - 1)] = m.exponent(v);
      low.set_exponent(v, 0);
    }
    auto it = groups.find(high);
    if (it == groups.end())
      it = groups.emplace(std::move(high), LaurentPoly(rank)).first;
    it->second.add_term(low, coef);
  }
  for (const auto &[high, low_poly] : groups) {
    Monomial hm{std::vector<long long>(high)};
    if (hm.is_identity()) {
      out.accumulate(c, low_poly);
      continue;
    }
    CollectedPart sub = collect_monomial_high(rank, c, hm);
    for (const auto &[cc, beta] : sub.beta()) out.accumulate(cc, beta * low_poly);
  }
}

} // namespace detail

// Rewrites an arbitrary module expression into its unique collected form.
inline CollectedPart collect(const RawModuleExpr &e) {
  CollectedPart out(e.rank());
  for (const auto &[c, q] : e.factors()) detail::collect_factor(out, c, q);
  return out;
}

inline RawModuleExpr to_raw(const CollectedPart &u) {
  RawModuleExpr r(u.rank());
  for (const auto &[c, q] : u.beta()) r.push(c, q);
  return r;
}

// Module addition (the group product in G').
inline CollectedPart madd(const CollectedPart &u, const CollectedPart &v) {
  u.same_rank(v);
  CollectedPart r = u;
  for (const auto &[c, q] : v.beta()) r.accumulate(c, q);
  return r;
}

inline CollectedPart mneg(const CollectedPart &u) {
  CollectedPart r(u.rank());
  for (const auto &[c, q] : u.beta()) r.accumulate(c, -q);
  return r;
}

// Action of the ring on G': multiply every coefficient by q and re-collect,
// since the product may violate the support constraint.
inline CollectedPart mact(const CollectedPart &u, const LaurentPoly &q) {
  if (u.rank() != q.rank()) fail(Errc::rank_mismatch, "module action rank differs");
  RawModuleExpr raw(u.rank());
  for (const auto &[c, beta] : u.beta()) raw.push(c, beta * q);
  return collect(raw);
}

// The retraction eps_I on G': factors with an index outside I die, the
// surviving coefficients are retracted variable-wise.
inline CollectedPart retract_part(const CollectedPart &u, const IndexSet &I) {
  RawModuleExpr raw(u.rank());
  for (const auto &[c, q] : u.beta()) {
    if (I.count(c.i) == 0 || I.count(c.j) == 0) continue;
    raw.push(c, retract(q, I));
  }
  return collect(raw);
}

} // namespace metabelian
