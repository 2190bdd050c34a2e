#pragma once

// Integer arithmetization of the group: zigzag and Cantor pairing, the tuple
// coding tau, the polynomial coding nu (over the canonical fraction), element
// coordinates, and group operations carried on codes. The bit-level layout is
// part of the external interface:
//   zigzag:   0,-1,1,-2,2,... -> 0,1,2,3,4,...
//   pair:     Cantor, pair(m,k) = (m+k)(m+k+1)/2 + k
//   tuple:    pair(length, payload); payload combines the zigzagged entries
//             by a balanced tree of pairs (left half takes the extra entry),
//             payload 0 for the empty tuple
//   poly:     nu(Q) = pair(tau(u_Q), tau(v_Q)) with Q = P / a^beta canonical,
//             u_Q the flattened (coeff, e_1..e_n) rows of P in the canonical
//             monomial order, v_Q = beta
//   element:  tau of (gamma_1..gamma_n, nu(beta_21), ..., nu(beta_n,n-1))
// Decoding rejects every natural outside the image with NotACode.

#include <vector>

#include "metabelian/commod.hpp"
#include "metabelian/group.hpp"
#include "metabelian/laurent.hpp"
#include "metabelian/numeric.hpp"

namespace metabelian {
namespace arith {

inline Int zigzag(const Int &z) { return z >= 0 ? Int(2 * z) : Int(-2 * z - 1); }

inline Int unzigzag(const Int &k) {
  if (k < 0) fail(Errc::not_a_code, "negative value is not a code");
  return (k % 2 == 0) ? Int(k / 2) : Int(-(k + 1) / 2);
}

inline Int pair_code(const Int &m, const Int &k) {
  if (m < 0 || k < 0) fail(Errc::not_a_code, "pairing needs naturals");
  Int s = m + k;
  return s * (s + 1) / 2 + k;
}

inline std::pair<Int, Int> unpair_code(const Int &c) {
  if (c < 0) fail(Errc::not_a_code, "negative value is not a code");
  Int arg = 8 * c + 1;
  Int w = (boost::multiprecision::sqrt(arg) - 1) / 2;
  Int t = w * (w + 1) / 2;
  Int k = c - t;
  return {Int(w - k), k};
}

namespace detail {

inline Int combine(const std::vector<Int> &vals, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return vals[lo];
  std::size_t mid = lo + (hi - lo + 1) / 2;
  return pair_code(combine(vals, lo, mid), combine(vals, mid, hi));
}

inline void uncombine(const Int &code, std::size_t count, std::vector<Int> &out) {
  if (count == 1) {
    out.push_back(code);
    return;
  }
  auto [l, r] = unpair_code(code);
  std::size_t left = (count + 1) / 2;
  uncombine(l, left, out);
  uncombine(r, count - left, out);
}

} // namespace detail

inline Int encode_tuple(const std::vector<Int> &t) {
  if (t.empty()) return pair_code(0, 0);
  std::vector<Int> z;
  z.reserve(t.size());
  for (const Int &v : t) z.push_back(zigzag(v));
  return pair_code(Int(t.size()), detail::combine(z, 0, z.size()));
}

inline std::vector<Int> decode_tuple(const Int &code) {
  auto [len, payload] = unpair_code(code);
  if (len == 0) {
    if (payload != 0) fail(Errc::not_a_code, "empty tuple must have payload 0");
    return {};
  }
  if (len > (1 << 20)) fail(Errc::not_a_code, "tuple length too large to decode");
  std::size_t count = len.convert_to<std::size_t>();
  std::vector<Int> z;
  z.reserve(count);
  detail::uncombine(payload, count, z);
  for (Int &v : z) v = unzigzag(v);
  return z;
}

inline Int encode_poly(const LaurentPoly &q) {
  const int n = q.rank();
  CanonicalFraction cf = canonical_fraction(q);
  std::vector<Int> u;
  u.reserve(cf.numerator.term_count() * static_cast<std::size_t>(n + 1));
  for (const auto &[m, c] : cf.numerator.terms()) {
    u.push_back(c);
    for (int i = 1; i <= n; ++i) u.push_back(Int(m.exponent(i)));
  }
  std::vector<Int> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) v.push_back(Int(cf.denominator.exponent(i)));
  return pair_code(encode_tuple(u), encode_tuple(v));
}

inline LaurentPoly decode_poly(const Int &code, int rank) {
  auto [cu, cv] = unpair_code(code);
  std::vector<Int> u = decode_tuple(cu);
  std::vector<Int> v = decode_tuple(cv);
  if (v.size() != static_cast<std::size_t>(rank))
    fail(Errc::not_a_code, "denominator tuple has wrong length");
  Monomial beta(rank);
  for (int i = 1; i <= rank; ++i) {
    const Int &e = v[static_cast<std::size_t>(i - 1)];
    if (e < 0 || e > (1LL << 40)) fail(Errc::not_a_code, "denominator exponent out of range");
    beta.set_exponent(i, e.convert_to<long long>());
  }
  if (u.size() % static_cast<std::size_t>(rank + 1) != 0)
    fail(Errc::not_a_code, "numerator tuple has wrong shape");
  LaurentPoly numerator(rank);
  bool have_prev = false;
  Monomial prev(rank);
  MonomialLess less;
  for (std::size_t t = 0; t < u.size(); t += static_cast<std::size_t>(rank + 1)) {
    const Int &coeff = u[t];
    if (coeff == 0) fail(Errc::not_a_code, "zero coefficient stored");
    Monomial m(rank);
    for (int i = 1; i <= rank; ++i) {
      const Int &e = u[t + static_cast<std::size_t>(i)];
      if (e < 0 || e > (1LL << 40)) fail(Errc::not_a_code, "numerator exponent out of range");
      m.set_exponent(i, e.convert_to<long long>());
    }
    if (have_prev && !less(prev, m))
      fail(Errc::not_a_code, "monomials not in canonical order");
    prev = m;
    have_prev = true;
    numerator.add_term(m, coeff);
  }
  for (int i = 1; i <= rank; ++i) {
    if (beta.exponent(i) == 0) continue;
    if (numerator.is_zero() || numerator.min_exponent(i) != 0)
      fail(Errc::not_a_code, "fraction is not in lowest terms");
  }
  return numerator.shifted(beta.inverse());
}

// The coordinate tuple of an element: gamma plus one polynomial code per
// commutator generator, in the canonical (i, j) order.
struct Coordinates {
  std::vector<long long> gamma;
  std::vector<Int> beta_codes;
};

inline Coordinates coordinates(const Element &g) {
  const int n = g.rank();
  Coordinates c;
  c.gamma = g.gamma();
  c.beta_codes.reserve(static_cast<std::size_t>(comm_pair_count(n)));
  for (const CommIndex &idx : comm_pairs(n)) {
    const LaurentPoly *q = g.part().find(idx);
    c.beta_codes.push_back(encode_poly(q ? *q : LaurentPoly::zero(n)));
  }
  return c;
}

inline Element element_from_coordinates(const Coordinates &c, int rank) {
  if (c.gamma.size() != static_cast<std::size_t>(rank))
    fail(Errc::bad_coordinates, "gamma has wrong length");
  auto pairs = comm_pairs(rank);
  if (c.beta_codes.size() != pairs.size())
    fail(Errc::bad_coordinates, "wrong number of polynomial codes");
  CollectedPart part(rank);
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    LaurentPoly q(rank);
    try {
      q = decode_poly(c.beta_codes[t], rank);
    } catch (const Error &e) {
      if (e.kind() == Errc::not_a_code)
        fail(Errc::bad_coordinates, std::string("polynomial code invalid: ") + e.what());
      throw;
    }
    if (q.is_zero()) continue;
    for (int v : support(q))
      if (v > pairs[t].i)
        fail(Errc::bad_coordinates,
             "coefficient of [x" + std::to_string(pairs[t].i) + ",x" +
                 std::to_string(pairs[t].j) + "] uses a" + std::to_string(v));
    part.accumulate(pairs[t], q);
  }
  return Element(c.gamma, std::move(part));
}

inline Int encode_element(const Element &g) {
  Coordinates c = coordinates(g);
  std::vector<Int> t;
  t.reserve(c.gamma.size() + c.beta_codes.size());
  for (long long v : c.gamma) t.push_back(Int(v));
  for (const Int &v : c.beta_codes) t.push_back(v);
  return encode_tuple(t);
}

inline Element decode_element(const Int &code, int rank) {
  std::vector<Int> t = decode_tuple(code);
  const std::size_t d = static_cast<std::size_t>(rank) +
                        static_cast<std::size_t>(comm_pair_count(rank));
  if (t.size() != d) fail(Errc::not_a_code, "coordinate tuple has wrong length");
  Coordinates c;
  for (int i = 0; i < rank; ++i) {
    const Int &v = t[static_cast<std::size_t>(i)];
    if (v > (1LL << 40) || v < -(1LL << 40))
      fail(Errc::not_a_code, "generator exponent out of range");
    c.gamma.push_back(v.convert_to<long long>());
  }
  for (std::size_t k = static_cast<std::size_t>(rank); k < d; ++k) {
    if (t[k] < 0) fail(Errc::not_a_code, "polynomial code must be a natural");
    c.beta_codes.push_back(t[k]);
  }
  return element_from_coordinates(c, rank);
}

inline Int coded_mul(const Int &c1, const Int &c2, int rank) {
  return encode_element(mul(decode_element(c1, rank), decode_element(c2, rank)));
}

inline Int coded_inv(const Int &c, int rank) {
  return encode_element(inv(decode_element(c, rank)));
}

} // namespace arith
} // namespace metabelian
