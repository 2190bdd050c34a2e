#pragma once

// Words over the generators x_1..x_n as sequences of (index, exponent)
// letters, kept in canonical form: adjacent letters with the same index are
// merged and zero exponents removed (free reduction at the word level only).

#include <string>
#include <vector>

#include "metabelian/errors.hpp"
#include "metabelian/laurent.hpp"

namespace metabelian {

struct Letter {
  int index;
  long long exponent;
  bool operator==(const Letter &o) const {
    return index == o.index && exponent == o.exponent;
  }
};

class GroupWord {
public:
  explicit GroupWord(int rank) : rank_(rank) {
    if (rank < 1) fail(Errc::bad_input, "rank must be >= 1");
  }

  int rank() const { return rank_; }
  const std::vector<Letter> &letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t length() const { return letters_.size(); }

  void push(int index, long long exponent) {
    if (index < 1 || index > rank_)
      fail(Errc::bad_index, "generator index " + std::to_string(index) +
                                " out of range 1.." + std::to_string(rank_));
    if (exponent == 0) return;
    if (!letters_.empty() && letters_.back().index == index) {
      letters_.back().exponent += exponent;
      if (letters_.back().exponent == 0) letters_.pop_back();
      return;
    }
    letters_.push_back({index, exponent});
  }

  void append(const GroupWord &o) {
    if (o.rank_ != rank_) fail(Errc::rank_mismatch, "word ranks differ");
    for (const Letter &l : o.letters_) push(l.index, l.exponent);
  }

  GroupWord inverse() const {
    GroupWord r(rank_);
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
      r.push(it->index, -it->exponent);
    return r;
  }

  friend GroupWord operator*(GroupWord a, const GroupWord &b) {
    a.append(b);
    return a;
  }

  bool operator==(const GroupWord &o) const {
    return rank_ == o.rank_ && letters_ == o.letters_;
  }
  bool operator!=(const GroupWord &o) const { return !(*this == o); }

private:
  int rank_;
  std::vector<Letter> letters_;
};

// Image of the word in the abelianization, as a monomial in a_1..a_n.
inline Monomial abelianization(const GroupWord &w) {
  Monomial m(w.rank());
  for (const Letter &l : w.letters())
    m.set_exponent(l.index, m.exponent(l.index) + l.exponent);
  return m;
}

// Word realizing the monomial m as x_1^e1 ... x_n^en (ascending order).
inline GroupWord word_of_monomial(const Monomial &m) {
  GroupWord w(m.rank());
  for (int i = 1; i <= m.rank(); ++i) w.push(i, m.exponent(i));
  return w;
}

// Plain commutator word u^-1 v^-1 u v.
inline GroupWord commutator_word(const GroupWord &u, const GroupWord &v) {
  GroupWord r = u.inverse();
  r.append(v.inverse());
  r.append(u);
  r.append(v);
  return r;
}

inline GroupWord word_pow(const GroupWord &w, long long k) {
  GroupWord base = k < 0 ? w.inverse() : w;
  long long reps = k < 0 ? -k : k;
  if (reps > 0 && static_cast<long long>(w.length()) > 10000000 / reps)
    fail(Errc::bad_input, "word power too large to expand");
  GroupWord r(w.rank());
  for (long long t = 0; t < reps; ++t) r.append(base);
  return r;
}

} // namespace metabelian
