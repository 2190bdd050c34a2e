#pragma once

#include "metabelian/metabelian.hpp"

namespace th {

using namespace metabelian;

inline LaurentPoly var(int rank, int i, long long e = 1) {
  return LaurentPoly::variable(rank, i, e);
}

inline LaurentPoly cst(int rank, long long v) {
  return LaurentPoly::constant(rank, Int(v));
}

inline Monomial mono(std::vector<long long> exps) { return Monomial(std::move(exps)); }

} // namespace th
