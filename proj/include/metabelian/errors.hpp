#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metabelian {

// Error taxonomy shared by the library and the CLI. The CLI maps
// syntax_error to exit code 2 and everything else to exit code 1.
enum class Errc {
  rank_mismatch,
  trivial_base,
  not_divisible,
  division_by_zero,
  zero_evaluation_point,
  bad_index,
  not_in_commutant,
  internal_inconsistency,
  syntax_error,
  not_a_code,
  bad_coordinates,
  zero_polynomial,
  non_integer_exponent,
  bad_input,
};

inline const char *errc_name(Errc k) {
  switch (k) {
  case Errc::rank_mismatch: return "RankMismatch";
  case Errc::trivial_base: return "TrivialBase";
  case Errc::not_divisible: return "NotDivisible";
  case Errc::division_by_zero: return "DivisionByZero";
  case Errc::zero_evaluation_point: return "ZeroEvaluationPoint";
  case Errc::bad_index: return "BadIndex";
  case Errc::not_in_commutant: return "NotInCommutant";
  case Errc::internal_inconsistency: return "InternalInconsistency";
  case Errc::syntax_error: return "SyntaxError";
  case Errc::not_a_code: return "NotACode";
  case Errc::bad_coordinates: return "BadCoordinates";
  case Errc::zero_polynomial: return "ZeroPolynomial";
  case Errc::non_integer_exponent: return "NonIntegerExponent";
  case Errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
public:
  Error(Errc kind, std::string message, std::size_t position = npos)
      : std::runtime_error(std::string(errc_name(kind)) + ": " + message),
        kind_(kind), position_(position) {}

  Errc kind() const { return kind_; }
  // Byte offset into the offending input text; npos when not applicable.
  std::size_t position() const { return position_; }
  bool has_position() const { return position_ != npos; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  Errc kind_;
  std::size_t position_;
};

[[noreturn]] inline void fail(Errc kind, const std::string &message,
                              std::size_t position = Error::npos) {
  throw Error(kind, message, position);
}

} // namespace metabelian
