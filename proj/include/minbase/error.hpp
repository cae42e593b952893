#pragma once

#include <stdexcept>
#include <string>

namespace minbase {

enum class errc {
  not_prime,
  size_cap_exceeded,
  division_by_zero,
  not_a_divisor,
  dimension_mismatch,
  empty_input,
  incompatible_parameters,
  none_exists,
  kind_mismatch,
  degenerate_restriction,
  generation_failed,
  degree_cap_exceeded,
  orbit_not_closed,
  budget_exceeded,
  orbit_empty,
  proof_case_inapplicable,
  independence_violated,
  radical_not_found,
  formula_inapplicable,
  missing_field,
  parse_error,
};

inline const char *errc_name(errc c)
{
  switch (c) {
    case errc::not_prime: return "NotPrime";
    case errc::size_cap_exceeded: return "SizeCapExceeded";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::not_a_divisor: return "NotADivisor";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::empty_input: return "EmptyInput";
    case errc::incompatible_parameters: return "IncompatibleParameters";
    case errc::none_exists: return "NoneExists";
    case errc::kind_mismatch: return "KindMismatch";
    case errc::degenerate_restriction: return "DegenerateRestriction";
    case errc::generation_failed: return "GenerationFailed";
    case errc::degree_cap_exceeded: return "DegreeCapExceeded";
    case errc::orbit_not_closed: return "OrbitNotClosed";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::orbit_empty: return "OrbitEmpty";
    case errc::proof_case_inapplicable: return "ProofCaseInapplicable";
    case errc::independence_violated: return "IndependenceViolated";
    case errc::radical_not_found: return "RadicalNotFound";
    case errc::formula_inapplicable: return "FormulaInapplicable";
    case errc::missing_field: return "MissingField";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

class error : public std::runtime_error
{
public:
  error(errc code, std::string const &what)
  : std::runtime_error(std::string(errc_name(code)) + ": " + what), _code(code)
  {}

  errc code() const noexcept { return _code; }

private:
  errc _code;
};

} // namespace minbase
