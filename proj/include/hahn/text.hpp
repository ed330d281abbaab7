#pragma once

#include "hahn/hahn_number.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace hahn {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

/// Canonical text form. Terms in ascending exponent order joined by " + ":
/// a term prints as the bare coefficient at exponent 0, as "d^(r)" when the
/// coefficient is exactly 1, and as "c*d^(r)" otherwise; the zero element
/// prints as "0". The cutoff is not part of the text form (see the JSON form).
std::string print_number(const HahnNumber& x);

/// Parses the canonical text form. Terms may appear in any order; duplicate
/// exponents raise DuplicateExponentError; any other deviation raises
/// SyntaxError with the 0-based offset of the offending character. The result
/// is exact (cutoff +infinity).
HahnNumber parse_number(std::string_view text);

/// Evaluates an arithmetic expression over the field: +, -, *, unary minus,
/// parentheses, float literals, and the infinitesimal as "d" or "d^(p/q)".
/// Throws SyntaxError with offset on malformed input.
HahnNumber eval_expression(std::string_view text);

/// {"terms":[{"exp":"p/q","coef":<float>},...],"cutoff":"p/q"|"inf"}
nlohmann::ordered_json number_to_json(const HahnNumber& x);
HahnNumber number_from_json(const nlohmann::json& j);

}  // namespace hahn
