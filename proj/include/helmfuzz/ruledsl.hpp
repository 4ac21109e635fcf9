#pragma once

// Line-oriented text format for controller definitions (.fis):
//
//   var <name> range <lo> <hi>
//   set <var> <LABEL> tri <a> <b> <c>
//   rule if psi_err is <LABEL> and r_err is <LABEL> then rudder is <LABEL>
//
// '#' starts a comment; blank lines are ignored. Variables are fixed to
// psi_err, r_err and rudder, each with all seven labels BN..BP, and the rule
// matrix must be complete (49 rules, no antecedent repeated).

#include <string>
#include <string_view>

#include "helmfuzz/fuzzy.hpp"

namespace helmfuzz::dsl {

inline constexpr std::string_view kPsiErrName = "psi_err";
inline constexpr std::string_view kRErrName = "r_err";
inline constexpr std::string_view kRudderName = "rudder";

/// Strict parse; throws ParseError carrying the offending line.
fuzzy::FisDefinition parse_fis(std::string_view source);

/// Canonical text: variables psi_err, r_err, rudder; sets in label order; rules
/// row-major with psi_err outer. Reals use shortest round-trip formatting.
std::string serialize_fis(const fuzzy::FisDefinition& fis);

/// The tanker autopilot: breakpoints of the published membership tables and the
/// 7x7 rule table.
const fuzzy::FisDefinition& builtin_paper_fis();

/// Shortest decimal that parses back to exactly `value`; always has a '.' or exponent.
std::string format_real(double value);

}  // namespace helmfuzz::dsl
