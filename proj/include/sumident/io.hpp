#pragma once

// Text and JSON formats: rational lists, density documents, report CSV.

#include "sumident/densities.hpp"
#include "sumident/identities.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace sumident {

/// Parses a comma-separated list of rationals ("1,2/3,0.5"). Throws
/// UsageError naming the offending token and `flag`.
std::vector<Rational> parse_rational_list(std::string_view text, std::string_view flag);

/// Parses one rational; throws UsageError naming the token and `flag`.
Rational parse_rational_arg(std::string_view text, std::string_view flag);

/// Rationals inside JSON: "p/q" strings or integers.
Rational rational_from_json(const Json& value);
std::vector<Rational> rational_list_from_json(const Json& value);

// Density documents: {"family": ..., "params": [...], "atoms" | "series" | "pieces": ...}.
Json density_json(const RateParams& params, const ExpMixDensity& density);
Json density_json(const GammaParams& params, const GammaSeries& series);
Json density_json(const UniformParams& params, const PiecewisePoly& density);

/// Shortest round-trip representation of a double.
std::string format_double(double value);

/// Doubles embedded quotes and wraps the field in quotes when needed.
std::string csv_escape(const std::string& field);

/// Fixed header "identity,params,verdict,abs_gap,J" followed by one row per report.
std::string reports_csv(const std::vector<VerificationReport>& reports);

}  // namespace sumident
