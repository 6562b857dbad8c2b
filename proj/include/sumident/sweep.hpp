#pragma once

// Batch runs over parameter grids, configured by one JSON document:
//
//   {
//     "mode": "exact",                     optional, exact | float
//     "tolerance": 1e-9,                   optional
//     "max_order": 500,                    optional, Gamma series cap
//     "monte_carlo": {"enabled": false, "samples": 1000000, "seed": 1, "z": 5},
//     "output": {"json": "reports.json", "csv": "summary.csv"},
//     "runs": [
//       {"identity": "good", "grid": {"xs": [["1", "2"], ["1/3", "5/2", "7"]]}},
//       {"identity": "stirling", "grid": {"m": {"from": 0, "to": 6}, "n": [1, 2, 3]}},
//       {"identity": "gamma-moment", "grid": [{"alpha": [["1", "2"]], "beta": [["1", "3"]], "m": [1, 2]}]}
//     ]
//   }
//
// A grid is an object (cartesian product of its axes) or a list of such
// objects (concatenated). Vector axes (xs, lambda, a, alpha, beta) list
// vectors; scalar axes (m, n, t) list values or give an inclusive
// {"from", "to"} range. Points are expanded with the last axis, in the order
// xs, lambda, a, alpha, beta, t, m, n, varying fastest.
//
// A run may carry "perturb_rhs": "p/q", added to every right side; it exists
// to exercise the failure path.

#include "sumident/identities.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sumident {

struct SweepPoint {
    std::string identity;
    IdentityArgs args;
    std::optional<Rational> perturb_rhs;
};

struct SweepConfig {
    VerifyOptions verify;
    MonteCarloOptions monte_carlo;
    std::vector<SweepPoint> points;
    std::string json_path;
    std::string csv_path;
};

/// Validates and expands the grids. Throws UsageError on unknown identities,
/// empty grids, or malformed values.
SweepConfig parse_sweep_config(const Json& document);

/// Runs every point (concurrently); reports come back in grid order. Invalid
/// point parameters raise UsageError after the whole grid has run.
std::vector<VerificationReport> run_sweep(const SweepConfig& config);

std::string reports_json(const std::vector<VerificationReport>& reports);

}  // namespace sumident
