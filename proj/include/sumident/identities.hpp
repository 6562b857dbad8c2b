#pragma once

// One verifier per identity. Each computes both sides along independent paths
// and returns a VerificationReport.

#include "sumident/densities.hpp"
#include "sumident/montecarlo.hpp"
#include "sumident/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace sumident {

enum class Verdict { pass, fail, pass_with_truncation };

std::string to_string(Verdict verdict);

using Scalar = std::variant<Rational, double>;

double to_double(const Scalar& s);

using Json = nlohmann::ordered_json;

struct Truncation {
    std::size_t order = 0;
    double deficit = 0.0;
    /// Mass deficit after each order 0..J; not serialized.
    std::vector<double> deficit_trace;
};

struct MonteCarloSummary {
    double analytic = 0.0;
    MomentEstimate estimate;
    double z = 5.0;
    bool agrees = false;
};

struct VerificationReport {
    std::string identity;
    Json params = Json::object();
    Scalar lhs = Rational(0);
    Scalar rhs = Rational(0);
    Mode mode = Mode::exact;
    Verdict verdict = Verdict::fail;
    double abs_gap = 0.0;
    double tolerance = 0.0;
    std::optional<Truncation> truncation;
    std::optional<std::uint64_t> seed;
    /// Third computation path, when the verifier has one.
    std::optional<Scalar> cross_check;
    std::optional<MonteCarloSummary> monte_carlo;
    std::string diagnostic;

    [[nodiscard]] bool ok() const { return verdict != Verdict::fail; }
};

Json to_json(const VerificationReport& report);

/// Recomputes verdict and abs_gap from lhs, rhs, mode and tolerance. Exact
/// reports without truncation pass only on equality; the rest compare the
/// relative gap |lhs - rhs| / max(1, |rhs|) with the tolerance.
void judge(VerificationReport& report);

struct VerifyOptions {
    Mode mode = Mode::exact;
    /// Relative: float sides pass when |lhs - rhs| <= tolerance * max(1, |rhs|).
    double tolerance = 1e-9;
    std::size_t max_order = 500;
};

VerificationReport verify_good(const std::vector<Rational>& xs, const VerifyOptions& opts = {});
VerificationReport verify_symmetric_moment(const RateParams& lambdas, unsigned m, const VerifyOptions& opts = {});
VerificationReport verify_homogeneous(const std::vector<Rational>& xs, unsigned m, const VerifyOptions& opts = {});
VerificationReport verify_vandermonde_zero(const RateParams& lambdas);
VerificationReport verify_chf_partial_fraction(const RateParams& lambdas, const Rational& t,
                                               const VerifyOptions& opts = {});

/// Gamma-sum mean from the series against sum_i alpha_i beta_i.
VerificationReport verify_gamma_mean(const GammaParams& params, const VerifyOptions& opts = {});
/// Gamma-sum m-th moment from the series against the multinomial expansion.
VerificationReport verify_gamma_moment(const GammaParams& params, unsigned m, const VerifyOptions& opts = {});

/// Moment of n i.i.d. uniform[0,1] variables: the split double sum over the
/// truncated-power density against the composition expansion.
VerificationReport verify_iid_uniform_moment(unsigned n, unsigned m, const VerifyOptions& opts = {});
/// sum_i multinomial(m; i) / prod (i_k + 1) = S(m+n, n) / C(m+n, n).
VerificationReport verify_stirling_link(unsigned m, unsigned n);
/// (1/(n-1)!) sum_i (-1)^i C(n,i) int_i^n (x-i)^(n-1) x^m dx
///   = (m!/(m+n)!) sum_i (-1)^(n-i) C(n,i) i^(m+n).
VerificationReport verify_truncated_power_integral(unsigned m, unsigned n);
/// Alternating-sum formula for S(m+n, n) against the recurrence.
VerificationReport verify_stirling_explicit(unsigned m, unsigned n);
/// Closed-form moment of sum_i U[0, a_i] (subset-sum expansion) against the
/// composition expansion, cross-checked by integrating the density.
VerificationReport verify_general_uniform(const UniformParams& params, unsigned m, const VerifyOptions& opts = {});

/// The closed-form left side of verify_general_uniform, exposed for tests.
Rational general_uniform_moment_formula(const UniformParams& params, unsigned m);
/// The closed-form left side of verify_iid_uniform_moment.
Rational iid_uniform_moment_formula(unsigned n, unsigned m);

//--------------------------------------------------------------------------
// Dispatch by identity name, shared by the CLI and the sweep runner.
//--------------------------------------------------------------------------

/// Parsed parameters; which ones are required depends on the identity.
struct IdentityArgs {
    std::optional<std::vector<Rational>> xs;
    std::optional<std::vector<Rational>> lambda;
    std::optional<std::vector<Rational>> a;
    std::optional<std::vector<Rational>> alpha;
    std::optional<std::vector<Rational>> beta;
    std::optional<unsigned> m;
    std::optional<unsigned> n;
    std::optional<Rational> t;
};

struct MonteCarloOptions {
    bool enabled = false;
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 20240601;
    double z = 5.0;
};

struct RunOptions {
    VerifyOptions verify;
    MonteCarloOptions monte_carlo;
    /// Test hook: added to the right side before comparison.
    std::optional<Rational> perturb_rhs;
};

/// Identity names accepted by run_identity.
const std::vector<std::string>& identity_names();
bool is_identity(const std::string& name);

/// Thrown for unknown identities and missing or invalid arguments.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

VerificationReport run_identity(const std::string& name, const IdentityArgs& args, const RunOptions& opts);

}  // namespace sumident
