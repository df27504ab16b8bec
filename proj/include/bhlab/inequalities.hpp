#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bhlab/norms.hpp"
#include "bhlab/poly.hpp"

namespace bhlab {

// --- constants ----------------------------------------------------------------

/// m^((m-1)/2m) * (1 - 1/(m-1))^(m-1), the constant of the weighted
/// inequality. Degenerates to 0 at m = 2.
struct WeightedBhConstant {
    double value = 0.0;
    bool degenerate = false;
};

WeightedBhConstant weighted_bh_constant(int m);

/// Two variants of the polarization factor: as_printed is
/// (1 - 1/(m-1))^(m-1), which vanishes at m = 2 and is < 1 throughout;
/// classical polarization bounds carry (1 + 1/(m-1))^(m-1) instead. Both
/// are implemented; reports always name the variant in use.
enum class HarrisVariant { as_printed, plus_variant };

std::string_view to_string(HarrisVariant v);
double harris_factor(int m, HarrisVariant variant);

/// Constants of the bounded-variable corollary: the Lagrange chain value
/// (m/M+1)^(M/2) * weighted_bh_constant(m) and the simplified envelope
/// 2^(M/2) * m^((M+1)/2).
struct CorollaryConstant {
    double lagrange_form = 0.0;
    double simplified_form = 0.0;
};

CorollaryConstant corollary_constant(int m, int M);

struct ConstantProfile {
    int m = 0;
    double weighted_bh_constant = 0.0;
    double harris_variant_constant = 0.0;  // m^((m-1)/2m) * plus-variant factor
    double classic_bh_reference = 0.0;     // sqrt(2)^m * weighted_bh_constant
    double asymptote = 0.0;                // sqrt(m)/e
    bool degenerate = false;
};

ConstantProfile constant_profile(int m);

// --- reports -------------------------------------------------------------------

enum class Verdict {
    verified,                  // sound: estimate kinds certify LHS <= C*RHS
    satisfied_not_certified,   // point estimates satisfy, kinds cannot certify
    violated_estimates,        // sound violation certificate
    degenerate                 // zero RHS base or zero constant
};

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct InequalityReport {
    std::string name;
    NormEstimate lhs;
    NormEstimate rhs_base;
    double constant = 1.0;
    double ratio = std::numeric_limits<double>::quiet_NaN();
    Verdict verdict = Verdict::satisfied_not_certified;
    std::string detail;
};

/// Verdict from estimate kinds and safety margins alone: `verified` needs an
/// exact/upper LHS against an exact/lower RHS, `violated_estimates` needs an
/// exact/lower LHS strictly above constant * (exact/upper RHS). Stochastic
/// estimates certify nothing. quad_error is applied on the safe side.
Verdict judge(const NormEstimate& lhs, double constant,
              const NormEstimate& rhs, double eps_rel = 1e-12);

double ratio_of(const NormEstimate& lhs, double constant,
                const NormEstimate& rhs);

// --- verification effort --------------------------------------------------------

struct Effort {
    SearchBudget search;                    // sup-norm lower bound
    int grid_K = 64;                        // certification / quadrature grid
    std::int64_t mc_samples = 200'000;      // Monte Carlo fallback
    std::int64_t cost_cap = 100'000'000;    // grid evaluation budget
    int quad_max_N = 4;                     // grids refuse above this dimension
    double eps_rel = 1e-12;                 // rounding guard in comparisons
};

// --- verifiers -------------------------------------------------------------------

/// Weighted-coefficient inequality: restricts to Lambda first (when given),
/// measures the sup of the restricted polynomial.
InequalityReport verify_weighted_bh(
    const HomogeneousPolynomial& p,
    const std::optional<std::set<MultiIndex>>& lambda, const Effort& effort,
    std::uint64_t seed);

InequalityReport verify_helson(const AnalyticPolynomial& f, const Effort& effort,
                               std::uint64_t seed);

InequalityReport verify_bayart(const HomogeneousPolynomial& p,
                               const Effort& effort, std::uint64_t seed);

enum class BhConstantSource { weighted_times_sqrt2m, user };

InequalityReport verify_classic_bh(const HomogeneousPolynomial& p,
                                   BhConstantSource source, double user_constant,
                                   const Effort& effort, std::uint64_t seed);

enum class BleiVariant { printed_2_over_m_minus_1, standard_2_over_m_plus_1 };

std::string_view to_string(BleiVariant v);

/// b must hold all N^m entries in the lexicographic order of M(m,N).
InequalityReport verify_blei(std::span<const Complex> b, int m, int N,
                             BleiVariant variant, double eps_rel = 1e-12);

InequalityReport verify_harris(const HomogeneousPolynomial& p, int k,
                               HarrisVariant variant, const Effort& effort,
                               std::uint64_t seed);

/// Support must lie inside Lambda(N, M); throws otherwise.
InequalityReport verify_corollary(const HomogeneousPolynomial& p, int max_vars,
                                  const Effort& effort, std::uint64_t seed);

// --- proof-chain tracer -----------------------------------------------------------

struct TraceStage {
    std::string name;
    double value = 0.0;
    bool identity_step = false;  // must match the previous stage exactly
    double margin = 0.0;         // safety margin applied to the comparison
    bool ok = false;
    std::string note;
};

struct TraceReport {
    int m = 0;
    int N = 0;
    HarrisVariant variant = HarrisVariant::plus_variant;
    std::vector<TraceStage> stages;
    bool all_ok = false;
    int first_failed = -1;  // index into stages, -1 if none
    double identity_tol = 1e-12;
    double inequality_tol = 1e-9;
};

/// Walks the proof's displayed chain: J-sum, M-sum rewrite, Blei product,
/// cardinality pull-out, divisor monotonicity, per-factor Helson bound,
/// polarization bound. Identity stages must agree to identity_tol; the
/// inequality stages must be monotone within margins.
TraceReport trace_proof_chain(const HomogeneousPolynomial& p,
                              const Effort& effort, std::uint64_t seed,
                              HarrisVariant variant = HarrisVariant::plus_variant,
                              double identity_tol = 1e-12,
                              double inequality_tol = 1e-9);

// --- empirical constant scan --------------------------------------------------------

struct ScanRecord {
    int m = 0;
    int N = 0;
    int trials = 0;
    double max_ratio = 0.0;   // max over trials of weighted LHS / sup lower
    int argmax_trial = -1;
    std::uint64_t argmax_seed = 0;
};

ScanRecord empirical_min_constant(const EnsembleSpec& spec, int trials,
                                  const Effort& effort);

}  // namespace bhlab
