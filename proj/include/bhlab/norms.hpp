#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bhlab/poly.hpp"

namespace bhlab {

/// Raised when a grid or sample request exceeds the configured cost cap.
struct CostCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// What a numeric value is allowed to claim about the true quantity.
enum class EstimateKind { exact, lower_bound, upper_bound, stochastic };

std::string_view to_string(EstimateKind kind);
EstimateKind estimate_kind_from_string(std::string_view s);

struct EffortUsed {
    int restarts = 0;
    int grid_points = 0;       // K, points per dimension
    std::int64_t samples = 0;  // Monte Carlo samples
};

/// A numeric value tagged with its certainty kind. `stderr_value` is
/// nonzero only for stochastic estimates; `quad_error` is the empirical
/// discretization error attached to grid quadratures (verifiers apply it
/// on the safe side).
struct NormEstimate {
    double value = 0.0;
    EstimateKind kind = EstimateKind::exact;
    double stderr_value = 0.0;
    double quad_error = 0.0;
    std::string method;
    EffortUsed effort;
};

// --- exact coefficient norms -------------------------------------------------

/// (sum_alpha (|c_alpha| / sqrt(alpha+1))^p)^(1/p); unweighted drops the
/// divisor weight. p = 2m/(m+1) is the exponent the inequalities use, but
/// any p > 0 is accepted.
NormEstimate weighted_coeff_norm(const HomogeneousPolynomial& p,
                                 double exponent, bool weighted);

/// (sum_alpha |c_alpha|^2 / d(p^alpha))^(1/2).
NormEstimate helson_lhs(const AnalyticPolynomial& f);
NormEstimate helson_lhs(const HomogeneousPolynomial& p);

/// Euclidean norm of the coefficient vector.
NormEstimate l2_coeff_norm(const HomogeneousPolynomial& p);

// --- polydisc sup-norm -------------------------------------------------------

struct SearchBudget {
    int restarts = 32;
    int max_sweeps = 100;
    double tol = 1e-10;
};

/// Multistart coordinate-wise phase ascent over the torus (where the
/// polydisc sup is attained). Sound lower bound: true sup >= value.
/// Deterministic in (polynomial, budget, seed).
NormEstimate sup_norm_lower(const HomogeneousPolynomial& p,
                            const SearchBudget& budget, std::uint64_t seed);

/// Certified upper bound from a K^N phase grid plus the Bernstein
/// correction: sup <= grid_max / (1 - m*N*h/2), h = 2*pi/K. Requires
/// m*N*h/2 < 1 and K^N within the cost cap.
NormEstimate sup_norm_upper(const HomogeneousPolynomial& p, int grid_points,
                            std::int64_t cost_cap = 100'000'000);

// --- torus integrals ---------------------------------------------------------

/// Rectangle-rule average of |f| over the uniform K^N phase grid. K must be
/// even; quad_error is the empirical K vs K/2 difference.
NormEstimate torus_l1_grid(const AnalyticPolynomial& f, int grid_points,
                           std::int64_t cost_cap = 100'000'000, int max_N = 4);
NormEstimate torus_l1_grid(const HomogeneousPolynomial& p, int grid_points,
                           std::int64_t cost_cap = 100'000'000, int max_N = 4);

/// Monte Carlo estimate of the torus L1 norm; stderr = sd / sqrt(n).
NormEstimate torus_l1_mc(const AnalyticPolynomial& f, std::int64_t samples,
                         std::uint64_t seed);
NormEstimate torus_l1_mc(const HomogeneousPolynomial& p, std::int64_t samples,
                         std::uint64_t seed);

/// Torus L2 norm by the same grid; exact (up to rounding) once K exceeds
/// the Nyquist degree, K >= 2m+1. Quadrature cross-check companion to
/// l2_coeff_norm.
NormEstimate torus_l2_grid(const HomogeneousPolynomial& p, int grid_points,
                           std::int64_t cost_cap = 100'000'000);

}  // namespace bhlab
