#include "bhlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bhlab/rng.hpp"
#include "bhlab/summation.hpp"

namespace bhlab {

namespace {

constexpr double kE = std::numbers::e;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double safe_hi(const NormEstimate& e) { return e.value + e.quad_error; }
double safe_lo(const NormEstimate& e) {
    return std::max(0.0, e.value - e.quad_error);
}

bool can_bound_above(EstimateKind k) {
    return k == EstimateKind::exact || k == EstimateKind::upper_bound;
}
bool can_bound_below(EstimateKind k) {
    return k == EstimateKind::exact || k == EstimateKind::lower_bound;
}

// Smallest grid K whose Bernstein correction m*nvars*h/2 stays below eps.
int certification_grid(int m, int nvars, int requested, double eps = 0.75) {
    const double needed = std::numbers::pi * m * nvars / eps;
    return std::max(requested, static_cast<int>(std::ceil(needed)) + 1);
}

// Try to certify lhs > constant * sup by refining the Bernstein grid. Stops
// as soon as the violation is certified, the grid maximum (a lower bound for
// the sup) already rules a violation out, or the cost cap bites.
std::optional<NormEstimate> certify_violation(const HomogeneousPolynomial& p,
                                              const NormEstimate& lhs,
                                              double constant,
                                              const Effort& effort) {
    const int m = p.degree(), N = p.dimension();
    std::optional<NormEstimate> certified, tightest;
    int last_K = 0;
    for (double eps : {0.5, 0.2, 0.05, 0.01, 0.002, 0.0002}) {
        const int K = certification_grid(m, N, effort.grid_K, eps);
        if (K == last_K) continue;
        last_K = K;
        NormEstimate upper;
        try {
            upper = sup_norm_upper(p, K, effort.cost_cap);
        } catch (const CostCapExceeded&) {
            break;
        }
        tightest = upper;
        if (judge(lhs, constant, upper, effort.eps_rel) ==
            Verdict::violated_estimates) {
            certified = upper;  // keep refining so the bound is tight
            continue;
        }
        if (certified) break;
        const double grid_max =
            upper.value * (1.0 - std::numbers::pi * m * N / K);
        if (safe_lo(lhs) <= constant * grid_max * (1.0 + effort.eps_rel))
            break;  // the grid max already rules a violation out
    }
    return certified ? certified : tightest;
}

}  // namespace

WeightedBhConstant weighted_bh_constant(int m) {
    if (m < 2) throw std::invalid_argument("weighted_bh_constant: need m >= 2");
    if (m == 2) return {0.0, true};
    const double md = static_cast<double>(m);
    const double v = std::exp((md - 1.0) / (2.0 * md) * std::log(md) +
                              (md - 1.0) * std::log1p(-1.0 / (md - 1.0)));
    return {v, false};
}

std::string_view to_string(HarrisVariant v) {
    return v == HarrisVariant::as_printed ? "as_printed" : "plus_variant";
}

double harris_factor(int m, HarrisVariant variant) {
    if (m < 2) throw std::invalid_argument("harris_factor: need m >= 2");
    const double md = static_cast<double>(m);
    const double sign = variant == HarrisVariant::as_printed ? -1.0 : 1.0;
    if (variant == HarrisVariant::as_printed && m == 2) return 0.0;
    return std::exp((md - 1.0) * std::log1p(sign / (md - 1.0)));
}

CorollaryConstant corollary_constant(int m, int M) {
    if (m < 2) throw std::invalid_argument("corollary_constant: need m >= 2");
    if (M < 1) throw std::invalid_argument("corollary_constant: need M >= 1");
    const double md = static_cast<double>(m), Md = static_cast<double>(M);
    CorollaryConstant c;
    c.lagrange_form = std::pow(md / Md + 1.0, Md / 2.0) * weighted_bh_constant(m).value;
    c.simplified_form = std::pow(2.0, Md / 2.0) * std::pow(md, (Md + 1.0) / 2.0);
    return c;
}

ConstantProfile constant_profile(int m) {
    const WeightedBhConstant pc = weighted_bh_constant(m);
    ConstantProfile p;
    p.m = m;
    p.degenerate = pc.degenerate;
    p.weighted_bh_constant = pc.value;
    const double md = static_cast<double>(m);
    const double mpow = std::pow(md, (md - 1.0) / (2.0 * md));
    p.harris_variant_constant = mpow * harris_factor(m, HarrisVariant::plus_variant);
    p.classic_bh_reference = std::pow(2.0, md / 2.0) * pc.value;
    p.asymptote = std::sqrt(md) / kE;
    return p;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::verified: return "verified";
        case Verdict::satisfied_not_certified: return "satisfied-not-certified";
        case Verdict::violated_estimates: return "violated-estimates";
        case Verdict::degenerate: return "degenerate";
    }
    return "?";
}

Verdict verdict_from_string(std::string_view s) {
    if (s == "verified") return Verdict::verified;
    if (s == "satisfied-not-certified") return Verdict::satisfied_not_certified;
    if (s == "violated-estimates") return Verdict::violated_estimates;
    if (s == "degenerate") return Verdict::degenerate;
    throw std::invalid_argument("unknown verdict: " + std::string(s));
}

Verdict judge(const NormEstimate& lhs, double constant, const NormEstimate& rhs,
              double eps_rel) {
    if (constant == 0.0 || rhs.value == 0.0) return Verdict::degenerate;
    const bool no_stoch = lhs.kind != EstimateKind::stochastic &&
                          rhs.kind != EstimateKind::stochastic;
    if (no_stoch && can_bound_above(lhs.kind) && can_bound_below(rhs.kind) &&
        safe_hi(lhs) <= constant * safe_lo(rhs) * (1.0 + eps_rel))
        return Verdict::verified;
    if (no_stoch && can_bound_below(lhs.kind) && can_bound_above(rhs.kind) &&
        safe_lo(lhs) > constant * safe_hi(rhs) * (1.0 + eps_rel))
        return Verdict::violated_estimates;
    return Verdict::satisfied_not_certified;
}

double ratio_of(const NormEstimate& lhs, double constant,
                const NormEstimate& rhs) {
    const double denom = constant * rhs.value;
    if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return lhs.value / denom;
}

// --- shared sup-norm verification flow -----------------------------------------

namespace {

// LHS (exact) vs constant * sup: verify against the search lower bound,
// otherwise attempt a sound violation certificate against the Bernstein
// grid upper bound.
InequalityReport sup_flow(std::string name, const HomogeneousPolynomial& p,
                          NormEstimate lhs, double constant, bool degenerate,
                          const Effort& effort, std::uint64_t seed,
                          std::string extra_detail) {
    InequalityReport rep;
    rep.name = std::move(name);
    rep.lhs = std::move(lhs);
    rep.constant = constant;
    rep.rhs_base = sup_norm_lower(p, effort.search, seed);
    rep.ratio = ratio_of(rep.lhs, constant, rep.rhs_base);
    std::ostringstream detail;
    if (!extra_detail.empty()) detail << extra_detail << "; ";
    if (degenerate || p.is_zero() || rep.rhs_base.value == 0.0) {
        rep.verdict = Verdict::degenerate;
        detail << (degenerate ? "constant degenerates to 0"
                              : "zero polynomial, nothing to bound");
        detail << "; lhs = " << fmt(rep.lhs.value);
        rep.detail = detail.str();
        return rep;
    }
    rep.verdict = judge(rep.lhs, constant, rep.rhs_base, effort.eps_rel);
    if (rep.verdict == Verdict::verified) {
        detail << "lhs " << fmt(rep.lhs.value) << " <= " << fmt(constant)
               << " * sup_lower " << fmt(rep.rhs_base.value);
        rep.detail = detail.str();
        return rep;
    }
    // Not verifiable from the lower bound; look for a certified violation.
    if (const auto upper = certify_violation(p, rep.lhs, constant, effort)) {
        if (judge(rep.lhs, constant, *upper, effort.eps_rel) ==
            Verdict::violated_estimates) {
            rep.verdict = Verdict::violated_estimates;
            rep.rhs_base = *upper;
            rep.ratio = ratio_of(rep.lhs, constant, *upper);
            detail << "violation certified: lhs " << fmt(rep.lhs.value) << " > "
                   << fmt(constant) << " * sup_upper " << fmt(upper->value);
            rep.detail = detail.str();
            return rep;
        }
        detail << "point estimates exceed the lower bound but lhs "
               << fmt(rep.lhs.value) << " <= " << fmt(constant)
               << " * sup_upper " << fmt(upper->value) << ", not certified";
    } else {
        detail << "upper certification skipped (cost cap)";
    }
    rep.verdict = Verdict::satisfied_not_certified;
    rep.detail = detail.str();
    return rep;
}

// Torus L1 with the grid when affordable, Monte Carlo otherwise.
template <class Poly>
NormEstimate l1_estimate(const Poly& f, const Effort& effort, std::uint64_t seed,
                         std::string& note) {
    int K = effort.grid_K + (effort.grid_K % 2);
    try {
        return torus_l1_grid(f, K, effort.cost_cap, effort.quad_max_N);
    } catch (const CostCapExceeded&) {
        note = "grid quadrature unaffordable, Monte Carlo fallback";
        return torus_l1_mc(f, effort.mc_samples, seed);
    }
}

template <class Poly>
InequalityReport l1_flow(std::string name, const Poly& f, NormEstimate lhs,
                         double constant, const Effort& effort,
                         std::uint64_t seed) {
    InequalityReport rep;
    rep.name = std::move(name);
    rep.lhs = std::move(lhs);
    rep.constant = constant;
    std::string note;
    if (f.is_zero()) {
        rep.rhs_base.kind = EstimateKind::exact;
        rep.verdict = Verdict::degenerate;
        rep.detail = "zero polynomial";
        return rep;
    }
    rep.rhs_base = l1_estimate(f, effort, seed, note);
    rep.ratio = ratio_of(rep.lhs, constant, rep.rhs_base);
    rep.verdict = judge(rep.lhs, constant, rep.rhs_base, effort.eps_rel);
    std::ostringstream detail;
    if (!note.empty()) detail << note << "; ";
    if (rep.rhs_base.kind == EstimateKind::stochastic) {
        const double margin = 3.0 * rep.rhs_base.stderr_value;
        detail << "stochastic rhs: lhs " << fmt(rep.lhs.value)
               << (rep.lhs.value <= constant * (rep.rhs_base.value - margin)
                       ? " satisfied within 3*stderr margin "
                       : " not resolved at 3*stderr margin ")
               << fmt(margin);
    } else {
        detail << "lhs " << fmt(rep.lhs.value) << " vs " << fmt(constant)
               << " * rhs " << fmt(rep.rhs_base.value) << " (quad_error "
               << fmt(rep.rhs_base.quad_error) << ")";
    }
    rep.detail = detail.str();
    return rep;
}

}  // namespace

InequalityReport verify_weighted_bh(
    const HomogeneousPolynomial& p,
    const std::optional<std::set<MultiIndex>>& lambda, const Effort& effort,
    std::uint64_t seed) {
    const int m = p.degree();
    if (m < 2) throw std::invalid_argument("verify_weighted_bh: need m >= 2");
    const HomogeneousPolynomial pr =
        lambda ? restrict_support(p, *lambda) : p;
    const WeightedBhConstant c = weighted_bh_constant(m);
    NormEstimate lhs =
        weighted_coeff_norm(pr, 2.0 * m / (m + 1.0), /*weighted=*/true);
    return sup_flow("weighted-bh", pr, std::move(lhs), c.value, c.degenerate,
                    effort, seed, "");
}

InequalityReport verify_helson(const AnalyticPolynomial& f, const Effort& effort,
                               std::uint64_t seed) {
    return l1_flow("helson", f, helson_lhs(f), 1.0, effort, seed);
}

InequalityReport verify_bayart(const HomogeneousPolynomial& p,
                               const Effort& effort, std::uint64_t seed) {
    const double constant = std::pow(2.0, p.degree() / 2.0);
    return l1_flow("bayart", p, l2_coeff_norm(p), constant, effort, seed);
}

InequalityReport verify_classic_bh(const HomogeneousPolynomial& p,
                                   BhConstantSource source, double user_constant,
                                   const Effort& effort, std::uint64_t seed) {
    const int m = p.degree();
    if (m < 2) throw std::invalid_argument("verify_classic_bh: need m >= 2");
    double constant = user_constant;
    bool degenerate = false;
    std::string extra;
    if (source == BhConstantSource::weighted_times_sqrt2m) {
        const WeightedBhConstant c = weighted_bh_constant(m);
        constant = std::pow(2.0, m / 2.0) * c.value;
        degenerate = c.degenerate;
        extra = "constant = sqrt(2)^m * weighted-theorem constant";
    }
    NormEstimate lhs =
        weighted_coeff_norm(p, 2.0 * m / (m + 1.0), /*weighted=*/false);
    return sup_flow("classic-bh", p, std::move(lhs), constant, degenerate,
                    effort, seed, extra);
}

std::string_view to_string(BleiVariant v) {
    return v == BleiVariant::printed_2_over_m_minus_1 ? "printed_2_over_m_minus_1"
                                                      : "standard_2_over_m_plus_1";
}

InequalityReport verify_blei(std::span<const Complex> b, int m, int N,
                             BleiVariant variant, double eps_rel) {
    if (m < 2 || N < 1) throw std::invalid_argument("verify_blei: need m >= 2, N >= 1");
    std::size_t expected = 1;
    for (int q = 0; q < m; ++q) expected *= static_cast<std::size_t>(N);
    if (b.size() != expected)
        throw std::invalid_argument(
            "verify_blei: incomplete array, need all " + std::to_string(expected) +
            " entries of M(m,N), got " + std::to_string(b.size()));

    const double q = 2.0 * m / (m + 1.0);
    NeumaierSum lhs_acc;
    for (const Complex& v : b) lhs_acc.add(std::pow(std::abs(v), q));

    // Index of a tuple in lexicographic M(m,N) order: base-N digits,
    // first entry most significant.
    const auto tuple_index = [N](const IndexTuple& t) {
        std::size_t idx = 0;
        for (int e : t.entries())
            idx = idx * static_cast<std::size_t>(N) + static_cast<std::size_t>(e - 1);
        return idx;
    };

    const double expo = variant == BleiVariant::printed_2_over_m_minus_1
                            ? 2.0 / (m - 1.0)
                            : 2.0 / (m + 1.0);
    double rhs = 1.0;
    for (int k = 1; k <= m; ++k) {
        NeumaierSum factor;
        for (int j = 1; j <= N; ++j) {
            NeumaierSum sumsq;
            for_each_M(m - 1, N, [&](const IndexTuple& i) {
                const Complex v = b[tuple_index(insert_at(i, k, j))];
                sumsq.add(std::norm(v));
            });
            factor.add(std::sqrt(sumsq.value()));
        }
        rhs *= std::pow(factor.value(), expo);
    }

    InequalityReport rep;
    rep.name = std::string("blei-") + std::string(to_string(variant));
    rep.lhs.value = lhs_acc.value();
    rep.lhs.kind = EstimateKind::exact;
    rep.lhs.method = "blei-lhs-sum";
    rep.rhs_base.value = rhs;
    rep.rhs_base.kind = EstimateKind::exact;
    rep.rhs_base.method = "blei-mixed-product";
    rep.constant = 1.0;
    rep.ratio = ratio_of(rep.lhs, 1.0, rep.rhs_base);
    rep.verdict = judge(rep.lhs, 1.0, rep.rhs_base, eps_rel);
    rep.detail = "exponent " + fmt(expo);
    return rep;
}

InequalityReport verify_harris(const HomogeneousPolynomial& p, int k,
                               HarrisVariant variant, const Effort& effort,
                               std::uint64_t seed) {
    const int m = p.degree();
    const int N = p.dimension();
    if (m < 2) throw std::invalid_argument("verify_harris: need m >= 2");
    const double constant = harris_factor(m, variant);

    InequalityReport rep;
    rep.name = std::string("harris-") + std::string(to_string(variant));
    rep.constant = constant;
    if (p.is_zero()) {
        rep.verdict = Verdict::degenerate;
        rep.detail = "zero polynomial";
        return rep;
    }
    const HomogeneousPolynomial mixed = mixed_polarization_polynomial(p, k);
    rep.lhs = sup_norm_lower(mixed, effort.search, derive_seed(seed, 11));
    rep.rhs_base = sup_norm_lower(p, effort.search, derive_seed(seed, 12));
    rep.ratio = ratio_of(rep.lhs, constant, rep.rhs_base);
    std::ostringstream detail;
    if (constant == 0.0) {
        rep.verdict = Verdict::degenerate;
        detail << "polarization factor is 0 for this variant at m = 2";
        rep.detail = detail.str();
        return rep;
    }

    // Certified satisfaction needs an upper bound on the 2N-variable mixed
    // form; affordable only at small N.
    try {
        const int K = certification_grid(m, 2 * N, effort.grid_K);
        const NormEstimate mixed_upper =
            sup_norm_upper(mixed, K, effort.cost_cap);
        if (judge(mixed_upper, constant, rep.rhs_base, effort.eps_rel) ==
            Verdict::verified) {
            rep.verdict = Verdict::verified;
            rep.lhs = mixed_upper;
            rep.ratio = ratio_of(rep.lhs, constant, rep.rhs_base);
            detail << "mixed-form sup_upper " << fmt(mixed_upper.value)
                   << " <= " << fmt(constant) << " * sup_lower "
                   << fmt(rep.rhs_base.value);
            rep.detail = detail.str();
            return rep;
        }
        detail << "mixed-form upper " << fmt(mixed_upper.value)
               << " did not certify; ";
    } catch (const CostCapExceeded&) {
        detail << "2N-dimensional certification grid unaffordable; ";
    }
    if (const auto upper = certify_violation(p, rep.lhs, constant, effort)) {
        if (judge(rep.lhs, constant, *upper, effort.eps_rel) ==
            Verdict::violated_estimates) {
            rep.verdict = Verdict::violated_estimates;
            rep.rhs_base = *upper;
            rep.ratio = ratio_of(rep.lhs, constant, *upper);
            detail << "violation certified: mixed-form lower "
                   << fmt(rep.lhs.value) << " > " << fmt(constant)
                   << " * sup_upper " << fmt(upper->value);
            rep.detail = detail.str();
            return rep;
        }
    } else {
        detail << "violation check skipped (cost cap); ";
    }
    rep.verdict = Verdict::satisfied_not_certified;
    detail << "point estimates: mixed " << fmt(rep.lhs.value) << " vs "
           << fmt(constant) << " * sup " << fmt(rep.rhs_base.value);
    rep.detail = detail.str();
    return rep;
}

InequalityReport verify_corollary(const HomogeneousPolynomial& p, int max_vars,
                                  const Effort& effort, std::uint64_t seed) {
    const int m = p.degree();
    if (m < 2) throw std::invalid_argument("verify_corollary: need m >= 2");
    if (max_vars < 1)
        throw std::invalid_argument("verify_corollary: need M >= 1");
    for (const auto& [alpha, c] : p.terms())
        if (var_count(alpha) > max_vars)
            throw std::invalid_argument(
                "verify_corollary: support violation, a monomial uses " +
                std::to_string(var_count(alpha)) + " > M = " +
                std::to_string(max_vars) + " variables");
    const CorollaryConstant cc = corollary_constant(m, max_vars);
    NormEstimate lhs =
        weighted_coeff_norm(p, 2.0 * m / (m + 1.0), /*weighted=*/false);
    std::string extra = "simplified constant 2^(M/2) m^((M+1)/2) = " +
                        fmt(cc.simplified_form) +
                        ", Lagrange chain value = " + fmt(cc.lagrange_form);
    return sup_flow("corollary-nvariables", p, std::move(lhs),
                    cc.simplified_form, false, effort, seed, std::move(extra));
}

// --- proof-chain tracer ----------------------------------------------------------

TraceReport trace_proof_chain(const HomogeneousPolynomial& p,
                              const Effort& effort, std::uint64_t seed,
                              HarrisVariant variant, double identity_tol,
                              double inequality_tol) {
    const int m = p.degree();
    const int N = p.dimension();
    if (m < 2) throw std::invalid_argument("trace_proof_chain: need m >= 2");

    TraceReport rep;
    rep.m = m;
    rep.N = N;
    rep.variant = variant;
    rep.identity_tol = identity_tol;
    rep.inequality_tol = inequality_tol;

    const double q = 2.0 * m / (m + 1.0);
    const double inv_q = 1.0 / q;
    const double card_expo = (m - 1.0) / (2.0 * m);
    const double mpow = std::pow(static_cast<double>(m), card_expo);

    const auto weight_of = [N](const IndexTuple& t) {
        return static_cast<double>(divisor_weight(tuple_to_alpha(t, N)));
    };

    // Stage 1: the weighted coefficient norm rewritten over J(m,N).
    NeumaierSum s1;
    for_each_J(m, N, [&](const IndexTuple& i) {
        const double a = std::abs(symmetric_coefficient(p, i));
        if (a == 0.0) return;
        const double card = static_cast<double>(class_cardinality(i));
        s1.add(std::pow(card * a / std::sqrt(weight_of(i)), q));
    });
    const double v1 = std::pow(s1.value(), inv_q);
    const double direct = weighted_coeff_norm(p, q, true).value;

    // Stage 2: the same sum over M(m,N) with card^(1-(m+1)/2m) weights.
    NeumaierSum s2;
    for_each_M(m, N, [&](const IndexTuple& i) {
        const double a = std::abs(symmetric_coefficient(p, i));
        if (a == 0.0) return;
        const double card = static_cast<double>(class_cardinality(i));
        s2.add(std::pow(std::pow(card, card_expo) * a / std::sqrt(weight_of(i)), q));
    });
    const double v2 = std::pow(s2.value(), inv_q);

    // Stage 3: Blei product with b_i = card^((m-1)/2m) a_i / sqrt(d(p_i)).
    // Stage 4: cardinality pull-out, card[(i,_k j)] <= m card[i].
    double v3 = 1.0, v4 = 1.0;
    for (int k = 1; k <= m; ++k) {
        NeumaierSum f3, f4;
        for (int j = 1; j <= N; ++j) {
            NeumaierSum s3, s4;
            for_each_M(m - 1, N, [&](const IndexTuple& i) {
                const IndexTuple ins = insert_at(i, k, j);
                const double a = std::abs(symmetric_coefficient(p, ins));
                if (a == 0.0) return;
                const double d_ins = weight_of(ins);
                const double card_ins = static_cast<double>(class_cardinality(ins));
                const double b = std::pow(card_ins, card_expo) * a / std::sqrt(d_ins);
                s3.add(b * b);
                const double card_i = static_cast<double>(class_cardinality(i));
                s4.add(card_i * a * a / d_ins);
            });
            f3.add(std::sqrt(s3.value()));
            f4.add(std::sqrt(s4.value()));
        }
        v3 *= std::pow(f3.value(), 1.0 / m);
        v4 *= std::pow(f4.value(), 1.0 / m);
    }
    v4 *= mpow;

    // Stages 5-6: per-slot slices (k-independent by symmetry); divisor
    // monotonicity moves d to the shorter tuple, then Helson bounds each
    // slice's weighted l2 norm by its torus L1 norm.
    std::vector<HomogeneousPolynomial> slices;
    slices.reserve(static_cast<std::size_t>(N));
    for (int j = 1; j <= N; ++j) slices.push_back(polarized_slice(p, 1, j));
    NeumaierSum s5, s6, err6;
    for (const auto& slice : slices) {
        s5.add(helson_lhs(slice).value);
        int K = effort.grid_K + (effort.grid_K % 2);
        const NormEstimate l1 = torus_l1_grid(slice, K, effort.cost_cap,
                                              effort.quad_max_N);
        s6.add(l1.value);
        err6.add(l1.quad_error);
    }
    const double v5 = mpow * s5.value();
    const double v6 = mpow * s6.value();
    const double margin6 = mpow * err6.value();

    // Stage 7: polarization bound against the sup-norm of P.
    const NormEstimate sup = sup_norm_lower(p, effort.search, seed);
    const double hfac = harris_factor(m, variant);
    const double v7 = mpow * hfac * sup.value;

    const auto rel_eq = [identity_tol](double a, double b) {
        return std::abs(a - b) <= identity_tol * std::max({std::abs(a),
                                                           std::abs(b), 1e-30});
    };
    const auto mono = [inequality_tol](double lo, double hi) {
        return lo <= hi * (1.0 + inequality_tol) + 1e-300;
    };

    rep.stages = {
        {"lhs-J-sum", v1, true, 0.0, rel_eq(v1, direct),
         "cross-check vs direct coefficient norm " + fmt(direct)},
        {"M-sum-rewrite", v2, true, 0.0, rel_eq(v2, v1), ""},
        {"blei-product", v3, false, 0.0, mono(v2, v3), ""},
        {"card-pullout", v4, false, 0.0, mono(v3, v4), ""},
        {"divisor-monotonic", v5, false, 0.0, mono(v4, v5), ""},
        {"helson-per-factor", v6, false, margin6, mono(v5, v6 + margin6),
         "grid quadrature, empirical error " + fmt(margin6)},
        {"harris-sup", v7, false, margin6, mono(v6 + margin6, v7),
         std::string("variant ") + std::string(to_string(variant)) +
             ", sup lower bound " + fmt(sup.value)},
    };
    rep.first_failed = -1;
    for (std::size_t s = 0; s < rep.stages.size(); ++s) {
        if (!rep.stages[s].ok) {
            rep.first_failed = static_cast<int>(s);
            break;
        }
    }
    rep.all_ok = rep.first_failed < 0;
    return rep;
}

ScanRecord empirical_min_constant(const EnsembleSpec& spec, int trials,
                                  const Effort& effort) {
    if (trials < 1)
        throw std::invalid_argument("empirical_min_constant: trials >= 1");
    ScanRecord rec;
    rec.m = spec.degree;
    rec.N = spec.dimension;
    rec.trials = trials;
    const double q = 2.0 * spec.degree / (spec.degree + 1.0);
    for (int t = 0; t < trials; ++t) {
        EnsembleSpec trial = spec;
        trial.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(t));
        const HomogeneousPolynomial p = random_polynomial(trial);
        const double lhs = weighted_coeff_norm(p, q, true).value;
        const double sup =
            sup_norm_lower(p, effort.search, derive_seed(trial.seed, 1)).value;
        if (sup <= 0.0) continue;
        const double ratio = lhs / sup;
        if (ratio > rec.max_ratio) {
            rec.max_ratio = ratio;
            rec.argmax_trial = t;
            rec.argmax_seed = trial.seed;
        }
    }
    return rec;
}

}  // namespace bhlab
