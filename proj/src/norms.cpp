#include "bhlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "bhlab/rng.hpp"
#include "bhlab/summation.hpp"

namespace bhlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double checked_grid_cost(int K, int N, std::int64_t cost_cap,
                         const char* what) {
    if (K < 1) throw std::invalid_argument(std::string(what) + ": K >= 1");
    double cost = 1.0;
    for (int r = 0; r < N; ++r) cost *= static_cast<double>(K);
    if (cost > static_cast<double>(cost_cap))
        throw CostCapExceeded(std::string(what) + ": grid K^N = " +
                              std::to_string(cost) + " exceeds cost cap " +
                              std::to_string(cost_cap));
    return cost;
}

// --- tensor-grid evaluation engine ---------------------------------------
//
// Grid values are produced in row-major order with the last variable
// fastest; point (k_1,...,k_N) has phases theta_r = 2*pi*k_r/K. The
// polynomial is split by the exponent of its last variable, sub-grids over
// the leading variables are materialized once, and the final variable is
// streamed, so memory stays at O(K^(N-1) * degree).

struct GridTerm {
    const std::vector<int>* exps;
    Complex c;
};

std::vector<Complex> phase_table(int K, int maxdeg) {
    std::vector<Complex> w(static_cast<std::size_t>(K) * (maxdeg + 1));
    for (int k = 0; k < K; ++k)
        for (int d = 0; d <= maxdeg; ++d)
            w[static_cast<std::size_t>(k) * (maxdeg + 1) + d] =
                std::polar(1.0, kTwoPi * static_cast<double>(k) * d / K);
    return w;
}

std::vector<std::vector<GridTerm>> split_by_var(const std::vector<GridTerm>& terms,
                                                int var0) {
    int maxdeg = 0;
    for (const auto& t : terms)
        maxdeg = std::max(maxdeg, (*t.exps)[static_cast<std::size_t>(var0)]);
    std::vector<std::vector<GridTerm>> groups(static_cast<std::size_t>(maxdeg) + 1);
    for (const auto& t : terms)
        groups[static_cast<std::size_t>((*t.exps)[static_cast<std::size_t>(var0)])]
            .push_back(t);
    return groups;
}

// Values of the restriction to the first `nvars` variables on the K^nvars
// grid (exponents at positions >= nvars are ignored by construction).
std::vector<Complex> grid_values(const std::vector<GridTerm>& terms, int nvars,
                                 int K) {
    if (nvars == 0) {
        ComplexSum acc;
        for (const auto& t : terms) acc.add(t.c);
        return {acc.value()};
    }
    const auto groups = split_by_var(terms, nvars - 1);
    const int maxdeg = static_cast<int>(groups.size()) - 1;
    if (nvars == 1) {
        std::vector<Complex> coeff(groups.size());
        for (std::size_t d = 0; d < groups.size(); ++d) {
            ComplexSum acc;
            for (const auto& t : groups[d]) acc.add(t.c);
            coeff[d] = acc.value();
        }
        std::vector<Complex> out(static_cast<std::size_t>(K));
        for (int k = 0; k < K; ++k) {
            const Complex w = std::polar(1.0, kTwoPi * k / K);
            Complex u = coeff[static_cast<std::size_t>(maxdeg)];
            for (int d = maxdeg - 1; d >= 0; --d)
                u = u * w + coeff[static_cast<std::size_t>(d)];
            out[static_cast<std::size_t>(k)] = u;
        }
        return out;
    }
    std::vector<std::vector<Complex>> subs(groups.size());
    for (std::size_t d = 0; d < groups.size(); ++d)
        if (!groups[d].empty()) subs[d] = grid_values(groups[d], nvars - 1, K);
    std::size_t inner = 1;
    for (int r = 0; r < nvars - 1; ++r) inner *= static_cast<std::size_t>(K);
    const auto w = phase_table(K, maxdeg);
    std::vector<Complex> out(inner * static_cast<std::size_t>(K));
    for (std::size_t prefix = 0; prefix < inner; ++prefix) {
        for (int k = 0; k < K; ++k) {
            Complex v{0.0, 0.0};
            for (int d = 0; d <= maxdeg; ++d) {
                if (subs[static_cast<std::size_t>(d)].empty()) continue;
                v += subs[static_cast<std::size_t>(d)][prefix] *
                     w[static_cast<std::size_t>(k) * (maxdeg + 1) + d];
            }
            out[prefix * static_cast<std::size_t>(K) +
                static_cast<std::size_t>(k)] = v;
        }
    }
    return out;
}

template <class Poly, class Fn>
void walk_grid(const Poly& p, int K, Fn&& fn) {
    std::vector<GridTerm> terms;
    terms.reserve(p.term_count());
    for (const auto& [alpha, c] : p.terms())
        terms.push_back({&alpha.exponents(), c});
    const int N = p.dimension();
    if (terms.empty()) return;
    if (N == 1) {
        const auto groups = split_by_var(terms, 0);
        const int maxdeg = static_cast<int>(groups.size()) - 1;
        std::vector<Complex> coeff(groups.size());
        for (std::size_t d = 0; d < groups.size(); ++d) {
            ComplexSum acc;
            for (const auto& t : groups[d]) acc.add(t.c);
            coeff[d] = acc.value();
        }
        for (int k = 0; k < K; ++k) {
            const Complex w = std::polar(1.0, kTwoPi * k / K);
            Complex u = coeff[static_cast<std::size_t>(maxdeg)];
            for (int d = maxdeg - 1; d >= 0; --d)
                u = u * w + coeff[static_cast<std::size_t>(d)];
            fn(u);
        }
        return;
    }
    const auto groups = split_by_var(terms, N - 1);
    const int maxdeg = static_cast<int>(groups.size()) - 1;
    std::vector<std::vector<Complex>> subs(groups.size());
    for (std::size_t d = 0; d < groups.size(); ++d)
        if (!groups[d].empty()) subs[d] = grid_values(groups[d], N - 1, K);
    std::size_t inner = 1;
    for (int r = 0; r < N - 1; ++r) inner *= static_cast<std::size_t>(K);
    const auto w = phase_table(K, maxdeg);
    for (std::size_t prefix = 0; prefix < inner; ++prefix) {
        for (int k = 0; k < K; ++k) {
            Complex v{0.0, 0.0};
            for (int d = 0; d <= maxdeg; ++d) {
                if (subs[static_cast<std::size_t>(d)].empty()) continue;
                v += subs[static_cast<std::size_t>(d)][prefix] *
                     w[static_cast<std::size_t>(k) * (maxdeg + 1) + d];
            }
            fn(v);
        }
    }
}

template <class Poly>
double grid_mean_abs(const Poly& p, int K) {
    NeumaierSum acc;
    double npoints = 1.0;
    for (int r = 0; r < p.dimension(); ++r) npoints *= static_cast<double>(K);
    walk_grid(p, K, [&acc](Complex v) { acc.add(std::abs(v)); });
    return acc.value() / npoints;
}

}  // namespace

std::string_view to_string(EstimateKind kind) {
    switch (kind) {
        case EstimateKind::exact: return "exact";
        case EstimateKind::lower_bound: return "lower_bound";
        case EstimateKind::upper_bound: return "upper_bound";
        case EstimateKind::stochastic: return "stochastic";
    }
    return "?";
}

EstimateKind estimate_kind_from_string(std::string_view s) {
    if (s == "exact") return EstimateKind::exact;
    if (s == "lower_bound") return EstimateKind::lower_bound;
    if (s == "upper_bound") return EstimateKind::upper_bound;
    if (s == "stochastic") return EstimateKind::stochastic;
    throw std::invalid_argument("unknown estimate kind: " + std::string(s));
}

NormEstimate weighted_coeff_norm(const HomogeneousPolynomial& p,
                                 double exponent, bool weighted) {
    if (!(exponent > 0.0))
        throw std::invalid_argument("weighted_coeff_norm: exponent must be > 0");
    NeumaierSum acc;
    for (const auto& [alpha, c] : p.terms()) {
        double t = std::abs(c);
        if (weighted) t /= std::sqrt(static_cast<double>(divisor_weight(alpha)));
        acc.add(std::pow(t, exponent));
    }
    NormEstimate e;
    e.value = p.is_zero() ? 0.0 : std::pow(acc.value(), 1.0 / exponent);
    e.kind = EstimateKind::exact;
    e.method = weighted ? "coeff-lp-weighted" : "coeff-lp";
    return e;
}

namespace {

template <class Poly>
NormEstimate helson_lhs_impl(const Poly& f) {
    NeumaierSum acc;
    for (const auto& [alpha, c] : f.terms()) {
        const double a = std::abs(c);
        acc.add(a * a / static_cast<double>(divisor_weight(alpha)));
    }
    NormEstimate e;
    e.value = std::sqrt(acc.value());
    e.kind = EstimateKind::exact;
    e.method = "helson-weighted-l2";
    return e;
}

}  // namespace

NormEstimate helson_lhs(const AnalyticPolynomial& f) { return helson_lhs_impl(f); }
NormEstimate helson_lhs(const HomogeneousPolynomial& p) {
    return helson_lhs_impl(p);
}

NormEstimate l2_coeff_norm(const HomogeneousPolynomial& p) {
    NeumaierSum acc;
    for (const auto& [alpha, c] : p.terms()) {
        const double a = std::abs(c);
        acc.add(a * a);
    }
    NormEstimate e;
    e.value = std::sqrt(acc.value());
    e.kind = EstimateKind::exact;
    e.method = "coeff-l2";
    return e;
}

// --- sup-norm lower bound: multistart coordinate phase ascent ---------------

namespace {

struct AscentState {
    const HomogeneousPolynomial* p;
    int N;
    std::vector<int> maxdeg;          // per variable, 0-based
    std::vector<Complex> z;           // current point on the torus
    std::vector<Complex> a_buf;       // coefficient buffer for 1-D slices

    explicit AscentState(const HomogeneousPolynomial& poly)
        : p(&poly), N(poly.dimension()) {
        maxdeg.assign(static_cast<std::size_t>(N), 0);
        for (const auto& [alpha, c] : poly.terms())
            for (int r = 0; r < N; ++r)
                maxdeg[static_cast<std::size_t>(r)] =
                    std::max(maxdeg[static_cast<std::size_t>(r)],
                             alpha.exponents()[static_cast<std::size_t>(r)]);
        z.assign(static_cast<std::size_t>(N), Complex{1.0, 0.0});
    }

    // Collapse P to a polynomial in variable r alone at the current point.
    void collapse(int r0) {
        const int D = maxdeg[static_cast<std::size_t>(r0)];
        a_buf.assign(static_cast<std::size_t>(D) + 1, Complex{0.0, 0.0});
        for (const auto& [alpha, c] : p->terms()) {
            Complex prod = c;
            const auto& e = alpha.exponents();
            for (int s = 0; s < N; ++s) {
                if (s == r0) continue;
                for (int q = 0; q < e[static_cast<std::size_t>(s)]; ++q)
                    prod *= z[static_cast<std::size_t>(s)];
            }
            a_buf[static_cast<std::size_t>(e[static_cast<std::size_t>(r0)])] += prod;
        }
    }

    double slice_abs(double theta) const {
        const Complex w = std::polar(1.0, theta);
        Complex u = a_buf.back();
        for (int d = static_cast<int>(a_buf.size()) - 2; d >= 0; --d)
            u = u * w + a_buf[static_cast<std::size_t>(d)];
        return std::abs(u);
    }

    // Maximize |slice| over theta: dense scan, then golden-section refine.
    double update_coordinate(int r0, double theta_now) {
        collapse(r0);
        const int D = static_cast<int>(a_buf.size()) - 1;
        double best_theta = theta_now;
        double best = slice_abs(theta_now);
        if (D == 0) return best;  // no dependence on this variable
        const int scan = std::max(32, 16 * D + 1);
        for (int s = 0; s < scan; ++s) {
            const double th = kTwoPi * s / scan;
            const double v = slice_abs(th);
            if (v > best) {
                best = v;
                best_theta = th;
            }
        }
        double a = best_theta - kTwoPi / scan;
        double b = best_theta + kTwoPi / scan;
        constexpr double gr = 0.61803398874989485;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = slice_abs(c), fd = slice_abs(d);
        for (int it = 0; it < 64; ++it) {
            if (fc > best) {
                best = fc;
                best_theta = c;
            }
            if (fd > best) {
                best = fd;
                best_theta = d;
            }
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - gr * (b - a);
                fc = slice_abs(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b - a);
                fd = slice_abs(d);
            }
        }
        z[static_cast<std::size_t>(r0)] = std::polar(1.0, best_theta);
        return best;
    }
};

}  // namespace

NormEstimate sup_norm_lower(const HomogeneousPolynomial& p,
                            const SearchBudget& budget, std::uint64_t seed) {
    NormEstimate e;
    e.method = "phase-ascent";
    e.effort.restarts = budget.restarts;
    if (p.is_zero()) {
        e.kind = EstimateKind::exact;
        e.value = 0.0;
        return e;
    }
    if (budget.restarts < 1)
        throw std::invalid_argument("sup_norm_lower: restarts >= 1");
    e.kind = EstimateKind::lower_bound;
    double global_best = 0.0;
    AscentState st(p);
    std::vector<Complex> zpoint(static_cast<std::size_t>(st.N));
    for (int restart = 0; restart < budget.restarts; ++restart) {
        std::vector<double> theta(static_cast<std::size_t>(st.N), 0.0);
        if (restart > 0) {
            Xoshiro256ss rng(derive_seed(seed, static_cast<std::uint64_t>(restart)));
            for (auto& th : theta) th = kTwoPi * rng.uniform01();
        }
        for (int r = 0; r < st.N; ++r)
            st.z[static_cast<std::size_t>(r)] =
                std::polar(1.0, theta[static_cast<std::size_t>(r)]);
        for (std::size_t r = 0; r < zpoint.size(); ++r) zpoint[r] = st.z[r];
        double value = std::abs(evaluate(p, zpoint));
        for (int sweep = 0; sweep < budget.max_sweeps; ++sweep) {
            const double prev = value;
            for (int r = 0; r < st.N; ++r)
                value = st.update_coordinate(
                    r, std::arg(st.z[static_cast<std::size_t>(r)]));
            if (value - prev <= budget.tol * std::max(1.0, value)) break;
        }
        global_best = std::max(global_best, value);
    }
    e.value = global_best;
    return e;
}

NormEstimate sup_norm_upper(const HomogeneousPolynomial& p, int grid_points,
                            std::int64_t cost_cap) {
    NormEstimate e;
    e.method = "grid-bernstein";
    e.effort.grid_points = grid_points;
    if (p.is_zero()) {
        e.kind = EstimateKind::exact;
        return e;
    }
    checked_grid_cost(grid_points, p.dimension(), cost_cap, "sup_norm_upper");
    const double h = kTwoPi / grid_points;
    const double correction =
        static_cast<double>(p.degree()) * p.dimension() * h / 2.0;
    if (correction >= 1.0)
        throw std::invalid_argument(
            "sup_norm_upper: grid too coarse, m*N*h/2 = " +
            std::to_string(correction) + " >= 1");
    double gmax = 0.0;
    walk_grid(p, grid_points,
              [&gmax](Complex v) { gmax = std::max(gmax, std::abs(v)); });
    e.kind = EstimateKind::upper_bound;
    e.value = gmax / (1.0 - correction);
    return e;
}

namespace {

template <class Poly>
NormEstimate torus_l1_grid_impl(const Poly& f, int K, std::int64_t cost_cap,
                                int max_N) {
    NormEstimate e;
    e.method = "grid-rect";
    e.effort.grid_points = K;
    if (f.is_zero()) {
        e.kind = EstimateKind::exact;
        return e;
    }
    if (f.dimension() > max_N)
        throw CostCapExceeded("torus_l1_grid: N = " +
                              std::to_string(f.dimension()) +
                              " exceeds grid dimension limit " +
                              std::to_string(max_N));
    if (K < 2 || K % 2 != 0)
        throw std::invalid_argument("torus_l1_grid: K must be even and >= 2");
    checked_grid_cost(K, f.dimension(), cost_cap, "torus_l1_grid");
    const double fine = grid_mean_abs(f, K);
    const double coarse = grid_mean_abs(f, K / 2);
    e.kind = EstimateKind::exact;
    e.value = fine;
    e.quad_error = std::abs(fine - coarse);
    return e;
}

template <class Poly>
NormEstimate torus_l1_mc_impl(const Poly& f, std::int64_t n,
                              std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("torus_l1_mc: need n >= 2");
    NormEstimate e;
    e.method = "mc";
    e.effort.samples = n;
    e.kind = EstimateKind::stochastic;
    if (f.is_zero()) return e;
    Xoshiro256ss rng(seed);
    const int N = f.dimension();
    std::vector<Complex> w(static_cast<std::size_t>(N));
    double mean = 0.0, m2 = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) {
        for (auto& wr : w) wr = std::polar(1.0, kTwoPi * rng.uniform01());
        const double x = std::abs(evaluate(f, w));
        const double delta = x - mean;
        mean += delta / static_cast<double>(i);
        m2 += delta * (x - mean);
    }
    e.value = mean;
    e.stderr_value =
        std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    return e;
}

}  // namespace

NormEstimate torus_l1_grid(const AnalyticPolynomial& f, int grid_points,
                           std::int64_t cost_cap, int max_N) {
    return torus_l1_grid_impl(f, grid_points, cost_cap, max_N);
}

NormEstimate torus_l1_grid(const HomogeneousPolynomial& p, int grid_points,
                           std::int64_t cost_cap, int max_N) {
    return torus_l1_grid_impl(p, grid_points, cost_cap, max_N);
}

NormEstimate torus_l1_mc(const AnalyticPolynomial& f, std::int64_t samples,
                         std::uint64_t seed) {
    return torus_l1_mc_impl(f, samples, seed);
}

NormEstimate torus_l1_mc(const HomogeneousPolynomial& p, std::int64_t samples,
                         std::uint64_t seed) {
    return torus_l1_mc_impl(p, samples, seed);
}

NormEstimate torus_l2_grid(const HomogeneousPolynomial& p, int grid_points,
                           std::int64_t cost_cap) {
    NormEstimate e;
    e.method = "grid-l2";
    e.effort.grid_points = grid_points;
    e.kind = EstimateKind::exact;
    if (p.is_zero()) return e;
    checked_grid_cost(grid_points, p.dimension(), cost_cap, "torus_l2_grid");
    NeumaierSum acc;
    double npoints = 1.0;
    for (int r = 0; r < p.dimension(); ++r)
        npoints *= static_cast<double>(grid_points);
    walk_grid(p, grid_points, [&acc](Complex v) { acc.add(std::norm(v)); });
    e.value = std::sqrt(acc.value() / npoints);
    return e;
}

}  // namespace bhlab
