#include "bhlab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bhlab/rng.hpp"
#include "bhlab/summation.hpp"

namespace bhlab {

namespace {

Complex pow_small(Complex z, int e) {
    Complex r{1.0, 0.0};
    for (int q = 0; q < e; ++q) r *= z;
    return r;
}

Complex monomial_value(const MultiIndex& alpha, std::span<const Complex> z) {
    Complex r{1.0, 0.0};
    for (int v = 1; v <= alpha.dimension(); ++v) {
        const int e = alpha.exponent(v);
        if (e != 0) r *= pow_small(z[static_cast<std::size_t>(v - 1)], e);
    }
    return r;
}

void check_key(const MultiIndex& alpha, int N, int m, bool homogeneous) {
    if (alpha.dimension() != N)
        throw std::invalid_argument("polynomial: multi-index has wrong length");
    if (homogeneous && alpha.degree() != m)
        throw std::invalid_argument("polynomial: multi-index has wrong degree");
}

}  // namespace

HomogeneousPolynomial::HomogeneousPolynomial(int dimension, int degree)
    : N_(dimension), m_(degree) {
    if (dimension < 1 || degree < 0)
        throw std::invalid_argument("HomogeneousPolynomial: need N >= 1, m >= 0");
}

HomogeneousPolynomial HomogeneousPolynomial::from_terms(
    int dimension, int degree,
    const std::vector<std::pair<MultiIndex, Complex>>& terms) {
    HomogeneousPolynomial p(dimension, degree);
    for (const auto& [alpha, c] : terms) p.set_coefficient(alpha, c);
    return p;
}

Complex HomogeneousPolynomial::coefficient(const MultiIndex& alpha) const {
    const auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
}

void HomogeneousPolynomial::set_coefficient(const MultiIndex& alpha, Complex c) {
    check_key(alpha, N_, m_, true);
    if (c == Complex{0.0, 0.0})
        coeffs_.erase(alpha);
    else
        coeffs_[alpha] = c;
}

AnalyticPolynomial::AnalyticPolynomial(int dimension) : N_(dimension) {
    if (dimension < 1)
        throw std::invalid_argument("AnalyticPolynomial: need N >= 1");
}

AnalyticPolynomial AnalyticPolynomial::from_terms(
    int dimension, const std::vector<std::pair<MultiIndex, Complex>>& terms) {
    AnalyticPolynomial f(dimension);
    for (const auto& [alpha, c] : terms) f.set_coefficient(alpha, c);
    return f;
}

int AnalyticPolynomial::max_total_degree() const {
    int d = 0;
    for (const auto& [alpha, c] : coeffs_) d = std::max(d, alpha.degree());
    return d;
}

Complex AnalyticPolynomial::coefficient(const MultiIndex& alpha) const {
    const auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? Complex{0.0, 0.0} : it->second;
}

void AnalyticPolynomial::set_coefficient(const MultiIndex& alpha, Complex c) {
    check_key(alpha, N_, 0, false);
    if (c == Complex{0.0, 0.0})
        coeffs_.erase(alpha);
    else
        coeffs_[alpha] = c;
}

AnalyticPolynomial as_analytic(const HomogeneousPolynomial& p) {
    AnalyticPolynomial f(p.dimension());
    for (const auto& [alpha, c] : p.terms()) f.set_coefficient(alpha, c);
    return f;
}

namespace {

template <class Poly>
Complex evaluate_impl(const Poly& p, std::span<const Complex> z) {
    if (static_cast<int>(z.size()) != p.dimension())
        throw std::invalid_argument("evaluate: dimension mismatch");
    ComplexSum acc;
    for (const auto& [alpha, c] : p.terms()) acc.add(c * monomial_value(alpha, z));
    return acc.value();
}

}  // namespace

Complex evaluate(const HomogeneousPolynomial& p, std::span<const Complex> z) {
    return evaluate_impl(p, z);
}

Complex evaluate(const AnalyticPolynomial& f, std::span<const Complex> z) {
    return evaluate_impl(f, z);
}

Complex symmetric_coefficient(const HomogeneousPolynomial& p,
                              const IndexTuple& i) {
    if (i.length() != p.degree())
        throw std::invalid_argument("symmetric_coefficient: tuple length != m");
    if (!i.is_valid_for(p.dimension()))
        throw std::invalid_argument("symmetric_coefficient: entry exceeds N");
    const MultiIndex alpha = tuple_to_alpha(i, p.dimension());
    const Complex c = p.coefficient(alpha);
    if (c == Complex{0.0, 0.0}) return c;
    return c / static_cast<double>(class_cardinality(i));
}

HomogeneousPolynomial polarized_slice(const HomogeneousPolynomial& p, int k,
                                      int j) {
    const int m = p.degree();
    const int N = p.dimension();
    if (m < 2) throw std::invalid_argument("polarized_slice: need m >= 2");
    if (k < 1 || k > m) throw std::out_of_range("polarized_slice: k in 1..m");
    if (j < 1 || j > N) throw std::out_of_range("polarized_slice: j in 1..N");
    HomogeneousPolynomial q(N, m - 1);
    for_each_J(m - 1, N, [&](const IndexTuple& i) {
        const Complex a = symmetric_coefficient(p, insert_at(i, k, j));
        if (a == Complex{0.0, 0.0}) return;
        const double card = static_cast<double>(class_cardinality(i));
        q.set_coefficient(tuple_to_alpha(i, N), card * a);
    });
    return q;
}

Complex mixed_polarization(const HomogeneousPolynomial& p, int k,
                           std::span<const Complex> z,
                           std::span<const Complex> y) {
    const int m = p.degree();
    const int N = p.dimension();
    if (m < 1) throw std::invalid_argument("mixed_polarization: need m >= 1");
    if (k < 1 || k > m) throw std::out_of_range("mixed_polarization: k in 1..m");
    if (static_cast<int>(z.size()) != N || static_cast<int>(y.size()) != N)
        throw std::invalid_argument("mixed_polarization: dimension mismatch");
    ComplexSum acc;
    for_each_M(m - 1, N, [&](const IndexTuple& i) {
        Complex zprod{1.0, 0.0};
        for (int e : i.entries()) zprod *= z[static_cast<std::size_t>(e - 1)];
        for (int j = 1; j <= N; ++j) {
            const Complex a = symmetric_coefficient(p, insert_at(i, k, j));
            if (a == Complex{0.0, 0.0}) continue;
            acc.add(a * zprod * y[static_cast<std::size_t>(j - 1)]);
        }
    });
    return acc.value();
}

HomogeneousPolynomial mixed_polarization_polynomial(
    const HomogeneousPolynomial& p, int k) {
    const int N = p.dimension();
    const int m = p.degree();
    if (m < 2)
        throw std::invalid_argument("mixed_polarization_polynomial: need m >= 2");
    HomogeneousPolynomial h(2 * N, m);
    for (int j = 1; j <= N; ++j) {
        const HomogeneousPolynomial q = polarized_slice(p, k, j);
        for (const auto& [beta, c] : q.terms()) {
            std::vector<int> exps(static_cast<std::size_t>(2 * N), 0);
            for (int r = 1; r <= N; ++r)
                exps[static_cast<std::size_t>(r - 1)] = beta.exponent(r);
            exps[static_cast<std::size_t>(N + j - 1)] = 1;
            h.set_coefficient(MultiIndex(std::move(exps)), c);
        }
    }
    return h;
}

HomogeneousPolynomial restrict_support(const HomogeneousPolynomial& p,
                                       const std::set<MultiIndex>& lambda) {
    HomogeneousPolynomial out(p.dimension(), p.degree());
    for (const auto& [alpha, c] : p.terms())
        if (lambda.count(alpha)) out.set_coefficient(alpha, c);
    return out;
}

SupportSpec SupportSpec::lambda(int max_vars) {
    SupportSpec s;
    s.mode = Mode::lambda;
    s.max_vars = max_vars;
    return s;
}

SupportSpec SupportSpec::explicit_list(std::vector<MultiIndex> list) {
    SupportSpec s;
    s.mode = Mode::explicit_list;
    s.list = std::move(list);
    return s;
}

namespace {

Complex draw_coefficient(EnsembleKind kind, Xoshiro256ss& rng) {
    switch (kind) {
        case EnsembleKind::steinhaus:
            return std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform01());
        case EnsembleKind::rademacher:
            return {(rng.next() >> 63) ? 1.0 : -1.0, 0.0};
        case EnsembleKind::complex_gaussian: {
            const auto [x, y] = rng.normal_pair();
            return {x * std::numbers::sqrt2 / 2.0, y * std::numbers::sqrt2 / 2.0};
        }
    }
    throw std::logic_error("draw_coefficient: unknown kind");
}

}  // namespace

HomogeneousPolynomial random_polynomial(const EnsembleSpec& spec) {
    std::vector<MultiIndex> support;
    switch (spec.support.mode) {
        case SupportSpec::Mode::full:
            support = enumerate_degree(spec.degree, spec.dimension);
            break;
        case SupportSpec::Mode::lambda:
            support = enumerate_Lambda(spec.degree, spec.dimension,
                                       spec.support.max_vars);
            break;
        case SupportSpec::Mode::explicit_list:
            support = spec.support.list;
            std::sort(support.begin(), support.end());
            support.erase(std::unique(support.begin(), support.end()),
                          support.end());
            break;
    }
    if (support.empty())
        throw std::invalid_argument("random_polynomial: empty support");
    HomogeneousPolynomial p(spec.dimension, spec.degree);
    Xoshiro256ss rng(spec.seed);
    for (const MultiIndex& alpha : support)
        p.set_coefficient(alpha, draw_coefficient(spec.kind, rng));
    return p;
}

AnalyticPolynomial random_analytic(int dimension, int max_degree,
                                   double density, EnsembleKind kind,
                                   std::uint64_t seed) {
    if (max_degree < 0)
        throw std::invalid_argument("random_analytic: max_degree < 0");
    if (!(density > 0.0 && density <= 1.0))
        throw std::invalid_argument("random_analytic: density in (0, 1]");
    AnalyticPolynomial f(dimension);
    Xoshiro256ss rng(seed);
    for (int d = 0; d <= max_degree; ++d) {
        for_each_degree(d, dimension, [&](const MultiIndex& alpha) {
            if (rng.uniform01() < density)
                f.set_coefficient(alpha, draw_coefficient(kind, rng));
        });
    }
    return f;
}

}  // namespace bhlab
