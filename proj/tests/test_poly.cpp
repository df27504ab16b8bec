#include <cmath>
#include <doctest.h>

#include "bhlab/json_io.hpp"
#include "bhlab/poly.hpp"
#include "bhlab/rng.hpp"

using namespace bhlab;

namespace {

HomogeneousPolynomial monomial(int N, int m, std::vector<int> alpha,
                               Complex c = {1.0, 0.0}) {
    HomogeneousPolynomial p(N, m);
    p.set_coefficient(MultiIndex(std::move(alpha)), c);
    return p;
}

std::vector<Complex> torus_point(int N, std::uint64_t seed) {
    Xoshiro256ss rng(seed);
    std::vector<Complex> z(static_cast<std::size_t>(N));
    for (auto& v : z) v = std::polar(1.0, 6.283185307179586 * rng.uniform01());
    return z;
}

}  // namespace

TEST_CASE("evaluate") {
    const auto p1 = monomial(2, 3, {3, 0});
    CHECK(std::abs(evaluate(p1, std::vector<Complex>{{0.5, 0.0}, {0.7, 0.2}}) -
                   Complex{0.125, 0.0}) < 1e-15);

    const auto p2 = monomial(2, 2, {1, 1});
    CHECK(std::abs(evaluate(p2, std::vector<Complex>{{0.0, 1.0}, {0.0, 1.0}}) -
                   Complex{-1.0, 0.0}) < 1e-15);

    HomogeneousPolynomial p3(2, 2);
    p3.set_coefficient(MultiIndex({2, 0}), {2.0, 0.0});
    p3.set_coefficient(MultiIndex({0, 2}), {3.0, 0.0});
    CHECK(std::abs(evaluate(p3, std::vector<Complex>{{1.0, 0.0}, {1.0, 0.0}}) -
                   Complex{5.0, 0.0}) < 1e-14);

    CHECK_THROWS_AS(evaluate(p3, std::vector<Complex>{{1.0, 0.0}}),
                    std::invalid_argument);
}

TEST_CASE("canonical sparse form drops zeros") {
    HomogeneousPolynomial p(2, 2);
    p.set_coefficient(MultiIndex({2, 0}), {1.0, 0.0});
    p.set_coefficient(MultiIndex({2, 0}), {0.0, 0.0});
    CHECK(p.is_zero());
    CHECK_THROWS_AS(p.set_coefficient(MultiIndex({1, 0}), {1.0, 0.0}),
                    std::invalid_argument);  // wrong degree
    CHECK_THROWS_AS(p.set_coefficient(MultiIndex({1, 1, 0}), {1.0, 0.0}),
                    std::invalid_argument);  // wrong length
}

TEST_CASE("symmetric_coefficient") {
    const auto p12 = monomial(2, 2, {1, 1});
    CHECK(std::abs(symmetric_coefficient(p12, IndexTuple({1, 2})) -
                   Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(symmetric_coefficient(p12, IndexTuple({2, 1})) -
                   Complex{0.5, 0.0}) < 1e-15);

    const auto p20 = monomial(2, 2, {2, 0});
    CHECK(std::abs(symmetric_coefficient(p20, IndexTuple({1, 1})) -
                   Complex{1.0, 0.0}) < 1e-15);

    const auto p6 = monomial(3, 3, {1, 1, 1}, {6.0, 0.0});
    CHECK(std::abs(symmetric_coefficient(p6, IndexTuple({2, 1, 3})) -
                   Complex{1.0, 0.0}) < 1e-15);

    SymmetricFormView a(p6);
    CHECK(std::abs(a(IndexTuple({3, 2, 1})) - a(IndexTuple({1, 2, 3}))) == 0.0);
}

TEST_CASE("reconstruction: c_alpha = card[i] * a(i)") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::complex_gaussian;
    spec.dimension = 3;
    spec.degree = 4;
    spec.seed = 20240811;
    const auto p = random_polynomial(spec);
    for (const auto& [alpha, c] : p.terms()) {
        const IndexTuple i = alpha_to_tuple(alpha);
        const Complex rebuilt =
            static_cast<double>(class_cardinality(i)) * symmetric_coefficient(p, i);
        CHECK(std::abs(rebuilt - c) <= 1e-14 * std::abs(c));
    }
}

TEST_CASE("polarized_slice examples") {
    const auto s1 = polarized_slice(monomial(2, 2, {2, 0}), 1, 1);
    CHECK(s1.degree() == 1);
    CHECK(std::abs(s1.coefficient(MultiIndex({1, 0})) - Complex{1.0, 0.0}) <
          1e-15);
    CHECK(s1.term_count() == 1);

    const auto s2 = polarized_slice(monomial(2, 2, {1, 1}), 1, 1);
    CHECK(std::abs(s2.coefficient(MultiIndex({0, 1})) - Complex{0.5, 0.0}) <
          1e-15);
    CHECK(s2.term_count() == 1);

    const auto s3 = polarized_slice(monomial(2, 3, {3, 0}), 1, 2);
    CHECK(s3.is_zero());
}

TEST_CASE("polarized_slice is independent of the slot k") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::steinhaus;
    spec.dimension = 3;
    spec.degree = 4;
    spec.seed = 77;
    const auto p = random_polynomial(spec);
    for (int j = 1; j <= 3; ++j) {
        const auto base = polarized_slice(p, 1, j);
        for (int k = 2; k <= 4; ++k) {
            const auto other = polarized_slice(p, k, j);
            REQUIRE(other.term_count() == base.term_count());
            for (const auto& [beta, c] : base.terms())
                CHECK(std::abs(other.coefficient(beta) - c) == 0.0);
        }
    }
}

TEST_CASE("mixed_polarization examples") {
    const auto psq = monomial(2, 2, {2, 0});
    const std::vector<Complex> zt{{0.3, 0.0}, {9.0, 0.0}};
    const std::vector<Complex> ys{{0.7, 0.0}, {-4.0, 0.0}};
    CHECK(std::abs(mixed_polarization(psq, 1, zt, ys) - Complex{0.21, 0.0}) <
          1e-15);

    const auto p12 = monomial(2, 2, {1, 1});
    const std::vector<Complex> z1{{1.0, 0.0}, {1.0, 0.0}};
    const std::vector<Complex> y1{{1.0, 0.0}, {-1.0, 0.0}};
    CHECK(std::abs(mixed_polarization(p12, 1, z1, y1)) < 1e-15);
}

TEST_CASE("mixed_polarization diagonal and slice consistency") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::complex_gaussian;
    spec.dimension = 3;
    spec.degree = 3;
    spec.seed = 4242;
    const auto p = random_polynomial(spec);
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        const auto z = torus_point(3, 100 + trial);
        const auto y = torus_point(3, 200 + trial);
        const Complex pz = evaluate(p, z);
        for (int k = 1; k <= 3; ++k) {
            CHECK(std::abs(mixed_polarization(p, k, z, z) - pz) <=
                  1e-12 * std::max(1.0, std::abs(pz)));
            Complex via_slices{0.0, 0.0};
            for (int j = 1; j <= 3; ++j)
                via_slices += y[static_cast<std::size_t>(j - 1)] *
                              evaluate(polarized_slice(p, k, j), z);
            const Complex direct = mixed_polarization(p, k, z, y);
            CHECK(std::abs(via_slices - direct) <=
                  1e-12 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("mixed_polarization_polynomial doubles the variables") {
    const auto h = mixed_polarization_polynomial(monomial(1, 3, {3}), 1);
    CHECK(h.dimension() == 2);
    CHECK(h.degree() == 3);
    // z1^3 polarizes to z1^2 y1
    CHECK(std::abs(h.coefficient(MultiIndex({2, 1})) - Complex{1.0, 0.0}) <
          1e-15);
    CHECK(h.term_count() == 1);
}

TEST_CASE("random ensembles") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::steinhaus;
    spec.dimension = 2;
    spec.degree = 2;
    spec.seed = 99;
    const auto p = random_polynomial(spec);
    CHECK(p.term_count() == 3);
    for (const auto& [alpha, c] : p.terms())
        CHECK(std::abs(std::abs(c) - 1.0) < 1e-14);

    spec.kind = EnsembleKind::rademacher;
    const auto prad = random_polynomial(spec);
    for (const auto& [alpha, c] : prad.terms()) {
        CHECK(c.imag() == 0.0);
        CHECK(std::abs(std::abs(c.real()) - 1.0) == 0.0);
    }

    spec.kind = EnsembleKind::steinhaus;
    spec.dimension = 3;
    spec.degree = 3;
    spec.support = SupportSpec::lambda(2);
    const auto plam = random_polynomial(spec);
    CHECK(plam.term_count() == 9);
    CHECK(plam.coefficient(MultiIndex({1, 1, 1})) == Complex{0.0, 0.0});

    // determinism: identical spec => bit-identical polynomial
    const auto q1 = random_polynomial(spec);
    const auto q2 = random_polynomial(spec);
    REQUIRE(q1.term_count() == q2.term_count());
    for (const auto& [alpha, c] : q1.terms()) {
        const Complex o = q2.coefficient(alpha);
        CHECK(c.real() == o.real());
        CHECK(c.imag() == o.imag());
    }

    spec.support = SupportSpec::explicit_list({});
    CHECK_THROWS_AS(random_polynomial(spec), std::invalid_argument);
}

TEST_CASE("restrict_support") {
    HomogeneousPolynomial p(2, 2);
    p.set_coefficient(MultiIndex({2, 0}), {1.0, 0.0});
    p.set_coefficient(MultiIndex({0, 2}), {1.0, 0.0});

    const auto all = restrict_support(
        p, {MultiIndex({2, 0}), MultiIndex({0, 2}), MultiIndex({1, 1})});
    CHECK(all.term_count() == 2);

    const auto one = restrict_support(p, {MultiIndex({2, 0})});
    CHECK(one.term_count() == 1);
    CHECK(std::abs(one.coefficient(MultiIndex({2, 0})) - Complex{1.0, 0.0}) <
          1e-15);

    CHECK(restrict_support(p, {}).is_zero());
}

TEST_CASE("polynomial JSON round-trip") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::complex_gaussian;
    spec.dimension = 3;
    spec.degree = 3;
    spec.seed = 5150;
    const auto p = random_polynomial(spec);
    const Json j = to_json(p);
    CHECK(poly_json_is_homogeneous(j));
    const auto q = homogeneous_from_json(j);
    CHECK(q.dimension() == p.dimension());
    CHECK(q.degree() == p.degree());
    REQUIRE(q.term_count() == p.term_count());
    for (const auto& [alpha, c] : p.terms()) {
        CHECK(q.coefficient(alpha).real() == c.real());
        CHECK(q.coefficient(alpha).imag() == c.imag());
    }

    const auto f = random_analytic(2, 4, 0.6, EnsembleKind::complex_gaussian, 7);
    const Json jf = to_json(f);
    CHECK(!poly_json_is_homogeneous(jf));
    const auto g = analytic_from_json(jf);
    REQUIRE(g.term_count() == f.term_count());
    for (const auto& [alpha, c] : f.terms()) {
        CHECK(g.coefficient(alpha).real() == c.real());
        CHECK(g.coefficient(alpha).imag() == c.imag());
    }
}
