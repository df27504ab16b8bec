#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "bhlab/multiindex.hpp"

namespace bhlab {

using Complex = std::complex<double>;

/// Sparse m-homogeneous polynomial P(z) = sum_{|alpha|=m} c_alpha z^alpha
/// over N complex variables. Zero coefficients are never stored; term
/// iteration order is lexicographic in alpha.
class HomogeneousPolynomial {
public:
    HomogeneousPolynomial(int dimension, int degree);

    static HomogeneousPolynomial from_terms(
        int dimension, int degree,
        const std::vector<std::pair<MultiIndex, Complex>>& terms);

    int dimension() const { return N_; }
    int degree() const { return m_; }
    const std::map<MultiIndex, Complex>& terms() const { return coeffs_; }
    std::size_t term_count() const { return coeffs_.size(); }
    bool is_zero() const { return coeffs_.empty(); }

    Complex coefficient(const MultiIndex& alpha) const;
    void set_coefficient(const MultiIndex& alpha, Complex c);

private:
    int N_;
    int m_;
    std::map<MultiIndex, Complex> coeffs_;
};

/// Sparse analytic polynomial with mixed total degrees (the Helson
/// inequality is stated for these; homogeneity is not assumed).
class AnalyticPolynomial {
public:
    explicit AnalyticPolynomial(int dimension);

    static AnalyticPolynomial from_terms(
        int dimension, const std::vector<std::pair<MultiIndex, Complex>>& terms);

    int dimension() const { return N_; }
    const std::map<MultiIndex, Complex>& terms() const { return coeffs_; }
    std::size_t term_count() const { return coeffs_.size(); }
    bool is_zero() const { return coeffs_.empty(); }
    int max_total_degree() const;

    Complex coefficient(const MultiIndex& alpha) const;
    void set_coefficient(const MultiIndex& alpha, Complex c);

private:
    int N_;
    std::map<MultiIndex, Complex> coeffs_;
};

AnalyticPolynomial as_analytic(const HomogeneousPolynomial& p);

// --- evaluation and polarization --------------------------------------------

Complex evaluate(const HomogeneousPolynomial& p, std::span<const Complex> z);
Complex evaluate(const AnalyticPolynomial& f, std::span<const Complex> z);

/// a(i) = c_alpha / card[i] for alpha related to i; symmetric in i.
Complex symmetric_coefficient(const HomogeneousPolynomial& p,
                              const IndexTuple& i);

/// Accessor view of the unique symmetric m-linear form L with
/// L(z,...,z) = P(z); a(i) = L(e_{i_1}, ..., e_{i_m}).
class SymmetricFormView {
public:
    explicit SymmetricFormView(const HomogeneousPolynomial& p) : p_(&p) {}
    Complex operator()(const IndexTuple& i) const {
        return symmetric_coefficient(*p_, i);
    }
    const HomogeneousPolynomial& polynomial() const { return *p_; }

private:
    const HomogeneousPolynomial* p_;
};

/// The (m-1)-homogeneous polynomial whose coefficient at beta <-> canonical i
/// is card[i] * a((i,_k j)). Independent of k by symmetry of a.
HomogeneousPolynomial polarized_slice(const HomogeneousPolynomial& p, int k,
                                      int j);

/// L(z, ..., z, y) with y in slot k, computed as the direct sum over
/// M(m-1,N): sum_j sum_i a_{(i,_k j)} z_{i_1} ... z_{i_{m-1}} y_j.
Complex mixed_polarization(const HomogeneousPolynomial& p, int k,
                           std::span<const Complex> z,
                           std::span<const Complex> y);

/// The mixed form as an m-homogeneous polynomial in 2N variables
/// (z_1..z_N, y_1..y_N); its polydisc sup-norm is the Harris LHS.
HomogeneousPolynomial mixed_polarization_polynomial(
    const HomogeneousPolynomial& p, int k);

/// Drop every coefficient outside Lambda.
HomogeneousPolynomial restrict_support(const HomogeneousPolynomial& p,
                                       const std::set<MultiIndex>& lambda);

// --- random ensembles --------------------------------------------------------

enum class EnsembleKind { steinhaus, rademacher, complex_gaussian };

struct SupportSpec {
    enum class Mode { full, lambda, explicit_list };
    Mode mode = Mode::full;
    int max_vars = 0;               // lambda mode: var(alpha) <= max_vars
    std::vector<MultiIndex> list;   // explicit mode

    static SupportSpec full() { return {}; }
    static SupportSpec lambda(int max_vars);
    static SupportSpec explicit_list(std::vector<MultiIndex> list);
};

/// Deterministic: the same spec always produces the same polynomial.
/// Coefficients are drawn from xoshiro256** (seeded via splitmix64) in
/// ascending lexicographic support order.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::steinhaus;
    SupportSpec support;
    std::uint64_t seed = 0;
    int dimension = 1;
    int degree = 1;
};

HomogeneousPolynomial random_polynomial(const EnsembleSpec& spec);

/// Random analytic polynomial: every alpha with |alpha| <= max_degree is
/// included independently with probability `density`; coefficients per
/// `kind`. Deterministic in seed. Instance plumbing for the Helson verifier.
AnalyticPolynomial random_analytic(int dimension, int max_degree,
                                   double density, EnsembleKind kind,
                                   std::uint64_t seed);

}  // namespace bhlab
