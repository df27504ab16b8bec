#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace bhlab {

/// Exponent vector alpha over N complex variables; degree = sum of entries.
/// Variables are 1-based in every public interface, storage is 0-based.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> exponents);

    const std::vector<int>& exponents() const { return exps_; }
    int degree() const { return degree_; }
    int dimension() const { return static_cast<int>(exps_.size()); }

    /// Exponent of variable `var` (1-based).
    int exponent(int var) const;

    bool operator==(const MultiIndex& o) const { return exps_ == o.exps_; }
    std::strong_ordering operator<=>(const MultiIndex& o) const {
        return exps_ <=> o.exps_;
    }

private:
    std::vector<int> exps_;
    int degree_ = 0;
};

/// Tuple i = (i_1, ..., i_m) with entries in 1..N. A tuple is canonical
/// (a member of J(m,N)) iff its entries are nondecreasing.
class IndexTuple {
public:
    IndexTuple() = default;
    explicit IndexTuple(std::vector<int> entries);

    const std::vector<int>& entries() const { return entries_; }
    int length() const { return static_cast<int>(entries_.size()); }
    int entry(int pos) const;  // pos in 1..m

    bool is_canonical() const;
    IndexTuple canonical() const;  // entries sorted nondecreasing
    bool is_valid_for(int dimension) const;  // all entries <= N

    bool operator==(const IndexTuple& o) const { return entries_ == o.entries_; }
    std::strong_ordering operator<=>(const IndexTuple& o) const {
        return entries_ <=> o.entries_;
    }

private:
    std::vector<int> entries_;
};

/// Result of the Lagrange-multiplier bound on the divisor weight over
/// multi-indices of degree m with at most M nonzero entries:
/// max prod(alpha_r + 1) <= (m/M + 1)^M.
struct CompositionBound {
    int m = 0;
    int max_vars = 0;
    double real_bound = 0.0;            // (m/M + 1)^M
    std::uint64_t integer_max = 0;      // brute-force max of prod(alpha_r + 1)
    std::vector<int> argmax_parts;      // a maximizing partition of m
};

// --- enumeration (lazy, lexicographic ascending) ---------------------------

/// All nondecreasing tuples in J(m,N). m = 0 yields the single empty tuple.
void for_each_J(int m, int N, const std::function<void(const IndexTuple&)>& fn);

/// All N^m tuples in M(m,N).
void for_each_M(int m, int N, const std::function<void(const IndexTuple&)>& fn);

/// All alpha with |alpha| = m over N variables.
void for_each_degree(int m, int N,
                     const std::function<void(const MultiIndex&)>& fn);

/// All alpha with |alpha| = m and var(alpha) <= M (the set Lambda_{N,M}).
void for_each_Lambda(int m, int N, int M,
                     const std::function<void(const MultiIndex&)>& fn);

std::vector<IndexTuple> enumerate_J(int m, int N);
std::vector<IndexTuple> enumerate_M(int m, int N);
std::vector<MultiIndex> enumerate_degree(int m, int N);
std::vector<MultiIndex> enumerate_Lambda(int m, int N, int M);

// --- the J(m,N) <-> {|alpha| = m} correspondence ----------------------------

/// alpha_r = #{ j : i_j = r }. The tuple need not be canonical.
MultiIndex tuple_to_alpha(const IndexTuple& tuple, int N);

/// i = (1,...,1,...,N,...,N) with multiplicities alpha; always canonical.
IndexTuple alpha_to_tuple(const MultiIndex& alpha);

/// card[i]: number of distinct permutations of the tuple, the multinomial
/// m! / prod_r alpha_r!. Exact integer arithmetic; throws std::overflow_error
/// if the value does not fit in 64 bits.
std::uint64_t class_cardinality(const IndexTuple& tuple);

/// (i,_k j): place j at position k of an (m-1)-tuple, shifting the tail
/// right. k in 1..m-1 is the defined range; k = m (append) is an extension
/// accepted here because the Blei product runs over all m slots.
IndexTuple insert_at(const IndexTuple& tuple, int k, int j);

// --- divisor weights --------------------------------------------------------

/// alpha + 1 = prod_r (alpha_r + 1) = d(p^alpha). Overflow-checked.
std::uint64_t divisor_weight(const MultiIndex& alpha);

/// var(alpha) = #{ r : alpha_r != 0 }.
int var_count(const MultiIndex& alpha);

/// Brute-force check of the Lagrange bound (alpha+1) <= (m/M + 1)^M over all
/// partitions of m into at most M parts. Refuses m/M above the caps.
CompositionBound divisor_weight_bound(int m, int M, int cap_m = 40,
                                      int cap_M = 6);

// --- small number theory (cross-check support) ------------------------------

/// First `count` primes: 2, 3, 5, ...
std::vector<std::uint64_t> first_primes(int count);

/// p^alpha = p_1^{alpha_1} ... p_N^{alpha_N}. Overflow-checked.
std::uint64_t prime_power_product(const MultiIndex& alpha);

/// Number of divisors of n by trial division (n >= 1).
std::uint64_t count_divisors(std::uint64_t n);

}  // namespace bhlab
