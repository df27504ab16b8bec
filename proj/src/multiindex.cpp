#include "bhlab/multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bhlab {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    if (r > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::overflow_error(std::string(what) + ": 64-bit overflow");
    return static_cast<std::uint64_t>(r);
}

// C(n, k), exact at every step; throws on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        unsigned __int128 t = static_cast<unsigned __int128>(r) * (n - k + i);
        t /= i;  // exact: r*(n-k+1)...(n-k+i) is divisible by i!
        if (t > static_cast<unsigned __int128>(UINT64_MAX))
            throw std::overflow_error("binomial: 64-bit overflow");
        r = static_cast<std::uint64_t>(t);
    }
    return r;
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
    degree_ = 0;
    for (int e : exps_) {
        if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
        degree_ += e;
    }
}

int MultiIndex::exponent(int var) const {
    if (var < 1 || var > dimension())
        throw std::out_of_range("MultiIndex::exponent: variable out of range");
    return exps_[static_cast<std::size_t>(var - 1)];
}

IndexTuple::IndexTuple(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
        if (e < 1) throw std::invalid_argument("IndexTuple: entries are 1-based");
}

int IndexTuple::entry(int pos) const {
    if (pos < 1 || pos > length())
        throw std::out_of_range("IndexTuple::entry: position out of range");
    return entries_[static_cast<std::size_t>(pos - 1)];
}

bool IndexTuple::is_canonical() const {
    return std::is_sorted(entries_.begin(), entries_.end());
}

IndexTuple IndexTuple::canonical() const {
    std::vector<int> e = entries_;
    std::sort(e.begin(), e.end());
    return IndexTuple(std::move(e));
}

bool IndexTuple::is_valid_for(int dimension) const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [dimension](int e) { return e >= 1 && e <= dimension; });
}

void for_each_J(int m, int N, const std::function<void(const IndexTuple&)>& fn) {
    if (m < 0 || N < 1) throw std::invalid_argument("for_each_J: need m >= 0, N >= 1");
    std::vector<int> cur(static_cast<std::size_t>(m), 1);
    for (;;) {
        fn(IndexTuple(cur));
        int pos = m - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == N) --pos;
        if (pos < 0) return;
        int v = ++cur[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < m; ++q) cur[static_cast<std::size_t>(q)] = v;
    }
}

void for_each_M(int m, int N, const std::function<void(const IndexTuple&)>& fn) {
    if (m < 0 || N < 1) throw std::invalid_argument("for_each_M: need m >= 0, N >= 1");
    std::vector<int> cur(static_cast<std::size_t>(m), 1);
    for (;;) {
        fn(IndexTuple(cur));
        int pos = m - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == N) {
            cur[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) return;
        ++cur[static_cast<std::size_t>(pos)];
    }
}

namespace {

void degree_rec(std::vector<int>& cur, int pos, int remaining, int nonzero,
                int max_nonzero,
                const std::function<void(const MultiIndex&)>& fn) {
    const int N = static_cast<int>(cur.size());
    if (pos == N - 1) {
        if (remaining > 0 && nonzero + 1 > max_nonzero) return;
        cur[static_cast<std::size_t>(pos)] = remaining;
        fn(MultiIndex(cur));
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        int nz = nonzero + (v > 0 ? 1 : 0);
        if (nz > max_nonzero) break;
        cur[static_cast<std::size_t>(pos)] = v;
        degree_rec(cur, pos + 1, remaining - v, nz, max_nonzero, fn);
    }
}

}  // namespace

void for_each_degree(int m, int N,
                     const std::function<void(const MultiIndex&)>& fn) {
    if (m < 0 || N < 1)
        throw std::invalid_argument("for_each_degree: need m >= 0, N >= 1");
    std::vector<int> cur(static_cast<std::size_t>(N), 0);
    degree_rec(cur, 0, m, 0, N, fn);
}

void for_each_Lambda(int m, int N, int M,
                     const std::function<void(const MultiIndex&)>& fn) {
    if (m < 0 || N < 1 || M < 1)
        throw std::invalid_argument("for_each_Lambda: need m >= 0, N >= 1, M >= 1");
    std::vector<int> cur(static_cast<std::size_t>(N), 0);
    degree_rec(cur, 0, m, 0, std::min(M, N), fn);
}

std::vector<IndexTuple> enumerate_J(int m, int N) {
    std::vector<IndexTuple> out;
    for_each_J(m, N, [&out](const IndexTuple& t) { out.push_back(t); });
    return out;
}

std::vector<IndexTuple> enumerate_M(int m, int N) {
    std::vector<IndexTuple> out;
    for_each_M(m, N, [&out](const IndexTuple& t) { out.push_back(t); });
    return out;
}

std::vector<MultiIndex> enumerate_degree(int m, int N) {
    std::vector<MultiIndex> out;
    for_each_degree(m, N, [&out](const MultiIndex& a) { out.push_back(a); });
    return out;
}

std::vector<MultiIndex> enumerate_Lambda(int m, int N, int M) {
    std::vector<MultiIndex> out;
    for_each_Lambda(m, N, M, [&out](const MultiIndex& a) { out.push_back(a); });
    return out;
}

MultiIndex tuple_to_alpha(const IndexTuple& tuple, int N) {
    if (!tuple.is_valid_for(N))
        throw std::invalid_argument("tuple_to_alpha: entry exceeds dimension");
    std::vector<int> exps(static_cast<std::size_t>(N), 0);
    for (int e : tuple.entries()) ++exps[static_cast<std::size_t>(e - 1)];
    return MultiIndex(std::move(exps));
}

IndexTuple alpha_to_tuple(const MultiIndex& alpha) {
    std::vector<int> entries;
    entries.reserve(static_cast<std::size_t>(alpha.degree()));
    for (int r = 1; r <= alpha.dimension(); ++r)
        entries.insert(entries.end(), static_cast<std::size_t>(alpha.exponent(r)), r);
    return IndexTuple(std::move(entries));
}

std::uint64_t class_cardinality(const IndexTuple& tuple) {
    // m! / prod alpha_r! as a product of binomials over the run lengths.
    std::vector<int> sorted = tuple.canonical().entries();
    std::uint64_t result = 1;
    std::uint64_t placed = 0;
    std::size_t pos = 0;
    while (pos < sorted.size()) {
        std::size_t run = pos;
        while (run < sorted.size() && sorted[run] == sorted[pos]) ++run;
        std::uint64_t count = run - pos;
        placed += count;
        result = checked_mul(result, binomial(placed, count), "class_cardinality");
        pos = run;
    }
    return result;
}

IndexTuple insert_at(const IndexTuple& tuple, int k, int j) {
    const int m = tuple.length() + 1;
    if (k < 1 || k > m)
        throw std::out_of_range("insert_at: k must be in 1..m");
    if (j < 1) throw std::out_of_range("insert_at: j must be >= 1");
    std::vector<int> e = tuple.entries();
    e.insert(e.begin() + (k - 1), j);
    return IndexTuple(std::move(e));
}

std::uint64_t divisor_weight(const MultiIndex& alpha) {
    std::uint64_t w = 1;
    for (int e : alpha.exponents())
        w = checked_mul(w, static_cast<std::uint64_t>(e) + 1, "divisor_weight");
    return w;
}

int var_count(const MultiIndex& alpha) {
    int n = 0;
    for (int e : alpha.exponents())
        if (e != 0) ++n;
    return n;
}

namespace {

// Partitions of `remaining` into at most `slots` parts, each <= `max_part`,
// accumulated as prod(part + 1).
void partition_rec(int remaining, int slots, int max_part, std::uint64_t prod,
                   std::vector<int>& parts, std::uint64_t& best,
                   std::vector<int>& best_parts) {
    if (remaining == 0) {
        if (prod > best) {
            best = prod;
            best_parts = parts;
        }
        return;
    }
    if (slots == 0) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        parts.push_back(p);
        partition_rec(remaining - p, slots - 1, p,
                      prod * (static_cast<std::uint64_t>(p) + 1), parts, best,
                      best_parts);
        parts.pop_back();
    }
}

}  // namespace

CompositionBound divisor_weight_bound(int m, int M, int cap_m, int cap_M) {
    if (m < 1 || M < 1)
        throw std::invalid_argument("divisor_weight_bound: need m >= 1, M >= 1");
    if (m > cap_m || M > cap_M)
        throw std::invalid_argument(
            "divisor_weight_bound: brute force refused, exceeds cap m <= " +
            std::to_string(cap_m) + ", M <= " + std::to_string(cap_M));
    CompositionBound b;
    b.m = m;
    b.max_vars = M;
    b.real_bound = std::pow(static_cast<double>(m) / M + 1.0, M);
    std::vector<int> parts;
    partition_rec(m, M, m, 1, parts, b.integer_max, b.argmax_parts);
    return b;
}

std::vector<std::uint64_t> first_primes(int count) {
    if (count < 0) throw std::invalid_argument("first_primes: negative count");
    std::vector<std::uint64_t> primes;
    primes.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t n = 2; static_cast<int>(primes.size()) < count; ++n) {
        bool prime = true;
        for (std::uint64_t p : primes) {
            if (p * p > n) break;
            if (n % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(n);
    }
    return primes;
}

std::uint64_t prime_power_product(const MultiIndex& alpha) {
    const auto primes = first_primes(alpha.dimension());
    std::uint64_t n = 1;
    for (int r = 1; r <= alpha.dimension(); ++r)
        for (int e = 0; e < alpha.exponent(r); ++e)
            n = checked_mul(n, primes[static_cast<std::size_t>(r - 1)],
                            "prime_power_product");
    return n;
}

std::uint64_t count_divisors(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("count_divisors: n must be >= 1");
    std::uint64_t count = 0;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            count += 2;
            if (d * d == n) --count;
        }
    }
    return count;
}

}  // namespace bhlab
